#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psq/law_harness.hpp"

namespace lawcheck {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& all_suites() {
  static const std::vector<std::string> suites{"carrier", "lifted",       "futuristic",  "hoare",
                                               "strengthened", "concurrency", "star", "transformers",
                                               "frame",   "biquantale",   "interchange"};
  return suites;
}

inline const std::vector<std::string>& all_kinds() {
  static const std::vector<std::string> kinds{
      "language", "relation", "matrix",  "trace",           "interval_fusion", "interval_nofusion",
      "multiset", "powerset", "disjoint_sets", "heaplet",   "vector",          "box2d",
      "matrix_parallel", "inf_words", "fut_intervals", "interval_stream", "table"};
  return kinds;
}

struct InstanceSpec {
  std::string name;
  std::string kind;
  /// Kind parameters with defaults filled in.
  Json params;
  std::vector<std::string> suites;
  /// Resolved path of a `table` fixture.
  std::filesystem::path table_path;
};

struct ExpectedFail {
  std::string instance;
  std::string law;
  std::string reason;
};

struct FixtureSpec {
  /// "interchange_witness", "noncommutativity" or "values".
  std::string kind;
  std::filesystem::path path;
};

struct RunConfig {
  std::vector<InstanceSpec> instances;
  std::vector<ExpectedFail> expected_fail;
  std::vector<FixtureSpec> fixtures;
  psq::CheckOptions options;
  std::optional<std::filesystem::path> report_path;
  /// The configuration as read, with command-line overrides applied.
  Json echo;

  [[nodiscard]] const ExpectedFail* expected(const std::string& instance, const std::string& law) const;
};

/// Parses and validates; relative paths resolve against `base_dir`.
[[nodiscard]] RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Whether `suite` can run on an instance of this kind and parameters.
[[nodiscard]] bool suite_applies(const InstanceSpec& spec, const std::string& suite);

/// Applies --seed / --budget overrides to both the options and the echo.
void override_options(RunConfig& config, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> budget);

}  // namespace lawcheck
