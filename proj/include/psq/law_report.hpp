#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace psq {

enum class LawStatus : std::uint8_t { pass, fail, skipped };

struct CheckMode {
  enum class Kind : std::uint8_t { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;
};

struct Witness {
  std::vector<std::string> items;
  std::string detail;
};

/// Outcome of one quantified law; status is fail exactly when a witness is present.
struct LawReport {
  std::string law;
  LawStatus status = LawStatus::pass;
  std::uint64_t tuples_checked = 0;
  std::optional<std::uint64_t> premises_held;
  std::optional<Witness> witness;
  CheckMode mode;
  std::string note;

  [[nodiscard]] bool passed() const noexcept { return status == LawStatus::pass; }
  [[nodiscard]] bool failed() const noexcept { return status == LawStatus::fail; }
};

[[nodiscard]] std::string to_string(LawStatus status);
[[nodiscard]] std::string summarize(const LawReport& report);

/// Finds a report by law name; nullptr when absent.
[[nodiscard]] const LawReport* find_report(const std::vector<LawReport>& reports,
                                           const std::string& law);

}  // namespace psq
