#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "psq/law_report.hpp"

namespace lawcheck {

struct SuiteResult {
  std::string instance;
  std::string kind;
  std::string suite;
  std::vector<psq::LawReport> laws;
  /// Extra machine-readable output, such as interchange witnesses.
  std::vector<Json> artifacts;
};

/// Runs one suite on one instance. Exceptions become a failed "error" law.
[[nodiscard]] SuiteResult run_suite(const InstanceSpec& spec, const std::string& suite,
                                    const psq::CheckOptions& options);

/// Re-verifies every file of one fixture entry.
[[nodiscard]] SuiteResult run_fixture(const FixtureSpec& fixture);

/// Reflexive-transitive closure of a relation on points 1..n.
[[nodiscard]] std::vector<std::pair<int, int>> closure_oracle(const std::vector<std::pair<int, int>>& edges, int n);

}  // namespace lawcheck
