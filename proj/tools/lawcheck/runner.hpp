#pragma once

#include <cstddef>
#include <string>

#include "config.hpp"

namespace lawcheck {

inline constexpr const char* tool_version = "1.0.0";

struct RunOptions {
  std::size_t jobs = 1;
  /// Adds wall-clock time to the report, which then differs between runs.
  bool timing = false;
};

struct RunOutcome {
  Json report;
  bool pass = false;
};

/// LAWCHECK_JOBS when set to a positive integer, else 1.
[[nodiscard]] std::size_t default_jobs();

/**
 * Runs every (instance, suite) pair and every fixture on a pool of workers.
 * Results are merged in configuration order, so the report does not depend
 * on the number of workers.
 */
[[nodiscard]] RunOutcome run(const RunConfig& config, const RunOptions& options);

/// One line per suite plus the overall verdict.
[[nodiscard]] std::string summary_text(const Json& report);

}  // namespace lawcheck
