#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psq/law_report.hpp"

namespace psq {

struct CheckOptions {
  /// Tuples drawn per law when sampling.
  std::uint64_t budget = 100000;
  std::uint64_t seed = 42;
  /// Laws whose tuple space is at most this large are enumerated completely.
  std::uint64_t exhaustive_limit = 2000000;
  /// Random series added to generated pools.
  std::size_t random_series = 8;
  /// Lifted spaces with at most this many elements become the pool themselves.
  std::size_t full_space_limit = 64;
};

enum class Verdict : std::uint8_t { held, vacuous, violated };

struct Outcome {
  Verdict verdict = Verdict::held;
  std::string detail;

  static Outcome ok() { return {}; }
  static Outcome vacuous() { return {Verdict::vacuous, {}}; }
  static Outcome violated(std::string detail) { return {Verdict::violated, std::move(detail)}; }
};

/// Tuples consisting of `prefix` free pool indices followed by a multiset of `family` indices.
struct TupleShape {
  std::size_t prefix = 0;
  std::size_t family = 0;
};

template <class T>
struct Named {
  std::string name;
  T value;
};

template <class T>
using Pool = std::vector<Named<T>>;

[[nodiscard]] std::uint64_t tuple_count(std::size_t pool, TupleShape shape);
[[nodiscard]] std::uint64_t law_seed(std::uint64_t seed, std::string_view law);

/**
 * Runs `check` over all tuples of the shape when the space is small enough,
 * otherwise over `budget` tuples drawn from a generator seeded by the law name.
 * The first violating tuple in enumeration order becomes the witness.
 */
template <class Check>
LawReport check_law(std::string law, std::span<const std::string> names, TupleShape shape,
                    const CheckOptions& options, Check&& check) {
  LawReport report;
  report.law = std::move(law);
  const std::size_t n = names.size();
  const std::size_t arity = shape.prefix + shape.family;
  std::vector<std::size_t> idx(arity, 0);
  std::uint64_t premises = 0;
  bool implication = false;

  auto visit = [&]() -> bool {
    ++report.tuples_checked;
    Outcome o = check(std::span<const std::size_t>(idx));
    if (o.verdict == Verdict::vacuous) {
      implication = true;
      return true;
    }
    ++premises;
    if (o.verdict == Verdict::held) return true;
    Witness w;
    for (std::size_t i : idx) w.items.push_back(names[i]);
    w.detail = std::move(o.detail);
    report.witness = std::move(w);
    report.status = LawStatus::fail;
    return false;
  };

  if (n == 0 && arity > 0) {
    report.status = LawStatus::skipped;
    report.note = "empty pool";
    return report;
  }

  const std::uint64_t space = tuple_count(n, shape);
  if (space <= options.exhaustive_limit) {
    report.mode = {CheckMode::Kind::exhaustive, 0, space};
    if (arity == 0) {
      visit();
    } else {
      for (;;) {
        if (!visit()) break;
        // Advance family (non-decreasing) digits first, then prefix digits.
        std::size_t pos = arity;
        bool advanced = false;
        while (pos > 0) {
          --pos;
          if (pos >= shape.prefix) {
            if (idx[pos] + 1 < n) {
              ++idx[pos];
              for (std::size_t j = pos + 1; j < arity; ++j) idx[j] = idx[pos];
              advanced = true;
              break;
            }
          } else if (idx[pos] + 1 < n) {
            ++idx[pos];
            for (std::size_t j = pos + 1; j < arity; ++j) idx[j] = 0;
            advanced = true;
            break;
          }
        }
        if (!advanced) break;
      }
    }
  } else {
    const std::uint64_t s = law_seed(options.seed, report.law);
    report.mode = {CheckMode::Kind::sampled, options.seed, options.budget};
    std::mt19937_64 rng(s);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::uint64_t t = 0; t < options.budget; ++t) {
      for (auto& i : idx) i = pick(rng);
      std::sort(idx.begin() + static_cast<std::ptrdiff_t>(shape.prefix), idx.end());
      if (!visit()) break;
    }
  }
  if (implication) report.premises_held = premises;
  return report;
}

template <class T>
std::vector<std::string> pool_names(const Pool<T>& pool) {
  std::vector<std::string> names;
  names.reserve(pool.size());
  for (const auto& p : pool) names.push_back(p.name);
  return names;
}

}  // namespace psq
