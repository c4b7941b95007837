#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>

#include "psq/errors.hpp"
#include "psq/law_harness.hpp"

namespace psq {

/**
 * A finite (possibly weak) quantale presented through its operations, so
 * that law checks and Hoare-rule checks can be written once.
 */
template <class A>
concept Algebra = requires(const A& a, const typename A::value_type& x, const CheckOptions& o) {
  typename A::value_type;
  { a.name() } -> std::convertible_to<std::string>;
  { a.mult(x, x) } -> std::same_as<typename A::value_type>;
  { a.join(x, x) } -> std::same_as<typename A::value_type>;
  { a.meet(x, x) } -> std::same_as<typename A::value_type>;
  { a.leq(x, x) } -> std::convertible_to<bool>;
  { a.equal(x, x) } -> std::convertible_to<bool>;
  { a.bottom() } -> std::same_as<typename A::value_type>;
  { a.top() } -> std::same_as<typename A::value_type>;
  { a.unit() } -> std::same_as<std::optional<typename A::value_type>>;
  { a.commutative() } -> std::convertible_to<bool>;
  { a.describe(x) } -> std::convertible_to<std::string>;
  { a.explain(x, x) } -> std::convertible_to<std::string>;
  { a.pool(o) } -> std::same_as<Pool<typename A::value_type>>;
};

/// Least fixpoint of a ↦ 1 + f·a, by iteration from bottom.
template <Algebra A>
typename A::value_type star(const A& alg, const typename A::value_type& f, std::size_t cap = 1000) {
  auto one = alg.unit();
  if (!one) throw UsageError(std::string(alg.name()) + ": star needs a unit");
  auto alpha = alg.bottom();
  for (std::size_t i = 0; i < cap; ++i) {
    auto next = alg.join(*one, alg.mult(f, alpha));
    if (alg.equal(next, alpha)) return alpha;
    alpha = std::move(next);
  }
  throw StarDivergence(std::string(alg.name()) + ": star did not stabilise within " +
                       std::to_string(cap) + " iterations");
}

/// Join of all values in `xs`, bottom for none.
template <Algebra A, class Range>
typename A::value_type join_all(const A& alg, const Range& xs) {
  auto r = alg.bottom();
  for (const auto& x : xs) r = alg.join(r, x);
  return r;
}

template <Algebra A, class Range>
typename A::value_type meet_all(const A& alg, const Range& xs) {
  auto r = alg.top();
  for (const auto& x : xs) r = alg.meet(r, x);
  return r;
}

}  // namespace psq
