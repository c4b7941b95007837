#pragma once

#include <string>
#include <vector>

#include "psq/algebra.hpp"
#include "psq/law_suites.hpp"

namespace psq {

/// How ⊢{x}y{z} is read. Only `standard` is sound; the others are harness controls.
enum class Validity : std::uint8_t { standard, strict, swapped };

template <Algebra A>
bool triple_valid(const A& alg, const typename A::value_type& x, const typename A::value_type& y,
                  const typename A::value_type& z, Validity v = Validity::standard) {
  switch (v) {
    case Validity::strict: {
      auto xy = alg.mult(x, y);
      return alg.leq(xy, z) && !alg.equal(xy, z);
    }
    case Validity::swapped:
      return alg.leq(alg.mult(y, x), z);
    default:
      return alg.leq(alg.mult(x, y), z);
  }
}

/// Least a' ≥ a with step(a') ≤ a', by iteration.
template <Algebra A, class Step>
typename A::value_type post_fixpoint(const A& alg, typename A::value_type a, Step&& step, std::size_t cap = 1000) {
  for (std::size_t i = 0; i < cap; ++i) {
    auto next = alg.join(a, step(a));
    if (alg.equal(next, a)) return a;
    a = std::move(next);
  }
  throw StarDivergence(alg.name() + ": closure did not stabilise");
}

namespace detail {

/// Shared plumbing for rule checks: pool access and premise construction.
template <Algebra A>
struct RuleContext {
  using V = typename A::value_type;

  const A& alg;
  const Pool<V>& pool;
  Validity validity;
  std::vector<std::string> names = pool_names(pool);
  std::vector<std::optional<V>> stars = std::vector<std::optional<V>>(pool.size());

  const V& at(std::size_t i) const { return pool[i].value; }
  V one() const { return *alg.unit(); }

  /// Even slack indices give join(lower, pool[slack]), so the premise holds; odd ones give pool[slack].
  V upper(const V& lower, std::size_t slack) const { return slack % 2 == 0 ? alg.join(lower, at(slack)) : at(slack); }
  V lower(const V& upper_bound, std::size_t slack) const {
    return slack % 2 == 0 ? alg.meet(upper_bound, at(slack)) : at(slack);
  }

  const V& star_of(std::size_t i) {
    if (!stars[i]) stars[i] = psq::star(alg, at(i));
    return *stars[i];
  }

  bool valid(const V& x, const V& y, const V& z) const { return triple_valid(alg, x, y, z, validity); }

  Outcome conclude(bool premises, const V& x, const V& y, const V& z) const {
    if (!premises) return Outcome::vacuous();
    if (valid(x, y, z)) return Outcome::ok();
    return Outcome::violated("conclusion fails: " + alg.explain(alg.mult(x, y), z));
  }
};

template <Algebra A>
void require_unit(const A& alg) {
  if (!alg.unit()) throw UsageError(alg.name() + ": Hoare rules need a unital quantale");
}

}  // namespace detail

/// Skip, weakening, choice, sequential composition and star rules.
template <Algebra A>
std::vector<LawReport> check_hoare_rules(const A& alg, const Pool<typename A::value_type>& pool,
                                         const CheckOptions& options, Validity validity = Validity::standard) {
  detail::require_unit(alg);
  detail::RuleContext<A> c{alg, pool, validity};
  std::vector<LawReport> out;

  out.push_back(check_law("hoare/skip", c.names, {1, 0}, options, [&](auto i) {
    return c.conclude(true, c.at(i[0]), c.one(), c.at(i[0]));
  }));

  out.push_back(check_law("hoare/weakening", c.names, {5, 0}, options, [&](auto i) {
    const auto& x2 = c.at(i[0]);
    const auto& y = c.at(i[1]);
    auto x1 = c.lower(x2, i[2]);
    auto z2 = c.upper(alg.mult(x2, y), i[3]);
    auto z1 = c.upper(z2, i[4]);
    const bool premises = alg.leq(x1, x2) && c.valid(x2, y, z2) && alg.leq(z2, z1);
    return c.conclude(premises, x1, y, z1);
  }));

  out.push_back(check_law("hoare/choice", c.names, {4, 0}, options, [&](auto i) {
    const auto& x = c.at(i[0]);
    const auto& y1 = c.at(i[1]);
    const auto& y2 = c.at(i[2]);
    auto z = c.upper(alg.join(alg.mult(x, y1), alg.mult(x, y2)), i[3]);
    return c.conclude(c.valid(x, y1, z) && c.valid(x, y2, z), x, alg.join(y1, y2), z);
  }));

  out.push_back(check_law("hoare/sequential", c.names, {5, 0}, options, [&](auto i) {
    const auto& w = c.at(i[0]);
    const auto& x1 = c.at(i[1]);
    const auto& x2 = c.at(i[2]);
    auto z = c.upper(alg.mult(w, x1), i[3]);
    auto y = c.upper(alg.mult(z, x2), i[4]);
    return c.conclude(c.valid(w, x1, z) && c.valid(z, x2, y), w, alg.mult(x1, x2), y);
  }));

  out.push_back(check_law("hoare/star", c.names, {3, 0}, options, [&](auto i) {
    const auto& y = c.at(i[1]);
    auto x = i[2] % 2 == 0 ? post_fixpoint(alg, c.at(i[0]), [&](const auto& a) { return alg.mult(a, y); }) : c.at(i[0]);
    return c.conclude(c.valid(x, y, x), x, c.star_of(i[1]), x);
  }));
  return out;
}

/// Guarded choice and guarded iteration.
template <Algebra A>
std::vector<LawReport> check_strengthened_rules(const A& alg, const Pool<typename A::value_type>& pool,
                                                const CheckOptions& options, Validity validity = Validity::standard) {
  detail::require_unit(alg);
  detail::RuleContext<A> c{alg, pool, validity};
  std::vector<LawReport> out;

  out.push_back(check_law("hoare/guarded-choice", c.names, {6, 0}, options, [&](auto i) {
    const auto& x = c.at(i[0]);
    const auto& w1 = c.at(i[1]);
    const auto& y1 = c.at(i[2]);
    const auto& w2 = c.at(i[3]);
    const auto& y2 = c.at(i[4]);
    auto xw1 = alg.mult(x, w1);
    auto xw2 = alg.mult(x, w2);
    auto z = c.upper(alg.join(alg.mult(xw1, y1), alg.mult(xw2, y2)), i[5]);
    const bool premises = c.valid(xw1, y1, z) && c.valid(xw2, y2, z);
    return c.conclude(premises, x, alg.join(alg.mult(w1, y1), alg.mult(w2, y2)), z);
  }));

  out.push_back(check_law("hoare/guarded-star", c.names, {4, 0}, options, [&](auto i) {
    const auto& w1 = c.at(i[1]);
    const auto& y = c.at(i[2]);
    const auto& w2 = c.at(i[3]);
    auto body = alg.mult(w1, y);
    auto x = i[3] % 2 == 0 ? post_fixpoint(alg, c.at(i[0]), [&](const auto& a) { return alg.mult(a, body); })
                           : c.at(i[0]);
    const bool premises = c.valid(alg.mult(x, w1), y, x);
    return c.conclude(premises, x, alg.mult(psq::star(alg, body), w2), alg.mult(x, w2));
  }));
  return out;
}

/// (x1·y1 ≤ z1 ∧ x2·y2 ≤ z2) ⇒ (x1⊓x2)·(y1⊓y2) ≤ z1⊓z2.
template <Algebra A>
LawReport check_concurrency_rule(const A& alg, const Pool<typename A::value_type>& pool, const CheckOptions& options,
                                 Validity validity = Validity::standard) {
  detail::RuleContext<A> c{alg, pool, validity};
  return check_law("hoare/concurrency", c.names, {6, 0}, options, [&](auto i) {
    const auto& x1 = c.at(i[0]);
    const auto& y1 = c.at(i[1]);
    const auto& x2 = c.at(i[2]);
    const auto& y2 = c.at(i[3]);
    auto z1 = c.upper(alg.mult(x1, y1), i[4]);
    auto z2 = c.upper(alg.mult(x2, y2), i[5]);
    const bool premises = c.valid(x1, y1, z1) && c.valid(x2, y2, z2);
    return c.conclude(premises, alg.meet(x1, x2), alg.meet(y1, y2), alg.meet(z1, z2));
  });
}

/// Unfold equalities and induction implications on both sides.
template <Algebra A>
std::vector<LawReport> check_star_laws(const A& alg, const Pool<typename A::value_type>& pool,
                                       const CheckOptions& options) {
  detail::require_unit(alg);
  detail::RuleContext<A> c{alg, pool, Validity::standard};
  std::vector<LawReport> out;

  out.push_back(check_law("star/unfold-left", c.names, {1, 0}, options, [&](auto i) {
    const auto& s = c.star_of(i[0]);
    return compare_equal(alg, alg.join(c.one(), alg.mult(c.at(i[0]), s)), s);
  }));
  out.push_back(check_law("star/unfold-right", c.names, {1, 0}, options, [&](auto i) {
    const auto& s = c.star_of(i[0]);
    return compare_equal(alg, alg.join(c.one(), alg.mult(s, c.at(i[0]))), s);
  }));

  out.push_back(check_law("star/induction-left", c.names, {3, 0}, options, [&](auto i) {
    const auto& x = c.at(i[0]);
    const auto& z = c.at(i[1]);
    auto y = i[2] % 2 == 0 ? post_fixpoint(alg, alg.join(z, c.at(i[2])), [&](const auto& a) { return alg.mult(x, a); })
                           : c.at(i[2]);
    if (!alg.leq(alg.join(z, alg.mult(x, y)), y)) return Outcome::vacuous();
    return compare_leq(alg, alg.mult(c.star_of(i[0]), z), y);
  }));
  out.push_back(check_law("star/induction-right", c.names, {3, 0}, options, [&](auto i) {
    const auto& x = c.at(i[0]);
    const auto& z = c.at(i[1]);
    auto y = i[2] % 2 == 0 ? post_fixpoint(alg, alg.join(z, c.at(i[2])), [&](const auto& a) { return alg.mult(a, x); })
                           : c.at(i[2]);
    if (!alg.leq(alg.join(z, alg.mult(y, x)), y)) return Outcome::vacuous();
    return compare_leq(alg, alg.mult(z, c.star_of(i[0])), y);
  }));
  return out;
}

}  // namespace psq
