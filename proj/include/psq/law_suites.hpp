#pragma once

#include <optional>
#include <string>
#include <vector>

#include "psq/algebra.hpp"

namespace psq {

/// Memoised products of pool members.
template <Algebra A>
class ProductCache {
 public:
  using value_type = typename A::value_type;

  ProductCache(const A& alg, const Pool<value_type>& pool)
      : alg_(alg), pool_(pool), cells_(pool.size() * pool.size()) {}

  const value_type& operator()(std::size_t i, std::size_t j) {
    auto& c = cells_[i * pool_.size() + j];
    if (!c) c = alg_.mult(pool_[i].value, pool_[j].value);
    return *c;
  }

 private:
  const A& alg_;
  const Pool<value_type>& pool_;
  std::vector<std::optional<value_type>> cells_;
};

template <Algebra A>
Outcome compare_equal(const A& alg, const typename A::value_type& lhs,
                      const typename A::value_type& rhs) {
  if (alg.equal(lhs, rhs)) return Outcome::ok();
  return Outcome::violated(alg.explain(lhs, rhs));
}

template <Algebra A>
Outcome compare_leq(const A& alg, const typename A::value_type& lhs,
                    const typename A::value_type& rhs) {
  if (alg.leq(lhs, rhs)) return Outcome::ok();
  return Outcome::violated("lhs not below rhs; " + alg.explain(lhs, rhs));
}

/**
 * Quantale laws of the multiplication: associativity, distributivity on both
 * sides over families of size 0 to 3, annihilation, unit laws and, where the
 * algebra declares it, commutativity.
 */
template <Algebra A>
std::vector<LawReport> check_lifted_laws(const A& alg, const Pool<typename A::value_type>& pool,
                                         const CheckOptions& options) {
  using V = typename A::value_type;
  const auto names = pool_names(pool);
  ProductCache<A> prod(alg, pool);
  std::vector<LawReport> out;
  auto at = [&](std::size_t i) -> const V& { return pool[i].value; };

  out.push_back(check_law("associativity", names, {3, 0}, options, [&](auto idx) {
    return compare_equal(alg, alg.mult(prod(idx[0], idx[1]), at(idx[2])),
                         alg.mult(at(idx[0]), prod(idx[1], idx[2])));
  }));

  for (std::size_t k = 0; k <= 3; ++k) {
    out.push_back(check_law("left-distributivity/" + std::to_string(k), names, {1, k}, options,
                            [&](auto idx) {
                              V sum = alg.bottom();
                              V rhs = alg.bottom();
                              for (std::size_t j = 1; j <= k; ++j) {
                                sum = alg.join(sum, at(idx[j]));
                                rhs = alg.join(rhs, prod(idx[0], idx[j]));
                              }
                              return compare_equal(alg, alg.mult(at(idx[0]), sum), rhs);
                            }));
  }
  for (std::size_t k = 0; k <= 3; ++k) {
    out.push_back(check_law("right-distributivity/" + std::to_string(k), names, {1, k}, options,
                            [&](auto idx) {
                              V sum = alg.bottom();
                              V rhs = alg.bottom();
                              for (std::size_t j = 1; j <= k; ++j) {
                                sum = alg.join(sum, at(idx[j]));
                                rhs = alg.join(rhs, prod(idx[j], idx[0]));
                              }
                              return compare_equal(alg, alg.mult(sum, at(idx[0])), rhs);
                            }));
  }

  const V zero = alg.bottom();
  out.push_back(check_law("left-annihilation", names, {1, 0}, options, [&](auto idx) {
    return compare_equal(alg, alg.mult(zero, at(idx[0])), zero);
  }));
  out.push_back(check_law("right-annihilation", names, {1, 0}, options, [&](auto idx) {
    return compare_equal(alg, alg.mult(at(idx[0]), zero), zero);
  }));

  if (auto one = alg.unit()) {
    out.push_back(check_law("left-unit", names, {1, 0}, options, [&](auto idx) {
      return compare_equal(alg, alg.mult(*one, at(idx[0])), at(idx[0]));
    }));
    out.push_back(check_law("right-unit", names, {1, 0}, options, [&](auto idx) {
      return compare_equal(alg, alg.mult(at(idx[0]), *one), at(idx[0]));
    }));
  } else {
    for (const char* law : {"left-unit", "right-unit"}) {
      LawReport r;
      r.law = law;
      r.status = LawStatus::skipped;
      r.note = "no unit";
      out.push_back(std::move(r));
    }
  }

  if (alg.commutative()) {
    out.push_back(check_law("commutativity", names, {2, 0}, options, [&](auto idx) {
      return compare_equal(alg, prod(idx[0], idx[1]), prod(idx[1], idx[0]));
    }));
  } else {
    LawReport r;
    r.law = "commutativity";
    r.status = LawStatus::skipped;
    r.note = "not declared commutative";
    out.push_back(std::move(r));
  }
  return out;
}

/// Commutativity checked regardless of declarations; used to exhibit non-commutative liftings.
template <Algebra A>
LawReport check_commutativity(const A& alg, const Pool<typename A::value_type>& pool,
                              const CheckOptions& options) {
  const auto names = pool_names(pool);
  return check_law("commutativity", names, {2, 0}, options, [&](auto idx) {
    return compare_equal(alg, alg.mult(pool[idx[0]].value, pool[idx[1]].value),
                         alg.mult(pool[idx[1]].value, pool[idx[0]].value));
  });
}

/// Absorption and distributivity of the pointwise lattice, families of size 0 to 3.
template <Algebra A>
std::vector<LawReport> check_lattice_laws(const A& alg, const Pool<typename A::value_type>& pool,
                                          const CheckOptions& options) {
  using V = typename A::value_type;
  const auto names = pool_names(pool);
  auto at = [&](std::size_t i) -> const V& { return pool[i].value; };
  std::vector<LawReport> out;
  out.push_back(check_law("absorption/meet-join", names, {2, 0}, options, [&](auto idx) {
    return compare_equal(alg, alg.meet(at(idx[0]), alg.join(at(idx[0]), at(idx[1]))), at(idx[0]));
  }));
  out.push_back(check_law("absorption/join-meet", names, {2, 0}, options, [&](auto idx) {
    return compare_equal(alg, alg.join(at(idx[0]), alg.meet(at(idx[0]), at(idx[1]))), at(idx[0]));
  }));
  for (std::size_t k = 0; k <= 3; ++k) {
    out.push_back(check_law("meet-over-join/" + std::to_string(k), names, {1, k}, options,
                            [&](auto idx) {
                              V sum = alg.bottom();
                              V rhs = alg.bottom();
                              for (std::size_t j = 1; j <= k; ++j) {
                                sum = alg.join(sum, at(idx[j]));
                                rhs = alg.join(rhs, alg.meet(at(idx[0]), at(idx[j])));
                              }
                              return compare_equal(alg, alg.meet(at(idx[0]), sum), rhs);
                            }));
    out.push_back(check_law("join-over-meet/" + std::to_string(k), names, {1, k}, options,
                            [&](auto idx) {
                              V inf = alg.top();
                              V rhs = alg.top();
                              for (std::size_t j = 1; j <= k; ++j) {
                                inf = alg.meet(inf, at(idx[j]));
                                rhs = alg.meet(rhs, alg.join(at(idx[0]), at(idx[j])));
                              }
                              return compare_equal(alg, alg.join(at(idx[0]), inf), rhs);
                            }));
  }
  return out;
}

/**
 * Meet interchange: (w⊓x)·(y⊓z) ≤ (w·y)⊓(x·z) always, and on commutative
 * algebras the equality form (w⊓x)∗(y⊓z) = (w∗y)⊓(x∗z).
 */
template <Algebra A>
std::vector<LawReport> check_meet_interchange(const A& alg, const Pool<typename A::value_type>& pool,
                                              const CheckOptions& options) {
  const auto names = pool_names(pool);
  ProductCache<A> prod(alg, pool);
  auto at = [&](std::size_t i) -> const auto& { return pool[i].value; };
  auto sides = [&](auto idx) {
    auto lhs = alg.mult(alg.meet(at(idx[0]), at(idx[1])), alg.meet(at(idx[2]), at(idx[3])));
    auto rhs = alg.meet(prod(idx[0], idx[2]), prod(idx[1], idx[3]));
    return std::pair(std::move(lhs), std::move(rhs));
  };
  std::vector<LawReport> out;
  out.push_back(check_law("meet-interchange/seq-leq", names, {4, 0}, options, [&](auto idx) {
    auto [lhs, rhs] = sides(idx);
    return compare_leq(alg, lhs, rhs);
  }));
  if (alg.commutative()) {
    out.push_back(check_law("meet-interchange/conc-eq", names, {4, 0}, options, [&](auto idx) {
      auto [lhs, rhs] = sides(idx);
      return compare_equal(alg, lhs, rhs);
    }));
  }
  return out;
}

}  // namespace psq
