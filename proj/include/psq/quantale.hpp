#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "psq/carrier.hpp"

namespace psq {

/**
 * Finite lattice-ordered target with a total multiplication.
 *
 * `samples()` lists representative non-bottom values used to build generator
 * atoms; `all_values()` enumerates the whole lattice when it is small.
 */
template <class Q>
concept Quantale = requires(const Q& q, const typename Q::value_type& a) {
  typename Q::value_type;
  { q.bottom() } -> std::convertible_to<typename Q::value_type>;
  { q.top() } -> std::convertible_to<typename Q::value_type>;
  { q.join(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.meet(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.leq(a, a) } -> std::convertible_to<bool>;
  { q.mult(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.unit() } -> std::same_as<std::optional<typename Q::value_type>>;
  { q.commutative() } -> std::convertible_to<bool>;
  { q.format(a) } -> std::convertible_to<std::string>;
  { q.samples() } -> std::same_as<std::vector<typename Q::value_type>>;
  { q.all_values() } -> std::same_as<std::optional<std::vector<typename Q::value_type>>>;
  { a == a } -> std::convertible_to<bool>;
};

/// Lattice-ordered target whose multiplication may be undefined.
template <class Q>
concept PartialQuantale = requires(const Q& q, const typename Q::value_type& a) {
  typename Q::value_type;
  { q.bottom() } -> std::convertible_to<typename Q::value_type>;
  { q.top() } -> std::convertible_to<typename Q::value_type>;
  { q.join(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.meet(a, a) } -> std::convertible_to<typename Q::value_type>;
  { q.leq(a, a) } -> std::convertible_to<bool>;
  { q.try_mult(a, a) } -> std::same_as<std::optional<typename Q::value_type>>;
  { q.unit() } -> std::same_as<std::optional<typename Q::value_type>>;
  { q.commutative() } -> std::convertible_to<bool>;
  { q.format(a) } -> std::convertible_to<std::string>;
  { q.samples() } -> std::same_as<std::vector<typename Q::value_type>>;
};

/// Targets usable with convolve_partial: total ones behave as partial targets that are always defined.
template <class Q>
concept PartialTarget = Quantale<Q> || PartialQuantale<Q>;

template <class Q>
[[nodiscard]] std::optional<typename Q::value_type> try_mult(const Q& q,
                                                             const typename Q::value_type& a,
                                                             const typename Q::value_type& b) {
  if constexpr (requires { q.try_mult(a, b); }) {
    return q.try_mult(a, b);
  } else {
    return q.mult(a, b);
  }
}

/// The two-element quantale; values are 0 and 1.
struct BooleanQuantale {
  using value_type = std::uint8_t;

  [[nodiscard]] value_type bottom() const noexcept { return 0; }
  [[nodiscard]] value_type top() const noexcept { return 1; }
  [[nodiscard]] value_type join(value_type a, value_type b) const noexcept { return a | b; }
  [[nodiscard]] value_type meet(value_type a, value_type b) const noexcept { return a & b; }
  [[nodiscard]] bool leq(value_type a, value_type b) const noexcept { return a <= b; }
  [[nodiscard]] value_type mult(value_type a, value_type b) const noexcept { return a & b; }
  [[nodiscard]] std::optional<value_type> unit() const { return value_type{1}; }
  [[nodiscard]] bool commutative() const noexcept { return true; }
  [[nodiscard]] std::string format(value_type a) const { return a ? "1" : "0"; }
  [[nodiscard]] std::vector<value_type> samples() const { return {1}; }
  [[nodiscard]] std::optional<std::vector<value_type>> all_values() const {
    return std::vector<value_type>{0, 1};
  }
};

/**
 * Max-plus over {-inf, 0..cap, +inf}.
 *
 * Join is max, meet is min, multiplication is addition clamped at cap, with
 * -inf absorbing and +inf absorbing among finite values. The unit is 0.
 */
class TropicalQuantale {
 public:
  using value_type = std::int64_t;
  static constexpr value_type neg_inf = std::numeric_limits<value_type>::min();
  static constexpr value_type pos_inf = std::numeric_limits<value_type>::max();

  explicit TropicalQuantale(value_type cap);

  [[nodiscard]] value_type cap() const noexcept { return cap_; }
  [[nodiscard]] value_type bottom() const noexcept { return neg_inf; }
  [[nodiscard]] value_type top() const noexcept { return pos_inf; }
  [[nodiscard]] value_type join(value_type a, value_type b) const noexcept { return a < b ? b : a; }
  [[nodiscard]] value_type meet(value_type a, value_type b) const noexcept { return a < b ? a : b; }
  [[nodiscard]] bool leq(value_type a, value_type b) const noexcept { return a <= b; }
  [[nodiscard]] value_type mult(value_type a, value_type b) const noexcept;
  [[nodiscard]] std::optional<value_type> unit() const { return value_type{0}; }
  [[nodiscard]] bool commutative() const noexcept { return true; }
  [[nodiscard]] std::string format(value_type a) const;
  [[nodiscard]] std::vector<value_type> samples() const;
  [[nodiscard]] std::optional<std::vector<value_type>> all_values() const;
  /// Clamps a natural number into the finite range.
  [[nodiscard]] value_type clamp(value_type n) const noexcept { return n > cap_ ? cap_ : n; }

 private:
  value_type cap_;
};

/**
 * Subsets of a small carrier under union and the complex product.
 *
 * Undefined compositions are dropped from products, so a length-capped word
 * carrier yields the truncated-language target.
 */
class PowersetQuantale {
 public:
  using value_type = std::uint64_t;

  explicit PowersetQuantale(CarrierPtr base);

  [[nodiscard]] const CarrierPtr& base() const noexcept { return base_; }
  [[nodiscard]] value_type bottom() const noexcept { return 0; }
  [[nodiscard]] value_type top() const noexcept { return full_; }
  [[nodiscard]] value_type join(value_type a, value_type b) const noexcept { return a | b; }
  [[nodiscard]] value_type meet(value_type a, value_type b) const noexcept { return a & b; }
  [[nodiscard]] bool leq(value_type a, value_type b) const noexcept { return (a & ~b) == 0; }
  [[nodiscard]] value_type mult(value_type a, value_type b) const;
  [[nodiscard]] std::optional<value_type> unit() const;
  [[nodiscard]] bool commutative() const noexcept { return base_->commutative_hint(); }
  [[nodiscard]] std::string format(value_type a) const;
  [[nodiscard]] std::vector<value_type> samples() const;
  [[nodiscard]] std::optional<std::vector<value_type>> all_values() const;

  [[nodiscard]] value_type singleton(Element x) const noexcept { return value_type{1} << x.index; }
  /// Set of the named elements; throws UsageError on unknown labels.
  [[nodiscard]] value_type set_of(const std::vector<std::string>& labels) const;

 private:
  CarrierPtr base_;
  value_type full_;
  std::vector<std::uint16_t> table_;
};

/**
 * Vectors over {0..max_value} with the separating product: defined when the
 * supports are disjoint, then the sum. Join and meet are componentwise.
 */
class VectorQuantale {
 public:
  static constexpr std::size_t max_dimension = 4;
  using value_type = std::array<std::int32_t, max_dimension>;

  VectorQuantale(std::size_t dimension, std::int32_t max_value);

  [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
  [[nodiscard]] value_type bottom() const noexcept { return value_type{}; }
  [[nodiscard]] value_type top() const noexcept;
  [[nodiscard]] value_type join(const value_type& a, const value_type& b) const noexcept;
  [[nodiscard]] value_type meet(const value_type& a, const value_type& b) const noexcept;
  [[nodiscard]] bool leq(const value_type& a, const value_type& b) const noexcept;
  [[nodiscard]] std::optional<value_type> try_mult(const value_type& a, const value_type& b) const;
  [[nodiscard]] std::optional<value_type> unit() const { return value_type{}; }
  [[nodiscard]] bool commutative() const noexcept { return true; }
  [[nodiscard]] std::string format(const value_type& a) const;
  [[nodiscard]] std::vector<value_type> samples() const;
  [[nodiscard]] std::vector<value_type> all_values() const;

 private:
  std::size_t dim_;
  std::int32_t max_;
};

}  // namespace psq
