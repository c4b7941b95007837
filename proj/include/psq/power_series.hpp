#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include "psq/carrier.hpp"
#include "psq/errors.hpp"
#include "psq/quantale.hpp"

namespace psq {

/// A total function from a finite carrier into a target, stored densely.
template <class V>
class PowerSeries {
 public:
  using value_type = V;

  PowerSeries(CarrierPtr carrier, V fill)
      : carrier_(std::move(carrier)), values_(carrier_->size(), fill) {}

  PowerSeries(CarrierPtr carrier, std::vector<V> values)
      : carrier_(std::move(carrier)), values_(std::move(values)) {
    if (values_.size() != carrier_->size()) {
      throw UsageError("series length must equal carrier size");
    }
  }

  [[nodiscard]] const CarrierPtr& carrier() const noexcept { return carrier_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] const V& operator[](Element x) const { return values_[x.index]; }
  [[nodiscard]] V& operator[](Element x) { return values_[x.index]; }
  [[nodiscard]] const V& at(std::string_view label) const { return values_[carrier_->at(label).index]; }
  [[nodiscard]] V& at(std::string_view label) { return values_[carrier_->at(label).index]; }
  [[nodiscard]] const std::vector<V>& values() const noexcept { return values_; }

  friend bool operator==(const PowerSeries& a, const PowerSeries& b) {
    return a.values_ == b.values_;
  }

 private:
  CarrierPtr carrier_;
  std::vector<V> values_;
};

/// Series whose values may be undefined, for partial targets.
template <class V>
using PartialSeries = PowerSeries<std::optional<V>>;

/// What convolve_partial yields at points without any defined summand.
enum class EmptyPolicy : std::uint8_t { undefined, bottom };

inline void require_same_carrier(const CarrierPtr& a, const CarrierPtr& b) {
  if (a != b && (a->size() != b->size() || a->name() != b->name())) {
    throw UsageError("series over different carriers: " + a->name() + " vs " + b->name());
  }
}

template <class Q>
PowerSeries<typename Q::value_type> zero_series(const Q& q, CarrierPtr c) {
  return {std::move(c), q.bottom()};
}

template <class Q>
PowerSeries<typename Q::value_type> top_series(const Q& q, CarrierPtr c) {
  return {std::move(c), q.top()};
}

/// Series taking `value` on the listed elements and bottom elsewhere.
template <class Q>
PowerSeries<typename Q::value_type> indicator(const Q& q, CarrierPtr c,
                                              const std::vector<Element>& elements,
                                              typename Q::value_type value) {
  PowerSeries<typename Q::value_type> f(std::move(c), q.bottom());
  for (Element x : elements) f[x] = value;
  return f;
}

/// Boolean characteristic series of a set of labelled elements.
inline PowerSeries<BooleanQuantale::value_type> characteristic(
    CarrierPtr c, const std::vector<std::string>& labels) {
  PowerSeries<BooleanQuantale::value_type> f(c, 0);
  for (const auto& l : labels) f[c->at(l)] = 1;
  return f;
}

template <class Q>
PowerSeries<typename Q::value_type> join(const Q& q, const PowerSeries<typename Q::value_type>& f,
                                         const PowerSeries<typename Q::value_type>& g) {
  require_same_carrier(f.carrier(), g.carrier());
  PowerSeries<typename Q::value_type> r = f;
  for (std::uint32_t i = 0; i < f.size(); ++i) r[Element{i}] = q.join(f[Element{i}], g[Element{i}]);
  return r;
}

template <class Q>
PowerSeries<typename Q::value_type> meet(const Q& q, const PowerSeries<typename Q::value_type>& f,
                                         const PowerSeries<typename Q::value_type>& g) {
  require_same_carrier(f.carrier(), g.carrier());
  PowerSeries<typename Q::value_type> r = f;
  for (std::uint32_t i = 0; i < f.size(); ++i) r[Element{i}] = q.meet(f[Element{i}], g[Element{i}]);
  return r;
}

template <class Q>
bool leq(const Q& q, const PowerSeries<typename Q::value_type>& f,
         const PowerSeries<typename Q::value_type>& g) {
  require_same_carrier(f.carrier(), g.carrier());
  for (std::uint32_t i = 0; i < f.size(); ++i) {
    if (!q.leq(f[Element{i}], g[Element{i}])) return false;
  }
  return true;
}

/// Pointwise join; the empty family gives the zero series.
template <class Q>
PowerSeries<typename Q::value_type> sum_family(
    const Q& q, CarrierPtr c, std::span<const PowerSeries<typename Q::value_type>> fs) {
  PowerSeries<typename Q::value_type> r(std::move(c), q.bottom());
  for (const auto& f : fs) r = join(q, r, f);
  return r;
}

/// Pointwise meet; the empty family gives the top series.
template <class Q>
PowerSeries<typename Q::value_type> inf_family(
    const Q& q, CarrierPtr c, std::span<const PowerSeries<typename Q::value_type>> fs) {
  PowerSeries<typename Q::value_type> r(std::move(c), q.top());
  for (const auto& f : fs) r = meet(q, r, f);
  return r;
}

/// (f·g) x = join over x = y·z of f y · g z.
template <Quantale Q>
PowerSeries<typename Q::value_type> convolve(const Q& q, const PowerSeries<typename Q::value_type>& f,
                                             const PowerSeries<typename Q::value_type>& g) {
  require_same_carrier(f.carrier(), g.carrier());
  const Carrier& c = *f.carrier();
  PowerSeries<typename Q::value_type> r(f.carrier(), q.bottom());
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    auto acc = q.bottom();
    for (const Split& s : c.splittings(Element{x})) acc = q.join(acc, q.mult(f[s.left], g[s.right]));
    r[Element{x}] = acc;
  }
  return r;
}

/**
 * Convolution into a partial target. Summands that are undefined, because a
 * series value or the target product is, are discarded.
 */
template <class Q>
PartialSeries<typename Q::value_type> convolve_partial(
    const Q& q, const PartialSeries<typename Q::value_type>& f,
    const PartialSeries<typename Q::value_type>& g, EmptyPolicy policy = EmptyPolicy::undefined) {
  require_same_carrier(f.carrier(), g.carrier());
  const Carrier& c = *f.carrier();
  PartialSeries<typename Q::value_type> r(f.carrier(), std::nullopt);
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    std::optional<typename Q::value_type> acc;
    for (const Split& s : c.splittings(Element{x})) {
      const auto& a = f[s.left];
      const auto& b = g[s.right];
      if (!a || !b) continue;
      auto p = try_mult(q, *a, *b);
      if (!p) continue;
      acc = acc ? q.join(*acc, *p) : *p;
    }
    if (!acc && policy == EmptyPolicy::bottom) acc = q.bottom();
    r[Element{x}] = acc;
  }
  return r;
}

/// The unit series: the target unit at the carrier unit, bottom elsewhere.
template <class Q>
PowerSeries<typename Q::value_type> unit_series(const Q& q, CarrierPtr c) {
  if (!c->unit()) throw UsageError("carrier " + c->name() + " has no unit");
  auto one = q.unit();
  if (!one) throw UsageError("target has no unit");
  PowerSeries<typename Q::value_type> r(c, q.bottom());
  r[*c->unit()] = *one;
  return r;
}

/// The target unit on elements satisfying `predicate`, bottom elsewhere.
template <class Q>
PowerSeries<typename Q::value_type> direct_unit(const Q& q, CarrierPtr c,
                                                const std::function<bool(Element)>& predicate) {
  auto one = q.unit();
  if (!one) throw UsageError("target has no unit");
  PowerSeries<typename Q::value_type> r(c, q.bottom());
  for (std::uint32_t x = 0; x < c->size(); ++x) {
    if (predicate(Element{x})) r[Element{x}] = *one;
  }
  return r;
}

/// Greatest h with f∗h ≤ g, for Boolean series.
PowerSeries<BooleanQuantale::value_type> wand(const PowerSeries<BooleanQuantale::value_type>& f,
                                              const PowerSeries<BooleanQuantale::value_type>& g);

/// Boolean series as the set of elements where it is 1.
std::vector<Element> support(const PowerSeries<BooleanQuantale::value_type>& f);

/// Readable rendering: Boolean series as sets, others as {label:value} over non-bottom points.
template <class Q>
std::string describe(const Q& q, const PowerSeries<typename Q::value_type>& f) {
  const Carrier& c = *f.carrier();
  std::string s = "{";
  bool first = true;
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    const auto& v = f[Element{x}];
    if (v == q.bottom()) continue;
    if (!first) s += ",";
    first = false;
    s += c.label(Element{x});
    if constexpr (!std::is_same_v<Q, BooleanQuantale>) s += ":" + q.format(v);
  }
  return s + "}";
}

template <class Q>
std::string describe(const Q& q, const PartialSeries<typename Q::value_type>& f) {
  const Carrier& c = *f.carrier();
  std::string s = "{";
  bool first = true;
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    const auto& v = f[Element{x}];
    if (!v) continue;
    if (!first) s += ",";
    first = false;
    s += c.label(Element{x}) + ":" + q.format(*v);
  }
  return s + "}";
}

}  // namespace psq
