#pragma once

#include <algorithm>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "psq/algebra.hpp"
#include "psq/power_series.hpp"

namespace psq {

enum class ConvolutionKind : std::uint8_t { standard, futuristic, historistic };

/// Extra summand of the futuristic convolution: f x at unbounded x.
template <Quantale Q>
PowerSeries<typename Q::value_type> futuristic_convolve(const Q& q,
                                                        const PowerSeries<typename Q::value_type>& f,
                                                        const PowerSeries<typename Q::value_type>& g) {
  auto r = convolve(q, f, g);
  const Carrier& c = *f.carrier();
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    if (c.unbounded(Element{x})) r[Element{x}] = q.join(r[Element{x}], f[Element{x}]);
  }
  return r;
}

/// Mirror image: g x joins in at unbounded x, so left annihilation fails instead.
template <Quantale Q>
PowerSeries<typename Q::value_type> historistic_convolve(const Q& q,
                                                         const PowerSeries<typename Q::value_type>& f,
                                                         const PowerSeries<typename Q::value_type>& g) {
  auto r = convolve(q, f, g);
  const Carrier& c = *f.carrier();
  for (std::uint32_t x = 0; x < c.size(); ++x) {
    if (c.unbounded(Element{x})) r[Element{x}] = q.join(r[Element{x}], g[Element{x}]);
  }
  return r;
}

/// The lifted quantale Q^S with convolution as multiplication.
template <Quantale Q>
class LiftedAlgebra {
 public:
  using value_type = PowerSeries<typename Q::value_type>;

  LiftedAlgebra(CarrierPtr carrier, Q target, std::optional<value_type> unit = std::nullopt,
                ConvolutionKind kind = ConvolutionKind::standard)
      : carrier_(std::move(carrier)), q_(std::move(target)), kind_(kind) {
    if (unit) {
      unit_ = std::move(unit);
    } else if (carrier_->unit() && q_.unit()) {
      unit_ = unit_series(q_, carrier_);
    }
  }

  [[nodiscard]] std::string name() const { return carrier_->name(); }
  [[nodiscard]] const CarrierPtr& carrier() const noexcept { return carrier_; }
  [[nodiscard]] const Q& target() const noexcept { return q_; }
  [[nodiscard]] ConvolutionKind kind() const noexcept { return kind_; }

  [[nodiscard]] value_type mult(const value_type& f, const value_type& g) const {
    switch (kind_) {
      case ConvolutionKind::futuristic:
        return futuristic_convolve(q_, f, g);
      case ConvolutionKind::historistic:
        return historistic_convolve(q_, f, g);
      default:
        return convolve(q_, f, g);
    }
  }
  [[nodiscard]] value_type join(const value_type& f, const value_type& g) const { return psq::join(q_, f, g); }
  [[nodiscard]] value_type meet(const value_type& f, const value_type& g) const { return psq::meet(q_, f, g); }
  [[nodiscard]] bool leq(const value_type& f, const value_type& g) const { return psq::leq(q_, f, g); }
  [[nodiscard]] bool equal(const value_type& f, const value_type& g) const { return f == g; }
  [[nodiscard]] value_type bottom() const { return zero_series(q_, carrier_); }
  [[nodiscard]] value_type top() const { return top_series(q_, carrier_); }
  [[nodiscard]] std::optional<value_type> unit() const { return unit_; }
  [[nodiscard]] bool commutative() const { return carrier_->commutative_hint() && q_.commutative(); }
  [[nodiscard]] std::string describe(const value_type& f) const { return psq::describe(q_, f); }

  [[nodiscard]] std::string explain(const value_type& lhs, const value_type& rhs) const {
    for (std::uint32_t x = 0; x < carrier_->size(); ++x) {
      const auto& a = lhs[Element{x}];
      const auto& b = rhs[Element{x}];
      if (!(a == b)) {
        return "at " + carrier_->label(Element{x}) + ": lhs=" + q_.format(a) + " rhs=" + q_.format(b);
      }
    }
    return "equal";
  }

  /// Whole lifted space when small, else bottom/top/unit, atoms, seeded randoms and closures.
  [[nodiscard]] Pool<value_type> pool(const CheckOptions& options) const {
    Pool<value_type> out;
    auto add = [&](std::string name, value_type v) {
      for (const auto& p : out) {
        if (p.value == v) return;
      }
      out.push_back({std::move(name), std::move(v)});
    };
    const std::size_t n = carrier_->size();
    if (auto all = q_.all_values()) {
      double space = 1;
      for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(all->size());
      if (space <= static_cast<double>(options.full_space_limit)) {
        std::vector<std::size_t> digit(n, 0);
        for (;;) {
          value_type f(carrier_, q_.bottom());
          for (std::uint32_t i = 0; i < n; ++i) f[Element{i}] = (*all)[digit[i]];
          out.push_back({describe(f), std::move(f)});
          std::size_t i = 0;
          while (i < n && digit[i] + 1 == all->size()) digit[i++] = 0;
          if (i == n) break;
          ++digit[i];
        }
        return out;
      }
    }
    add("O", bottom());
    add("top", top());
    if (unit_) add("1", *unit_);
    const auto samples = q_.samples();
    for (std::uint32_t x = 0; x < n; ++x) {
      for (const auto& v : samples) {
        value_type f(carrier_, q_.bottom());
        f[Element{x}] = v;
        auto name = describe(f);
        add(std::move(name), std::move(f));
      }
    }
    auto randoms = random_series(options);
    for (std::size_t i = 0; i < randoms.size(); ++i) add("r" + std::to_string(i), randoms[i]);
    for (std::size_t i = 0; i + 1 < randoms.size(); i += 2) {
      add("r" + std::to_string(i) + "+r" + std::to_string(i + 1), join(randoms[i], randoms[i + 1]));
      add("r" + std::to_string(i) + "*r" + std::to_string(i + 1), mult(randoms[i], randoms[i + 1]));
    }
    return out;
  }

  [[nodiscard]] std::vector<value_type> random_series(const CheckOptions& options) const {
    std::mt19937_64 rng(law_seed(options.seed, "pool:" + carrier_->name()));
    std::vector<typename Q::value_type> cells = q_.samples();
    cells.push_back(q_.bottom());
    cells.push_back(q_.bottom());
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    std::vector<value_type> out;
    for (std::size_t k = 0; k < options.random_series; ++k) {
      value_type f(carrier_, q_.bottom());
      for (std::uint32_t x = 0; x < carrier_->size(); ++x) f[Element{x}] = cells[pick(rng)];
      out.push_back(std::move(f));
    }
    return out;
  }

 private:
  CarrierPtr carrier_;
  Q q_;
  std::optional<value_type> unit_;
  ConvolutionKind kind_;
};

/**
 * The lifted space of a partial target: series may be undefined pointwise and
 * multiplication is convolve_partial. Undefined sits below every value.
 */
template <PartialTarget Q>
class PartialLiftedAlgebra {
 public:
  using cell_type = std::optional<typename Q::value_type>;
  using value_type = PartialSeries<typename Q::value_type>;

  PartialLiftedAlgebra(CarrierPtr carrier, Q target, std::optional<value_type> unit = std::nullopt,
                       EmptyPolicy policy = EmptyPolicy::undefined)
      : carrier_(std::move(carrier)), q_(std::move(target)), unit_(std::move(unit)), policy_(policy) {
    if (!unit_ && carrier_->unit() && q_.unit()) {
      value_type e(carrier_, std::nullopt);
      e[*carrier_->unit()] = *q_.unit();
      unit_ = std::move(e);
    }
  }

  [[nodiscard]] std::string name() const { return carrier_->name() + "(partial)"; }
  [[nodiscard]] const Q& target() const noexcept { return q_; }

  [[nodiscard]] value_type mult(const value_type& f, const value_type& g) const {
    return convolve_partial(q_, f, g, policy_);
  }
  [[nodiscard]] value_type join(const value_type& f, const value_type& g) const {
    return pointwise(f, g, [&](const cell_type& a, const cell_type& b) -> cell_type {
      if (!a) return b;
      if (!b) return a;
      return q_.join(*a, *b);
    });
  }
  [[nodiscard]] value_type meet(const value_type& f, const value_type& g) const {
    return pointwise(f, g, [&](const cell_type& a, const cell_type& b) -> cell_type {
      if (!a || !b) return std::nullopt;
      return q_.meet(*a, *b);
    });
  }
  [[nodiscard]] bool leq(const value_type& f, const value_type& g) const {
    for (std::uint32_t x = 0; x < carrier_->size(); ++x) {
      const auto& a = f[Element{x}];
      const auto& b = g[Element{x}];
      if (!a) continue;
      if (!b || !q_.leq(*a, *b)) return false;
    }
    return true;
  }
  [[nodiscard]] bool equal(const value_type& f, const value_type& g) const { return f == g; }
  [[nodiscard]] value_type bottom() const { return value_type(carrier_, std::nullopt); }
  [[nodiscard]] value_type top() const { return value_type(carrier_, cell_type(q_.top())); }
  [[nodiscard]] std::optional<value_type> unit() const { return unit_; }
  [[nodiscard]] bool commutative() const { return carrier_->commutative_hint() && q_.commutative(); }
  [[nodiscard]] std::string describe(const value_type& f) const { return psq::describe(q_, f); }

  [[nodiscard]] std::string explain(const value_type& lhs, const value_type& rhs) const {
    auto show = [&](const cell_type& v) { return v ? q_.format(*v) : std::string("undefined"); };
    for (std::uint32_t x = 0; x < carrier_->size(); ++x) {
      if (!(lhs[Element{x}] == rhs[Element{x}])) {
        return "at " + carrier_->label(Element{x}) + ": lhs=" + show(lhs[Element{x}]) +
               " rhs=" + show(rhs[Element{x}]);
      }
    }
    return "equal";
  }

  [[nodiscard]] Pool<value_type> pool(const CheckOptions& options) const {
    Pool<value_type> out;
    auto add = [&](std::string name, value_type v) {
      for (const auto& p : out) {
        if (p.value == v) return;
      }
      out.push_back({std::move(name), std::move(v)});
    };
    add("O", bottom());
    add("zero", value_type(carrier_, cell_type(q_.bottom())));
    add("top", top());
    if (unit_) add("1", *unit_);
    for (std::uint32_t x = 0; x < carrier_->size(); ++x) {
      for (const auto& v : q_.samples()) {
        value_type f(carrier_, std::nullopt);
        f[Element{x}] = v;
        auto name = describe(f);
        add(std::move(name), std::move(f));
      }
    }
    std::mt19937_64 rng(law_seed(options.seed, "pool:" + name()));
    std::vector<cell_type> cells{std::nullopt, cell_type(q_.bottom())};
    for (const auto& v : q_.samples()) cells.emplace_back(v);
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    std::vector<value_type> randoms;
    for (std::size_t k = 0; k < options.random_series; ++k) {
      value_type f(carrier_, std::nullopt);
      for (std::uint32_t x = 0; x < carrier_->size(); ++x) f[Element{x}] = cells[pick(rng)];
      add("r" + std::to_string(k), f);
      randoms.push_back(std::move(f));
    }
    for (std::size_t i = 0; i + 1 < randoms.size(); i += 2) {
      add("r" + std::to_string(i) + "+r" + std::to_string(i + 1), join(randoms[i], randoms[i + 1]));
      add("r" + std::to_string(i) + "*r" + std::to_string(i + 1), mult(randoms[i], randoms[i + 1]));
    }
    return out;
  }

 private:
  template <class F>
  value_type pointwise(const value_type& f, const value_type& g, F op) const {
    require_same_carrier(f.carrier(), g.carrier());
    value_type r = f;
    for (std::uint32_t x = 0; x < carrier_->size(); ++x) r[Element{x}] = op(f[Element{x}], g[Element{x}]);
    return r;
  }

  CarrierPtr carrier_;
  Q q_;
  std::optional<value_type> unit_;
  EmptyPolicy policy_;
};

}  // namespace psq
