#pragma once

#include <algorithm>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "psq/algebra.hpp"
#include "psq/law_suites.hpp"
#include "psq/power_series.hpp"

namespace psq {

inline constexpr std::size_t default_bi_cell_limit = 1000000;

/// A total function carrier1 → carrier2 → V stored as a dense row-major grid.
template <class V>
class BiSeries {
 public:
  using value_type = V;

  BiSeries(CarrierPtr c1, CarrierPtr c2, V fill, std::size_t cell_limit = default_bi_cell_limit)
      : c1_(std::move(c1)), c2_(std::move(c2)) {
    const std::size_t cells = c1_->size() * c2_->size();
    if (cells > cell_limit) {
      throw UsageError("bi-series grid of " + std::to_string(cells) + " cells exceeds limit " +
                       std::to_string(cell_limit));
    }
    values_.assign(cells, fill);
  }

  [[nodiscard]] const CarrierPtr& carrier1() const noexcept { return c1_; }
  [[nodiscard]] const CarrierPtr& carrier2() const noexcept { return c2_; }
  [[nodiscard]] const V& operator()(Element x, Element y) const {
    return values_[x.index * c2_->size() + y.index];
  }
  [[nodiscard]] V& operator()(Element x, Element y) { return values_[x.index * c2_->size() + y.index]; }
  [[nodiscard]] const std::vector<V>& values() const noexcept { return values_; }
  [[nodiscard]] V* data() noexcept { return values_.data(); }

  friend bool operator==(const BiSeries& a, const BiSeries& b) { return a.values_ == b.values_; }

 private:
  CarrierPtr c1_;
  CarrierPtr c2_;
  std::vector<V> values_;
};

inline void require_same_grid(const CarrierPtr& a1, const CarrierPtr& a2, const CarrierPtr& b1,
                              const CarrierPtr& b2) {
  require_same_carrier(a1, b1);
  require_same_carrier(a2, b2);
}

template <class V, class Op>
BiSeries<V> bi_pointwise(const BiSeries<V>& f, const BiSeries<V>& g, Op op) {
  require_same_grid(f.carrier1(), f.carrier2(), g.carrier1(), g.carrier2());
  BiSeries<V> r = f;
  for (std::uint32_t x = 0; x < f.carrier1()->size(); ++x) {
    for (std::uint32_t y = 0; y < f.carrier2()->size(); ++y) {
      r(Element{x}, Element{y}) = op(f(Element{x}, Element{y}), g(Element{x}, Element{y}));
    }
  }
  return r;
}

template <class Q>
BiSeries<typename Q::value_type> bi_join(const Q& q, const BiSeries<typename Q::value_type>& f,
                                         const BiSeries<typename Q::value_type>& g) {
  return bi_pointwise(f, g, [&](const auto& a, const auto& b) { return q.join(a, b); });
}

template <class Q>
BiSeries<typename Q::value_type> bi_meet(const Q& q, const BiSeries<typename Q::value_type>& f,
                                         const BiSeries<typename Q::value_type>& g) {
  return bi_pointwise(f, g, [&](const auto& a, const auto& b) { return q.meet(a, b); });
}

template <class Q>
bool bi_leq(const Q& q, const BiSeries<typename Q::value_type>& f,
            const BiSeries<typename Q::value_type>& g) {
  require_same_grid(f.carrier1(), f.carrier2(), g.carrier1(), g.carrier2());
  for (std::size_t i = 0; i < f.values().size(); ++i) {
    if (!q.leq(f.values()[i], g.values()[i])) return false;
  }
  return true;
}

/// (F∘G) x y = join over x = x1·x2 of F x1 y · G x2 y.
template <Quantale Q>
BiSeries<typename Q::value_type> hconvolve(const Q& q, const BiSeries<typename Q::value_type>& f,
                                           const BiSeries<typename Q::value_type>& g) {
  require_same_grid(f.carrier1(), f.carrier2(), g.carrier1(), g.carrier2());
  const Carrier& s1 = *f.carrier1();
  const std::size_t n2 = f.carrier2()->size();
  const auto zero = q.bottom();
  BiSeries<typename Q::value_type> r(f.carrier1(), f.carrier2(), zero);
  const auto* fv = f.values().data();
  const auto* gv = g.values().data();
  auto* rv = r.data();
  for (std::uint32_t x = 0; x < s1.size(); ++x) {
    for (const Split& s : s1.splittings(Element{x})) {
      const auto* a = fv + s.left.index * n2;
      const auto* b = gv + s.right.index * n2;
      auto* out = rv + x * n2;
      for (std::size_t y = 0; y < n2; ++y) {
        if (a[y] == zero) continue;
        out[y] = q.join(out[y], q.mult(a[y], b[y]));
      }
    }
  }
  return r;
}

/// (F•G) x y = join over y = y1·y2 of F x y1 · G x y2.
template <Quantale Q>
BiSeries<typename Q::value_type> vconvolve(const Q& q, const BiSeries<typename Q::value_type>& f,
                                           const BiSeries<typename Q::value_type>& g) {
  require_same_grid(f.carrier1(), f.carrier2(), g.carrier1(), g.carrier2());
  const Carrier& s2 = *f.carrier2();
  const std::size_t n2 = s2.size();
  const auto zero = q.bottom();
  BiSeries<typename Q::value_type> r(f.carrier1(), f.carrier2(), zero);
  const auto* fv = f.values().data();
  const auto* gv = g.values().data();
  auto* rv = r.data();
  for (std::uint32_t x = 0; x < f.carrier1()->size(); ++x) {
    const auto* a = fv + x * n2;
    const auto* b = gv + x * n2;
    for (std::uint32_t y = 0; y < n2; ++y) {
      auto& cell = rv[x * n2 + y];
      for (const Split& s : s2.splittings(Element{y})) {
        if (a[s.left.index] == zero) continue;
        cell = q.join(cell, q.mult(a[s.left.index], b[s.right.index]));
      }
    }
  }
  return r;
}

/// The section F^y = λx. F x y.
template <class V>
PowerSeries<V> partial_eval_row(const BiSeries<V>& f, Element y) {
  if (y.index >= f.carrier2()->size()) throw UsageError("row index out of range");
  PowerSeries<V> r(f.carrier1(), f(Element{0}, y));
  for (std::uint32_t x = 0; x < f.carrier1()->size(); ++x) r[Element{x}] = f(Element{x}, y);
  return r;
}

/// The section F^x = λy. F x y.
template <class V>
PowerSeries<V> partial_eval_col(const BiSeries<V>& f, Element x) {
  if (x.index >= f.carrier1()->size()) throw UsageError("column index out of range");
  PowerSeries<V> r(f.carrier2(), f(x, Element{0}));
  for (std::uint32_t y = 0; y < f.carrier2()->size(); ++y) r[Element{y}] = f(x, Element{y});
  return r;
}

/// 𝟙∘ x y = 1 iff x is the unit of carrier1.
template <Quantale Q>
BiSeries<typename Q::value_type> bi_unit_h(const Q& q, const CarrierPtr& c1, const CarrierPtr& c2) {
  if (!c1->unit() || !q.unit()) throw UsageError(c1->name() + ": horizontal unit needs unital carrier");
  BiSeries<typename Q::value_type> r(c1, c2, q.bottom());
  for (std::uint32_t y = 0; y < c2->size(); ++y) r(*c1->unit(), Element{y}) = *q.unit();
  return r;
}

/// 𝟙• x y = 1 iff y is the unit of carrier2.
template <Quantale Q>
BiSeries<typename Q::value_type> bi_unit_v(const Q& q, const CarrierPtr& c1, const CarrierPtr& c2) {
  if (!c2->unit() || !q.unit()) throw UsageError(c2->name() + ": vertical unit needs unital carrier");
  BiSeries<typename Q::value_type> r(c1, c2, q.bottom());
  for (std::uint32_t x = 0; x < c1->size(); ++x) r(Element{x}, *c2->unit()) = *q.unit();
  return r;
}

template <class V>
struct BiUnits {
  BiSeries<V> horizontal;
  BiSeries<V> vertical;
};

template <Quantale Q>
BiUnits<typename Q::value_type> bi_units(const Q& q, const CarrierPtr& c1, const CarrierPtr& c2) {
  return {bi_unit_h(q, c1, c2), bi_unit_v(q, c1, c2)};
}

template <class Q>
std::string describe(const Q& q, const BiSeries<typename Q::value_type>& f) {
  std::string out = "{";
  std::size_t shown = 0;
  std::size_t total = 0;
  for (std::uint32_t x = 0; x < f.carrier1()->size(); ++x) {
    for (std::uint32_t y = 0; y < f.carrier2()->size(); ++y) {
      const auto& v = f(Element{x}, Element{y});
      if (v == q.bottom()) continue;
      ++total;
      if (shown == 4) continue;
      if (shown++ > 0) out += ", ";
      out += f.carrier1()->label(Element{x}) + "/" + f.carrier2()->label(Element{y}) + ":" + q.format(v);
    }
  }
  if (total > shown) out += ", +" + std::to_string(total - shown);
  return out + "}";
}

enum class BiDirection : std::uint8_t { horizontal, vertical };

/**
 * The lifted space Q^(S1×S2) with one of its two multiplications. Both
 * directions build the same pool, so reports for ∘ and • are comparable.
 */
template <Quantale Q>
class BiAlgebra {
 public:
  using value_type = BiSeries<typename Q::value_type>;

  BiAlgebra(CarrierPtr c1, CarrierPtr c2, Q target, BiDirection dir, Pool<value_type> seeds = {})
      : c1_(std::move(c1)), c2_(std::move(c2)), q_(std::move(target)), dir_(dir), seeds_(std::move(seeds)) {}

  [[nodiscard]] std::string name() const {
    return c1_->name() + "x" + c2_->name() + (dir_ == BiDirection::horizontal ? "/h" : "/v");
  }
  [[nodiscard]] BiDirection direction() const noexcept { return dir_; }
  [[nodiscard]] const Q& target() const noexcept { return q_; }

  [[nodiscard]] value_type mult(const value_type& f, const value_type& g) const {
    return dir_ == BiDirection::horizontal ? hconvolve(q_, f, g) : vconvolve(q_, f, g);
  }
  [[nodiscard]] value_type join(const value_type& f, const value_type& g) const { return bi_join(q_, f, g); }
  [[nodiscard]] value_type meet(const value_type& f, const value_type& g) const { return bi_meet(q_, f, g); }
  [[nodiscard]] bool leq(const value_type& f, const value_type& g) const { return bi_leq(q_, f, g); }
  [[nodiscard]] bool equal(const value_type& f, const value_type& g) const { return f == g; }
  [[nodiscard]] value_type bottom() const { return value_type(c1_, c2_, q_.bottom()); }
  [[nodiscard]] value_type top() const { return value_type(c1_, c2_, q_.top()); }

  [[nodiscard]] std::optional<value_type> unit() const {
    const CarrierPtr& c = dir_ == BiDirection::horizontal ? c1_ : c2_;
    if (!c->unit() || !q_.unit()) return std::nullopt;
    return dir_ == BiDirection::horizontal ? bi_unit_h(q_, c1_, c2_) : bi_unit_v(q_, c1_, c2_);
  }

  [[nodiscard]] bool commutative() const {
    const CarrierPtr& c = dir_ == BiDirection::horizontal ? c1_ : c2_;
    return c->commutative_hint() && q_.commutative();
  }

  [[nodiscard]] std::string describe(const value_type& f) const { return psq::describe(q_, f); }

  [[nodiscard]] std::string explain(const value_type& lhs, const value_type& rhs) const {
    for (std::uint32_t x = 0; x < c1_->size(); ++x) {
      for (std::uint32_t y = 0; y < c2_->size(); ++y) {
        const auto& a = lhs(Element{x}, Element{y});
        const auto& b = rhs(Element{x}, Element{y});
        if (!(a == b)) {
          return "at " + c1_->label(Element{x}) + " / " + c2_->label(Element{y}) +
                 ": lhs=" + q_.format(a) + " rhs=" + q_.format(b);
        }
      }
    }
    return "equal";
  }

  /// Seeds, bottom, top, both units, sparse seeded randoms and one product in each direction.
  [[nodiscard]] Pool<value_type> pool(const CheckOptions& options) const {
    Pool<value_type> out;
    auto add = [&](std::string name, value_type v) {
      for (const auto& p : out) {
        if (p.value == v) return;
      }
      out.push_back({std::move(name), std::move(v)});
    };
    for (const auto& s : seeds_) add(s.name, s.value);
    add("O", bottom());
    add("top", top());
    if (c1_->unit() && q_.unit()) add("1h", bi_unit_h(q_, c1_, c2_));
    if (c2_->unit() && q_.unit()) add("1v", bi_unit_v(q_, c1_, c2_));

    std::mt19937_64 rng(law_seed(options.seed, "bipool:" + c1_->name() + "x" + c2_->name()));
    const auto samples = q_.samples();
    std::uniform_int_distribution<std::size_t> pick(0, samples.size() - 1);
    std::vector<value_type> randoms;
    for (std::size_t k = 0; k < options.random_series; ++k) {
      // Densities 1/2, 1/4, 1/8 keep products away from top.
      std::bernoulli_distribution on(1.0 / static_cast<double>(2U << (k % 3)));
      value_type f = bottom();
      for (std::uint32_t x = 0; x < c1_->size(); ++x) {
        for (std::uint32_t y = 0; y < c2_->size(); ++y) {
          if (on(rng)) f(Element{x}, Element{y}) = samples[pick(rng)];
        }
      }
      add("r" + std::to_string(k), f);
      randoms.push_back(std::move(f));
    }
    if (randoms.size() >= 2) add("r0.r1", hconvolve(q_, randoms[0], randoms[1]));
    if (randoms.size() >= 4) add("r2*r3", vconvolve(q_, randoms[2], randoms[3]));
    return out;
  }

 private:
  CarrierPtr c1_;
  CarrierPtr c2_;
  Q q_;
  BiDirection dir_;
  Pool<value_type> seeds_;
};

/**
 * Sections commute with joins, meets, the matching convolution and the units:
 * (ΣF)^y = ΣF^y, (ΠF)^y = ΠF^y, (F∘G)^y = F^y·G^y, (𝟙∘)^y = 𝟙 of carrier1,
 * and the duals for columns.
 */
template <Quantale Q>
std::vector<LawReport> check_section_laws(const Q& q, const CarrierPtr& c1, const CarrierPtr& c2,
                                          const Pool<BiSeries<typename Q::value_type>>& pool,
                                          const CheckOptions& options) {
  using V = typename Q::value_type;
  using B = BiSeries<V>;
  const auto names = pool_names(pool);
  std::vector<LawReport> out;

  auto rows_equal = [&](const B& lhs, auto&& rhs_row) -> Outcome {
    for (std::uint32_t y = 0; y < c2->size(); ++y) {
      PowerSeries<V> expect = rhs_row(Element{y});
      if (!(partial_eval_row(lhs, Element{y}) == expect)) {
        return Outcome::violated("row " + c2->label(Element{y}) + " differs");
      }
    }
    return Outcome::ok();
  };
  auto cols_equal = [&](const B& lhs, auto&& rhs_col) -> Outcome {
    for (std::uint32_t x = 0; x < c1->size(); ++x) {
      PowerSeries<V> expect = rhs_col(Element{x});
      if (!(partial_eval_col(lhs, Element{x}) == expect)) {
        return Outcome::violated("column " + c1->label(Element{x}) + " differs");
      }
    }
    return Outcome::ok();
  };
  auto family = [&](std::span<const std::size_t> idx, bool is_join) {
    B acc(c1, c2, is_join ? q.bottom() : q.top());
    for (std::size_t i : idx) acc = is_join ? bi_join(q, acc, pool[i].value) : bi_meet(q, acc, pool[i].value);
    return acc;
  };
  auto section_family = [&](std::span<const std::size_t> idx, bool is_join, bool row, Element at) {
    const CarrierPtr& c = row ? c1 : c2;
    PowerSeries<V> acc(c, is_join ? q.bottom() : q.top());
    for (std::size_t i : idx) {
      auto s = row ? partial_eval_row(pool[i].value, at) : partial_eval_col(pool[i].value, at);
      acc = is_join ? psq::join(q, acc, s) : psq::meet(q, acc, s);
    }
    return acc;
  };

  for (std::size_t k = 0; k <= 3; ++k) {
    const std::string ks = std::to_string(k);
    for (bool is_join : {true, false}) {
      const std::string op = is_join ? "join" : "meet";
      out.push_back(check_law("section/row-" + op + "/" + ks, names, {0, k}, options, [&](auto idx) {
        return rows_equal(family(idx, is_join),
                          [&](Element y) { return section_family(idx, is_join, true, y); });
      }));
      out.push_back(check_law("section/col-" + op + "/" + ks, names, {0, k}, options, [&](auto idx) {
        return cols_equal(family(idx, is_join),
                          [&](Element x) { return section_family(idx, is_join, false, x); });
      }));
    }
  }

  out.push_back(check_law("section/row-hconvolve", names, {2, 0}, options, [&](auto idx) {
    const B& f = pool[idx[0]].value;
    const B& g = pool[idx[1]].value;
    return rows_equal(hconvolve(q, f, g), [&](Element y) {
      return convolve(q, partial_eval_row(f, y), partial_eval_row(g, y));
    });
  }));
  out.push_back(check_law("section/col-vconvolve", names, {2, 0}, options, [&](auto idx) {
    const B& f = pool[idx[0]].value;
    const B& g = pool[idx[1]].value;
    return cols_equal(vconvolve(q, f, g), [&](Element x) {
      return convolve(q, partial_eval_col(f, x), partial_eval_col(g, x));
    });
  }));

  auto unit_law = [&](const std::string& law, bool row) {
    const CarrierPtr& c = row ? c1 : c2;
    if (!c->unit() || !q.unit()) {
      LawReport r;
      r.law = law;
      r.status = LawStatus::skipped;
      r.note = "no unit";
      return r;
    }
    return check_law(law, names, {0, 0}, options, [&](auto) {
      if (row) return rows_equal(bi_unit_h(q, c1, c2), [&](Element) { return unit_series(q, c1); });
      return cols_equal(bi_unit_v(q, c1, c2), [&](Element) { return unit_series(q, c2); });
    });
  };
  out.push_back(unit_law("section/row-unit", true));
  out.push_back(unit_law("section/col-unit", false));
  return out;
}

/// Law names prefixed with `prefix`.
inline std::vector<LawReport> prefixed(std::vector<LawReport> reports, const std::string& prefix) {
  for (auto& r : reports) r.law = prefix + r.law;
  return reports;
}

}  // namespace psq
