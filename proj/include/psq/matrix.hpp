#pragma once

#include <random>
#include <string>
#include <vector>

#include "psq/algebra.hpp"
#include "psq/errors.hpp"
#include "psq/quantale.hpp"

namespace psq {

/// Square matrix with entries in a quantale, row-major.
template <class V>
struct MatrixSeries {
  std::size_t n = 0;
  std::vector<V> entries;

  MatrixSeries() = default;
  MatrixSeries(std::size_t dim, V fill) : n(dim), entries(dim * dim, fill) {}

  V& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
  const V& operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  bool operator==(const MatrixSeries&) const = default;
};

namespace detail {
template <class V>
void require_same_dimension(const MatrixSeries<V>& a, const MatrixSeries<V>& b) {
  if (a.n != b.n) {
    throw UsageError("matrix dimension mismatch: " + std::to_string(a.n) + " vs " + std::to_string(b.n));
  }
}
}  // namespace detail

template <Quantale Q>
MatrixSeries<typename Q::value_type> matrix_zero(const Q& q, std::size_t n) {
  return {n, q.bottom()};
}

template <Quantale Q>
MatrixSeries<typename Q::value_type> matrix_unit(const Q& q, std::size_t n) {
  auto one = q.unit();
  if (!one) throw UsageError("matrix_unit: target has no unit");
  MatrixSeries<typename Q::value_type> m(n, q.bottom());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = *one;
  return m;
}

template <Quantale Q>
MatrixSeries<typename Q::value_type> matrix_add(const Q& q, const MatrixSeries<typename Q::value_type>& a,
                                                const MatrixSeries<typename Q::value_type>& b) {
  detail::require_same_dimension(a, b);
  auto r = a;
  for (std::size_t k = 0; k < r.entries.size(); ++k) r.entries[k] = q.join(a.entries[k], b.entries[k]);
  return r;
}

template <Quantale Q>
MatrixSeries<typename Q::value_type> matrix_meet(const Q& q, const MatrixSeries<typename Q::value_type>& a,
                                                 const MatrixSeries<typename Q::value_type>& b) {
  detail::require_same_dimension(a, b);
  auto r = a;
  for (std::size_t k = 0; k < r.entries.size(); ++k) r.entries[k] = q.meet(a.entries[k], b.entries[k]);
  return r;
}

/// (a·b)(i,j) = Σ_k a(i,k)·b(k,j).
template <Quantale Q>
MatrixSeries<typename Q::value_type> matrix_mult(const Q& q, const MatrixSeries<typename Q::value_type>& a,
                                                 const MatrixSeries<typename Q::value_type>& b) {
  detail::require_same_dimension(a, b);
  MatrixSeries<typename Q::value_type> r(a.n, q.bottom());
  for (std::size_t i = 0; i < a.n; ++i) {
    for (std::size_t j = 0; j < a.n; ++j) {
      auto acc = q.bottom();
      for (std::size_t k = 0; k < a.n; ++k) acc = q.join(acc, q.mult(a(i, k), b(k, j)));
      r(i, j) = acc;
    }
  }
  return r;
}

/// The quantale of n×n matrices over Q.
template <Quantale Q>
class MatrixAlgebra {
 public:
  using value_type = MatrixSeries<typename Q::value_type>;

  MatrixAlgebra(Q target, std::size_t n) : q_(std::move(target)), n_(n) {}

  [[nodiscard]] std::string name() const { return "matrix(" + std::to_string(n_) + ")"; }
  [[nodiscard]] const Q& target() const noexcept { return q_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return n_; }
  [[nodiscard]] value_type mult(const value_type& a, const value_type& b) const { return matrix_mult(q_, a, b); }
  [[nodiscard]] value_type join(const value_type& a, const value_type& b) const { return matrix_add(q_, a, b); }
  [[nodiscard]] value_type meet(const value_type& a, const value_type& b) const { return matrix_meet(q_, a, b); }
  [[nodiscard]] bool leq(const value_type& a, const value_type& b) const {
    detail::require_same_dimension(a, b);
    for (std::size_t k = 0; k < a.entries.size(); ++k) {
      if (!q_.leq(a.entries[k], b.entries[k])) return false;
    }
    return true;
  }
  [[nodiscard]] bool equal(const value_type& a, const value_type& b) const { return a == b; }
  [[nodiscard]] value_type bottom() const { return matrix_zero(q_, n_); }
  [[nodiscard]] value_type top() const { return {n_, q_.top()}; }
  [[nodiscard]] std::optional<value_type> unit() const {
    if (!q_.unit()) return std::nullopt;
    return matrix_unit(q_, n_);
  }
  [[nodiscard]] bool commutative() const { return n_ <= 1 && q_.commutative(); }

  [[nodiscard]] std::string describe(const value_type& a) const {
    std::string out = "[";
    for (std::size_t i = 0; i < n_; ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < n_; ++j) {
        if (j) out += ",";
        out += q_.format(a(i, j));
      }
      out += "]";
    }
    return out + "]";
  }

  [[nodiscard]] std::string explain(const value_type& lhs, const value_type& rhs) const {
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (!(lhs(i, j) == rhs(i, j))) {
          return "at (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): lhs=" + q_.format(lhs(i, j)) +
                 " rhs=" + q_.format(rhs(i, j));
        }
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
    add("top", top());
    if (auto one = unit()) add("1", *one);
    std::mt19937_64 rng(law_seed(options.seed, "pool:" + name()));
    auto cells = q_.samples();
    cells.push_back(q_.bottom());
    cells.push_back(q_.bottom());
    std::uniform_int_distribution<std::size_t> pick(0, cells.size() - 1);
    for (std::size_t k = 0; k < options.random_series; ++k) {
      value_type m(n_, q_.bottom());
      for (auto& e : m.entries) e = cells[pick(rng)];
      add("m" + std::to_string(k), std::move(m));
    }
    return out;
  }

 private:
  Q q_;
  std::size_t n_;
};

/// Kleene star of a matrix by fixpoint iteration.
template <Quantale Q>
MatrixSeries<typename Q::value_type> matrix_star(const Q& q, const MatrixSeries<typename Q::value_type>& m,
                                                 std::size_t cap = 1000) {
  return star(MatrixAlgebra<Q>(q, m.n), m, cap);
}

}  // namespace psq
