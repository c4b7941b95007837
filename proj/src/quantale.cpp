#include "psq/quantale.hpp"

#include <algorithm>
#include <sstream>

#include "psq/errors.hpp"

namespace psq {

TropicalQuantale::TropicalQuantale(value_type cap) : cap_(cap) {
  if (cap < 0 || cap > 1'000'000) throw UsageError("tropical cap must lie in [0, 10^6]");
}

TropicalQuantale::value_type TropicalQuantale::mult(value_type a, value_type b) const noexcept {
  if (a == neg_inf || b == neg_inf) return neg_inf;
  if (a == pos_inf || b == pos_inf) return pos_inf;
  return clamp(a + b);
}

std::string TropicalQuantale::format(value_type a) const {
  if (a == neg_inf) return "-inf";
  if (a == pos_inf) return "inf";
  return std::to_string(a);
}

std::vector<TropicalQuantale::value_type> TropicalQuantale::samples() const {
  std::vector<value_type> s{0, 1, cap_, pos_inf};
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::optional<std::vector<TropicalQuantale::value_type>> TropicalQuantale::all_values() const {
  if (cap_ > 62) return std::nullopt;
  std::vector<value_type> v{neg_inf};
  for (value_type i = 0; i <= cap_; ++i) v.push_back(i);
  v.push_back(pos_inf);
  return v;
}

PowersetQuantale::PowersetQuantale(CarrierPtr base) : base_(std::move(base)) {
  const std::size_t n = base_->size();
  if (n > 64) throw UsageError("powerset target needs a carrier with at most 64 elements");
  full_ = n == 64 ? ~value_type{0} : (value_type{1} << n) - 1;
  if (n <= 9) {
    const std::size_t m = std::size_t{1} << n;
    table_.resize(m * m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        value_type r = 0;
        for (std::uint32_t x = 0; x < n; ++x) {
          if (!((a >> x) & 1U)) continue;
          for (std::uint32_t y = 0; y < n; ++y) {
            if (!((b >> y) & 1U)) continue;
            if (auto p = base_->compose(Element{x}, Element{y})) r |= value_type{1} << p->index;
          }
        }
        table_[a * m + b] = static_cast<std::uint16_t>(r);
      }
    }
  }
}

PowersetQuantale::value_type PowersetQuantale::mult(value_type a, value_type b) const {
  if (!table_.empty()) return table_[(a << base_->size()) | b];
  value_type r = 0;
  for (value_type ra = a; ra; ra &= ra - 1) {
    auto x = static_cast<std::uint32_t>(__builtin_ctzll(ra));
    for (value_type rb = b; rb; rb &= rb - 1) {
      auto y = static_cast<std::uint32_t>(__builtin_ctzll(rb));
      if (auto p = base_->compose(Element{x}, Element{y})) r |= value_type{1} << p->index;
    }
  }
  return r;
}

std::optional<PowersetQuantale::value_type> PowersetQuantale::unit() const {
  if (auto e = base_->unit()) return singleton(*e);
  return std::nullopt;
}

std::string PowersetQuantale::format(value_type a) const {
  std::string s = "{";
  bool first = true;
  for (std::uint32_t x = 0; x < base_->size(); ++x) {
    if (!((a >> x) & 1U)) continue;
    if (!first) s += ",";
    s += base_->label(Element{x});
    first = false;
  }
  return s + "}";
}

std::vector<PowersetQuantale::value_type> PowersetQuantale::samples() const {
  std::vector<value_type> s;
  if (auto u = unit()) s.push_back(*u);
  for (std::uint32_t x = 0; x < std::min<std::size_t>(3, base_->size()); ++x) {
    s.push_back(singleton(Element{x}));
  }
  s.push_back(full_);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

std::optional<std::vector<PowersetQuantale::value_type>> PowersetQuantale::all_values() const {
  if (base_->size() > 12) return std::nullopt;
  std::vector<value_type> v(std::size_t{1} << base_->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

PowersetQuantale::value_type PowersetQuantale::set_of(const std::vector<std::string>& labels) const {
  value_type r = 0;
  for (const auto& l : labels) r |= singleton(base_->at(l));
  return r;
}

VectorQuantale::VectorQuantale(std::size_t dimension, std::int32_t max_value)
    : dim_(dimension), max_(max_value) {
  if (dim_ == 0 || dim_ > max_dimension) throw UsageError("vector dimension must lie in [1, 4]");
  if (max_ < 0) throw UsageError("vector values must be natural numbers");
}

VectorQuantale::value_type VectorQuantale::top() const noexcept {
  value_type t{};
  for (std::size_t i = 0; i < dim_; ++i) t[i] = max_;
  return t;
}

VectorQuantale::value_type VectorQuantale::join(const value_type& a, const value_type& b) const noexcept {
  value_type r{};
  for (std::size_t i = 0; i < dim_; ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

VectorQuantale::value_type VectorQuantale::meet(const value_type& a, const value_type& b) const noexcept {
  value_type r{};
  for (std::size_t i = 0; i < dim_; ++i) r[i] = std::min(a[i], b[i]);
  return r;
}

bool VectorQuantale::leq(const value_type& a, const value_type& b) const noexcept {
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

std::optional<VectorQuantale::value_type> VectorQuantale::try_mult(const value_type& a,
                                                                    const value_type& b) const {
  value_type r{};
  for (std::size_t i = 0; i < dim_; ++i) {
    if (a[i] != 0 && b[i] != 0) return std::nullopt;
    r[i] = a[i] + b[i];
  }
  return r;
}

std::string VectorQuantale::format(const value_type& a) const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < dim_; ++i) out << (i ? "," : "") << a[i];
  out << ")";
  return out.str();
}

std::vector<VectorQuantale::value_type> VectorQuantale::samples() const {
  std::vector<value_type> s;
  for (std::size_t i = 0; i < dim_; ++i) {
    value_type v{};
    v[i] = max_;
    s.push_back(v);
  }
  s.push_back(top());
  return s;
}

std::vector<VectorQuantale::value_type> VectorQuantale::all_values() const {
  std::vector<value_type> out;
  value_type v{};
  for (;;) {
    out.push_back(v);
    std::size_t i = 0;
    while (i < dim_ && v[i] == max_) v[i++] = 0;
    if (i == dim_) break;
    ++v[i];
  }
  return out;
}

}  // namespace psq
