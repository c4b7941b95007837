#include "psq/instances.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "psq/errors.hpp"

namespace psq {
namespace {

constexpr std::size_t max_carrier = 4096;

void bound(std::size_t size, const std::string& what) {
  if (size > max_carrier) {
    throw UsageError(what + ": carrier of " + std::to_string(size) + " elements exceeds bound " +
                     std::to_string(max_carrier));
  }
}

template <class T>
CarrierPtr from_elements(std::string name, const std::vector<T>& items,
                         const std::function<std::optional<T>(const T&, const T&)>& compose,
                         const std::function<std::string(const T&)>& label, std::optional<T> unit,
                         bool commutative) {
  std::map<T, std::uint32_t> index;
  for (std::uint32_t i = 0; i < items.size(); ++i) index.emplace(items[i], i);
  Carrier::Options opt;
  opt.commutative_hint = commutative;
  for (const auto& it : items) opt.labels.push_back(label(it));
  if (unit) opt.unit = Element{index.at(*unit)};
  return make_carrier(Carrier::from_function(
      std::move(name), items.size(),
      [&](Element x, Element y) -> PartialProduct {
        auto r = compose(items[x.index], items[y.index]);
        if (!r) return std::nullopt;
        auto it = index.find(*r);
        if (it == index.end()) return std::nullopt;
        return Element{it->second};
      },
      std::move(opt)));
}

}  // namespace

CarrierPtr make_language(const std::string& alphabet, std::size_t max_len) {
  if (alphabet.empty()) throw UsageError("language: alphabet must be nonempty");
  std::vector<std::string> words{""};
  double total = 1;
  for (std::size_t len = 1; len <= max_len; ++len) {
    total += std::pow(static_cast<double>(alphabet.size()), static_cast<double>(len));
  }
  bound(static_cast<std::size_t>(std::min(total, 1e9)), "language");
  std::size_t start = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::size_t end = words.size();
    for (std::size_t i = start; i < end; ++i) {
      for (char a : alphabet) words.push_back(words[i] + a);
    }
    start = end;
  }
  std::function<std::optional<std::string>(const std::string&, const std::string&)> cat =
      [max_len](const std::string& a, const std::string& b) -> std::optional<std::string> {
    if (a.size() + b.size() > max_len) return std::nullopt;
    return a + b;
  };
  std::function<std::string(const std::string&)> label = [](const std::string& w) {
    return w.empty() ? std::string("ε") : w;
  };
  return from_elements<std::string>("language(" + alphabet + "," + std::to_string(max_len) + ")",
                                    words, cat, label, std::string(), false);
}

CarrierPtr make_relation(std::size_t points) {
  if (points == 0) throw UsageError("relation: need at least one point");
  bound(points * points, "relation");
  const std::size_t n = points;
  Carrier::Options opt;
  for (std::size_t a = 1; a <= n; ++a) {
    for (std::size_t b = 1; b <= n; ++b) {
      opt.labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
  return make_carrier(Carrier::from_function(
      "relation(" + std::to_string(n) + ")", n * n,
      [n](Element x, Element y) -> PartialProduct {
        std::size_t a = x.index / n, b = x.index % n, c = y.index / n, d = y.index % n;
        if (b != c) return std::nullopt;
        return Element{static_cast<std::uint32_t>(a * n + d)};
      },
      std::move(opt)));
}

CarrierPtr make_trace(const std::string& states, const std::string& labels,
                      std::size_t max_transitions) {
  if (states.empty() || labels.empty()) throw UsageError("trace: alphabets must be nonempty");
  std::vector<std::string> traces;
  for (char p : states) traces.emplace_back(1, p);
  std::size_t start = 0;
  for (std::size_t k = 1; k <= max_transitions; ++k) {
    std::size_t end = traces.size();
    for (std::size_t i = start; i < end; ++i) {
      for (char a : labels) {
        for (char p : states) traces.push_back(traces[i] + a + p);
      }
      bound(traces.size(), "trace");
    }
    start = end;
  }
  std::function<std::optional<std::string>(const std::string&, const std::string&)> fuse =
      [max_transitions](const std::string& x, const std::string& y) -> std::optional<std::string> {
    if (x.back() != y.front()) return std::nullopt;
    if ((x.size() - 1) / 2 + (y.size() - 1) / 2 > max_transitions) return std::nullopt;
    return x + y.substr(1);
  };
  std::function<std::string(const std::string&)> label = [](const std::string& t) { return t; };
  return from_elements<std::string>(
      "trace(" + states + "," + labels + "," + std::to_string(max_transitions) + ")", traces, fuse,
      label, std::nullopt, false);
}

std::optional<std::pair<int, int>> Interval::points() const {
  if (empty) return std::nullopt;
  int first = lo_closed ? lo : lo + 1;
  int last = hi_closed ? hi : hi - 1;
  if (first > last) return std::nullopt;
  return std::pair(first, last);
}

std::string Interval::label() const {
  if (empty) return "∅";
  return std::string(lo_closed ? "[" : "(") + std::to_string(lo) + "," + std::to_string(hi) +
         (hi_closed ? "]" : ")");
}

std::vector<Interval> enumerate_intervals(std::size_t chain, IntervalMode mode) {
  if (chain == 0) throw UsageError("interval: chain must be nonempty");
  std::vector<Interval> out;
  const int n = static_cast<int>(chain);
  if (mode == IntervalMode::nofusion) out.push_back(Interval{true, 0, 0, false, false});
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      if (mode == IntervalMode::fusion || a == b) {
        out.push_back(Interval{false, a, b, true, true});
        continue;
      }
      for (bool lc : {true, false}) {
        for (bool hc : {true, false}) out.push_back(Interval{false, a, b, lc, hc});
      }
    }
  }
  return out;
}

CarrierPtr make_interval(std::size_t chain, IntervalMode mode) {
  const auto items = enumerate_intervals(chain, mode);
  bound(items.size(), "interval");
  Carrier::Options opt;
  for (const auto& i : items) opt.labels.push_back(i.label());
  if (mode == IntervalMode::nofusion) opt.unit = Element{0};
  auto index_of = [&](const Interval& v) -> PartialProduct {
    auto it = std::find(items.begin(), items.end(), v);
    if (it == items.end()) return std::nullopt;
    return Element{static_cast<std::uint32_t>(it - items.begin())};
  };
  const bool fusion = mode == IntervalMode::fusion;
  return make_carrier(Carrier::from_function(
      std::string(fusion ? "interval-fusion(" : "interval-nofusion(") + std::to_string(chain) + ")",
      items.size(),
      [&](Element ex, Element ey) -> PartialProduct {
        const Interval& x = items[ex.index];
        const Interval& y = items[ey.index];
        if (x.empty) return ey;
        if (y.empty) return ex;
        if (x.hi != y.lo) return std::nullopt;
        // Fusion shares the endpoint; otherwise exactly one side must own it.
        if (!fusion && x.hi_closed == y.lo_closed) return std::nullopt;
        return index_of(Interval{false, x.lo, y.hi, x.lo_closed, y.hi_closed});
      },
      std::move(opt)));
}

CarrierPtr make_symbol_carrier(const std::string& symbols) {
  if (symbols.empty()) throw UsageError("symbol carrier: need at least one symbol");
  Carrier::Options opt;
  opt.commutative_hint = true;
  for (char s : symbols) opt.labels.emplace_back(1, s);
  return make_carrier(Carrier::from_function(
      "symbols(" + symbols + ")", symbols.size(),
      [](Element x, Element y) -> PartialProduct {
        if (x != y) return std::nullopt;
        return x;
      },
      std::move(opt)));
}

std::string heaplet_label(const std::vector<int>& cells) {
  std::string s = "{";
  bool first = true;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (cells[i] < 0) continue;
    if (!first) s += ",";
    first = false;
    s += "l" + std::to_string(i + 1) + ":" + std::to_string(cells[i]);
  }
  return s + "}";
}

std::optional<std::vector<long>> separate(const std::vector<long>& a, const std::vector<long>& b) {
  if (a.size() != b.size()) throw UsageError("separate: dimension mismatch");
  std::vector<long> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0 && b[i] != 0) return std::nullopt;
    r[i] = a[i] + b[i];
  }
  return r;
}

CarrierPtr make_separating(SeparatingKind kind, const SeparatingParams& p) {
  using Cells = std::vector<int>;
  std::vector<Cells> items;
  std::function<std::optional<Cells>(const Cells&, const Cells&)> compose;
  std::function<std::string(const Cells&)> label;
  std::string name;
  // Every kind is an assignment of a small digit to each coordinate.
  auto grid = [&](std::size_t coords, int lo, int hi) {
    double total = std::pow(hi - lo + 1.0, static_cast<double>(coords));
    bound(static_cast<std::size_t>(std::min(total, 1e9)), name);
    Cells c(coords, lo);
    for (;;) {
      items.push_back(c);
      std::size_t i = 0;
      while (i < coords && c[i] == hi) c[i++] = lo;
      if (i == coords) break;
      ++c[i];
    }
  };
  Cells unit;
  switch (kind) {
    case SeparatingKind::multiset_cap: {
      name = "multiset(" + p.symbols + "," + std::to_string(p.cap) + ")";
      if (p.symbols.empty() || p.cap < 1) throw UsageError("multiset: need symbols and cap >= 1");
      std::vector<int> caps = p.caps.empty() ? std::vector<int>(p.symbols.size(), p.cap) : p.caps;
      if (caps.size() != p.symbols.size()) throw UsageError("multiset: one cap per symbol");
      if (!p.caps.empty()) {
        name = "multiset(" + p.symbols + ",";
        for (std::size_t i = 0; i < caps.size(); ++i) name += (i ? "/" : "") + std::to_string(caps[i]);
        name += ")";
      }
      double total = 1;
      for (int c : caps) total *= c + 1.0;
      bound(static_cast<std::size_t>(std::min(total, 1e9)), name);
      Cells c(caps.size(), 0);
      for (;;) {
        items.push_back(c);
        std::size_t i = 0;
        while (i < c.size() && c[i] == caps[i]) c[i++] = 0;
        if (i == c.size()) break;
        ++c[i];
      }
      unit.assign(p.symbols.size(), 0);
      compose = [caps](const Cells& a, const Cells& b) -> std::optional<Cells> {
        Cells r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
          r[i] = a[i] + b[i];
          if (r[i] > caps[i]) return std::nullopt;
        }
        return r;
      };
      const std::string syms = p.symbols;
      label = [syms](const Cells& c) {
        std::string s;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (c[i] == 0) continue;
          s += syms[i];
          if (c[i] > 1) s += "^" + std::to_string(c[i]);
        }
        return s.empty() ? std::string("∅") : s;
      };
      break;
    }
    case SeparatingKind::disjoint_sets: {
      name = "sets(" + std::to_string(p.size) + ")";
      grid(p.size, 0, 1);
      unit.assign(p.size, 0);
      compose = [](const Cells& a, const Cells& b) -> std::optional<Cells> {
        Cells r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i] && b[i]) return std::nullopt;
          r[i] = a[i] | b[i];
        }
        return r;
      };
      label = [](const Cells& c) {
        std::string s = "{";
        bool first = true;
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (!c[i]) continue;
          if (!first) s += ",";
          first = false;
          s += std::to_string(i + 1);
        }
        return s + "}";
      };
      break;
    }
    case SeparatingKind::heaplet: {
      name = "heaplet(" + std::to_string(p.size) + "," + std::to_string(p.values) + ")";
      if (p.values < 1) throw UsageError("heaplet: need at least one value");
      grid(p.size, -1, p.values - 1);
      unit.assign(p.size, -1);
      compose = [](const Cells& a, const Cells& b) -> std::optional<Cells> {
        Cells r(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (a[i] >= 0 && b[i] >= 0) return std::nullopt;
          r[i] = a[i] >= 0 ? a[i] : b[i];
        }
        return r;
      };
      label = heaplet_label;
      break;
    }
    case SeparatingKind::vector: {
      name = "vector(" + std::to_string(p.size) + "," + std::to_string(p.cap) + ")";
      if (p.size == 0 || p.cap < 0) throw UsageError("vector: need dimension >= 1");
      grid(p.size, 0, p.cap);
      unit.assign(p.size, 0);
      compose = [](const Cells& a, const Cells& b) -> std::optional<Cells> {
        std::vector<long> x(a.begin(), a.end()), y(b.begin(), b.end());
        auto r = separate(x, y);
        if (!r) return std::nullopt;
        return Cells(r->begin(), r->end());
      };
      label = [](const Cells& c) {
        std::string s = "(";
        for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
        return s + ")";
      };
      break;
    }
  }
  return from_elements<Cells>(name, items, compose, label, unit, true);
}

std::vector<long> apply_linear(const std::vector<std::vector<long>>& m, const std::vector<long>& v) {
  std::vector<long> r(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].size() != v.size()) throw UsageError("apply_linear: dimension mismatch");
    for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
  }
  return r;
}

CarrierPtr make_powerset_carrier(const CarrierPtr& base) {
  if (base->size() > 10) throw UsageError("powerset carrier: base must have at most 10 elements");
  PowersetQuantale q(base);
  const std::size_t m = std::size_t{1} << base->size();
  Carrier::Options opt;
  opt.commutative_hint = base->commutative_hint();
  for (std::size_t a = 0; a < m; ++a) opt.labels.push_back(q.format(a));
  if (auto u = q.unit()) opt.unit = Element{static_cast<std::uint32_t>(*u)};
  return make_carrier(Carrier::from_function(
      "powerset(" + base->name() + ")", m,
      [&q](Element x, Element y) -> PartialProduct {
        return Element{static_cast<std::uint32_t>(q.mult(x.index, y.index))};
      },
      std::move(opt)));
}

BiCarrier make_box2d(std::size_t chain) {
  const auto iv = enumerate_intervals(chain, IntervalMode::fusion);
  const CarrierPtr line = make_interval(chain, IntervalMode::fusion);
  const auto k = static_cast<std::uint32_t>(iv.size());
  Carrier::Options opt;
  for (std::uint32_t x = 0; x < k; ++x) {
    for (std::uint32_t y = 0; y < k; ++y) opt.labels.push_back(iv[x].label() + "x" + iv[y].label());
  }
  auto box = [k](std::uint32_t x, std::uint32_t y) { return Element{x * k + y}; };
  auto h = Carrier::from_function(
      "box2d-h(" + std::to_string(chain) + ")", std::size_t{k} * k,
      [&](Element a, Element b) -> PartialProduct {
        if (a.index % k != b.index % k) return std::nullopt;
        auto x = line->compose(Element{a.index / k}, Element{b.index / k});
        if (!x) return std::nullopt;
        return box(x->index, a.index % k);
      },
      opt);
  auto v = Carrier::from_function(
      "box2d-v(" + std::to_string(chain) + ")", std::size_t{k} * k,
      [&](Element a, Element b) -> PartialProduct {
        if (a.index / k != b.index / k) return std::nullopt;
        auto y = line->compose(Element{a.index % k}, Element{b.index % k});
        if (!y) return std::nullopt;
        return box(a.index / k, y->index);
      },
      opt);
  return BiCarrier(make_carrier(std::move(h)), make_carrier(std::move(v)));
}

CarrierPtr make_matrix_parallel_carrier(std::size_t dimension, int max_value) {
  if (dimension == 0 || dimension > 4) throw UsageError("matrix parallel: dimension must be 1..4");
  const std::size_t cells = dimension * dimension;
  double total = std::pow(max_value + 1.0, static_cast<double>(cells));
  bound(static_cast<std::size_t>(std::min(total, 1e9)), "matrix parallel");
  using Cells = std::vector<int>;
  std::vector<Cells> items;
  Cells c(cells, 0);
  for (;;) {
    items.push_back(c);
    std::size_t i = 0;
    while (i < cells && c[i] == max_value) c[i++] = 0;
    if (i == cells) break;
    ++c[i];
  }
  const std::size_t n = dimension;
  auto touched = [n](const Cells& m) {
    std::vector<bool> t(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (m[i * n + j] != 0) t[i] = t[j] = true;
      }
    }
    return t;
  };
  std::function<std::optional<Cells>(const Cells&, const Cells&)> compose =
      [&, n](const Cells& a, const Cells& b) -> std::optional<Cells> {
    auto ta = touched(a), tb = touched(b);
    for (std::size_t i = 0; i < n; ++i) {
      if (ta[i] && tb[i]) return std::nullopt;
    }
    Cells r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
  };
  std::function<std::string(const Cells&)> label = [n](const Cells& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < n; ++i) {
      s += i ? ",[" : "[";
      for (std::size_t j = 0; j < n; ++j) s += (j ? "," : "") + std::to_string(m[i * n + j]);
      s += "]";
    }
    return s + "]";
  };
  return from_elements<Cells>(
      "matrix-parallel(" + std::to_string(dimension) + "," + std::to_string(max_value) + ")", items,
      compose, label, Cells(cells, 0), true);
}

}  // namespace psq
