#include "values.hpp"

#include <tuple>

#include "psq/instances.hpp"
#include "psq/matrix.hpp"
#include "psq/power_series.hpp"

namespace lawcheck {

using psq::Element;

Multiset multiset_op(const std::string& op, const std::string& symbols, long cap, const Multiset& f,
                     const Multiset& g) {
  auto c = psq::make_symbol_carrier(symbols);
  psq::TropicalQuantale q(cap);
  auto series = [&](const Multiset& m) {
    psq::PowerSeries<psq::TropicalQuantale::value_type> s(c, 0);
    for (const auto& [k, v] : m) s.at(k) = q.clamp(v);
    return s;
  };
  const auto a = series(f);
  const auto b = series(g);
  psq::PowerSeries<psq::TropicalQuantale::value_type> r(c, 0);
  if (op == "sum") {
    r = psq::convolve(q, a, b);
  } else if (op == "join") {
    r = psq::join(q, a, b);
  } else if (op == "meet") {
    r = psq::meet(q, a, b);
  } else {
    throw psq::UsageError("unknown multiset operation '" + op + "'");
  }
  Multiset out;
  for (std::uint32_t x = 0; x < c->size(); ++x) {
    if (r[Element{x}] != 0) out[c->label(Element{x})] = r[Element{x}];
  }
  return out;
}

std::string multiset_label(const Multiset& m) {
  std::string out;
  for (const auto& [k, v] : m) out += v == 1 ? k : k + "^" + std::to_string(v);
  return out.empty() ? "∅" : out;
}

Automaton worked_automaton() {
  Automaton a;
  a.edges = {{1, 1, 'a'}, {1, 1, 'b'}, {1, 2, 'b'}, {2, 3, 'a'}};
  return a;
}

namespace {

struct Machine {
  psq::PowersetQuantale q;
  psq::MatrixSeries<std::uint64_t> m;
};

Machine build(const Automaton& a) {
  Machine out{psq::PowersetQuantale(psq::make_language(a.alphabet, a.cap)), {}};
  out.m = psq::MatrixSeries<std::uint64_t>(static_cast<std::size_t>(a.states), out.q.bottom());
  for (const auto& e : a.edges) {
    auto& cell = out.m(static_cast<std::size_t>(e.from - 1), static_cast<std::size_t>(e.to - 1));
    cell = out.q.join(cell, out.q.set_of({std::string(1, e.label)}));
  }
  return out;
}

std::set<std::string> words(const psq::PowersetQuantale& q, std::uint64_t mask) {
  std::set<std::string> out;
  for (std::uint32_t e = 0; e < q.base()->size(); ++e) {
    if ((mask >> e) & 1U) out.insert(q.base()->label(Element{e}));
  }
  return out;
}

std::string show(const std::set<std::string>& s) {
  std::string out;
  for (const auto& w : s) out += (out.empty() ? "" : ",") + w;
  return "{" + out + "}";
}

}  // namespace

std::set<std::string> automaton_power(const Automaton& a, int power, int from, int to) {
  auto [q, m] = build(a);
  auto p = psq::matrix_unit(q, m.n);
  for (int k = 0; k < power; ++k) p = psq::matrix_mult(q, p, m);
  return words(q, p(static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to - 1)));
}

std::set<std::string> automaton_star(const Automaton& a, int from, int to) {
  auto [q, m] = build(a);
  const auto s = psq::matrix_star(q, m);
  return words(q, s(static_cast<std::size_t>(from - 1), static_cast<std::size_t>(to - 1)));
}

std::set<std::string> automaton_paths(const Automaton& a, int from, int to, int length) {
  std::vector<std::tuple<int, std::string>> frontier{{from, ""}};
  for (int step = 0; step < length; ++step) {
    std::vector<std::tuple<int, std::string>> next;
    for (const auto& [state, word] : frontier) {
      for (const auto& e : a.edges) {
        if (e.from == state) next.emplace_back(e.to, word + e.label);
      }
    }
    frontier = std::move(next);
  }
  std::set<std::string> out;
  for (const auto& [state, word] : frontier) {
    if (state == to) out.insert(word.empty() ? "ε" : word);
  }
  return out;
}

psq::LawReport check_automaton_oracle(const Automaton& a, int max_power) {
  psq::LawReport r;
  r.law = "automaton/path-oracle";
  auto [q, m] = build(a);
  auto p = m;
  const auto star = psq::matrix_star(q, m);
  auto mismatch = [&](std::string item, const std::set<std::string>& got, const std::set<std::string>& want) {
    r.status = psq::LawStatus::fail;
    r.witness = psq::Witness{{std::move(item)}, "computed " + show(got) + ", oracle " + show(want)};
  };
  for (int k = 1; k <= max_power && !r.witness; ++k) {
    for (int i = 1; i <= a.states && !r.witness; ++i) {
      for (int j = 1; j <= a.states && !r.witness; ++j) {
        ++r.tuples_checked;
        const auto got = words(q, p(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)));
        const auto want = automaton_paths(a, i, j, k);
        if (got != want) {
          mismatch("M^" + std::to_string(k) + "(" + std::to_string(i) + "," + std::to_string(j) + ")", got, want);
        }
      }
    }
    p = psq::matrix_mult(q, p, m);
  }
  for (int i = 1; i <= a.states && !r.witness; ++i) {
    for (int j = 1; j <= a.states && !r.witness; ++j) {
      ++r.tuples_checked;
      std::set<std::string> want;
      for (int k = 0; k <= static_cast<int>(a.cap); ++k) {
        auto w = automaton_paths(a, i, j, k);
        want.insert(w.begin(), w.end());
      }
      const auto got = words(q, star(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)));
      if (got != want) mismatch("M*(" + std::to_string(i) + "," + std::to_string(j) + ")", got, want);
    }
  }
  r.mode.count = r.tuples_checked;
  return r;
}

}  // namespace lawcheck
