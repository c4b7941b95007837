#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "psq/instances.hpp"
#include "psq/law_suites.hpp"
#include "psq/lifted_algebra.hpp"
#include "psq/power_series.hpp"

using namespace psq;

namespace {

using BSeries = PowerSeries<BooleanQuantale::value_type>;
const BooleanQuantale B;

std::set<std::string> labels_of(const BSeries& f) {
  std::set<std::string> out;
  for (Element x : support(f)) out.insert(f.carrier()->label(x));
  return out;
}

/// Multiset over the symbol carrier as a tropical series, e.g. {{"a",2},{"b",5}}.
PowerSeries<TropicalQuantale::value_type> multiset(const CarrierPtr& c,
                                                   const std::map<std::string, int>& counts) {
  PowerSeries<TropicalQuantale::value_type> f(c, 0);
  for (const auto& [k, v] : counts) f.at(k) = v;
  return f;
}

/// Independent oracle: the complex product of two element sets.
std::set<std::string> complex_product(const Carrier& c, const std::set<std::string>& xs,
                                      const std::set<std::string>& ys) {
  std::set<std::string> out;
  for (const auto& x : xs) {
    for (const auto& y : ys) {
      if (auto p = c.compose(c.at(x), c.at(y))) out.insert(c.label(*p));
    }
  }
  return out;
}

}  // namespace

TEST(SumFamily, EmptyIsZeroAndUnionOtherwise) {
  auto l = make_language("ab", 2);
  std::vector<BSeries> none;
  EXPECT_EQ(sum_family(B, l, std::span<const BSeries>(none)), zero_series(B, l));
  std::vector<BSeries> two{characteristic(l, {"a"}), characteristic(l, {"b"})};
  EXPECT_EQ(labels_of(sum_family(B, l, std::span<const BSeries>(two))),
            (std::set<std::string>{"a", "b"}));
}

TEST(InfFamily, EmptyIsTopAndIntersectionOtherwise) {
  auto l = make_language("abc", 1);
  std::vector<BSeries> none;
  EXPECT_EQ(inf_family(B, l, std::span<const BSeries>(none)), top_series(B, l));
  std::vector<BSeries> two{characteristic(l, {"a", "b"}), characteristic(l, {"b", "c"})};
  EXPECT_EQ(labels_of(inf_family(B, l, std::span<const BSeries>(two))), (std::set<std::string>{"b"}));
}

TEST(Multisets, AdditionJoinAndMeet) {
  auto s = make_symbol_carrier("abcd");
  TropicalQuantale q(16);
  auto f = multiset(s, {{"a", 2}, {"b", 5}, {"c", 1}});
  auto g = multiset(s, {{"a", 1}, {"b", 3}, {"d", 2}});
  EXPECT_EQ(convolve(q, f, g), multiset(s, {{"a", 3}, {"b", 8}, {"c", 1}, {"d", 2}}));
  std::vector<PowerSeries<TropicalQuantale::value_type>> fg{f, g};
  EXPECT_EQ(sum_family(q, s, std::span<const PowerSeries<TropicalQuantale::value_type>>(fg)),
            multiset(s, {{"a", 2}, {"b", 5}, {"c", 1}, {"d", 2}}));
  EXPECT_EQ(inf_family(q, s, std::span<const PowerSeries<TropicalQuantale::value_type>>(fg)),
            multiset(s, {{"a", 1}, {"b", 3}}));
}

TEST(Multisets, CharacteristicSeriesOnAdditionCarrier) {
  auto m = make_separating(SeparatingKind::multiset_cap, {.symbols = "abcd", .caps = {3, 8, 1, 2}});
  auto prod = convolve(B, characteristic(m, {"a^2b^5c"}), characteristic(m, {"ab^3d^2"}));
  EXPECT_EQ(labels_of(prod), (std::set<std::string>{"a^3b^8cd^2"}));
}

TEST(Powersets, SaturatedAdditionIsMax) {
  auto s = make_symbol_carrier("abc");
  TropicalQuantale q(1);
  auto f = multiset(s, {{"a", 1}, {"b", 1}});
  auto g = multiset(s, {{"b", 1}, {"c", 1}});
  EXPECT_EQ(convolve(q, f, g), join(q, f, g));
}

TEST(Convolve, RelationalComposition) {
  auto r = make_relation(3);
  EXPECT_EQ(labels_of(convolve(B, characteristic(r, {"(1,2)"}), characteristic(r, {"(2,3)"}))),
            (std::set<std::string>{"(1,3)"}));
}

TEST(Convolve, TruncatedLanguageProduct) {
  auto l = make_language("ab", 3);
  EXPECT_EQ(labels_of(convolve(B, characteristic(l, {"a", "ab"}), characteristic(l, {"b"}))),
            (std::set<std::string>{"ab", "abb"}));
  auto l2 = make_language("ab", 2);
  EXPECT_EQ(labels_of(convolve(B, characteristic(l2, {"a", "ab"}), characteristic(l2, {"b"}))),
            (std::set<std::string>{"ab"}));
}

TEST(Convolve, BooleanCaseIsComplexProduct) {
  std::vector<CarrierPtr> carriers{make_relation(3), make_language("ab", 2), make_trace("pq", "a", 2),
                                   make_interval(5, IntervalMode::nofusion),
                                   make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2})};
  std::mt19937_64 rng(7);
  for (const auto& c : carriers) {
    SCOPED_TRACE(c->name());
    for (int trial = 0; trial < 200; ++trial) {
      std::set<std::string> xs, ys;
      for (std::uint32_t e = 0; e < c->size(); ++e) {
        if (rng() % 3 == 0) xs.insert(c->label(Element{e}));
        if (rng() % 3 == 0) ys.insert(c->label(Element{e}));
      }
      auto f = characteristic(c, {xs.begin(), xs.end()});
      auto g = characteristic(c, {ys.begin(), ys.end()});
      EXPECT_EQ(labels_of(convolve(B, f, g)), complex_product(*c, xs, ys));
    }
  }
}

TEST(Convolve, BooleanCaseExhaustiveOnSmallCarrier) {
  auto c = make_separating(SeparatingKind::disjoint_sets, {.size = 3});
  const std::size_t n = c->size();
  for (std::uint32_t a = 0; a < (1U << n); ++a) {
    for (std::uint32_t b = 0; b < (1U << n); ++b) {
      std::set<std::string> xs, ys;
      for (std::uint32_t e = 0; e < n; ++e) {
        if ((a >> e) & 1U) xs.insert(c->label(Element{e}));
        if ((b >> e) & 1U) ys.insert(c->label(Element{e}));
      }
      auto prod = convolve(B, characteristic(c, {xs.begin(), xs.end()}),
                           characteristic(c, {ys.begin(), ys.end()}));
      ASSERT_EQ(labels_of(prod), complex_product(*c, xs, ys));
    }
  }
}

TEST(Units, CarrierUnits) {
  auto l = make_language("ab", 2);
  EXPECT_EQ(labels_of(unit_series(B, l)), (std::set<std::string>{"ε"}));
  auto h = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  EXPECT_EQ(labels_of(unit_series(B, h)), (std::set<std::string>{"{}"}));
  EXPECT_THROW((void)unit_series(B, make_relation(2)), UsageError);
}

TEST(Units, DirectUnitsAreTwoSided) {
  auto r = make_relation(3);
  auto diag = direct_unit(B, r, [&](Element x) { return x.index / 3 == x.index % 3; });
  EXPECT_EQ(labels_of(diag), (std::set<std::string>{"(1,1)", "(2,2)", "(3,3)"}));
  // All 512 relations on three points.
  for (std::uint32_t m = 0; m < 512; ++m) {
    BSeries f(r, 0);
    for (std::uint32_t e = 0; e < 9; ++e) f[Element{e}] = (m >> e) & 1U;
    ASSERT_EQ(convolve(B, diag, f), f);
    ASSERT_EQ(convolve(B, f, diag), f);
  }
  auto iv = make_interval(5, IntervalMode::fusion);
  auto intervals = enumerate_intervals(5, IntervalMode::fusion);
  auto points = direct_unit(B, iv, [&](Element x) { return intervals[x.index].lo == intervals[x.index].hi; });
  LiftedAlgebra<BooleanQuantale> alg(iv, B, points);
  auto pool = alg.pool({});
  for (const auto& f : pool) {
    EXPECT_EQ(convolve(B, points, f.value), f.value);
    EXPECT_EQ(convolve(B, f.value, points), f.value);
  }
  auto nf = make_interval(5, IntervalMode::nofusion);
  auto nfi = enumerate_intervals(5, IntervalMode::nofusion);
  auto empty = direct_unit(B, nf, [&](Element x) { return nfi[x.index].empty; });
  EXPECT_EQ(empty, unit_series(B, nf));
}

TEST(Units, TraceUnitIsSingleStates) {
  auto t = make_trace("pq", "a", 2);
  auto one = direct_unit(B, t, [&](Element x) { return t->label(x).size() == 1; });
  LiftedAlgebra<BooleanQuantale> alg(t, B, one);
  for (const auto& f : alg.pool({})) EXPECT_EQ(alg.mult(one, f.value), f.value) << f.name;
}

TEST(ConvolvePartial, VectorFunctionUnit) {
  auto v = make_separating(SeparatingKind::vector, {.cap = 2, .size = 2});
  VectorQuantale q(2, 2);
  PartialLiftedAlgebra<VectorQuantale> alg(v, q);
  auto e = *alg.unit();
  EXPECT_EQ(e[v->at("(0,0)")], q.bottom());
  EXPECT_FALSE(e[v->at("(1,0)")].has_value());
  auto pool = alg.pool({.random_series = 40});
  for (const auto& value : q.all_values()) {
    pool.push_back({"const", PartialSeries<VectorQuantale::value_type>(v, value)});
  }
  for (const auto& f : pool) {
    EXPECT_EQ(alg.mult(e, f.value), f.value) << f.name;
    EXPECT_EQ(alg.mult(f.value, e), f.value) << f.name;
  }
}

TEST(ConvolvePartial, VectorTargetIsCommutative) {
  auto v = make_separating(SeparatingKind::vector, {.cap = 2, .size = 2});
  PartialLiftedAlgebra<VectorQuantale> alg(v, VectorQuantale(2, 2));
  auto pool = alg.pool({.random_series = 16});
  EXPECT_TRUE(check_commutativity(alg, pool, {}).passed());
}

TEST(ConvolvePartial, EmptyPolicy) {
  auto r = make_relation(2);
  PartialSeries<BooleanQuantale::value_type> f(r, std::nullopt), g(r, std::nullopt);
  f.at("(1,2)") = 1;
  g.at("(1,1)") = 1;
  auto undefined = convolve_partial(B, f, g);
  EXPECT_FALSE(undefined.at("(1,2)").has_value());
  auto zero = convolve_partial(B, f, g, EmptyPolicy::bottom);
  EXPECT_EQ(zero.at("(1,2)"), std::optional<std::uint8_t>(0));
}

TEST(ConvolvePartial, LinearTransformationSummands) {
  const long a1 = 2, b1 = 3, c1 = 5, d1 = 7, a2 = 11, b2 = 13, c2 = 17, d2 = 19, x = 2, y = 3;
  auto full = separate(apply_linear({{a1, b1}, {c1, d1}}, {x, 0}), apply_linear({{a2, b2}, {c2, d2}}, {0, y}));
  EXPECT_FALSE(full.has_value());
  auto block = separate(apply_linear({{a1, b1}, {0, d1}}, {x, 0}), apply_linear({{a2, 0}, {c2, d2}}, {0, y}));
  ASSERT_TRUE(block.has_value());
  EXPECT_EQ(*block, (std::vector<long>{a1 * x, d2 * y}));
}

TEST(Wand, TopAbsorbs) {
  auto h = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  EXPECT_EQ(wand(characteristic(h, {"{l1:0}"}), top_series(B, h)), top_series(B, h));
}

TEST(Wand, HeapletExampleAgainstBruteForce) {
  auto h = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  auto f = characteristic(h, {"{l1:0}"});
  auto g = characteristic(h, {"{l1:0,l2:1}"});
  auto w = wand(f, g);
  BSeries oracle(h, 0);
  for (std::uint32_t m = 0; m < 512; ++m) {
    BSeries k(h, 0);
    for (std::uint32_t e = 0; e < 9; ++e) k[Element{e}] = (m >> e) & 1U;
    if (leq(B, convolve(B, f, k), g)) oracle = join(B, oracle, k);
  }
  EXPECT_EQ(w, oracle);
  for (std::uint32_t e = 0; e < 9; ++e) {
    const std::string l = h->label(Element{e});
    const bool owns_l1 = l.find("l1") != std::string::npos;
    EXPECT_EQ(w[Element{e}] != 0, l == "{l2:1}" || owns_l1) << l;
  }
}

TEST(Wand, AdjunctionExhaustive) {
  auto h = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  std::vector<std::pair<BSeries, BSeries>> fg{
      {characteristic(h, {"{l1:0}"}), characteristic(h, {"{l1:0,l2:1}"})},
      {characteristic(h, {"{}", "{l2:0}"}), characteristic(h, {"{l2:0}", "{l1:1,l2:0}", "{l1:1}"})},
      {top_series(B, h), characteristic(h, {"{l1:0,l2:0}"})}};
  for (const auto& [f, g] : fg) {
    auto w = wand(f, g);
    for (std::uint32_t m = 0; m < 512; ++m) {
      BSeries k(h, 0);
      for (std::uint32_t e = 0; e < 9; ++e) k[Element{e}] = (m >> e) & 1U;
      ASSERT_EQ(leq(B, convolve(B, f, k), g), leq(B, k, w));
    }
  }
}

TEST(Star, ZeroStarIsUnit) {
  auto l = make_language("ab", 2);
  LiftedAlgebra<BooleanQuantale> alg(l, B);
  EXPECT_EQ(star(alg, alg.bottom()), *alg.unit());
}

TEST(Star, TruncatedLanguage) {
  auto l = make_language("ab", 2);
  LiftedAlgebra<BooleanQuantale> alg(l, B);
  EXPECT_EQ(labels_of(star(alg, characteristic(l, {"a"}))), (std::set<std::string>{"ε", "a", "aa"}));
}

TEST(Star, RelationIsReflexiveTransitiveClosure) {
  auto r = make_relation(3);
  auto diag = direct_unit(B, r, [](Element x) { return x.index / 3 == x.index % 3; });
  LiftedAlgebra<BooleanQuantale> alg(r, B, diag);
  EXPECT_EQ(labels_of(star(alg, characteristic(r, {"(1,2)", "(2,3)"}))),
            (std::set<std::string>{"(1,1)", "(2,2)", "(3,3)", "(1,2)", "(2,3)", "(1,3)"}));
}

TEST(Star, DivergenceIsReported) {
  auto s = make_symbol_carrier("a");
  TropicalQuantale q(1000000);
  LiftedAlgebra<TropicalQuantale> alg(s, q, PowerSeries<TropicalQuantale::value_type>(s, 0));
  PowerSeries<TropicalQuantale::value_type> f(s, 1);
  EXPECT_THROW((void)star(alg, f, 50), StarDivergence);
}

TEST(LiftedLaws, IntervalChainFive) {
  auto iv = make_interval(5, IntervalMode::fusion);
  auto intervals = enumerate_intervals(5, IntervalMode::fusion);
  LiftedAlgebra<BooleanQuantale> alg(iv, B, direct_unit(B, iv, [&](Element x) {
    return intervals[x.index].lo == intervals[x.index].hi;
  }));
  CheckOptions opt;
  auto reports = check_lifted_laws(alg, alg.pool(opt), opt);
  for (const auto& r : reports) EXPECT_NE(r.status, LawStatus::fail) << summarize(r);
  EXPECT_EQ(find_report(reports, "associativity")->mode.kind, CheckMode::Kind::exhaustive);
}

TEST(LiftedLaws, DisjointSetsIncludingCommutativity) {
  auto s = make_separating(SeparatingKind::disjoint_sets, {.size = 3});
  LiftedAlgebra<BooleanQuantale> alg(s, B);
  CheckOptions opt;
  auto reports = check_lifted_laws(alg, alg.pool(opt), opt);
  for (const auto& r : reports) EXPECT_NE(r.status, LawStatus::fail) << summarize(r);
  EXPECT_TRUE(find_report(reports, "commutativity")->passed());
  auto lattice = check_lattice_laws(alg, alg.pool(opt), opt);
  for (const auto& r : lattice) EXPECT_TRUE(r.passed()) << summarize(r);
}

TEST(LiftedLaws, WholeSpacePoolWhenSmall) {
  auto m = make_symbol_carrier("ab");
  TropicalQuantale q(3);
  LiftedAlgebra<TropicalQuantale> alg(m, q);
  CheckOptions opt;
  auto pool = alg.pool(opt);
  EXPECT_EQ(pool.size(), 36u);
  for (const auto& r : check_lifted_laws(alg, pool, opt)) EXPECT_NE(r.status, LawStatus::fail) << summarize(r);
}

TEST(LiftedLaws, CorruptedConvolutionIsCaught) {
  // A carrier whose table is not associative lifts to a non-associative convolution.
  auto r = make_relation(2);
  auto table = r->table();
  table[r->at("(1,2)").index * 4 + r->at("(2,1)").index] = static_cast<std::int32_t>(r->at("(1,2)").index);
  auto bad = make_carrier("corrupted", 4, table, r->options());
  LiftedAlgebra<BooleanQuantale> alg(bad, B);
  CheckOptions opt;
  auto reports = check_lifted_laws(alg, alg.pool(opt), opt);
  EXPECT_TRUE(find_report(reports, "associativity")->failed());
}

TEST(MeetInterchange, SequentialInequalityHolds) {
  auto l = make_language("ab", 2);
  LiftedAlgebra<BooleanQuantale> alg(l, B);
  CheckOptions opt;
  auto reports = check_meet_interchange(alg, alg.pool(opt), opt);
  ASSERT_EQ(reports.size(), 1u);
  EXPECT_TRUE(reports[0].passed());
}

TEST(MeetInterchange, ConcurrentEqualityIsRefuted) {
  auto h = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  LiftedAlgebra<BooleanQuantale> alg(h, B);
  auto a = characteristic(h, {"{l1:0}"});
  auto b = characteristic(h, {"{l2:0}"});
  auto lhs = alg.mult(alg.meet(a, b), alg.meet(b, a));
  auto rhs = alg.meet(alg.mult(a, b), alg.mult(b, a));
  EXPECT_TRUE(alg.leq(lhs, rhs));
  EXPECT_FALSE(alg.equal(lhs, rhs));
  CheckOptions opt;
  auto reports = check_meet_interchange(alg, alg.pool(opt), opt);
  EXPECT_TRUE(find_report(reports, "meet-interchange/seq-leq")->passed());
  EXPECT_TRUE(find_report(reports, "meet-interchange/conc-eq")->failed());
}
