#include <gtest/gtest.h>

#include "psq/carrier_laws.hpp"
#include "psq/instances.hpp"

using namespace psq;

namespace {

std::string product(const Carrier& c, const std::string& x, const std::string& y) {
  auto p = c.compose(c.at(x), c.at(y));
  return p ? c.label(*p) : "undefined";
}

std::vector<std::pair<std::string, std::string>> split_labels(const Carrier& c, const std::string& x) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Split& s : c.splittings(c.at(x))) out.emplace_back(c.label(s.left), c.label(s.right));
  return out;
}

}  // namespace

TEST(Compose, RelationsMatchEndpoints) {
  auto r = make_relation(3);
  EXPECT_EQ(product(*r, "(1,2)", "(2,3)"), "(1,3)");
  EXPECT_EQ(product(*r, "(1,2)", "(3,1)"), "undefined");
}

TEST(Compose, HeapletsNeedDisjointDomains) {
  auto h = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  EXPECT_EQ(h->size(), 9u);
  EXPECT_EQ(product(*h, "{l1:0}", "{l2:1}"), "{l1:0,l2:1}");
  EXPECT_EQ(product(*h, "{l1:0}", "{l1:1}"), "undefined");
}

TEST(Splittings, FusionIntervalLexicographic) {
  auto c = make_interval(5, IntervalMode::fusion);
  std::vector<std::pair<std::string, std::string>> expected{
      {"[0,0]", "[0,2]"}, {"[0,1]", "[1,2]"}, {"[0,2]", "[2,2]"}};
  EXPECT_EQ(split_labels(*c, "[0,2]"), expected);
}

TEST(Splittings, WordPrefixes) {
  auto c = make_language("ab", 3);
  std::vector<std::pair<std::string, std::string>> expected{{"ε", "ab"}, {"a", "b"}, {"ab", "ε"}};
  EXPECT_EQ(split_labels(*c, "ab"), expected);
}

TEST(Splittings, EmptyTableHasNone) {
  Carrier c("empty", 3, std::vector<std::int32_t>(9, Carrier::undefined));
  for (std::uint32_t x = 0; x < 3; ++x) EXPECT_TRUE(c.splittings(Element{x}).empty());
}

TEST(CarrierLaws, RelationsPass) {
  auto reports = check_carrier_laws(*make_relation(3));
  EXPECT_TRUE(all_passed(reports));
  EXPECT_EQ(reports[0].tuples_checked, 729u);
}

TEST(CarrierLaws, CorruptedTableFailsWithTriple) {
  auto r = make_relation(2);
  auto table = r->table();
  // (1,2)·(2,1) should be (1,1); redirect it to (1,2).
  table[r->at("(1,2)").index * 4 + r->at("(2,1)").index] = static_cast<std::int32_t>(r->at("(1,2)").index);
  Carrier bad("corrupted", 4, table, r->options());
  auto reports = check_carrier_laws(bad);
  ASSERT_TRUE(reports[0].failed());
  ASSERT_TRUE(reports[0].witness);
  EXPECT_EQ(reports[0].witness->items.size(), 3u);
}

TEST(CarrierLaws, HeapletsPassCommutative) {
  auto h = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  auto reports = check_carrier_laws(*h);
  EXPECT_TRUE(all_passed(reports));
  EXPECT_TRUE(find_report(reports, h->name() + ".commutativity")->passed());
}

TEST(CarrierLaws, EveryInstanceAndItsOppositePass) {
  std::vector<CarrierPtr> all{
      make_language("ab", 3),
      make_relation(3),
      make_trace("pq", "a", 2),
      make_interval(5, IntervalMode::fusion),
      make_interval(5, IntervalMode::nofusion),
      make_symbol_carrier("abcd"),
      make_separating(SeparatingKind::multiset_cap, {.symbols = "ab", .cap = 3}),
      make_separating(SeparatingKind::disjoint_sets, {.size = 3}),
      make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2}),
      make_separating(SeparatingKind::vector, {.cap = 2, .size = 3}),
      make_matrix_parallel_carrier(2, 1),
      make_powerset_carrier(make_separating(SeparatingKind::disjoint_sets, {.size = 2})),
  };
  auto box = make_box2d(3);
  all.push_back(box.horizontal);
  all.push_back(box.vertical);
  for (const auto& c : all) {
    SCOPED_TRACE(c->name());
    EXPECT_TRUE(all_passed(check_carrier_laws(*c)));
    EXPECT_TRUE(check_splitting_index(*c).passed());
    EXPECT_TRUE(all_passed(check_carrier_laws(c->opposite())));
  }
}

TEST(Instances, Sizes) {
  EXPECT_EQ(make_language("ab", 2)->size(), 7u);
  EXPECT_EQ(make_trace("pq", "a", 2)->size(), 14u);
  EXPECT_EQ(make_interval(5, IntervalMode::fusion)->size(), 15u);
  EXPECT_EQ(make_interval(5, IntervalMode::nofusion)->size(), 46u);
  EXPECT_EQ(make_separating(SeparatingKind::disjoint_sets, {.size = 3})->size(), 8u);
  EXPECT_EQ(make_separating(SeparatingKind::vector, {.cap = 2, .size = 2})->size(), 9u);
}

TEST(Instances, IntervalCompositions) {
  auto f = make_interval(5, IntervalMode::fusion);
  EXPECT_EQ(product(*f, "[0,2]", "[2,4]"), "[0,4]");
  EXPECT_EQ(product(*f, "[0,2]", "[3,4]"), "undefined");
  auto n = make_interval(5, IntervalMode::nofusion);
  EXPECT_EQ(product(*n, "[0,2)", "[2,4]"), "[0,4]");
  EXPECT_EQ(product(*n, "[0,2]", "[2,4]"), "undefined");
  EXPECT_EQ(product(*n, "[0,2)", "(2,4]"), "undefined");
  for (std::uint32_t x = 0; x < n->size(); ++x) {
    EXPECT_EQ(n->compose(n->at("∅"), Element{x}), Element{x});
    EXPECT_EQ(n->compose(Element{x}, n->at("∅")), Element{x});
  }
}

TEST(Instances, LanguageCapIsPartiality) {
  auto l = make_language("ab", 2);
  EXPECT_EQ(product(*l, "a", "b"), "ab");
  EXPECT_EQ(product(*l, "ab", "a"), "undefined");
  EXPECT_EQ(l->unit(), l->at("ε"));
}

TEST(Instances, TraceFusion) {
  auto t = make_trace("pqr", "ab", 2);
  EXPECT_EQ(product(*t, "paq", "qbr"), "paqbr");
  EXPECT_EQ(product(*t, "paq", "rbq"), "undefined");
}

TEST(Instances, SeparatingExamples) {
  auto s = make_separating(SeparatingKind::disjoint_sets, {.size = 3});
  EXPECT_EQ(product(*s, "{1}", "{2}"), "{1,2}");
  EXPECT_EQ(product(*s, "{1}", "{1}"), "undefined");
  EXPECT_EQ(separate({5, 0, 7}, {0, 4, 0}), (std::vector<long>{5, 4, 7}));
  EXPECT_FALSE(separate({5, 0, 7}, {0, 4, 4}));
}

TEST(Instances, Box2d) {
  auto b = make_box2d(4);
  EXPECT_EQ(product(*b.horizontal, "[0,1]x[0,2]", "[1,3]x[0,2]"), "[0,3]x[0,2]");
  EXPECT_EQ(product(*b.horizontal, "[0,1]x[0,2]", "[1,3]x[0,1]"), "undefined");
  EXPECT_EQ(product(*b.vertical, "[0,2]x[0,1]", "[0,2]x[1,3]"), "[0,2]x[0,3]");
}

TEST(Instances, MatrixParallelBlocks) {
  auto m = make_matrix_parallel_carrier(2, 1);
  EXPECT_EQ(product(*m, "[[1,0],[0,0]]", "[[0,0],[0,1]]"), "[[1,0],[0,1]]");
  EXPECT_EQ(product(*m, "[[1,0],[0,0]]", "[[1,0],[0,1]]"), "undefined");
  EXPECT_EQ(product(*m, "[[0,1],[0,0]]", "[[0,0],[0,1]]"), "undefined");
}
