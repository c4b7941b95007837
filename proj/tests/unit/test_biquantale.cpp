#include <gtest/gtest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "psq/biquantale.hpp"
#include "psq/carrier_laws.hpp"

using namespace psq;

namespace {

const BooleanQuantale B;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(StreamCarrier, SatisfiesPartialMonoidLaws) {
  for (auto mode : {StreamSplit::pointwise, StreamSplit::uniform}) {
    auto c = make_stream_carrier({3, 2, 1}, mode);
    EXPECT_EQ(c->size(), 64U);
    EXPECT_TRUE(all_passed(check_carrier_laws(*c))) << to_string(mode);
    EXPECT_EQ(c->label(*c->unit()), "0,0|0,0|0,0");
  }
}

TEST(StreamCarrier, PointwiseAndUniformDiffer) {
  const StreamShape sh{2, 2, 1};
  auto pw = make_stream_carrier(sh, StreamSplit::pointwise);
  auto un = make_stream_carrier(sh, StreamSplit::uniform);
  // Component 1 moves from one side to the other over time.
  auto r = pw->compose(pw->at("1,0|0,0"), pw->at("0,1|1,0"));
  ASSERT_TRUE(r);
  EXPECT_EQ(pw->label(*r), "1,1|1,0");
  EXPECT_FALSE(un->compose(un->at("1,0|0,0"), un->at("0,1|1,0")));
  auto u = un->compose(un->at("1,0|1,0"), un->at("0,1|0,0"));
  ASSERT_TRUE(u);
  EXPECT_EQ(un->label(*u), "1,1|1,0");
  EXPECT_FALSE(pw->compose(pw->at("1,0|0,0"), pw->at("1,0|0,0")));
}

TEST(StreamCarrier, LargeShapesAreRejected) {
  EXPECT_THROW((void)make_stream_carrier({5, 3, 1}, StreamSplit::pointwise), UsageError);
  EXPECT_THROW((void)parse_stream_split("diagonal"), UsageError);
}

TEST(BiSeries, GridCapRejectsOversizedSeries) {
  auto s1 = make_interval(4, IntervalMode::nofusion);
  auto s2 = make_stream_carrier({4, 2, 1}, StreamSplit::pointwise);
  EXPECT_THROW(BoolBiSeries(s1, s2, 0, 1000), UsageError);
  EXPECT_NO_THROW(BoolBiSeries(s1, s2, 0));
}

TEST(BiSeries, SingletonSecondCarrierReducesToConvolution) {
  auto s1 = make_language("ab", 2);
  auto one = make_carrier(Carrier::from_function("one", 1, [](Element, Element) -> PartialProduct { return Element{0}; },
                                                 Carrier::Options{Element{0}, true, {"*"}, {}}));
  BoolBiSeries f(s1, one, 0);
  BoolBiSeries g(s1, one, 0);
  PowerSeries<std::uint8_t> f1(s1, 0);
  PowerSeries<std::uint8_t> g1(s1, 0);
  for (std::uint32_t x = 0; x < s1->size(); ++x) {
    f(Element{x}, Element{0}) = f1[Element{x}] = (x % 3 == 0);
    g(Element{x}, Element{0}) = g1[Element{x}] = (x % 2 == 1);
  }
  auto fg = hconvolve(B, f, g);
  EXPECT_EQ(partial_eval_row(fg, Element{0}), convolve(B, f1, g1));
}

TEST(BiSeries, ChopSplitsStepDownStream) {
  auto inst = make_interval_stream(IntervalMode::nofusion, {5, 2, 1}, StreamSplit::pointwise);
  auto F = forall_series(inst, [](auto v) { return v[0] == 1; });
  auto G = forall_series(inst, [](auto v) { return v[0] == 0; });
  const Element f = inst.s2->at("1,0|1,0|0,0|0,0|0,0");
  const Element x = inst.s1->at("[0,4]");
  EXPECT_EQ(F(x, f), 0);
  EXPECT_EQ(G(x, f), 0);
  EXPECT_EQ(hconvolve(B, F, G)(x, f), 1);
  // Both witnessing splits put the points {0,1} on the left.
  std::set<std::string> lefts;
  for (const Split& s : inst.s1->splittings(x)) {
    if (F(s.left, f) && G(s.right, f)) lefts.insert(inst.s1->label(s.left));
  }
  EXPECT_EQ(lefts, (std::set<std::string>{"[0,1]", "[0,2)"}));
  EXPECT_EQ(hconvolve(B, G, F)(x, f), 0);
}

TEST(BiSeries, SeparationSplitsComponents) {
  auto inst = make_interval_stream(IntervalMode::nofusion, {4, 2, 1}, StreamSplit::pointwise);
  auto F = forall_series(inst, [](auto v) { return v[0] == 1; });
  auto G = forall_series(inst, [](auto v) { return v[1] == 1; });
  auto FG = vconvolve(B, F, G);
  const Element x = inst.s1->at("[0,3]");
  EXPECT_EQ(FG(x, inst.s2->at("1,1|1,1|1,1|1,1")), 1);
  EXPECT_EQ(FG(x, inst.s2->at("1,1|1,0|1,1|1,1")), 0);
  // Neither F nor G holds on the whole stream, only on its parts.
  EXPECT_EQ(F(x, inst.s2->at("1,1|1,1|1,1|1,1")), 1);
  EXPECT_EQ(vconvolve(B, F, F)(x, inst.s2->at("1,1|1,1|1,1|1,1")), 0);
}

TEST(BiSeries, UnitsFollowTheirCarriers) {
  auto inst = make_interval_stream(IntervalMode::nofusion, {3, 2, 1}, StreamSplit::pointwise);
  auto [h, v] = bi_units(B, inst.s1, inst.s2);
  for (std::uint32_t x = 0; x < inst.s1->size(); ++x) {
    for (std::uint32_t y = 0; y < inst.s2->size(); ++y) {
      EXPECT_EQ(h(Element{x}, Element{y}), inst.s1->label(Element{x}) == "∅" ? 1 : 0);
      EXPECT_EQ(v(Element{x}, Element{y}), y == 0 ? 1 : 0);
    }
  }
  EXPECT_FALSE(h == v);
  auto fusion = make_interval(3, IntervalMode::fusion);
  EXPECT_THROW((void)bi_unit_h(B, fusion, inst.s2), UsageError);
}

TEST(BiSeries, UnitLawsAndSectionsExhaustively) {
  auto inst = make_interval_stream(IntervalMode::nofusion, {3, 2, 1}, StreamSplit::pointwise);
  BiAlgebra<BooleanQuantale> h(inst.s1, inst.s2, B, BiDirection::horizontal, stream_predicate_seeds(inst));
  CheckOptions opt;
  const auto pool = h.pool(opt);
  const auto units = bi_units(B, inst.s1, inst.s2);
  for (const auto& p : pool) {
    EXPECT_EQ(hconvolve(B, units.horizontal, p.value), p.value) << p.name;
    EXPECT_EQ(vconvolve(B, p.value, units.vertical), p.value) << p.name;
  }
  for (const auto& r : check_section_laws(B, inst.s1, inst.s2, pool, opt)) {
    EXPECT_TRUE(r.passed()) << summarize(r);
  }
}

TEST(Biquantale, FullSuiteAtDeskScale) {
  // The uniform mode runs in the default CLI configuration.
  for (auto mode : {StreamSplit::pointwise}) {
    auto inst = make_interval_stream(IntervalMode::nofusion, {4, 2, 1}, mode);
    ASSERT_EQ(inst.s1->size(), 29U);
    ASSERT_EQ(inst.s2->size(), 256U);
    const auto reports = check_biquantale(inst, CheckOptions{});
    for (const auto& r : reports) {
      EXPECT_EQ(r.mode.kind, CheckMode::Kind::exhaustive) << r.law;
      if (r.law == "hconv/commutativity") {
        EXPECT_TRUE(r.failed());
        EXPECT_TRUE(r.witness.has_value());
      } else {
        EXPECT_TRUE(r.passed()) << to_string(mode) << " " << summarize(r);
      }
    }
    const auto* comm = find_report(reports, "vconv/commutativity");
    ASSERT_NE(comm, nullptr);
    EXPECT_TRUE(comm->passed());
    EXPECT_NE(find_report(reports, "section/row-hconvolve"), nullptr);
    EXPECT_NE(find_report(reports, "section/col-unit"), nullptr);
  }
}

TEST(Biquantale, StoredNoncommutativityWitness) {
  const auto w = noncommutativity_from_json(read_file(PSQ_FIXTURE_DIR "/biquantale/hconv_noncommutative.json"));
  const auto ok = verify_noncommutativity(w);
  EXPECT_TRUE(ok.passed()) << ok.note;
  auto swapped = w;
  swapped.g = w.f;
  const auto bad = verify_noncommutativity(swapped);
  EXPECT_TRUE(bad.failed());
  ASSERT_TRUE(bad.witness.has_value());
  EXPECT_EQ(noncommutativity_from_json(noncommutativity_to_json(w)).f, w.f);
  EXPECT_THROW((void)noncommutativity_from_json("{\"intervals\": 3}"), UsageError);
}
