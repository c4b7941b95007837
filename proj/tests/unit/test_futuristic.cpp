#include <gtest/gtest.h>

#include <set>
#include <string>

#include "psq/carrier_laws.hpp"
#include "psq/futuristic.hpp"

using namespace psq;

namespace {

const BooleanQuantale B;
using BSeries = PowerSeries<std::uint8_t>;

BSeries from_mask(const CarrierPtr& c, std::uint32_t mask) {
  BSeries f(c, 0);
  for (std::uint32_t e = 0; e < c->size(); ++e) f[Element{e}] = (mask >> e) & 1U;
  return f;
}

std::set<std::string> labels_of(const BSeries& f) {
  std::set<std::string> out;
  for (Element x : support(f)) out.insert(f.carrier()->label(x));
  return out;
}

// Unary words as counts, ω as -1; concatenation saturates at the cap.
std::set<std::string> set_formula(const std::set<std::string>& l1, const std::set<std::string>& l2, int cap) {
  auto count = [](const std::string& w) { return w == "a^ω" ? -1 : (w == "ε" ? 0 : static_cast<int>(w.size())); };
  auto word = [](int n) { return n < 0 ? std::string("a^ω") : (n == 0 ? std::string("ε") : std::string(n, 'a')); };
  std::set<std::string> out;
  for (const auto& v : l1) {
    if (count(v) < 0) out.insert(v);
  }
  for (const auto& v : l1) {
    if (count(v) < 0) continue;
    for (const auto& w : l2) {
      out.insert(count(w) < 0 ? word(-1) : word(std::min(count(v) + count(w), cap)));
    }
  }
  return out;
}

void expect_pattern(const CarrierPtr& c) {
  LiftedAlgebra<BooleanQuantale> alg(c, B, std::nullopt, ConvolutionKind::futuristic);
  CheckOptions opt;
  auto reports = check_futuristic_laws(alg, alg.pool(opt), opt);
  for (const auto& m : futuristic_pattern_mismatches(*c, reports)) ADD_FAILURE() << c->name() << ": " << m;
  for (const char* law : {"associativity", "right-distributivity/0", "right-distributivity/3", "left-annihilation",
                          "left-distributivity/1", "left-distributivity/3"}) {
    const auto* r = find_report(reports, law);
    ASSERT_NE(r, nullptr) << law;
    EXPECT_EQ(r->mode.kind, CheckMode::Kind::exhaustive) << law;
  }
}

}  // namespace

TEST(InfiniteWords, SizesAndComposition) {
  EXPECT_EQ(make_infinite_words("a", 4)->size(), 6u);
  auto w = make_infinite_words("ab", 2);
  EXPECT_EQ(w->size(), 9u);
  EXPECT_EQ(w->compose(w->at("a"), w->at("a^ω")), w->at("a^ω"));
  EXPECT_FALSE(w->compose(w->at("a^ω"), w->at("b")).has_value());
  EXPECT_FALSE(w->compose(w->at("b"), w->at("a^ω")).has_value());
  EXPECT_EQ(w->compose(w->at("aa"), w->at("a")), w->at("aa"));
  EXPECT_FALSE(w->compose(w->at("ab"), w->at("a")).has_value());
}

TEST(InfiniteWords, CarrierLawsAndClassification) {
  for (const auto& c : {make_infinite_words("a", 4), make_infinite_words("ab", 2), make_infinite_words("abc", 2)}) {
    EXPECT_TRUE(all_passed(check_carrier_laws(*c))) << c->name();
    EXPECT_TRUE(check_futuristic_carrier(*c).passed()) << c->name();
  }
}

TEST(InfiniteWords, SingletonStreamBreaksRightAnnihilation) {
  auto w = make_infinite_words("a", 2);
  LiftedAlgebra<BooleanQuantale> alg(w, B, std::nullopt, ConvolutionKind::futuristic);
  auto stream = characteristic(w, {"a^ω"});
  EXPECT_EQ(alg.mult(stream, alg.bottom()).at("a^ω"), 1);
  for (std::uint32_t m = 0; m < 16; ++m) EXPECT_EQ(alg.mult(alg.bottom(), from_mask(w, m)), alg.bottom());
}

TEST(InfiniteWords, LiftedProductMatchesSetFormula) {
  auto w = make_infinite_words("a", 4);
  LiftedAlgebra<BooleanQuantale> alg(w, B, std::nullopt, ConvolutionKind::futuristic);
  for (std::uint32_t m1 = 0; m1 < 64; ++m1) {
    for (std::uint32_t m2 = 0; m2 < 64; ++m2) {
      auto f = from_mask(w, m1);
      auto g = from_mask(w, m2);
      ASSERT_EQ(labels_of(alg.mult(f, g)), set_formula(labels_of(f), labels_of(g), 4)) << m1 << "," << m2;
    }
  }
}

TEST(FuturisticIntervals, SizesAndComposition) {
  auto c = make_futuristic_intervals(4);
  EXPECT_EQ(c->size(), 14u);
  EXPECT_EQ(c->compose(c->at("[0,2]"), c->at("[2,∞]")), c->at("[0,∞]"));
  EXPECT_FALSE(c->compose(c->at("[0,2]"), c->at("[3,∞]")).has_value());
  EXPECT_FALSE(c->compose(c->at("[2,∞]"), c->at("[2,2]")).has_value());
  EXPECT_TRUE(all_passed(check_carrier_laws(*c)));
  EXPECT_TRUE(check_futuristic_carrier(*c).passed());
}

TEST(FuturisticIntervals, RightAnnihilationFailsAtEveryUnboundedInterval) {
  auto c = make_futuristic_intervals(4);
  LiftedAlgebra<BooleanQuantale> alg(c, B, std::nullopt, ConvolutionKind::futuristic);
  for (std::size_t a = 0; a < 4; ++a) {
    const std::string x = "[" + std::to_string(a) + ",∞]";
    EXPECT_EQ(alg.mult(characteristic(c, {x}), alg.bottom()).at(x), 1) << x;
  }
}

TEST(FuturisticLaws, InfiniteWordsPattern) {
  expect_pattern(make_infinite_words("a", 2));
  expect_pattern(make_infinite_words("ab", 2));
}

TEST(FuturisticLaws, IntervalsPattern) { expect_pattern(make_futuristic_intervals(4)); }

TEST(FuturisticLaws, BoundedOnlyDegeneratesToStandard) {
  auto c = make_bounded_only(make_futuristic_intervals(3));
  EXPECT_TRUE(futuristic_expected_failures(*c).empty());
  LiftedAlgebra<BooleanQuantale> fut(c, B, std::nullopt, ConvolutionKind::futuristic);
  LiftedAlgebra<BooleanQuantale> std_alg(c, B);
  auto pool = fut.pool({});
  for (const auto& f : pool) {
    for (const auto& g : pool) ASSERT_EQ(fut.mult(f.value, g.value), std_alg.mult(f.value, g.value));
  }
  expect_pattern(c);
}

TEST(FuturisticLaws, CorruptedClassificationIsCaught) {
  auto c = make_futuristic_intervals(3);
  auto opt = c->options();
  opt.classification[c->at("[0,1]").index] = Boundedness::unbounded;
  auto bad = make_carrier("bad", c->size(), c->table(), opt);
  EXPECT_TRUE(check_futuristic_carrier(*bad).failed());
}

TEST(Historistic, OppositeMirrorsTheFuturisticProduct) {
  auto c = make_futuristic_intervals(3);
  auto op = std::make_shared<const Carrier>(c->opposite());
  LiftedAlgebra<BooleanQuantale> fut(c, B, std::nullopt, ConvolutionKind::futuristic);
  LiftedAlgebra<BooleanQuantale> hist(op, B, std::nullopt, ConvolutionKind::historistic);
  auto pool = fut.pool({});
  for (const auto& f : pool) {
    for (const auto& g : pool) {
      auto lhs = hist.mult(BSeries(op, f.value.values()), BSeries(op, g.value.values()));
      ASSERT_EQ(lhs.values(), fut.mult(g.value, f.value).values());
    }
  }
  CheckOptions opt;
  auto reports = check_lifted_laws(hist, hist.pool(opt), opt);
  EXPECT_TRUE(find_report(reports, "left-annihilation")->failed());
  EXPECT_TRUE(find_report(reports, "right-annihilation")->passed());
  EXPECT_TRUE(find_report(reports, "associativity")->passed());
}
