#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "psq/hoare.hpp"
#include "psq/instances.hpp"
#include "psq/lifted_algebra.hpp"

using namespace psq;

namespace {

const BooleanQuantale B;
using Alg = LiftedAlgebra<BooleanQuantale>;
using BSeries = PowerSeries<std::uint8_t>;

Alg relations(std::size_t n) {
  auto r = make_relation(n);
  return Alg(r, B, direct_unit(B, r, [n](Element x) { return x.index / n == x.index % n; }));
}

Alg intervals() {
  auto c = make_interval(5, IntervalMode::fusion);
  auto iv = enumerate_intervals(5, IntervalMode::fusion);
  return Alg(c, B, direct_unit(B, c, [iv](Element x) { return iv[x.index].lo == iv[x.index].hi; }));
}

std::vector<std::pair<std::string, Alg>> instances() {
  return {{"relation", relations(3)},
          {"language", Alg(make_language("ab", 2), B)},
          {"interval", intervals()},
          {"heaplet", Alg(make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2}), B)}};
}

void expect_all_pass(const std::vector<LawReport>& reports, const std::string& instance) {
  for (const auto& r : reports) {
    EXPECT_TRUE(r.passed()) << instance << ": " << summarize(r);
    if (r.mode.kind == CheckMode::Kind::sampled) {
      EXPECT_EQ(r.tuples_checked, 100000u) << instance << " " << r.law;
    }
    if (r.premises_held) {
      EXPECT_GT(*r.premises_held, 0u) << instance << " " << r.law;
    }
  }
}

std::set<std::pair<int, int>> closure_oracle(const std::set<std::pair<int, int>>& edges, int n) {
  std::set<std::pair<int, int>> out;
  for (int s = 1; s <= n; ++s) {
    std::vector<int> stack{s};
    std::set<int> seen{s};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : edges) {
        if (a == v && seen.insert(b).second) stack.push_back(b);
      }
    }
    for (int t : seen) out.insert({s, t});
  }
  return out;
}

}  // namespace

TEST(Triples, Examples) {
  auto rel = relations(3);
  auto r = rel.carrier();
  auto x = characteristic(r, {"(1,1)"});
  auto y = characteristic(r, {"(1,2)"});
  auto z = characteristic(r, {"(1,2)", "(2,2)"});
  EXPECT_TRUE(triple_valid(rel, x, y, z));
  EXPECT_FALSE(triple_valid(rel, x, y, characteristic(r, {"(2,2)"})));

  auto point = make_symbol_carrier("a");
  Alg boolean(point, B, BSeries(point, 1));
  EXPECT_FALSE(triple_valid(boolean, *boolean.unit(), *boolean.unit(), boolean.bottom()));
  for (const auto& f : boolean.pool({})) EXPECT_TRUE(triple_valid(boolean, f.value, *boolean.unit(), f.value));
}

TEST(HoareRules, AllInstancesPass) {
  CheckOptions opt;
  for (const auto& [name, alg] : instances()) {
    auto pool = alg.pool(opt);
    expect_all_pass(check_hoare_rules(alg, pool, opt), name);
    expect_all_pass(check_strengthened_rules(alg, pool, opt), name);
    expect_all_pass({check_concurrency_rule(alg, pool, opt)}, name);
  }
}

TEST(HoareRules, Deterministic) {
  CheckOptions opt;
  opt.budget = 2000;
  auto alg = relations(3);
  auto pool = alg.pool(opt);
  auto a = check_hoare_rules(alg, pool, opt);
  auto b = check_hoare_rules(alg, pool, opt);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].tuples_checked, b[i].tuples_checked);
    EXPECT_EQ(a[i].premises_held, b[i].premises_held);
  }
}

TEST(HoareRules, StrictValidityBreaksSkip) {
  CheckOptions opt;
  opt.budget = 5000;
  auto alg = relations(3);
  auto reports = check_hoare_rules(alg, alg.pool(opt), opt, Validity::strict);
  EXPECT_TRUE(find_report(reports, "hoare/skip")->failed());
}

TEST(HoareRules, SwappedValidityBreaksSequentialComposition) {
  CheckOptions opt;
  opt.budget = 20000;
  auto alg = relations(3);
  auto reports = check_hoare_rules(alg, alg.pool(opt), opt, Validity::swapped);
  const auto* seq = find_report(reports, "hoare/sequential");
  EXPECT_TRUE(seq->failed());
  EXPECT_TRUE(seq->witness.has_value());
}

TEST(StrengthenedRules, ComplementaryGuardsOnThreePoints) {
  auto alg = relations(3);
  auto r = alg.carrier();
  auto test = characteristic(r, {"(1,1)", "(2,2)"});
  auto negation = characteristic(r, {"(3,3)"});
  auto body = characteristic(r, {"(1,2)", "(2,3)"});
  auto x = characteristic(r, {"(1,1)", "(1,2)", "(1,3)"});
  // while test do body: premise x·test·body ≤ x, conclusion x·(test·body)*·¬test ≤ x·¬test.
  ASSERT_TRUE(triple_valid(alg, alg.mult(x, test), body, x));
  auto loop = alg.mult(star(alg, alg.mult(test, body)), negation);
  EXPECT_TRUE(triple_valid(alg, x, loop, alg.mult(x, negation)));
  EXPECT_EQ(alg.mult(x, loop), characteristic(r, {"(1,3)"}));
  // if test then body else skip.
  auto branch = alg.join(alg.mult(test, body), alg.mult(negation, *alg.unit()));
  auto z = alg.join(alg.mult(alg.mult(x, test), body), alg.mult(x, negation));
  EXPECT_TRUE(triple_valid(alg, x, branch, z));
}

TEST(StrengthenedRules, UnitGuardsGiveThePlainStarRule) {
  CheckOptions opt;
  auto alg = relations(3);
  const auto one = *alg.unit();
  for (const auto& x : alg.pool(opt)) {
    for (const auto& y : alg.pool(opt)) {
      const bool plain = !triple_valid(alg, x.value, y.value, x.value) ||
                         triple_valid(alg, x.value, star(alg, y.value), x.value);
      const auto guarded_body = alg.mult(one, y.value);
      const bool guarded = !triple_valid(alg, alg.mult(x.value, one), y.value, x.value) ||
                           triple_valid(alg, x.value, alg.mult(star(alg, guarded_body), one), alg.mult(x.value, one));
      EXPECT_EQ(plain, guarded);
      EXPECT_TRUE(guarded);
    }
  }
}

TEST(ConcurrencyRule, ProofStepHoldsAlone) {
  CheckOptions opt;
  for (const auto& [name, alg] : instances()) {
    auto reports = check_meet_interchange(alg, alg.pool(opt), opt);
    EXPECT_TRUE(find_report(reports, "meet-interchange/seq-leq")->passed()) << name;
  }
}

TEST(StarLaws, RelationsAndLanguages) {
  CheckOptions opt;
  for (auto alg : {relations(3), Alg(make_language("ab", 2), B)}) {
    auto reports = check_star_laws(alg, alg.pool(opt), opt);
    for (const auto& r : reports) EXPECT_TRUE(r.passed()) << alg.name() << ": " << summarize(r);
    EXPECT_EQ(find_report(reports, "star/unfold-left")->mode.kind, CheckMode::Kind::exhaustive);
    const auto* induction = find_report(reports, "star/induction-left");
    EXPECT_EQ(induction->tuples_checked,
              induction->mode.kind == CheckMode::Kind::exhaustive ? induction->mode.count : 100000u);
  }
}

TEST(StarLaws, UnitStarIsUnit) {
  for (auto alg : {relations(3), Alg(make_language("ab", 2), B), intervals()}) {
    EXPECT_EQ(star(alg, *alg.unit()), *alg.unit()) << alg.name();
  }
}

TEST(StarLaws, RandomRelationsMatchReachability) {
  auto alg = relations(4);
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    std::set<std::pair<int, int>> edges;
    std::vector<std::string> labels;
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= 4; ++b) {
        if (rng() % 4 == 0) {
          edges.insert({a, b});
          labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
        }
      }
    }
    std::vector<std::string> closure;
    for (const auto& [a, b] : closure_oracle(edges, 4)) {
      closure.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
    EXPECT_EQ(star(alg, characteristic(alg.carrier(), labels)), characteristic(alg.carrier(), closure));
  }
}
