#include "demo.hpp"

#include <iomanip>

#include "psq/biquantale.hpp"
#include "psq/instances.hpp"
#include "psq/law_report.hpp"
#include "psq/transformers.hpp"
#include "values.hpp"

namespace lawcheck {

using namespace psq;

namespace {

struct Checker {
  std::ostream& out;
  bool ok = true;

  void check(const std::string& what, const std::string& got, const std::string& want) {
    const bool pass = got == want;
    ok = ok && pass;
    out << (pass ? "PASS " : "FAIL ") << what << " = " << got;
    if (!pass) out << " (expected " << want << ")";
    out << "\n";
  }
};

std::string set_label(const std::set<std::string>& s) {
  std::string out;
  for (const auto& w : s) out += (out.empty() ? "" : ",") + w;
  return "{" + out + "}";
}

std::string vec_label(const std::optional<std::vector<long>>& v) {
  if (!v) return "⊥";
  std::string s;
  for (long x : *v) s += (s.empty() ? "" : ",") + std::to_string(x);
  return "(" + s + ")";
}

int automaton(std::ostream& out) {
  Checker c{out};
  const auto a = worked_automaton();
  for (int k = 1; k <= 3; ++k) {
    out << "M^" << k << ":\n";
    for (int i = 1; i <= a.states; ++i) {
      out << "  ";
      for (int j = 1; j <= a.states; ++j) out << std::left << std::setw(36) << set_label(automaton_power(a, k, i, j));
      out << "\n";
    }
  }
  c.check("M^2(1,3)", set_label(automaton_power(a, 2, 1, 3)), "{ba}");
  c.check("M^3(1,3)", set_label(automaton_power(a, 3, 1, 3)), "{aba,bba}");
  const auto oracle = check_automaton_oracle(a, 3);
  out << (oracle.passed() ? "PASS " : "FAIL ") << "path oracle, " << oracle.tuples_checked
      << " entries of M, M^2, M^3 and M* (cap 3)";
  if (oracle.witness) out << ": " << oracle.witness->items.front() << " " << oracle.witness->detail;
  out << "\n";
  return c.ok && oracle.passed() ? 0 : 1;
}

int multiset(std::ostream& out) {
  Checker c{out};
  const Multiset f{{"a", 2}, {"b", 5}, {"c", 1}};
  const Multiset g{{"a", 1}, {"b", 3}, {"d", 2}};
  out << "f = " << multiset_label(f) << ", g = " << multiset_label(g) << " over max/min-plus, cap 16\n";
  c.check("f ⊎ g", multiset_label(multiset_op("sum", "abcd", 16, f, g)), "a^3b^8cd^2");
  c.check("f + g", multiset_label(multiset_op("join", "abcd", 16, f, g)), "a^2b^5cd^2");
  c.check("f ⊓ g", multiset_label(multiset_op("meet", "abcd", 16, f, g)), "ab^3");
  return c.ok ? 0 : 1;
}

int vector(std::ostream& out) {
  Checker c{out};
  c.check("(5,0,7) ∗ (0,4,0)", vec_label(separate({5, 0, 7}, {0, 4, 0})), "(5,4,7)");
  c.check("(5,0,7) ∗ (0,4,4)", vec_label(separate({5, 0, 7}, {0, 4, 4})), "⊥");
  const long a1 = 2, b1 = 3, c1 = 5, d1 = 7, a2 = 11, b2 = 13, c2 = 17, d2 = 19, x = 2, y = 3;
  out << "linear maps with a1=2 b1=3 c1=5 d1=7 a2=11 b2=13 c2=17 d2=19, x=2 y=3\n";
  c.check("[[a1,b1],[c1,d1]](x,0) ∗ [[a2,b2],[c2,d2]](0,y)",
          vec_label(separate(apply_linear({{a1, b1}, {c1, d1}}, {x, 0}), apply_linear({{a2, b2}, {c2, d2}}, {0, y}))),
          "⊥");
  c.check("[[a1,b1],[0,d1]](x,0) ∗ [[a2,0],[c2,d2]](0,y)",
          vec_label(separate(apply_linear({{a1, b1}, {0, d1}}, {x, 0}), apply_linear({{a2, 0}, {c2, d2}}, {0, y}))),
          vec_label(std::vector<long>{a1 * x, d2 * y}));
  return c.ok ? 0 : 1;
}

int frame(std::ostream& out) {
  Checker c{out};
  auto states = make_separating(SeparatingKind::heaplet, {.size = 2, .values = 2});
  PredicateSpace space(states);
  HeapCommands cmds(states, 2, 2);
  const auto w = space.kleisli_lift(cmds.write(0, 1));
  const StateSet p = cmds.where([](const std::vector<int>& h) { return h[0] >= 0; });
  const StateSet q = cmds.where([](const std::vector<int>& h) { return h[0] == 1; });
  const StateSet r = cmds.where([](const std::vector<int>& h) { return h[1] == 0; });
  out << "heaplets over 2 locations and values {0,1}: " << states->size() << " states, " << space.predicate_count()
      << " predicates\n";
  out << "w = lift of [l1] := 1, faulting when l1 is unallocated\n";
  c.check("w local (w∗id ≤ w)", space.is_local(w).passed() ? "yes" : "no", "yes");
  c.check("w local, pointwise form", space.is_local_pointwise(w).passed() ? "yes" : "no", "yes");
  out << "p = " << space.format(p) << "\nq = " << space.format(q) << "\nr = " << space.format(r) << "\n";
  c.check("p ≤ w q", (p & ~space.apply(w, q)) == 0 ? "yes" : "no", "yes");
  c.check("p∗r ≤ w(q∗r)", (space.star(p, r) & ~space.apply(w, space.star(q, r))) == 0 ? "yes" : "no", "yes");
  const auto sweep = space.frame_sweep(w, q);
  out << (sweep.passed() ? "PASS " : "FAIL ") << "frame sweep over all (p, r) with q fixed: " << sweep.tuples_checked
      << " pairs, " << sweep.premises_held.value_or(0) << " with the premise\n";
  const auto miracle = space.is_local(space.kleisli_lift(cmds.write_miraculous(0, 1)));
  c.check("miraculous write (no successor when unallocated) local", miracle.passed() ? "yes" : "no", "no");
  if (miracle.witness) out << "  witness: " << miracle.witness->detail << "\n";
  return c.ok && sweep.passed() ? 0 : 1;
}

int stream(std::ostream& out) {
  Checker c{out};
  const BooleanQuantale B;
  auto inst = make_interval_stream(IntervalMode::nofusion, {5, 2, 1}, StreamSplit::pointwise);
  auto up = forall_series(inst, [](auto v) { return v[0] == 1; });
  auto down = forall_series(inst, [](auto v) { return v[0] == 0; });
  const auto f = inst.s2->at("1,0|1,0|0,0|0,0|0,0");
  const auto x = inst.s1->at("[0,4]");
  out << "intervals without fusion over 0..4, streams of 2 components in {0,1}\n";
  out << "F = ∀t. f1 t = 1, G = ∀t. f1 t = 0, f = " << inst.s2->label(f) << ", x = [0,4]\n";
  c.check("F x f", std::to_string(up(x, f)), "0");
  c.check("(F∘G) x f", std::to_string(hconvolve(B, up, down)(x, f)), "1");
  c.check("(G∘F) x f", std::to_string(hconvolve(B, down, up)(x, f)), "0");
  auto second = forall_series(inst, [](auto v) { return v[1] == 1; });
  const auto both = inst.s2->at("1,1|1,1|1,1|1,1|1,1");
  out << "H = ∀t. f2 t = 1, g = " << inst.s2->label(both) << "\n";
  c.check("(F•H) x g", std::to_string(vconvolve(B, up, second)(x, both)), "1");
  c.check("(F•F) x g", std::to_string(vconvolve(B, up, up)(x, both)), "0");
  c.check("(H•F) x g = (F•H) x g", std::to_string(vconvolve(B, second, up)(x, both)), "1");
  return c.ok ? 0 : 1;
}

}  // namespace

const std::vector<std::string>& demo_names() {
  static const std::vector<std::string> names{"automaton", "multiset", "vector", "frame", "stream"};
  return names;
}

int run_demo(const std::string& name, std::ostream& out) {
  if (name == "automaton") return automaton(out);
  if (name == "multiset") return multiset(out);
  if (name == "vector") return vector(out);
  if (name == "frame") return frame(out);
  if (name == "stream") return stream(out);
  throw UsageError("unknown demo '" + name + "'");
}

}  // namespace lawcheck
