#include "suites.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "psq/biquantale.hpp"
#include "psq/carrier_laws.hpp"
#include "psq/futuristic.hpp"
#include "psq/hoare.hpp"
#include "psq/instances.hpp"
#include "psq/interchange.hpp"
#include "psq/law_suites.hpp"
#include "psq/lifted_algebra.hpp"
#include "psq/matrix.hpp"
#include "psq/transformers.hpp"
#include "values.hpp"

namespace lawcheck {

using namespace psq;

namespace {

const BooleanQuantale B;
using BoolAlg = LiftedAlgebra<BooleanQuantale>;

std::string str(const InstanceSpec& s, const char* key) { return s.params.at(key).get<std::string>(); }
std::size_t num(const InstanceSpec& s, const char* key) { return s.params.at(key).get<std::size_t>(); }

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LawReport failure(std::string law, std::string detail, std::vector<std::string> items = {}) {
  LawReport r;
  r.law = std::move(law);
  r.status = LawStatus::fail;
  r.witness = Witness{std::move(items), std::move(detail)};
  return r;
}

LawReport outcome(std::string law, bool ok, std::string detail, std::string note = {}) {
  if (!ok) return failure(std::move(law), std::move(detail));
  LawReport r;
  r.law = std::move(law);
  r.tuples_checked = 1;
  r.mode.count = 1;
  r.note = std::move(note);
  return r;
}

void append(std::vector<LawReport>& out, std::vector<LawReport> more, const std::string& prefix = {}) {
  for (auto& r : more) {
    r.law = prefix + r.law;
    out.push_back(std::move(r));
  }
}

/// A carrier given as a table of labels; null marks an undefined product.
CarrierPtr load_table(const std::filesystem::path& path) {
  try {
    const auto j = nlohmann::json::parse(read_file(path));
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto rows = j.at("table");
    const std::size_t n = labels.size();
    if (rows.size() != n) throw UsageError("table: expected " + std::to_string(n) + " rows");
    auto index = [&](const std::string& l) {
      const auto it = std::find(labels.begin(), labels.end(), l);
      if (it == labels.end()) throw UsageError("table: unknown label '" + l + "'");
      return static_cast<std::int32_t>(it - labels.begin());
    };
    std::vector<std::int32_t> table(n * n, Carrier::undefined);
    for (std::size_t x = 0; x < n; ++x) {
      if (rows[x].size() != n) throw UsageError("table: row " + std::to_string(x) + " has the wrong length");
      for (std::size_t y = 0; y < n; ++y) {
        if (!rows[x][y].is_null()) table[x * n + y] = index(rows[x][y].get<std::string>());
      }
    }
    Carrier::Options opt;
    opt.labels = labels;
    opt.commutative_hint = j.value("commutative", false);
    if (j.contains("unit") && !j["unit"].is_null()) {
      opt.unit = Element{static_cast<std::uint32_t>(index(j["unit"].get<std::string>()))};
    }
    return make_carrier(j.value("name", path.stem().string()), n, std::move(table), std::move(opt));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("table ") + path.string() + ": " + e.what());
  }
}

/// The carriers a spec is built on; box2d and interval streams have two.
std::vector<std::pair<std::string, CarrierPtr>> carriers_of(const InstanceSpec& s) {
  const auto& k = s.kind;
  if (k == "language") return {{"", make_language(str(s, "alphabet"), num(s, "max_len"))}};
  if (k == "relation") return {{"", make_relation(num(s, "points"))}};
  if (k == "trace") return {{"", make_trace(str(s, "states"), str(s, "labels"), num(s, "max_transitions"))}};
  if (k == "interval_fusion") return {{"", make_interval(num(s, "chain"), IntervalMode::fusion)}};
  if (k == "interval_nofusion") return {{"", make_interval(num(s, "chain"), IntervalMode::nofusion)}};
  if (k == "multiset") {
    if (str(s, "model") == "addition") return {{"", make_symbol_carrier(str(s, "symbols"))}};
    SeparatingParams p;
    p.symbols = str(s, "symbols");
    p.cap = static_cast<int>(num(s, "cap"));
    p.caps = s.params.at("caps").get<std::vector<int>>();
    return {{"", make_separating(SeparatingKind::multiset_cap, p)}};
  }
  if (k == "powerset") return {{"", make_symbol_carrier(str(s, "symbols"))}};
  if (k == "disjoint_sets") return {{"", make_separating(SeparatingKind::disjoint_sets, {.size = num(s, "size")})}};
  if (k == "heaplet") {
    return {{"", make_separating(SeparatingKind::heaplet,
                                 {.size = num(s, "locations"), .values = static_cast<int>(num(s, "values"))})}};
  }
  if (k == "vector") {
    return {{"", make_separating(SeparatingKind::vector,
                                 {.cap = static_cast<int>(num(s, "max_value")), .size = num(s, "dim")})}};
  }
  if (k == "box2d") {
    auto b = make_box2d(num(s, "chain"));
    return {{"h/", b.horizontal}, {"v/", b.vertical}};
  }
  if (k == "matrix_parallel") {
    return {{"", make_matrix_parallel_carrier(num(s, "dimension"), static_cast<int>(num(s, "max_value")))}};
  }
  if (k == "inf_words") return {{"", make_infinite_words(str(s, "alphabet"), num(s, "cap"))}};
  if (k == "fut_intervals") return {{"", make_futuristic_intervals(num(s, "chain"))}};
  if (k == "interval_stream") {
    const StreamShape shape{num(s, "chain"), num(s, "dim"), static_cast<int>(num(s, "max_value"))};
    const auto mode = str(s, "intervals") == "fusion" ? IntervalMode::fusion : IntervalMode::nofusion;
    return {{"intervals/", make_interval(shape.times, mode)},
            {"streams/", make_stream_carrier(shape, parse_stream_split(str(s, "split")))}};
  }
  if (k == "table") return {{"", load_table(s.table_path)}};
  throw UsageError("kind '" + k + "' has no carrier");
}

/// Boolean lifting with the unit each instance family uses.
BoolAlg bool_algebra(const InstanceSpec& s, const CarrierPtr& c) {
  if (s.kind == "relation") {
    const std::size_t n = num(s, "points");
    return BoolAlg(c, B, direct_unit(B, c, [n](Element x) { return x.index / n == x.index % n; }));
  }
  if (s.kind == "trace") {
    return BoolAlg(c, B, direct_unit(B, c, [&](Element x) { return c->label(x).size() == 1; }));
  }
  if (s.kind == "interval_fusion") {
    const auto iv = enumerate_intervals(num(s, "chain"), IntervalMode::fusion);
    return BoolAlg(c, B, direct_unit(B, c, [&](Element x) { return iv[x.index].lo == iv[x.index].hi; }));
  }
  return BoolAlg(c, B);
}

std::vector<std::pair<int, int>> random_relation(std::mt19937_64& rng, int n) {
  std::bernoulli_distribution edge(0.3);
  std::vector<std::pair<int, int>> out;
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      if (edge(rng)) out.emplace_back(a, b);
    }
  }
  return out;
}

std::string pairs_label(const std::vector<std::pair<int, int>>& ps) {
  std::string out;
  for (const auto& [a, b] : ps) out += (out.empty() ? "" : ",") + ("(" + std::to_string(a) + "," + std::to_string(b) + ")");
  return "{" + out + "}";
}

/// Lifted star of 20 seeded random relations against graph reachability.
LawReport star_reachability(const BoolAlg& alg, int n, const CheckOptions& options) {
  LawReport r;
  r.law = "star/reachability-oracle";
  r.mode = {CheckMode::Kind::sampled, options.seed, 20};
  std::mt19937_64 rng(law_seed(options.seed, r.law));
  const auto& c = alg.carrier();
  for (int t = 0; t < 20 && !r.witness; ++t) {
    const auto edges = random_relation(rng, n);
    std::vector<std::string> labels;
    for (const auto& [a, b] : edges) labels.push_back("(" + std::to_string(a) + "," + std::to_string(b) + ")");
    const auto s = star(alg, characteristic(c, labels));
    std::vector<std::pair<int, int>> got;
    for (Element x : support(s)) {
      got.emplace_back(static_cast<int>(x.index) / n + 1, static_cast<int>(x.index) % n + 1);
    }
    ++r.tuples_checked;
    if (got != closure_oracle(edges, n)) {
      r.status = LawStatus::fail;
      r.witness = Witness{{pairs_label(edges)}, "star " + pairs_label(got) + " vs closure " +
                                                     pairs_label(closure_oracle(edges, n))};
    }
  }
  return r;
}

template <Algebra A>
std::vector<LawReport> algebra_suite(const A& alg, const std::string& suite, const CheckOptions& options) {
  const auto pool = alg.pool(options);
  std::vector<LawReport> out;
  if (suite == "lifted") {
    append(out, check_lifted_laws(alg, pool, options));
    append(out, check_lattice_laws(alg, pool, options), "lattice/");
  } else if (suite == "hoare") {
    append(out, check_hoare_rules(alg, pool, options));
  } else if (suite == "strengthened") {
    append(out, check_strengthened_rules(alg, pool, options));
  } else if (suite == "concurrency") {
    out.push_back(check_concurrency_rule(alg, pool, options));
  } else if (suite == "star") {
    append(out, check_star_laws(alg, pool, options));
  } else if (suite == "interchange") {
    append(out, check_meet_interchange(alg, pool, options));
  } else {
    throw UsageError("suite '" + suite + "' is not an algebra suite");
  }
  return out;
}

std::vector<LawReport> carrier_suite(const InstanceSpec& s) {
  std::vector<LawReport> out;
  for (const auto& [prefix, c] : carriers_of(s)) {
    auto laws = check_carrier_laws(*c);
    laws.push_back(check_splitting_index(*c));
    if (c->has_classification()) laws.push_back(check_futuristic_carrier(*c));
    append(out, std::move(laws), prefix);
  }
  return out;
}

std::vector<LawReport> futuristic_suite(const InstanceSpec& s, const CheckOptions& options) {
  const auto c = carriers_of(s).front().second;
  BoolAlg alg(c, B, std::nullopt, ConvolutionKind::futuristic);
  return check_futuristic_laws(alg, alg.pool(options), options);
}

std::vector<LawReport> biquantale_suite(const InstanceSpec& s, const CheckOptions& options) {
  const StreamShape shape{num(s, "chain"), num(s, "dim"), static_cast<int>(num(s, "max_value"))};
  const auto inst = make_interval_stream(IntervalMode::nofusion, shape, parse_stream_split(str(s, "split")));
  return check_biquantale(inst, options);
}

std::string witness_detail(const InterchangeWitness& w) {
  return "x=" + w.interval + " f=" + stream_label(w.instance.shape(), w.stream) + " lhs=" + (w.lhs ? "1" : "0") +
         " rhs=" + (w.rhs ? "1" : "0") + " via " + w.source;
}

void interchange_search_suite(const InstanceSpec& s, const CheckOptions& options, SuiteResult& out) {
  InterchangeInstance inst;
  inst.chain = num(s, "chain");
  inst.dim = num(s, "dim");
  inst.intervals = str(s, "intervals") == "fusion" ? IntervalMode::fusion : IntervalMode::nofusion;
  inst.split = parse_stream_split(str(s, "split"));
  const std::uint64_t budget =
      s.params.at("search_budget").is_null() ? options.budget : s.params.at("search_budget").get<std::uint64_t>();
  const auto family = predicate_family(inst.dim);
  for (const auto& name : s.params.at("laws")) {
    const auto law = parse_interchange_law(name.get<std::string>());
    const auto res = interchange_search(inst, law, family, budget);
    LawReport r;
    r.law = to_string(law);
    r.tuples_checked = res.tuples_checked;
    r.mode = res.exhausted ? CheckMode{CheckMode::Kind::exhaustive, 0, res.tuples_checked}
                           : CheckMode{CheckMode::Kind::sampled, 0, budget};
    r.note = law_formula(law) + "; family " + std::to_string(res.family_size) + ", construction " + res.construction +
             (res.exhausted ? ", family exhausted" : ", enumerated in shells of largest index");
    if (!res.witness) {
      out.laws.push_back(std::move(r));
      continue;
    }
    std::vector<std::string> items;
    for (const auto& p : res.witness->predicates) items.push_back(p.name);
    r.status = LawStatus::fail;
    r.witness = Witness{items, witness_detail(*res.witness)};
    out.laws.push_back(std::move(r));
    // The witness must survive serialisation and re-verify from the definitions.
    const auto text = witness_to_json(*res.witness);
    const auto reloaded = witness_from_json(text);
    const bool ok = verify_witness(reloaded);
    out.laws.push_back(outcome(to_string(law) + "/reload", ok, "reloaded witness does not re-verify: " + text));
    out.artifacts.push_back(Json::parse(text));
  }
}

struct Heap {
  CarrierPtr states;
  PredicateSpace space;
  HeapCommands cmds;
  std::size_t locations;
  int values;

  explicit Heap(const InstanceSpec& s)
      : states(carriers_of(s).front().second),
        space(states),
        cmds(states, num(s, "locations"), static_cast<int>(num(s, "values"))),
        locations(num(s, "locations")),
        values(static_cast<int>(num(s, "values"))) {}
};

std::vector<StateTransformer> fault_free(const Heap& h, std::uint64_t seed) {
  std::vector<StateTransformer> out{transformer_of_relation(h.states, {}), h.cmds.alloc_any()};
  std::vector<std::pair<std::string, std::string>> diag;
  for (std::uint32_t x = 0; x < h.states->size(); ++x) diag.emplace_back(h.states->label(Element{x}), h.states->label(Element{x}));
  out.push_back(transformer_of_relation(h.states, diag));
  std::mt19937_64 rng(law_seed(seed, "kleisli/relations"));
  std::bernoulli_distribution edge(0.2);
  for (int k = 0; k < 6; ++k) {
    std::vector<std::pair<std::string, std::string>> pairs;
    for (std::uint32_t x = 0; x < h.states->size(); ++x) {
      for (std::uint32_t y = 0; y < h.states->size(); ++y) {
        if (edge(rng)) pairs.emplace_back(h.states->label(Element{x}), h.states->label(Element{y}));
      }
    }
    out.push_back(transformer_of_relation(h.states, pairs));
  }
  return out;
}

/// Folds per-item reports into one law: counts add up, the first failure is kept.
LawReport fold(std::string law, const std::vector<std::pair<std::string, LawReport>>& parts, std::string note = {}) {
  LawReport r;
  r.law = std::move(law);
  r.note = std::move(note);
  std::uint64_t premises = 0;
  bool any_premises = false;
  for (const auto& [name, p] : parts) {
    r.tuples_checked += p.tuples_checked;
    r.mode.count += p.mode.count;
    if (p.mode.kind == CheckMode::Kind::sampled) r.mode = {CheckMode::Kind::sampled, p.mode.seed, r.mode.count};
    if (p.premises_held) {
      any_premises = true;
      premises += *p.premises_held;
    }
    if (p.failed() && !r.witness) {
      r.status = LawStatus::fail;
      auto w = p.witness.value_or(Witness{});
      w.items.insert(w.items.begin(), name);
      r.witness = std::move(w);
    }
  }
  if (any_premises) r.premises_held = premises;
  return r;
}

std::vector<LawReport> transformers_suite(const InstanceSpec& s, const CheckOptions& options) {
  const Heap h(s);
  const auto& sp = h.space;
  std::vector<LawReport> out;

  std::vector<std::pair<std::string, LawReport>> mult;
  const auto free = fault_free(h, options.seed);
  for (std::size_t i = 0; i < free.size(); ++i) mult.emplace_back("relation#" + std::to_string(i), sp.check_multiplicative(free[i], 0));
  out.push_back(fold("kleisli/complete-multiplicativity", mult, "fault-free transformers, families 0 to 3"));

  std::vector<std::pair<std::string, LawReport>> nonempty;
  for (std::size_t l = 0; l < h.locations; ++l) {
    for (int v = 0; v < h.values; ++v) {
      nonempty.emplace_back("write", sp.check_multiplicative(h.cmds.write(l, v), 1));
      nonempty.emplace_back("read", sp.check_multiplicative(h.cmds.read_guard(l, v), 1));
    }
    nonempty.emplace_back("dispose", sp.check_multiplicative(h.cmds.dispose(l), 1));
  }
  out.push_back(fold("kleisli/nonempty-multiplicativity", nonempty, "faulting heap commands, families 1 to 3"));

  const auto pool = generate_transformers(sp, h.cmds, options.seed);
  std::size_t local = 0;
  LawReport agree;
  agree.law = "locality/pointwise-agreement";
  for (const auto& t : pool) {
    const bool a = sp.is_local(t.pt).passed();
    const bool b = sp.is_local_pointwise(t.pt).passed();
    ++agree.tuples_checked;
    local += a;
    if (a != b && !agree.witness) {
      agree.status = LawStatus::fail;
      agree.witness = Witness{{t.name}, std::string("is_local=") + (a ? "1" : "0") + " pointwise=" + (b ? "1" : "0")};
    }
  }
  agree.mode.count = agree.tuples_checked;
  agree.note = std::to_string(pool.size()) + " transformers, " + std::to_string(local) + " local";
  out.push_back(std::move(agree));

  const auto write = sp.kleisli_lift(h.cmds.write(0, 1 % h.values));
  out.push_back(outcome("locality/heap-write", sp.is_local(write).passed(), summarize(sp.is_local(write))));
  auto miracle = sp.is_local(sp.kleisli_lift(h.cmds.write_miraculous(0, 1 % h.values)));
  auto empty_const = sp.is_local(sp.constant(sp.predicate({h.states->label(*h.states->unit())})));
  out.push_back(outcome("locality/nonlocal-controls-detected", miracle.failed() && empty_const.failed(),
                        "a non-local control passed the locality check",
                        miracle.witness ? "miraculous write: " + miracle.witness->detail : ""));

  out.push_back(check_compose_right_distributivity(sp, pool));
  out.back().law = "compose/right-distributivity";
  out.push_back(check_compose_left_distributivity(sp, pool));
  out.back().law = "compose/left-distributivity";

  // Convolution laws of the transformer space, on the one-value heap over the same locations.
  auto small = make_separating(SeparatingKind::heaplet, {.size = h.locations, .values = 1});
  PredicateSpace small_space(small);
  HeapCommands small_cmds(small, h.locations, 1);
  LiftedAlgebra<PowersetQuantale> pt(small_space.predicates(), small_space.target());
  Pool<PredicateTransformer> pt_pool;
  for (auto& t : generate_transformers(small_space, small_cmds, options.seed, 6)) pt_pool.push_back({t.name, std::move(t.pt)});
  append(out, check_lifted_laws(pt, pt_pool, options), "pt-quantale/");
  return out;
}

std::vector<LawReport> frame_suite(const InstanceSpec& s, const CheckOptions& options) {
  const Heap h(s);
  const auto& sp = h.space;
  std::vector<LawReport> out;
  const auto write = sp.kleisli_lift(h.cmds.write(0, 1 % h.values));
  const StateSet q = h.cmds.where([&](const std::vector<int>& c) { return c[0] == 1 % h.values; });
  auto sweep = sp.frame_sweep(write, q);
  sweep.law = "frame/heap-write-sweep";
  out.push_back(std::move(sweep));

  CheckOptions per = options;
  per.budget = std::max<std::uint64_t>(1, options.budget / 5);
  std::vector<std::pair<std::string, LawReport>> parts;
  for (const auto& t : generate_transformers(sp, h.cmds, options.seed)) {
    if (sp.is_local(t.pt).passed()) parts.emplace_back(t.name, sp.frame_sample(t.pt, per));
  }
  out.push_back(fold("frame/generated-local", parts, std::to_string(parts.size()) + " local transformers"));

  bool rejected = false;
  try {
    (void)sp.frame_check(sp.kleisli_lift(h.cmds.write_miraculous(0, 1 % h.values)), 0, 0, 0);
  } catch (const UsageError&) {
    rejected = true;
  }
  out.push_back(outcome("frame/nonlocal-rejected", rejected, "frame_check accepted a non-local transformer"));

  // Wand adjunction f∗k ≤ g ⇔ k ≤ f−∗g. Up to 9 heaplets every (f, g, k) is checked, with products and wands
  // tabulated as bitmasks; larger instances use seeded (f, g) pairs against every k.
  const auto& c = h.states;
  const std::uint32_t n = static_cast<std::uint32_t>(c->size());
  LawReport wand_law;
  wand_law.law = "wand/adjunction";
  auto series = [&](std::uint32_t m) {
    PowerSeries<std::uint8_t> f(c, 0);
    for (std::uint32_t e = 0; e < n; ++e) f[Element{e}] = (m >> e) & 1U;
    return f;
  };
  auto mask_of = [&](const PowerSeries<std::uint8_t>& f) {
    std::uint32_t m = 0;
    for (std::uint32_t e = 0; e < n; ++e) m |= (f[Element{e}] ? 1U : 0U) << e;
    return m;
  };
  const std::uint32_t full = 1U << std::min<std::uint32_t>(n, 31);
  if (n <= 9) {
    std::vector<PowerSeries<std::uint8_t>> all;
    for (std::uint32_t m = 0; m < full; ++m) all.push_back(series(m));
    std::vector<std::uint32_t> product(std::size_t{full} * full), residual(std::size_t{full} * full);
    for (std::uint32_t f = 0; f < full; ++f) {
      for (std::uint32_t x = 0; x < full; ++x) {
        product[std::size_t{f} * full + x] = mask_of(convolve(B, all[f], all[x]));
        residual[std::size_t{f} * full + x] = mask_of(wand(all[f], all[x]));
      }
    }
    for (std::uint32_t f = 0; f < full && !wand_law.witness; ++f) {
      for (std::uint32_t g = 0; g < full && !wand_law.witness; ++g) {
        const std::uint32_t w = residual[std::size_t{f} * full + g];
        for (std::uint32_t k = 0; k < full; ++k) {
          const bool lhs = (product[std::size_t{f} * full + k] & ~g) == 0;
          const bool rhs = (k & ~w) == 0;
          if (lhs != rhs) {
            wand_law.status = LawStatus::fail;
            wand_law.witness =
                Witness{{describe(B, all[f]), describe(B, all[g]), describe(B, all[k])}, "adjunction fails"};
            break;
          }
        }
        wand_law.tuples_checked += full;
      }
    }
    wand_law.mode.count = wand_law.tuples_checked;
    wand_law.note = "every (f, g, k)";
  } else if (n <= 12) {
    std::mt19937_64 rng(law_seed(options.seed, wand_law.law));
    std::uniform_int_distribution<std::uint32_t> mask(0, full - 1);
    const int pairs = 16;
    for (int t = 0; t < pairs && !wand_law.witness; ++t) {
      const auto f = series(t == 0 ? full - 1 : mask(rng) & mask(rng));
      const auto g = series(mask(rng) | mask(rng));
      const auto w = wand(f, g);
      for (std::uint32_t m = 0; m < full && !wand_law.witness; ++m) {
        const auto k = series(m);
        ++wand_law.tuples_checked;
        if (leq(B, convolve(B, f, k), g) != leq(B, k, w)) {
          wand_law.status = LawStatus::fail;
          wand_law.witness = Witness{{describe(B, f), describe(B, g), describe(B, k)}, "adjunction fails"};
        }
      }
    }
    wand_law.mode = CheckMode{CheckMode::Kind::sampled, options.seed, wand_law.tuples_checked};
    wand_law.note = std::to_string(pairs) + " seeded (f, g) pairs, every k";
  } else {
    wand_law.status = LawStatus::skipped;
    wand_law.note = "more than 12 heaplets";
  }
  out.push_back(std::move(wand_law));
  return out;
}

void run_into(const InstanceSpec& s, const std::string& suite, const CheckOptions& options, SuiteResult& out) {
  if (suite == "carrier") {
    out.laws = carrier_suite(s);
    return;
  }
  if (suite == "futuristic") {
    out.laws = futuristic_suite(s, options);
    return;
  }
  if (suite == "biquantale") {
    out.laws = biquantale_suite(s, options);
    return;
  }
  if (suite == "transformers") {
    out.laws = transformers_suite(s, options);
    return;
  }
  if (suite == "frame") {
    out.laws = frame_suite(s, options);
    return;
  }
  if (s.kind == "interval_stream" && suite == "interchange") {
    interchange_search_suite(s, options, out);
    return;
  }
  if (s.kind == "matrix") {
    MatrixAlgebra<TropicalQuantale> alg(TropicalQuantale(static_cast<std::int64_t>(num(s, "cap"))), num(s, "dimension"));
    out.laws = algebra_suite(alg, suite, options);
    return;
  }
  if (s.kind == "vector") {
    PartialLiftedAlgebra<BooleanQuantale> alg(carriers_of(s).front().second, B);
    out.laws = algebra_suite(alg, suite, options);
    return;
  }
  if (s.kind == "multiset" && str(s, "model") == "addition") {
    LiftedAlgebra<TropicalQuantale> alg(carriers_of(s).front().second,
                                        TropicalQuantale(static_cast<std::int64_t>(num(s, "cap"))));
    out.laws = algebra_suite(alg, suite, options);
    return;
  }
  for (const auto& [prefix, c] : carriers_of(s)) {
    const auto alg = bool_algebra(s, c);
    append(out.laws, algebra_suite(alg, suite, options), prefix);
    if (suite == "star" && s.kind == "relation") {
      out.laws.push_back(star_reachability(alg, static_cast<int>(num(s, "points")), options));
    }
  }
}

std::vector<std::filesystem::path> fixture_files(const std::filesystem::path& path) {
  if (!std::filesystem::is_directory(path)) return {path};
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(path)) {
    if (e.path().extension() == ".json") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LawReport> check_values(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  std::vector<LawReport> out;
  auto compare = [&](const std::string& law, const std::string& got, const std::string& want) {
    out.push_back(outcome("values/" + law, got == want, "computed " + got + ", stored " + want, got));
  };
  const auto& ms = j.at("multiset");
  for (const auto& c : ms.at("cases")) {
    const auto got = multiset_op(c.at("op"), ms.at("symbols"), ms.at("cap"), c.at("f").get<Multiset>(),
                                 c.at("g").get<Multiset>());
    compare("multiset/" + c.at("id").get<std::string>(), multiset_label(got), multiset_label(c.at("expected").get<Multiset>()));
  }
  auto vec = [](const std::optional<std::vector<long>>& v) {
    if (!v) return std::string("⊥");
    std::string s;
    for (long x : *v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return "(" + s + ")";
  };
  auto stored = [](const nlohmann::json& e) {
    return e.is_null() ? std::nullopt : std::optional<std::vector<long>>(e.get<std::vector<long>>());
  };
  for (const auto& c : j.at("vector")) {
    compare("vector/" + c.at("id").get<std::string>(),
            vec(separate(c.at("a").get<std::vector<long>>(), c.at("b").get<std::vector<long>>())), vec(stored(c.at("expected"))));
  }
  for (const auto& c : j.at("linear")) {
    using M = std::vector<std::vector<long>>;
    const auto got = separate(apply_linear(c.at("m1").get<M>(), c.at("x1").get<std::vector<long>>()),
                              apply_linear(c.at("m2").get<M>(), c.at("x2").get<std::vector<long>>()));
    compare("linear/" + c.at("id").get<std::string>(), vec(got), vec(stored(c.at("expected"))));
  }
  const auto& am = j.at("automaton");
  Automaton a;
  a.states = am.at("states");
  a.alphabet = am.at("alphabet");
  a.cap = am.at("cap");
  for (const auto& e : am.at("edges")) a.edges.push_back({e.at(0), e.at(1), e.at(2).get<std::string>().at(0)});
  auto set_label = [](const std::set<std::string>& s) {
    std::string out;
    for (const auto& w : s) out += (out.empty() ? "" : ",") + w;
    return "{" + out + "}";
  };
  for (const auto& e : am.at("entries")) {
    const int k = e.at("power");
    const int i = e.at("from");
    const int t = e.at("to");
    compare("automaton/M^" + std::to_string(k) + "(" + std::to_string(i) + "," + std::to_string(t) + ")",
            set_label(automaton_power(a, k, i, t)), set_label(e.at("expected").get<std::set<std::string>>()));
  }
  auto oracle = check_automaton_oracle(a, am.value("oracle_powers", 3));
  oracle.law = "values/" + oracle.law;
  out.push_back(std::move(oracle));
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> closure_oracle(const std::vector<std::pair<int, int>>& edges, int n) {
  std::vector<std::pair<int, int>> out;
  for (int s = 1; s <= n; ++s) {
    std::vector<int> stack{s};
    std::set<int> seen{s};
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (const auto& [a, b] : edges) {
        if (a == v && seen.insert(b).second) stack.push_back(b);
      }
    }
    for (int t : seen) out.emplace_back(s, t);
  }
  return out;
}

SuiteResult run_suite(const InstanceSpec& spec, const std::string& suite, const CheckOptions& options) {
  SuiteResult out{spec.name, spec.kind, suite, {}, {}};
  try {
    run_into(spec, suite, options, out);
  } catch (const std::exception& e) {
    out.laws.push_back(failure("error", e.what()));
  }
  return out;
}

SuiteResult run_fixture(const FixtureSpec& fixture) {
  SuiteResult out{fixture.path.filename().string(), "fixture", fixture.kind, {}, {}};
  if (!std::filesystem::exists(fixture.path)) {
    out.laws.push_back(failure("fixture/missing", "no such file or directory: " + fixture.path.string()));
    return out;
  }
  for (const auto& file : fixture_files(fixture.path)) {
    const std::string name = file.filename().string();
    try {
      const auto text = read_file(file);
      if (fixture.kind == "interchange_witness") {
        const auto w = witness_from_json(text);
        const auto lit = evaluate_literal(w);
        std::vector<std::string> items;
        for (const auto& p : w.predicates) items.push_back(p.name);
        auto r = verify_witness(w)
                     ? outcome(name, true, {}, to_string(w.law) + " " + w.instance.label())
                     : failure(name,
                               "stored witness no longer refutes " + law_formula(w.law) + ": at x=" + w.interval +
                                   " f=" + stream_label(w.instance.shape(), w.stream) + " the definitions give lhs=" +
                                   (lit.lhs ? "1" : "0") + " rhs=" + (lit.rhs ? "1" : "0") + ", stored lhs=" +
                                   (w.lhs ? "1" : "0") + " rhs=" + (w.rhs ? "1" : "0"),
                               items);
        out.laws.push_back(std::move(r));
      } else if (fixture.kind == "noncommutativity") {
        auto r = verify_noncommutativity(noncommutativity_from_json(text));
        r.law = name;
        out.laws.push_back(std::move(r));
      } else {
        append(out.laws, check_values(text), name + ":");
      }
    } catch (const std::exception& e) {
      out.laws.push_back(failure(name, std::string("unreadable fixture: ") + e.what()));
    }
  }
  return out;
}

}  // namespace lawcheck
