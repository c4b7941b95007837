#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "psq/instances.hpp"
#include "values.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

const fs::path source_dir = PSQ_SOURCE_DIR;
const fs::path work_dir = fs::temp_directory_path() / "lawcheck_acceptance";

struct Verdict {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
};

int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string cmd = std::string(LAWCHECK_BIN) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return -1;
  std::string text;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) text.append(buf, n);
  const int status = pclose(pipe);
  if (out) *out = text;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

/// Laws of one (instance, suite) in the default report, keyed by name.
struct Report {
  Json json;

  [[nodiscard]] std::map<std::string, Json> laws(const std::string& instance, const std::string& suite) const {
    std::map<std::string, Json> out;
    for (const auto& s : json["suites"]) {
      if (s["instance"] == instance && s["suite"] == suite) {
        for (const auto& l : s["laws"]) out[l["law"]] = l;
      }
    }
    return out;
  }
};

bool exhaustive(const Json& law) { return law["mode"]["kind"] == "exhaustive"; }
bool full_budget(const Json& law) { return exhaustive(law) || law["tuples_checked"].get<std::uint64_t>() >= 100000; }
bool ok(const Json& law) { return law["outcome"] == "ok"; }
bool refuted(const Json& law) { return law["outcome"] == "refuted-as-expected" && law.contains("witness"); }

void require_law(Verdict& v, const std::map<std::string, Json>& laws, const std::string& where, const std::string& name,
                 const std::function<bool(const Json&)>& pred, const std::string& what) {
  const auto it = laws.find(name);
  if (it == laws.end()) {
    v.require(false, where + " " + name + " missing");
    return;
  }
  v.require(pred(it->second), where + " " + name + " not " + what + " (" + it->second["outcome"].get<std::string>() + ")");
}

// 1. Lifted laws, exhaustive, on the nine single-lifted instances.
Verdict criterion1(const Report& r) {
  Verdict v;
  const std::map<std::string, bool> instances{{"relation3", false},        {"language_ab2", false},
                                              {"trace_2x1", false},        {"interval_fusion5", false},
                                              {"interval_nofusion5", false}, {"heaplet_2x2", true},
                                              {"disjoint_sets3", true},    {"multiset_ab3", true},
                                              {"vector_d2v2", true}};
  for (const auto& [name, commutative] : instances) {
    const auto laws = r.laws(name, "lifted");
    std::vector<std::string> required{"associativity", "left-unit", "right-unit"};
    for (int k = 0; k <= 3; ++k) {
      required.push_back("left-distributivity/" + std::to_string(k));
      required.push_back("right-distributivity/" + std::to_string(k));
    }
    if (commutative) required.push_back("commutativity");
    for (const auto& law : required) {
      require_law(v, laws, name, law, [](const Json& l) { return ok(l) && exhaustive(l); }, "ok and exhaustive");
    }
    for (const auto& [law, l] : laws) v.require(ok(l) || l["outcome"] == "skipped", name + " " + law + " failed");
  }
  const auto ms = r.json.value("wall_clock_ms", 0);
  v.require(ms > 0 && ms < 5 * 60 * 1000, "default run took " + std::to_string(ms) + " ms");
  v.notes.push_back("9 instances, default run " + std::to_string(ms / 1000) + " s");
  return v;
}

// 2. Worked values against the stored constants, with the vector rule restated componentwise.
Verdict criterion2(const Report& r) {
  Verdict v;
  const lawcheck::Multiset f{{"a", 2}, {"b", 5}, {"c", 1}};
  const lawcheck::Multiset g{{"a", 1}, {"b", 3}, {"d", 2}};
  v.require(lawcheck::multiset_label(lawcheck::multiset_op("sum", "abcd", 16, f, g)) == "a^3b^8cd^2", "multiset sum");
  v.require(lawcheck::multiset_label(lawcheck::multiset_op("join", "abcd", 16, f, g)) == "a^2b^5cd^2", "multiset join");
  v.require(lawcheck::multiset_label(lawcheck::multiset_op("meet", "abcd", 16, f, g)) == "ab^3", "multiset meet");

  auto oracle = [](const std::vector<long>& x, const std::vector<long>& y) -> std::optional<std::vector<long>> {
    std::vector<long> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != 0 && y[i] != 0) return std::nullopt;
      z[i] = x[i] + y[i];
    }
    return z;
  };
  const auto p1 = psq::separate({5, 0, 7}, {0, 4, 0});
  v.require(p1 && *p1 == std::vector<long>{5, 4, 7} && p1 == oracle({5, 0, 7}, {0, 4, 0}), "(5,0,7)*(0,4,0)");
  v.require(!psq::separate({5, 0, 7}, {0, 4, 4}) && !oracle({5, 0, 7}, {0, 4, 4}), "(5,0,7)*(0,4,4)");

  // Linear block example: full blocks collide, triangular blocks land in separate rows.
  const long a1 = 2, b1 = 3, c1 = 5, d1 = 7, a2 = 11, b2 = 13, c2 = 17, d2 = 19, x = 2, y = 3;
  v.require(!psq::separate(psq::apply_linear({{a1, b1}, {c1, d1}}, {x, 0}), psq::apply_linear({{a2, b2}, {c2, d2}}, {0, y})),
            "full blocks defined");
  const auto tri =
      psq::separate(psq::apply_linear({{a1, b1}, {0, d1}}, {x, 0}), psq::apply_linear({{a2, 0}, {c2, d2}}, {0, y}));
  v.require(tri && *tri == std::vector<long>{a1 * x, d2 * y}, "triangular blocks");

  bool fixture_ok = false;
  for (const auto& fx : r.json["fixtures"]) {
    if (fx["kind"] == "values") fixture_ok = fx["status"] == "pass" && !fx["laws"].empty();
  }
  v.require(fixture_ok, "values fixture in the default run");
  return v;
}

// 3. Automaton powers and star against a path enumeration written here.
Verdict criterion3() {
  Verdict v;
  const auto a = lawcheck::worked_automaton();
  std::function<void(int, int, int, std::string, std::set<std::string>&)> walk =
      [&](int at, int to, int left, std::string word, std::set<std::string>& out) {
        if (left == 0) {
          if (at == to) out.insert(word);
          return;
        }
        for (const auto& e : a.edges) {
          if (e.from == at) walk(e.to, to, left - 1, word + e.label, out);
        }
      };
  std::size_t entries = 0;
  for (int k = 1; k <= 3; ++k) {
    for (int i = 1; i <= a.states; ++i) {
      for (int j = 1; j <= a.states; ++j) {
        std::set<std::string> want;
        walk(i, j, k, "", want);
        v.require(lawcheck::automaton_power(a, k, i, j) == want,
                  "M^" + std::to_string(k) + "(" + std::to_string(i) + "," + std::to_string(j) + ")");
        ++entries;
      }
    }
  }
  for (int i = 1; i <= a.states; ++i) {
    for (int j = 1; j <= a.states; ++j) {
      std::set<std::string> want;
      for (int k = 0; k <= 3; ++k) walk(i, j, k, "", want);
      if (want.erase("")) want.insert("ε");
      v.require(lawcheck::automaton_star(a, i, j) == want, "M*(" + std::to_string(i) + "," + std::to_string(j) + ")");
      ++entries;
    }
  }
  v.require(lawcheck::automaton_power(a, 2, 1, 3) == std::set<std::string>{"ba"}, "M^2(1,3) = {ba}");
  v.require(lawcheck::automaton_power(a, 3, 1, 3) == std::set<std::string>{"aba", "bba"}, "M^3(1,3) = {aba,bba}");
  v.notes.push_back(std::to_string(entries) + " entries");
  return v;
}

// 4. Star unfold exact, induction at full budget, reachability oracle on 20 relations.
Verdict criterion4(const Report& r) {
  Verdict v;
  for (const std::string name : {"relation3", "language_ab2"}) {
    const auto laws = r.laws(name, "star");
    for (const std::string law : {"star/unfold-left", "star/unfold-right"}) {
      require_law(v, laws, name, law, [](const Json& l) { return ok(l) && exhaustive(l); }, "ok and exhaustive");
    }
    for (const std::string law : {"star/induction-left", "star/induction-right"}) {
      require_law(v, laws, name, law, [](const Json& l) { return ok(l) && full_budget(l); }, "ok at full budget");
    }
  }
  require_law(v, r.laws("relation3", "star"), "relation3", "star/reachability-oracle",
              [](const Json& l) { return ok(l) && l["tuples_checked"] == 20; }, "ok on 20 relations");
  return v;
}

// 5. Hoare, strengthened and concurrency rules on relation, language, interval and heaplet instances.
Verdict criterion5(const Report& r) {
  Verdict v;
  std::size_t rules = 0;
  for (const std::string name : {"relation3", "language_ab2", "interval_fusion5", "interval_nofusion5", "heaplet_2x2"}) {
    for (const std::string suite : {"hoare", "strengthened", "concurrency"}) {
      const auto laws = r.laws(name, suite);
      v.require(!laws.empty(), name + " " + suite + " missing");
      for (const auto& [law, l] : laws) {
        v.require(ok(l) && full_budget(l), name + " " + law + " not ok at full budget");
        ++rules;
      }
    }
  }
  v.require(rules == 5 * 8, std::to_string(rules) + " rule reports instead of 40");
  return v;
}

// 6. Meet interchange holds; the four interchange non-laws have verified witnesses.
Verdict criterion6(const Report& r) {
  Verdict v;
  std::size_t seq = 0, conc = 0, conc_refuted = 0;
  for (const auto& s : r.json["suites"]) {
    if (s["suite"] != "interchange") continue;
    for (const auto& l : s["laws"]) {
      const std::string name = s["instance"].get<std::string>() + " " + l["law"].get<std::string>();
      if (l["law"] == "meet-interchange/seq-leq" || l["law"] == "meet_seq") {
        ++seq;
        v.require(ok(l) && full_budget(l), name + " not ok at full budget");
      }
      if (l["law"] == "meet-interchange/conc-eq" || l["law"] == "meet_conc") {
        ++conc;
        if (!ok(l)) {
          ++conc_refuted;
          v.require(false, name + " refuted: " + l["witness"]["detail"].get<std::string>());
        }
      }
    }
  }
  for (const std::string split : {"", "_uniform"}) {
    const auto d2 = r.laws("stream_fusion5_d2" + split, "interchange");
    const auto d3 = r.laws("stream_fusion5_d3" + split, "interchange");
    for (const std::string law : {"FG_le_FsG", "small_left", "small_right"}) {
      require_law(v, d2, "stream_fusion5_d2" + split, law, refuted, "refuted with a witness");
      require_law(v, d2, "stream_fusion5_d2" + split, law + "/reload", ok, "re-verified on reload");
    }
    require_law(v, d3, "stream_fusion5_d3" + split, "weak", refuted, "refuted with a witness");
    require_law(v, d3, "stream_fusion5_d3" + split, "weak/reload", ok, "re-verified on reload");
  }
  v.notes.insert(v.notes.begin(), std::to_string(seq) + " seq-leq checks, " + std::to_string(conc_refuted) + "/" +
                                      std::to_string(conc) + " conc-eq checks refuted");
  return v;
}

// 7. Futuristic pattern on both instances.
Verdict criterion7(const Report& r) {
  Verdict v;
  for (const std::string name : {"inf_words_a2", "fut_intervals4"}) {
    const auto laws = r.laws(name, "futuristic");
    std::vector<std::string> hold{"associativity", "left-annihilation"};
    for (int k = 0; k <= 3; ++k) hold.push_back("right-distributivity/" + std::to_string(k));
    for (const auto& law : hold) {
      require_law(v, laws, name, law, [](const Json& l) { return ok(l) && exhaustive(l); }, "ok and exhaustive");
    }
    for (const std::string law : {"right-annihilation", "left-distributivity/0"}) {
      require_law(v, laws, name, law, refuted, "refuted with a witness");
    }
    for (const auto& [law, l] : laws) {
      if (law != "right-annihilation" && law != "left-distributivity/0") {
        v.require(ok(l) || l["outcome"] == "skipped", name + " " + law + " unexpectedly " + l["outcome"].get<std::string>());
      }
    }
  }
  return v;
}

// 8. Transformers and frame rule on heaplets.
Verdict criterion8(const Report& r) {
  Verdict v;
  const auto t = r.laws("heaplet_2x2", "transformers");
  const auto f = r.laws("heaplet_2x2", "frame");
  require_law(v, t, "heaplet_2x2", "kleisli/complete-multiplicativity",
              [](const Json& l) { return ok(l) && exhaustive(l); }, "ok and exhaustive");
  require_law(v, t, "heaplet_2x2", "locality/pointwise-agreement",
              [](const Json& l) { return ok(l) && l["tuples_checked"].get<std::uint64_t>() >= 50; },
              "ok on at least 50 transformers");
  require_law(v, t, "heaplet_2x2", "locality/nonlocal-controls-detected", ok, "ok");
  require_law(v, f, "heaplet_2x2", "frame/heap-write-sweep",
              [](const Json& l) { return ok(l) && l["tuples_checked"] == 512 * 512; }, "ok over 512x512");
  require_law(v, f, "heaplet_2x2", "wand/adjunction", [](const Json& l) { return ok(l) && exhaustive(l); },
              "ok and exhaustive");
  return v;
}

// 9. Both convolutions and the section identities at chain 4, T=4, n=2, A={0,1}.
Verdict criterion9(const Report& r) {
  Verdict v;
  for (const auto& in : r.json["config"]["instances"]) {
    if (in["name"] == "stream_nofusion4") {
      v.require(in["chain"] == 4 && in["dim"] == 2, "stream_nofusion4 scale");
    }
  }
  for (const std::string name : {"stream_nofusion4", "stream_nofusion4_uniform"}) {
    const auto laws = r.laws(name, "biquantale");
    v.require(laws.size() >= 48, name + " has " + std::to_string(laws.size()) + " laws");
    std::size_t sections = 0;
    for (const auto& [law, l] : laws) {
      if (law.starts_with("section/")) ++sections;
      if (law == "hconv/commutativity") {
        v.require(refuted(l), name + " hconv commutativity not refuted");
      } else {
        v.require(ok(l) && exhaustive(l), name + " " + law + " not ok and exhaustive");
      }
    }
    v.require(sections > 0, name + " has no section identities");
    require_law(v, laws, name, "vconv/commutativity", ok, "ok");
  }
  bool stored = false;
  for (const auto& fx : r.json["fixtures"]) {
    if (fx["kind"] == "noncommutativity") stored = fx["status"] == "pass" && !fx["laws"].empty();
  }
  v.require(stored, "stored hconvolve non-commutativity witness");
  return v;
}

/// Derived config holding one corrupted copy of a shipped fixture.
struct Tamper {
  fs::path original;
  std::string kind;
  std::function<void(Json&)> corrupt;
};

// 10. Default config exits 0; each corrupted fixture exits 1 with a witness.
Verdict criterion10(int default_exit) {
  Verdict v;
  v.require(default_exit == 0, "default config exited " + std::to_string(default_exit));
  std::vector<Tamper> cases;
  auto add_dir = [&](const std::string& dir, const std::string& kind, std::function<void(Json&)> corrupt) {
    for (const auto& e : fs::directory_iterator(source_dir / "fixtures" / dir)) cases.push_back({e.path(), kind, corrupt});
  };
  add_dir("interchange", "interchange_witness", [](Json& j) { j["rhs"] = !j["rhs"].get<bool>(); });
  add_dir("biquantale", "noncommutativity", [](Json& j) { j["G"] = j["F"]; });
  add_dir("values", "values", [](Json& j) { j["multiset"]["cases"][0]["expected"]["a"] = 4; });
  add_dir("carriers", "table", [](Json& j) {
    auto& row = j["table"][1];
    for (auto& cell : row) {
      if (!cell.is_null()) {
        cell = cell == "00" ? "11" : "00";
        break;
      }
    }
  });
  std::sort(cases.begin(), cases.end(), [](const Tamper& a, const Tamper& b) { return a.original < b.original; });
  std::size_t flipped = 0;
  for (const auto& c : cases) {
    const auto dir = work_dir / "tamper" / c.original.stem();
    fs::create_directories(dir);
    auto j = Json::parse(slurp(c.original));
    c.corrupt(j);
    const auto copy = dir / c.original.filename();
    write(copy, j.dump(2));
    Json cfg;
    if (c.kind == "table") {
      cfg["instances"] = {{{"name", "table"}, {"kind", "table"}, {"path", copy.string()}, {"suites", {"carrier"}}}};
    } else {
      cfg["instances"] = Json::array();
      cfg["fixtures"] = {{{"kind", c.kind}, {"path", copy.string()}}};
    }
    write(dir / "config.json", cfg.dump(2));
    const auto report = dir / "report.json";
    const int code = run_cli("run --quiet --config " + (dir / "config.json").string() + " --report " + report.string());
    bool witness = false;
    if (fs::exists(report)) {
      const auto rep = Json::parse(slurp(report));
      for (const auto& group : {rep["suites"], rep["fixtures"]}) {
        for (const auto& s : group) {
          for (const auto& l : s["laws"]) witness = witness || (l["outcome"] == "violation" && l.contains("witness"));
        }
      }
    }
    v.require(code == 1 && witness, c.original.filename().string() + " corrupted: exit " + std::to_string(code) +
                                        (witness ? "" : ", no witness"));
    if (code == 1 && witness) ++flipped;
  }
  v.notes.push_back(std::to_string(flipped) + "/" + std::to_string(cases.size()) + " corrupted fixtures flip the exit code");
  return v;
}

void print(int n, const Verdict& v) {
  std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << n;
  for (std::size_t i = 0; i < v.notes.size(); ++i) std::cout << (i ? "; " : ": ") << v.notes[i];
  std::cout << "\n";
}

}  // namespace

int main() {
  fs::create_directories(work_dir);
  const auto report_path = work_dir / "default_report.json";
  std::string summary;
  const int code = run_cli("run --timing --config " + (source_dir / "configs" / "default.json").string() +
                               " --report " + report_path.string(),
                           &summary);
  Report r;
  if (fs::exists(report_path)) r.json = Json::parse(slurp(report_path));
  if (r.json.is_null()) {
    std::cout << "default run produced no report (exit " << code << ")\n" << summary;
    return 1;
  }
  const std::vector<Verdict> verdicts{criterion1(r), criterion2(r), criterion3(),  criterion4(r), criterion5(r),
                                      criterion6(r), criterion7(r), criterion8(r), criterion9(r), criterion10(code)};
  bool all = true;
  for (std::size_t i = 0; i < verdicts.size(); ++i) {
    print(static_cast<int>(i + 1), verdicts[i]);
    all = all && verdicts[i].pass;
  }
  return all ? 0 : 1;
}
