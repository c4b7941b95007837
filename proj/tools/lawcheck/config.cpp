#include "config.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace lawcheck {

namespace {

// Default parameters per kind; a key absent here is rejected.
const std::map<std::string, Json>& kind_defaults() {
  static const std::map<std::string, Json> d{
      {"language", {{"alphabet", "ab"}, {"max_len", 2}}},
      {"relation", {{"points", 3}}},
      {"matrix", {{"dimension", 2}, {"cap", 4}}},
      {"trace", {{"states", "pq"}, {"labels", "a"}, {"max_transitions", 2}}},
      {"interval_fusion", {{"chain", 5}}},
      {"interval_nofusion", {{"chain", 5}}},
      {"multiset", {{"model", "separating"}, {"symbols", "ab"}, {"cap", 3}, {"caps", Json::array()}}},
      {"powerset", {{"symbols", "abc"}}},
      {"disjoint_sets", {{"size", 3}}},
      {"heaplet", {{"locations", 2}, {"values", 2}}},
      {"vector", {{"dim", 2}, {"max_value", 2}}},
      {"box2d", {{"chain", 3}}},
      {"matrix_parallel", {{"dimension", 2}, {"max_value", 1}}},
      {"inf_words", {{"alphabet", "a"}, {"cap", 2}}},
      {"fut_intervals", {{"chain", 4}}},
      {"interval_stream",
       {{"chain", 4},
        {"dim", 2},
        {"max_value", 1},
        {"intervals", "nofusion"},
        {"split", "pointwise"},
        {"laws", Json::array()},
        {"search_budget", nullptr}}},
      {"table", {{"path", nullptr}}},
  };
  return d;
}

const std::set<std::string> enum_values(const std::string& key) {
  if (key == "model") return {"separating", "addition"};
  if (key == "intervals") return {"fusion", "nofusion"};
  if (key == "split") return {"pointwise", "uniform"};
  return {};
}

bool has_unit_algebra(const InstanceSpec& s) {
  static const std::set<std::string> unital{"language",      "relation", "trace",   "interval_fusion",
                                            "interval_nofusion", "disjoint_sets", "heaplet", "matrix", "table"};
  if (s.kind == "multiset") return s.params.at("model") == "separating";
  return unital.contains(s.kind);
}

bool single_lifted(const InstanceSpec& s) {
  static const std::set<std::string> kinds{"language", "relation",      "trace",   "interval_fusion",
                                           "interval_nofusion", "multiset", "powerset", "disjoint_sets",
                                           "heaplet",  "matrix_parallel", "table", "vector"};
  return kinds.contains(s.kind);
}

std::string at_path(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError("config: " + path + ": " + message);
}

std::uint64_t positive(const Json& v, const std::string& path, bool allow_zero = false) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    fail(path, "expected a non-negative integer");
  }
  const auto n = v.get<std::uint64_t>();
  if (n == 0 && !allow_zero) fail(path, "must be at least 1");
  return n;
}

Json check_param(const std::string& path, const std::string& key, const Json& value, const Json& def) {
  if (def.is_string()) {
    if (!value.is_string() || value.get<std::string>().empty()) fail(path, "expected a non-empty string");
    const auto allowed = enum_values(key);
    if (!allowed.empty() && !allowed.contains(value.get<std::string>())) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      fail(path, "expected one of " + list);
    }
    return value;
  }
  if (def.is_number()) {
    return positive(value, path, key == "max_value" || key == "max_len");
  }
  if (def.is_array()) {
    if (!value.is_array()) fail(path, "expected an array");
    for (std::size_t i = 0; i < value.size(); ++i) {
      const auto item = path + "[" + std::to_string(i) + "]";
      if (key == "laws") {
        if (!value[i].is_string()) fail(item, "expected a law name");
      } else {
        positive(value[i], item);
      }
    }
    return value;
  }
  // Nullable: search_budget or the table path.
  if (value.is_null()) return value;
  if (key == "path") {
    if (!value.is_string()) fail(path, "expected a file path");
    return value;
  }
  positive(value, path);
  return value;
}

std::vector<std::string> read_suites(const Json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of suite names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto item = path + "[" + std::to_string(i) + "]";
    if (!v[i].is_string()) fail(item, "expected a suite name");
    const auto s = v[i].get<std::string>();
    if (std::find(all_suites().begin(), all_suites().end(), s) == all_suites().end()) {
      fail(item, "unknown suite '" + s + "'");
    }
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  }
  return out;
}

void require_object(const Json& v, const std::string& path, const std::set<std::string>& keys) {
  if (!v.is_object()) fail(path, "expected an object");
  for (const auto& [k, _] : v.items()) {
    if (!keys.contains(k)) fail(at_path(path, k), "unknown field");
  }
}

}  // namespace

bool suite_applies(const InstanceSpec& s, const std::string& suite) {
  if (suite == "carrier") return s.kind != "matrix";
  if (suite == "lifted") return single_lifted(s) || s.kind == "matrix" || s.kind == "box2d";
  if (suite == "futuristic") return s.kind == "inf_words" || s.kind == "fut_intervals";
  if (suite == "hoare" || suite == "strengthened" || suite == "star") return has_unit_algebra(s);
  if (suite == "concurrency") return single_lifted(s) && s.kind != "vector";
  if (suite == "transformers" || suite == "frame") return s.kind == "heaplet";
  if (suite == "biquantale") return s.kind == "interval_stream" && s.params.at("intervals") == "nofusion";
  if (suite == "interchange") return s.kind == "interval_stream" || single_lifted(s);
  return false;
}

const ExpectedFail* RunConfig::expected(const std::string& instance, const std::string& law) const {
  for (const auto& e : expected_fail) {
    if (e.instance == instance && e.law == law) return &e;
  }
  return nullptr;
}

RunConfig parse_config(const std::string& text, const std::filesystem::path& base_dir) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  require_object(j, "", {"description", "instances", "suites", "budget", "seed", "exhaustive_limit",
                         "random_series", "report_path", "expected_fail", "fixtures"});
  RunConfig cfg;
  cfg.echo = j;
  if (j.contains("budget")) cfg.options.budget = positive(j["budget"], "budget");
  if (j.contains("seed")) cfg.options.seed = positive(j["seed"], "seed", true);
  if (j.contains("exhaustive_limit")) cfg.options.exhaustive_limit = positive(j["exhaustive_limit"], "exhaustive_limit");
  if (j.contains("random_series")) cfg.options.random_series = positive(j["random_series"], "random_series", true);
  if (j.contains("report_path")) {
    if (!j["report_path"].is_string()) fail("report_path", "expected a file path");
    cfg.report_path = base_dir / j["report_path"].get<std::string>();
  }
  if (j.contains("description") && !j["description"].is_string()) fail("description", "expected a string");

  std::optional<std::vector<std::string>> global;
  if (j.contains("suites")) global = read_suites(j["suites"], "suites");

  if (!j.contains("instances")) fail("instances", "missing");
  if (!j["instances"].is_array()) fail("instances", "expected an array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < j["instances"].size(); ++i) {
    const auto path = "instances[" + std::to_string(i) + "]";
    const Json& in = j["instances"][i];
    if (!in.is_object()) fail(path, "expected an object");
    if (!in.contains("kind") || !in["kind"].is_string()) fail(at_path(path, "kind"), "missing or not a string");
    InstanceSpec spec;
    spec.kind = in["kind"].get<std::string>();
    const auto defaults = kind_defaults().find(spec.kind);
    if (defaults == kind_defaults().end()) fail(at_path(path, "kind"), "unknown kind '" + spec.kind + "'");
    std::set<std::string> keys{"name", "kind", "suites"};
    for (const auto& [k, _] : defaults->second.items()) keys.insert(k);
    require_object(in, path, keys);
    spec.name = in.value("name", spec.kind);
    if (!in.value("name", Json("x")).is_string()) fail(at_path(path, "name"), "expected a string");
    if (!names.insert(spec.name).second) fail(at_path(path, "name"), "duplicate instance name '" + spec.name + "'");
    spec.params = defaults->second;
    for (const auto& [k, def] : defaults->second.items()) {
      if (in.contains(k)) spec.params[k] = check_param(at_path(path, k), k, in[k], def);
    }
    if (spec.kind == "table") {
      if (spec.params["path"].is_null()) fail(at_path(path, "path"), "missing");
      spec.table_path = base_dir / spec.params["path"].get<std::string>();
    }
    if (spec.kind == "interval_stream") {
      for (std::size_t k = 0; k < spec.params["laws"].size(); ++k) {
        static const std::set<std::string> laws{"FG_le_FsG", "small_left", "small_right",
                                                "weak",      "meet_seq",   "meet_conc"};
        if (!laws.contains(spec.params["laws"][k].get<std::string>())) {
          fail(at_path(path, "laws") + "[" + std::to_string(k) + "]", "unknown interchange law");
        }
      }
    }
    if (in.contains("suites")) {
      spec.suites = read_suites(in["suites"], at_path(path, "suites"));
      for (const auto& s : spec.suites) {
        if (!suite_applies(spec, s)) {
          fail(at_path(path, "suites"), "suite '" + s + "' does not apply to kind '" + spec.kind + "'");
        }
      }
    } else if (global) {
      for (const auto& s : *global) {
        if (suite_applies(spec, s)) spec.suites.push_back(s);
      }
    } else {
      fail(at_path(path, "suites"), "missing and no top-level suites given");
    }
    cfg.instances.push_back(std::move(spec));
  }
  if (global) {
    for (const auto& s : *global) {
      const bool used = std::any_of(cfg.instances.begin(), cfg.instances.end(),
                                    [&](const InstanceSpec& in) { return suite_applies(in, s); });
      if (!used) fail("suites", "suite '" + s + "' applies to none of the instances");
    }
  }

  if (j.contains("expected_fail")) {
    if (!j["expected_fail"].is_array()) fail("expected_fail", "expected an array");
    for (std::size_t i = 0; i < j["expected_fail"].size(); ++i) {
      const auto path = "expected_fail[" + std::to_string(i) + "]";
      const Json& e = j["expected_fail"][i];
      require_object(e, path, {"instance", "law", "reason"});
      for (const char* k : {"instance", "law"}) {
        if (!e.contains(k) || !e[k].is_string()) fail(at_path(path, k), "missing or not a string");
      }
      ExpectedFail ef{e["instance"], e["law"], e.value("reason", "")};
      if (!names.contains(ef.instance)) fail(at_path(path, "instance"), "no instance named '" + ef.instance + "'");
      cfg.expected_fail.push_back(std::move(ef));
    }
  }
  if (j.contains("fixtures")) {
    if (!j["fixtures"].is_array()) fail("fixtures", "expected an array");
    for (std::size_t i = 0; i < j["fixtures"].size(); ++i) {
      const auto path = "fixtures[" + std::to_string(i) + "]";
      const Json& f = j["fixtures"][i];
      require_object(f, path, {"kind", "path"});
      for (const char* k : {"kind", "path"}) {
        if (!f.contains(k) || !f[k].is_string()) fail(at_path(path, k), "missing or not a string");
      }
      const auto kind = f["kind"].get<std::string>();
      if (kind != "interchange_witness" && kind != "noncommutativity" && kind != "values") {
        fail(at_path(path, "kind"), "unknown fixture kind '" + kind + "'");
      }
      cfg.fixtures.push_back({kind, base_dir / f["path"].get<std::string>()});
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path.parent_path());
}

void override_options(RunConfig& config, std::optional<std::uint64_t> seed, std::optional<std::uint64_t> budget) {
  if (seed) {
    config.options.seed = *seed;
    config.echo["seed"] = *seed;
  }
  if (budget) {
    if (*budget == 0) throw ConfigError("config: --budget: must be at least 1");
    config.options.budget = *budget;
    config.echo["budget"] = *budget;
  }
}

}  // namespace lawcheck
