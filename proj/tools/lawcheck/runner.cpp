#include "runner.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include "suites.hpp"

namespace lawcheck {

namespace {

Json law_json(const psq::LawReport& r, const ExpectedFail* expected) {
  Json j;
  j["law"] = r.law;
  j["status"] = psq::to_string(r.status);
  j["expected"] = expected ? "fail" : "pass";
  std::string outcome;
  if (expected) {
    outcome = r.failed() && r.witness ? "refuted-as-expected" : "missing-witness";
  } else {
    outcome = r.failed() ? "violation" : (r.status == psq::LawStatus::skipped ? "skipped" : "ok");
  }
  j["outcome"] = outcome;
  j["tuples_checked"] = r.tuples_checked;
  if (r.premises_held) j["premises_held"] = *r.premises_held;
  Json mode;
  mode["kind"] = r.mode.kind == psq::CheckMode::Kind::exhaustive ? "exhaustive" : "sampled";
  mode["count"] = r.mode.count;
  if (r.mode.kind == psq::CheckMode::Kind::sampled) mode["seed"] = r.mode.seed;
  j["mode"] = mode;
  if (r.witness) j["witness"] = {{"items", r.witness->items}, {"detail", r.witness->detail}};
  if (!r.note.empty()) j["note"] = r.note;
  if (expected && !expected->reason.empty()) j["reason"] = expected->reason;
  return j;
}

}  // namespace

std::size_t default_jobs() {
  if (const char* env = std::getenv("LAWCHECK_JOBS")) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return n;
  }
  return 1;
}

RunOutcome run(const RunConfig& config, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::function<SuiteResult()>> tasks;
  for (const auto& in : config.instances) {
    for (const auto& s : in.suites) tasks.emplace_back([&in, s, &config] { return run_suite(in, s, config.options); });
  }
  for (const auto& f : config.fixtures) tasks.emplace_back([&f] { return run_fixture(f); });

  std::vector<SuiteResult> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, tasks.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Json report;
  report["tool"] = "lawcheck";
  report["version"] = tool_version;
  report["config"] = config.echo;
  Json suites = Json::array();
  Json fixtures = Json::array();
  std::set<std::pair<std::string, std::string>> seen;
  std::uint64_t laws = 0, ok = 0, refuted = 0, skipped = 0, violations = 0, missing = 0;
  for (const auto& res : results) {
    const bool is_fixture = res.kind == "fixture";
    Json s;
    if (is_fixture) {
      s["fixture"] = res.instance;
      s["kind"] = res.suite;
    } else {
      s["instance"] = res.instance;
      s["kind"] = res.kind;
      s["suite"] = res.suite;
    }
    bool suite_ok = true;
    Json laws_json = Json::array();
    for (const auto& r : res.laws) {
      const ExpectedFail* e = is_fixture ? nullptr : config.expected(res.instance, r.law);
      if (e) seen.insert({res.instance, r.law});
      auto lj = law_json(r, e);
      const auto o = lj["outcome"].get<std::string>();
      ++laws;
      if (o == "ok") ++ok;
      if (o == "refuted-as-expected") ++refuted;
      if (o == "skipped") ++skipped;
      if (o == "violation") ++violations;
      if (o == "missing-witness") ++missing;
      if (o == "violation" || o == "missing-witness") suite_ok = false;
      laws_json.push_back(std::move(lj));
    }
    s["status"] = suite_ok ? "pass" : "fail";
    s["laws"] = std::move(laws_json);
    if (!res.artifacts.empty()) s["artifacts"] = res.artifacts;
    (is_fixture ? fixtures : suites).push_back(std::move(s));
  }
  Json unmatched = Json::array();
  for (const auto& e : config.expected_fail) {
    if (!seen.contains({e.instance, e.law})) unmatched.push_back({{"instance", e.instance}, {"law", e.law}});
  }
  report["suites"] = std::move(suites);
  report["fixtures"] = std::move(fixtures);
  const bool pass = violations == 0 && missing == 0 && unmatched.empty();
  report["summary"] = {{"laws", laws},
                       {"ok", ok},
                       {"refuted_as_expected", refuted},
                       {"skipped", skipped},
                       {"violations", violations},
                       {"missing_witnesses", missing},
                       {"unmatched_expected_fail", unmatched}};
  if (options.timing) {
    report["wall_clock_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
  report["status"] = pass ? "pass" : "fail";
  return {std::move(report), pass};
}

std::string summary_text(const Json& report) {
  std::ostringstream out;
  auto line = [&](const Json& s, const std::string& head) {
    std::size_t n = 0, bad = 0, refuted = 0;
    for (const auto& l : s["laws"]) {
      ++n;
      const auto o = l["outcome"].get<std::string>();
      if (o == "violation" || o == "missing-witness") ++bad;
      if (o == "refuted-as-expected") ++refuted;
    }
    out << (s["status"] == "pass" ? "PASS " : "FAIL ") << head << ": " << n << " laws";
    if (refuted) out << ", " << refuted << " refuted as expected";
    if (bad) out << ", " << bad << " unexpected";
    out << "\n";
    for (const auto& l : s["laws"]) {
      const auto o = l["outcome"].get<std::string>();
      if (o != "violation" && o != "missing-witness") continue;
      out << "  " << o << " " << l["law"].get<std::string>();
      if (l.contains("witness")) out << ": " << l["witness"]["detail"].get<std::string>();
      out << "\n";
    }
  };
  for (const auto& s : report["suites"]) line(s, s["instance"].get<std::string>() + " " + s["suite"].get<std::string>());
  for (const auto& s : report["fixtures"]) line(s, "fixture " + s["fixture"].get<std::string>());
  for (const auto& u : report["summary"]["unmatched_expected_fail"]) {
    out << "  expected failure never reported: " << u["instance"].get<std::string>() << " "
        << u["law"].get<std::string>() << "\n";
  }
  out << "overall: " << (report["status"] == "pass" ? "PASS" : "FAIL") << "\n";
  return out.str();
}

}  // namespace lawcheck
