#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "config.hpp"
#include "demo.hpp"
#include "psq/interchange.hpp"
#include "runner.hpp"

namespace {

using namespace lawcheck;

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_usage = 2;

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path.string());
  out << text;
}

int cmd_run(const std::string& config_path, const std::string& report_path, std::optional<std::uint64_t> seed,
            std::optional<std::uint64_t> budget, std::optional<std::size_t> jobs, bool timing, bool quiet) {
  auto config = load_config(config_path);
  override_options(config, seed, budget);
  RunOptions opt;
  opt.jobs = jobs.value_or(default_jobs());
  opt.timing = timing;
  const auto start = std::chrono::steady_clock::now();
  const auto result = run(config, opt);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::optional<std::filesystem::path> out = config.report_path;
  if (!report_path.empty()) out = report_path;
  if (out) write_file(*out, result.report.dump(2) + "\n");
  if (!quiet) {
    std::cout << summary_text(result.report);
    std::cout << "elapsed " << std::fixed << std::setprecision(1) << secs << " s on " << opt.jobs << " worker(s)";
    if (out) std::cout << ", report " << out->string();
    std::cout << "\n";
  }
  return result.pass ? exit_pass : exit_fail;
}

int cmd_search(const std::string& config_path, const std::string& out_dir) {
  const auto config = load_config(config_path);
  Json results = Json::array();
  bool ok = true;
  for (const auto& in : config.instances) {
    if (in.kind != "interval_stream") continue;
    psq::InterchangeInstance inst;
    inst.chain = in.params["chain"];
    inst.dim = in.params["dim"];
    inst.intervals = in.params["intervals"] == "fusion" ? psq::IntervalMode::fusion : psq::IntervalMode::nofusion;
    inst.split = psq::parse_stream_split(in.params["split"]);
    const std::uint64_t budget =
        in.params["search_budget"].is_null() ? config.options.budget : in.params["search_budget"].get<std::uint64_t>();
    const auto family = psq::predicate_family(inst.dim);
    for (const auto& name : in.params["laws"]) {
      const auto law = psq::parse_interchange_law(name.get<std::string>());
      const auto res = psq::interchange_search(inst, law, family, budget);
      Json r;
      r["instance"] = in.name;
      r["law"] = psq::to_string(law);
      r["formula"] = psq::law_formula(law);
      r["family_size"] = res.family_size;
      r["tuples_checked"] = res.tuples_checked;
      r["exhausted"] = res.exhausted;
      r["construction"] = res.construction;
      const bool holds = law == psq::InterchangeLaw::meet_seq;
      const bool required = law != psq::InterchangeLaw::meet_seq && law != psq::InterchangeLaw::meet_conc;
      if (res.witness) {
        const auto text = psq::witness_to_json(*res.witness);
        const bool verified = psq::verify_witness(psq::witness_from_json(text));
        r["verified"] = verified;
        r["witness"] = Json::parse(text);
        ok = ok && verified && !holds;
        if (!out_dir.empty()) {
          write_file(std::filesystem::path(out_dir) / (in.name + "_" + psq::to_string(law) + ".json"), text + "\n");
        }
      } else {
        r["witness"] = nullptr;
        ok = ok && !required;
      }
      results.push_back(std::move(r));
    }
  }
  std::cout << results.dump(2) << "\n";
  return ok ? exit_pass : exit_fail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Checks quantale laws of convolution algebras over finite partial semigroups."};
  app.set_version_flag("--version", std::string(lawcheck::tool_version));
  app.require_subcommand(1);

  std::string config_path;
  std::string report_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> budget;
  std::optional<std::size_t> jobs;
  bool timing = false;
  bool quiet = false;
  auto* run_cmd = app.add_subcommand("run", "Run the configured suites and fixtures");
  run_cmd->add_option("--config", config_path, "Configuration file")->required();
  run_cmd->add_option("--report", report_path, "Report path, overriding report_path in the configuration");
  run_cmd->add_option("--seed", seed, "Seed override");
  run_cmd->add_option("--budget", budget, "Sampled tuples per law");
  run_cmd->add_option("--jobs", jobs, "Worker threads (default LAWCHECK_JOBS or 1)")->check(CLI::PositiveNumber);
  run_cmd->add_flag("--timing", timing, "Record wall-clock time in the report");
  run_cmd->add_flag("--quiet", quiet, "Print nothing");

  std::string demo_name;
  auto* demo_cmd = app.add_subcommand("demo", "Print a worked example");
  demo_cmd->add_option("name", demo_name, "Demo name")->required()->check(CLI::IsMember(demo_names()));

  std::string search_config;
  std::string out_dir;
  auto* search_cmd = app.add_subcommand("search-interchange", "Search interchange witnesses for interval_stream instances");
  search_cmd->add_option("--config", search_config, "Configuration file")->required();
  search_cmd->add_option("--out", out_dir, "Directory for witness files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    if (*run_cmd) return cmd_run(config_path, report_path, seed, budget, jobs, timing, quiet);
    if (*demo_cmd) return lawcheck::run_demo(demo_name, std::cout);
    if (*search_cmd) return cmd_search(search_config, out_dir);
  } catch (const lawcheck::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_fail;
  }
  return exit_usage;
}
