// hullopt: run benchmark suites, compute profiles, run verification suites.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage or input error.

#include "hullopt/profiles.hpp"
#include "hullopt/suite.hpp"
#include "hullopt/verify.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace hullopt;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kUsage = 2;

std::string tau_label(double tau) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tau);
  return buf;
}

int cmd_run(const std::string& config_path, const std::string& output, const std::vector<std::uint64_t>& seeds,
            int jobs) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "error: cannot open config " << config_path << "\n";
    return kUsage;
  }
  suite::SuiteConfig cfg;
  try {
    cfg = suite::suite_from_json(nlohmann::json::parse(in));
    if (!output.empty()) cfg.output_dir = output;
    if (!seeds.empty()) cfg.seeds = seeds;
    if (jobs > 0) cfg.jobs = jobs;
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: invalid config " << config_path << ": " << e.what() << "\n";
    return kUsage;
  }

  const auto results = suite::run_suite(cfg);
  suite::write_outputs(cfg.output_dir, results);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.error.empty()) {
      ++failed;
      std::cerr << "run failed: " << r.manifest.id() << " " << r.solver << ": " << r.error << "\n";
    }
  }
  std::cout << "wrote " << results.size() << " runs to " << cfg.output_dir;
  if (failed) std::cout << " (" << failed << " failed)";
  std::cout << "\n";
  return kOk;
}

int cmd_profile(const std::string& input, const std::string& output, std::vector<double> taus) {
  if (taus.empty()) taus = profiles::default_tau_grid();
  try {
    const auto records = suite::load_records(input);
    fs::create_directories(output);
    const auto kappa = profiles::default_kappa_grid();
    const auto iota = profiles::default_iota_grid();
    for (double tau : taus) {
      if (!(tau > 0.0 && tau < 1.0)) throw profiles::ContractError("tau must lie in (0, 1)");
      std::ofstream data(fs::path(output) / ("data_profile_tau" + tau_label(tau) + ".csv"));
      profiles::write_curves_csv(data, profiles::data_profile(records, tau, kappa), kappa);
      std::ofstream perf(fs::path(output) / ("performance_profile_tau" + tau_label(tau) + ".csv"));
      profiles::write_curves_csv(perf, profiles::performance_profile(records, tau, iota), iota);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  std::cout << "wrote profiles for " << taus.size() << " tolerance(s) to " << output << "\n";
  return kOk;
}

int cmd_verify(const std::string& level, int trials, std::uint64_t seed, bool inject_fault) {
  verify::VerifyOptions opts;
  opts.trials = trials > 0 ? trials : (level == "full" ? 1000 : 100);
  opts.seed = seed;
  opts.inject_fault = inject_fault;
  const auto reports = verify::run_verification(opts);
  bool ok = true;
  for (const auto& r : reports) {
    std::printf("%-34s %s  trials=%-5d failures=%-4d worst_margin=%.3e\n", r.name.c_str(),
                r.passed() ? "PASS" : "FAIL", r.trials, r.failures, r.worst_margin);
    ok = ok && r.passed();
  }
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Derivative-free minimization over convex hulls of atoms"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run solvers over a problem suite and write traces");
  std::string config_path;
  std::string run_output;
  std::vector<std::uint64_t> run_seeds;
  int jobs = 0;
  run->add_option("-c,--config", config_path, "Suite configuration (JSON)")->required();
  run->add_option("-o,--output", run_output, "Output directory (overrides the config)");
  run->add_option("-s,--seed", run_seeds, "Seed(s) (overrides the config)");
  run->add_option("-j,--jobs", jobs, "Worker threads");

  auto* profile = app.add_subcommand("profile", "Compute data and performance profiles from traces");
  std::string profile_input;
  std::string profile_output = "profiles";
  std::vector<double> taus;
  profile->add_option("-i,--input", profile_input, "Trace directory or long-format records CSV")->required();
  profile->add_option("-o,--output", profile_output, "Output directory");
  profile->add_option("-t,--tau", taus, "Convergence tolerance(s)");

  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized property suites");
  std::string level = "quick";
  int trials = 0;
  std::uint64_t seed = 1;
  bool inject_fault = false;
  verify_cmd->add_option("-l,--level", level, "quick (100 trials) or full (1000 trials)")
      ->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("-n,--trials", trials, "Trials per property (overrides the level)");
  verify_cmd->add_option("-s,--seed", seed, "Seed");
  verify_cmd->add_flag("--inject-fault", inject_fault, "Flip the sign of gamma in the solver runs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  if (*run) return cmd_run(config_path, run_output, run_seeds, jobs);
  if (*profile) return cmd_profile(profile_input, profile_output, taus);
  return cmd_verify(level, trials, seed, inject_fault);
}
