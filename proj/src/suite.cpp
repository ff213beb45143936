#include "hullopt/suite.hpp"

#include "hullopt/dfsimplex.hpp"
#include "hullopt/ord.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace hullopt::suite {
namespace {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ord_from_json(const nlohmann::json& j, OrdConfig& c) {
  c.eps0 = j.value("eps0", c.eps0);
  c.eps_decay = j.value("eps_decay", c.eps_decay);
  c.eps_min = j.value("eps_min", c.eps_min);
  c.mu0 = j.value("mu0", c.mu0);
  c.gamma = j.value("gamma", c.gamma);
  c.theta = j.value("theta", c.theta);
  c.refine_stop_factor = j.value("refine_stop_factor", c.refine_stop_factor);
  if (j.contains("drop_rule")) c.drop_rule = drop_rule_from_string(j.at("drop_rule").get<std::string>());
}

void dfsimplex_from_json(const nlohmann::json& j, DfSimplexConfig& c) {
  c.tau = j.value("tau", c.tau);
  c.theta = j.value("theta", c.theta);
  c.gamma = j.value("gamma", c.gamma);
  c.delta = j.value("delta", c.delta);
  c.initial_step = j.value("initial_step", c.initial_step);
  c.tolerance = j.value("tolerance", c.tolerance);
  c.shuffle_directions = j.value("shuffle_directions", c.shuffle_directions);
}

// Splits a CSV line; the formats here never quote fields.
std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!out.empty() && !out.back().empty() && out.back().back() == '\r') out.back().pop_back();
  return out;
}

std::vector<double> read_trace(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw profiles::ContractError("cannot open trace " + file.string());
  std::string line;
  if (!std::getline(in, line) || split(line) != std::vector<std::string>{"eval", "f", "best_f"}) {
    throw profiles::ContractError(file.string() + ": row 1: expected header eval,f,best_f");
  }
  std::vector<double> history;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split(line);
    try {
      if (fields.size() != 3) throw std::invalid_argument("field count");
      if (std::stoll(fields[0]) != static_cast<long long>(history.size()) + 1) {
        throw std::invalid_argument("eval sequence");
      }
      (void)std::stod(fields[1]);
      history.push_back(std::stod(fields[2]));
    } catch (const std::exception&) {
      throw profiles::ContractError(file.string() + ": row " + std::to_string(row) + " is malformed");
    }
  }
  if (history.empty()) throw profiles::ContractError(file.string() + ": no evaluations");
  return history;
}

}  // namespace

std::vector<bench::ProblemManifest> SuiteConfig::manifests() const {
  const bool implied = functions.empty();
  const std::vector<std::string>& names = implied ? bench::catalog() : functions;
  std::vector<bench::ProblemManifest> out;
  for (const auto& [n, m] : sizes) {
    for (const auto& name : names) {
      if (bench::requires_even_n(name) && n % 2 != 0) {
        if (implied) continue;
        throw std::invalid_argument(name + " needs an even dimension, got n=" + std::to_string(n));
      }
      for (auto seed : seeds) out.push_back({name, n, m, seed, 0});
    }
  }
  return out;
}

void SuiteConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("suite needs at least one (n, m) pair");
  for (const auto& [n, m] : sizes) {
    if (n < 1 || m < 1) throw std::invalid_argument("suite sizes must be positive");
  }
  if (seeds.empty()) throw std::invalid_argument("suite needs at least one seed");
  if (solvers.empty()) throw std::invalid_argument("suite needs at least one solver");
  for (const auto& s : solvers) {
    if (s != kOrd && s != kDfSimplex) throw std::invalid_argument("unknown solver: " + s);
  }
  if (jobs < 1) throw std::invalid_argument("jobs must be >= 1");
  ord.validate();
  dfsimplex.validate();
  for (const auto& m : manifests()) bench::make_test_function(m.function, m.n);
}

SuiteConfig suite_from_json(const nlohmann::json& j) {
  SuiteConfig c;
  if (j.contains("sizes")) {
    c.sizes.clear();
    for (const auto& p : j.at("sizes")) c.sizes.emplace_back(p.at(0).get<int>(), p.at(1).get<int>());
  }
  if (j.contains("functions")) c.functions = j.at("functions").get<std::vector<std::string>>();
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
  if (j.contains("solvers")) c.solvers = j.at("solvers").get<std::vector<std::string>>();
  if (j.contains("ord")) ord_from_json(j.at("ord"), c.ord);
  if (j.contains("dfsimplex")) dfsimplex_from_json(j.at("dfsimplex"), c.dfsimplex);
  c.output_dir = j.value("output_dir", c.output_dir);
  c.jobs = j.value("jobs", c.jobs);
  return c;
}

RunResult run_one(const bench::ProblemInstance& problem, const std::string& solver, const OrdConfig& ord,
                  const DfSimplexConfig& dfsimplex) {
  RunResult r;
  r.manifest = problem.manifest;
  r.solver = solver;
  const auto started = std::chrono::steady_clock::now();
  BudgetedObjective f(problem.function.value, problem.manifest.effective_budget());
  try {
    if (solver == kOrd) {
      OrdConfig cfg = ord;
      cfg.rng_seed = problem.manifest.seed;
      const OrdResult res = ord_solve(f, problem.atoms, cfg, problem.start);
      r.final_f = res.f;
      r.sparsity = res.sparsity(problem.atoms.size());
    } else if (solver == kDfSimplex) {
      DfSimplexConfig cfg = dfsimplex;
      cfg.rng_seed = problem.manifest.seed;
      const Matrix& a = problem.atoms.matrix();
      const ReducedObjective phi = [&](const Vector& y) { return f.evaluate(a * y); };
      const DfSimplexResult res = df_simplex_solve(phi, simplex_vertex(problem.atoms.size(), problem.start), cfg);
      r.final_f = res.f;
      r.sparsity = static_cast<double>((res.y.array() == 0.0).count()) / static_cast<double>(res.y.size());
    } else {
      throw std::invalid_argument("unknown solver: " + solver);
    }
  } catch (const std::exception& e) {
    r.error = e.what();
  }
  r.evals = f.eval_count();
  r.trace = f.trace();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return r;
}

std::vector<RunResult> run_suite(const SuiteConfig& cfg) {
  cfg.validate();
  const auto manifests = cfg.manifests();
  const std::size_t total = manifests.size() * cfg.solvers.size();
  std::vector<RunResult> results(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= total) return;
      const auto& manifest = manifests[k / cfg.solvers.size()];
      const auto& solver = cfg.solvers[k % cfg.solvers.size()];
      try {
        results[k] = run_one(bench::make_problem(manifest), solver, cfg.ord, cfg.dfsimplex);
      } catch (const std::exception& e) {
        results[k].manifest = manifest;
        results[k].solver = solver;
        results[k].error = e.what();
      }
    }
  };

  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(std::max<std::size_t>(total, 1)));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

std::string trace_file_name(const RunResult& r) { return r.manifest.id() + "__" + r.solver + ".trace.csv"; }

void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace) {
  out << "eval,f,best_f\n";
  for (const auto& t : trace) {
    out << t.eval_index << ',' << format_double(t.f) << ',' << format_double(t.best_so_far) << '\n';
  }
}

void write_summary_csv(std::ostream& out, const std::vector<RunResult>& results) {
  out << "problem,solver,n,m,seed,final_f,evals,sparsity,seconds\n";
  char seconds[32];
  for (const auto& r : results) {
    std::snprintf(seconds, sizeof seconds, "%.6f", r.seconds);
    out << r.manifest.id() << ',' << r.solver << ',' << r.manifest.n << ',' << r.manifest.m << ','
        << r.manifest.seed << ',' << (r.error.empty() ? format_double(r.final_f) : "error") << ',' << r.evals
        << ',' << format_double(r.sparsity) << ',' << seconds << '\n';
  }
}

void write_outputs(const std::filesystem::path& dir, const std::vector<RunResult>& results) {
  std::filesystem::create_directories(dir);
  for (const auto& r : results) {
    std::ofstream out(dir / trace_file_name(r));
    if (!out) throw std::runtime_error("cannot write " + (dir / trace_file_name(r)).string());
    write_trace_csv(out, r.trace);
  }
  std::ofstream summary(dir / "summary.csv");
  if (!summary) throw std::runtime_error("cannot write " + (dir / "summary.csv").string());
  write_summary_csv(summary, results);
}

std::vector<profiles::RunRecord> to_records(const std::vector<RunResult>& results) {
  std::vector<profiles::RunRecord> out;
  for (const auto& r : results) {
    profiles::RunRecord rec{r.manifest.id(), r.solver, r.manifest.n, {}};
    for (const auto& t : r.trace) rec.history.push_back(t.best_so_far);
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<profiles::RunRecord> load_records(const std::filesystem::path& input) {
  namespace fs = std::filesystem;
  if (fs::is_regular_file(input)) {
    std::ifstream in(input);
    return profiles::read_records_csv(in, input.string());
  }
  if (!fs::is_directory(input)) throw profiles::ContractError("no such trace input: " + input.string());
  const fs::path summary_path = input / "summary.csv";
  std::ifstream summary(summary_path);
  if (!summary) throw profiles::ContractError(input.string() + ": missing summary.csv");

  std::string line;
  std::getline(summary, line);
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "problem" || header[1] != "solver" || header[2] != "n") {
    throw profiles::ContractError(summary_path.string() + ": row 1: unexpected header");
  }
  std::vector<profiles::RunRecord> out;
  std::size_t row = 1;
  while (std::getline(summary, line)) {
    ++row;
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() < 3) {
      throw profiles::ContractError(summary_path.string() + ": row " + std::to_string(row) + " is malformed");
    }
    profiles::RunRecord rec;
    rec.problem = fields[0];
    rec.solver = fields[1];
    try {
      rec.n_p = std::stoi(fields[2]);
    } catch (const std::exception&) {
      throw profiles::ContractError(summary_path.string() + ": row " + std::to_string(row) + " is malformed");
    }
    rec.history = read_trace(input / (rec.problem + "__" + rec.solver + ".trace.csv"));
    out.push_back(std::move(rec));
  }
  if (out.empty()) throw profiles::ContractError(summary_path.string() + ": no runs listed");
  return out;
}

}  // namespace hullopt::suite
