// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include "hullopt/analysis.hpp"
#include "hullopt/dfsimplex.hpp"
#include "hullopt/linesearch.hpp"
#include "hullopt/ord.hpp"
#include "hullopt/profiles.hpp"
#include "hullopt/suite.hpp"
#include "hullopt/verify.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>

using namespace hullopt;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(int id, const char* title, const std::function<Outcome()>& check) {
  const auto started = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = check();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::printf("criterion %d %s: %s (%s; %.1fs)\n", id, title, out.pass ? "PASS" : "FAIL", out.detail.c_str(), secs);
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c, d);
  return buf;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Vector random_normal(int size, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(size);
  for (int i = 0; i < size; ++i) v[i] = g(rng);
  return v;
}

// Benchmark runs shared by the first two criteria.
std::vector<suite::RunResult> bench_runs;

suite::SuiteConfig load_bench_config() {
  std::ifstream in(HULLOPT_BENCH_CONFIG);
  if (!in) throw std::runtime_error("cannot open " + std::string(HULLOPT_BENCH_CONFIG));
  suite::SuiteConfig cfg = suite::suite_from_json(nlohmann::json::parse(in));
  cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
  return cfg;
}

Outcome sparsity() {
  const suite::SuiteConfig cfg = load_bench_config();
  bench_runs = suite::run_suite(cfg);
  std::map<int, std::pair<double, int>> by_m;
  for (const auto& r : bench_runs) {
    if (!r.error.empty()) return {false, r.manifest.id() + " " + r.solver + " failed: " + r.error};
    if (r.solver != suite::kOrd) continue;
    by_m[r.manifest.m].first += r.sparsity;
    ++by_m[r.manifest.m].second;
  }
  std::string detail = "mean zero-weight fraction";
  bool monotone = true;
  double prev = -1.0;
  double last = 0.0;
  for (const auto& [m, acc] : by_m) {
    const double mean = acc.first / acc.second;
    detail += fmt(" m=%.0f:%.4f", m, mean);
    monotone = monotone && mean > prev;
    prev = last = mean;
  }
  const bool has_200 = by_m.count(200) == 1;
  return {monotone && has_200 && last >= 0.90, detail};
}

Outcome dominance() {
  std::vector<profiles::RunRecord> records;
  for (const auto& rec : suite::to_records(bench_runs)) {
    if (rec.problem.find("_m200_") != std::string::npos) records.push_back(rec);
  }
  if (records.empty()) return {false, "no m=200 runs"};
  const auto d = profiles::data_profile(records, 1e-3, {100.0});
  const double problems = static_cast<double>(records.size()) / 2.0;
  // Compare solved counts so that a gap of exactly 0.2 is not lost to rounding.
  const long ord = std::lround(d.at(suite::kOrd)[0] * problems);
  const long df = std::lround(d.at(suite::kDfSimplex)[0] * problems);
  const bool pass = ord >= df && (ord - df) * 5 >= static_cast<long>(std::lround(problems));
  return {pass, fmt("d_ORD(100)=%.4f d_DF(100)=%.4f difference=%.4f over %.0f problems", d.at(suite::kOrd)[0],
                    d.at(suite::kDfSimplex)[0], d.at(suite::kOrd)[0] - d.at(suite::kDfSimplex)[0], problems)};
}

Outcome stationarity() {
  std::mt19937_64 rng(2024);
  int violations = 0;
  double worst_ratio = 0.0;
  for (int t = 0; t < 20; ++t) {
    const int size = 3 + t % 6;
    const auto q = verify::random_convex_quadratic(size, rng);
    const ReducedObjective phi = [&](const Vector& y) { return q(y); };
    DfSimplexConfig cfg;
    cfg.tolerance = 1e-4;
    cfg.rng_seed = static_cast<std::uint64_t>(t);
    const auto res = df_simplex_solve(phi, simplex_vertex(size, uniform_int(rng, 0, size - 1)), cfg);
    const double bound = 2.0 * std::sqrt(2.0) * (size - 1) * (2.0 * q.lipschitz + cfg.gamma) * cfg.tolerance;
    const double gap = analysis::kkt_gap(q.gradient(res.y), res.y);
    worst_ratio = std::max(worst_ratio, gap / bound);
    if (gap > bound) ++violations;
  }
  return {violations == 0, fmt("%.0f/20 violations, worst gap/bound %.3g", violations, worst_ratio)};
}

Outcome cone_measure() {
  std::mt19937_64 rng(77);
  int violations = 0;
  double worst = 1e300;
  for (int t = 0; t < 1000; ++t) {
    const int size = uniform_int(rng, 2, 8);
    // At least two nonzero weights: at a vertex with v in the normal cone the
    // bound cannot hold.
    const Vector y = verify::random_simplex_point(size, rng, 0.5, 2);
    const Vector v = random_normal(size, rng);
    const Vector vt = analysis::tangent_cone_project(v, analysis::ConeSpec::at(y));
    double best = -1e300;
    for (const auto& d : analysis::feasible_direction_set(y, choose_pivot(y))) {
      best = std::max(best, v.dot(d.direction(size)));
    }
    const double slack = best - vt.norm() / (2.0 * (size - 1)) + 1e-10;
    worst = std::min(worst, slack);
    if (slack < 0.0) ++violations;
  }
  return {violations == 0, fmt("%.0f/1000 violations, smallest slack %.3g", violations, worst)};
}

Outcome simplex_gradient_exact() {
  std::mt19937_64 rng(314);
  int ok = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int size = 2 + t % 9;
    const Vector c = random_normal(size, rng);
    const double offset = random_normal(1, rng)[0];
    const ReducedObjective phi = [&](const Vector& y) { return c.dot(y) + offset; };
    DfSimplexConfig cfg;
    cfg.rng_seed = static_cast<std::uint64_t>(t);
    const auto res = df_simplex_solve(phi, verify::random_simplex_point(size, rng), cfg);
    try {
      const Vector g = simplex_gradient(res.last_samples, res.y, res.f, cfg.tolerance, phi);
      const double err = (g - c).lpNorm<Eigen::Infinity>();
      worst = std::max(worst, err);
      if (err <= 1e-8) ++ok;
    } catch (const PoisednessFailure&) {
      worst = INFINITY;
    }
  }
  return {ok == 100, fmt("%.0f/100 exact, worst error %.3g", ok, worst)};
}

Outcome identification() {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int violations = 0;
  int not_entered = 0;
  for (int t = 0; t < 20; ++t) {
    Matrix a(3, 10);
    for (int col = 0; col < 10; ++col)
      for (int r = 0; r < 3; ++r) a(r, col) = u(rng);
    const AtomSet atoms(a);
    // Strictly positive weights put c in the interior, so x* = c.
    Vector w(10);
    for (int i = 0; i < 10; ++i) w[i] = 0.1 + u(rng);
    w /= w.sum();
    const Vector c = a * w;
    for (DropRule rule : {DropRule::ZeroWeight, DropRule::GradientFiltered}) {
      const auto check = verify::check_identification(atoms, c, c, rule, rng());
      violations += check.violations;
      not_entered += check.entered_ball ? 0 : 1;
    }
  }
  return {violations == 0 && not_entered == 0,
          fmt("40 runs, %.0f violations, %.0f never within 1e-2 of x*", violations, not_entered)};
}

// Independent re-execution of the line-search acceptance rules.
std::pair<double, int> reference_search(const ReducedObjective& phi, const Vector& z, double phi_z, int i, int j,
                                        double ahat, double gamma, double delta) {
  for (int sign : {1, -1}) {
    const int up = sign == 1 ? i : j;
    const int down = sign == 1 ? j : i;
    const double cap = z[down];
    auto accepted = [&](double a) {
      Vector y = z;
      const double s = std::min(a, cap);
      y[up] += s;
      y[down] = s == cap ? 0.0 : y[down] - s;
      return phi(y) <= phi_z - gamma * a * a;
    };
    const double a0 = std::min(cap, ahat);
    if (a0 <= 0.0 || !accepted(a0)) continue;
    double a = a0;
    while (a < cap) {
      const double next = std::min(cap, a / delta);
      if (!accepted(next)) break;
      a = next;
    }
    return {a, sign};
  }
  return {0.0, 1};
}

Outcome line_search_oracle() {
  std::mt19937_64 rng(4242);
  int mismatches = 0;
  for (int t = 0; t < 500; ++t) {
    const int size = uniform_int(rng, 2, 6);
    const auto q = verify::random_convex_quadratic(size, rng);
    const Vector lin = random_normal(size, rng);
    const ReducedObjective phi = [&](const Vector& y) { return q(y) + lin.dot(y); };
    const Vector z = verify::random_simplex_point(size, rng);
    const int i = uniform_int(rng, 0, size - 1);
    int j = uniform_int(rng, 0, size - 2);
    if (j >= i) ++j;
    const double ahat = std::pow(10.0, std::uniform_real_distribution<double>(-4.0, 0.0)(rng));
    const double gamma = std::pow(10.0, std::uniform_real_distribution<double>(-6.0, 0.0)(rng));
    const double delta = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    const double phi_z = phi(z);
    const auto got = line_search(phi, z, phi_z, i, j, {ahat, gamma, delta});
    const auto want = reference_search(phi, z, phi_z, i, j, ahat, gamma, delta);
    if (got.alpha != want.first || got.direction_sign != want.second) ++mismatches;
  }
  return {mismatches == 0, fmt("%.0f/500 mismatches", mismatches)};
}

profiles::RunRecord fixture(const std::string& problem, const std::string& solver, int n_p, int hit, int length) {
  profiles::RunRecord r{problem, solver, n_p, {}};
  for (int k = 1; k <= length; ++k) r.history.push_back(hit > 0 && k >= hit ? 0.0 : 10.0);
  return r;
}

Outcome profile_fixtures() {
  using namespace profiles;
  int wrong = 0;
  std::string where;
  auto expect_at = [&](bool ok, int line) {
    if (ok) return;
    ++wrong;
    where += " line " + std::to_string(line);
  };
#define expect(cond) expect_at((cond), __LINE__)

  expect(convergence_threshold(10, 0, 0.1) == 1.0);
  expect(convergence_threshold(4, 4, 0.3) == 4.0);
  expect(convergence_threshold(1, -1, 0.5) == 0.0);
  expect(first_hit_evals({5, 3, 1}, 3) == 2);
  expect(!first_hit_evals({5, 3, 1}, 0).has_value());
  expect(first_hit_evals({0}, 0) == 1);

  const std::vector<RunRecord> one{fixture("p", "s", 9, 50, 60)};
  expect(data_profile(one, 1e-3, {5.0}).at("s")[0] == 1.0);
  expect(data_profile(one, 1e-3, {4.9}).at("s")[0] == 0.0);

  const std::vector<RunRecord> unsolved{fixture("p", "a", 3, 4, 20), fixture("p", "b", 3, 0, 20),
                                        fixture("q", "a", 3, 6, 20), fixture("q", "b", 3, 0, 20)};
  const Curves d_unsolved = data_profile(unsolved, 1e-3, default_kappa_grid());
  const Curves rho_unsolved = performance_profile(unsolved, 1e-3, default_iota_grid());
  for (double v : d_unsolved.at("b")) expect(v == 0.0);
  for (double v : rho_unsolved.at("b")) expect(v == 0.0);

  const std::vector<RunRecord> pair{fixture("p", "s1", 4, 10, 40), fixture("p", "s2", 4, 20, 40)};
  const auto rho = performance_profile(pair, 1e-3, {1.0, 2.0});
  expect(rho.at("s1")[0] == 1.0);
  expect(rho.at("s2")[0] == 0.0);
  expect(rho.at("s2")[1] == 1.0);

  const std::vector<RunRecord> single{fixture("p", "s", 4, 10, 40), fixture("q", "s", 4, 3, 40)};
  expect(performance_profile(single, 1e-3, {1.0}).at("s")[0] == 1.0);

#undef expect
  return {wrong == 0, fmt("%.0f mismatched values", wrong) + where};
}

}  // namespace

int main() {
  report(1, "sparsity grows with m and reaches 0.90 at m=200", sparsity);
  report(2, "ORD beats DF-SIMPLEX by 0.2 in d(100) at m=200, tau=1e-3", dominance);
  report(3, "DF-SIMPLEX stationarity bound", stationarity);
  report(4, "cone measure lower bound", cone_measure);
  report(5, "simplex gradient exact on affine functions", simplex_gradient_exact);
  report(6, "active set identification", identification);
  report(7, "line search matches the reference", line_search_oracle);
  report(8, "profile fixtures", profile_fixtures);
  return failures == 0 ? 0 : 1;
}
