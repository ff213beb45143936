#include "hullopt/profiles.hpp"

#include <doctest.h>

#include <sstream>

using namespace hullopt::profiles;

namespace {

// f0 = 10 until evaluation `hit`, then `final` from there on.
RunRecord run(const std::string& problem, const std::string& solver, int n_p, int hit, int length,
              double final = 0.0) {
  RunRecord r{problem, solver, n_p, {}};
  for (int k = 1; k <= length; ++k) r.history.push_back(k < hit ? 10.0 : final);
  return r;
}

RunRecord flat(const std::string& problem, const std::string& solver, int n_p, int length) {
  return {problem, solver, n_p, std::vector<double>(static_cast<std::size_t>(length), 10.0)};
}

}  // namespace

TEST_CASE("convergence threshold") {
  CHECK(convergence_threshold(10, 0, 0.1) == doctest::Approx(1.0));
  CHECK(convergence_threshold(3, 3, 0.37) == 3.0);
  CHECK(convergence_threshold(1, -1, 0.5) == 0.0);
  CHECK_THROWS_AS(convergence_threshold(0, 1, 0.5), ContractError);
}

TEST_CASE("first hit") {
  CHECK(first_hit_evals({5, 3, 1}, 3) == 2);
  CHECK_FALSE(first_hit_evals({5, 3, 1}, 0).has_value());
  CHECK(first_hit_evals({0}, 0) == 1);
}

TEST_CASE("data profile: budget in units of n_p + 1") {
  const std::vector<RunRecord> recs{run("p", "s", 9, 50, 60)};
  CHECK(data_profile(recs, 1e-3, {5.0}).at("s")[0] == 1.0);
  CHECK(data_profile(recs, 1e-3, {4.9}).at("s")[0] == 0.0);
}

TEST_CASE("data profile: a solver that never converges stays at zero") {
  const std::vector<RunRecord> recs{run("p", "a", 2, 3, 30), flat("p", "b", 2, 30), run("q", "a", 2, 5, 30),
                                    flat("q", "b", 2, 30)};
  const auto d = data_profile(recs, 1e-3, default_kappa_grid());
  for (double v : d.at("b")) CHECK(v == 0.0);
  CHECK(d.at("a").back() == 1.0);
}

TEST_CASE("performance profile: ratio table") {
  const std::vector<RunRecord> recs{run("p", "s1", 4, 10, 40), run("p", "s2", 4, 20, 40)};
  const auto rho = performance_profile(recs, 1e-3, {1.0, 1.5, 2.0});
  CHECK(rho.at("s1") == std::vector<double>{1, 1, 1});
  CHECK(rho.at("s2") == std::vector<double>{0, 0, 1});
}

TEST_CASE("performance profile: single solver and unsolved problems") {
  const std::vector<RunRecord> single{run("p", "s", 4, 10, 40), run("q", "s", 4, 3, 40)};
  CHECK(performance_profile(single, 1e-3, {1.0}).at("s")[0] == 1.0);

  const std::vector<RunRecord> two{run("p", "a", 4, 10, 40), flat("p", "b", 4, 40), run("q", "a", 4, 10, 40),
                                   run("q", "b", 4, 5, 40)};
  const auto rho = performance_profile(two, 1e-3, default_iota_grid());
  // b never solves p, so it tops out at one of two problems.
  CHECK(rho.at("b").front() == 0.5);
  CHECK(rho.at("b").back() == 0.5);
  CHECK(rho.at("a").front() == 0.5);
  CHECK(rho.at("a").back() == 1.0);
}

TEST_CASE("curves are monotone, bounded, and agree at full range") {
  std::vector<RunRecord> recs;
  const char* solvers[] = {"a", "b", "c"};
  for (int p = 0; p < 12; ++p) {
    for (int s = 0; s < 3; ++s) {
      const int hit = 1 + (p * 7 + s * 13) % 60;
      if ((p + s) % 5 == 0) {
        recs.push_back(run("p" + std::to_string(p), solvers[s], 9, hit, 80, 1.0));
      } else {
        recs.push_back(run("p" + std::to_string(p), solvers[s], 9, hit, 80));
      }
    }
  }
  const auto kappa = default_kappa_grid();
  const auto iota = default_iota_grid();
  const auto d = data_profile(recs, 1e-3, kappa);
  const auto rho = performance_profile(recs, 1e-3, iota);
  for (const char* s : solvers) {
    const auto& dc = d.at(s);
    const auto& rc = rho.at(s);
    for (std::size_t k = 1; k < dc.size(); ++k) CHECK(dc[k] >= dc[k - 1]);
    for (std::size_t k = 1; k < rc.size(); ++k) CHECK(rc[k] >= rc[k - 1]);
    CHECK(dc.front() >= 0.0);
    CHECK(dc.back() <= 1.0);
    CHECK(dc.back() == rc.back());
  }
}

TEST_CASE("missing or duplicate pairs are contract errors") {
  const std::vector<RunRecord> missing{run("p", "a", 2, 3, 10), run("p", "b", 2, 3, 10), run("q", "a", 2, 3, 10)};
  CHECK_THROWS_AS(data_profile(missing, 1e-3, {1.0}), ContractError);
  const std::vector<RunRecord> dup{run("p", "a", 2, 3, 10), run("p", "a", 2, 4, 10)};
  CHECK_THROWS_AS(performance_profile(dup, 1e-3, {1.0}), ContractError);
  CHECK_THROWS_AS(data_profile({}, 1e-3, {1.0}), ContractError);
}

TEST_CASE("default grids") {
  CHECK(default_tau_grid() == std::vector<double>{1e-1, 1e-3, 1e-5});
  const auto kappa = default_kappa_grid();
  CHECK(kappa.size() == 101);
  CHECK(kappa.back() == 100.0);
  const auto iota = default_iota_grid();
  CHECK(iota.front() == 1.0);
  CHECK(iota.back() == doctest::Approx(64.0));
}

TEST_CASE("long-format records") {
  std::istringstream in(
      "problem_id,solver_id,n_p,eval_index,best_f\n"
      "p,a,3,1,5\np,a,3,2,2\np,b,3,1,5\np,b,3,2,4\n");
  const auto recs = read_records_csv(in);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].history == std::vector<double>{5, 2});
  CHECK(recs[1].n_p == 3);

  std::istringstream bad("problem_id,solver_id,n_p,eval_index,best_f\np,a,3,1,5\np,a,3,x,2\n");
  try {
    read_records_csv(bad, "runs.csv");
    FAIL("expected a contract error");
  } catch (const ContractError& e) {
    CHECK(std::string(e.what()).find("runs.csv: row 3") != std::string::npos);
  }
  std::istringstream gap("problem_id,solver_id,n_p,eval_index,best_f\np,a,3,2,5\n");
  CHECK_THROWS_AS(read_records_csv(gap), ContractError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_records_csv(empty), ContractError);
}

TEST_CASE("curve csv") {
  std::ostringstream out;
  write_curves_csv(out, {{"s", {0.0, 0.5}}}, {1.0, 2.0});
  CHECK(out.str() == "solver_id,grid_value,curve_value\ns,1,0\ns,2,0.5\n");
}
