#pragma once

// Data and performance profiles over best-so-far evaluation histories.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hullopt::profiles {

class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunRecord {
  std::string problem;
  std::string solver;
  int n_p = 0;
  /// best_f after each evaluation; history[0] is f(x0).
  std::vector<double> history;

  double f0() const;
  double best() const;
};

/// fL + tau (f0 - fL).
double convergence_threshold(double f0, double fL, double tau);

/// 1-based index of the first entry <= threshold, or nullopt if none.
std::optional<std::int64_t> first_hit_evals(const std::vector<double>& history, double threshold);

using Curves = std::map<std::string, std::vector<double>>;

/// d_s(kappa) for each solver on the given kappa grid.
Curves data_profile(const std::vector<RunRecord>& records, double tau, const std::vector<double>& kappa_grid);

/// rho_s(iota) for each solver on the given ratio grid.
Curves performance_profile(const std::vector<RunRecord>& records, double tau, const std::vector<double>& iota_grid);

std::vector<double> default_tau_grid();
std::vector<double> default_kappa_grid();  // 0..100 step 1
std::vector<double> default_iota_grid();   // 1..64, log-spaced

/// Long-format input: problem_id,solver_id,n_p,eval_index,best_f with header.
std::vector<RunRecord> read_records_csv(std::istream& in, const std::string& source = "<input>");

/// solver_id,grid_value,curve_value with header.
void write_curves_csv(std::ostream& out, const Curves& curves, const std::vector<double>& grid);

}  // namespace hullopt::profiles
