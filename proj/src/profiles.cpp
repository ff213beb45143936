#include "hullopt/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

namespace hullopt::profiles {
namespace {

struct SolveTable {
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  std::map<std::string, int> n_p;
  // (problem, solver) -> evals to convergence
  std::map<std::pair<std::string, std::string>, std::optional<std::int64_t>> hits;
};

SolveTable tabulate(const std::vector<RunRecord>& records, double tau) {
  if (records.empty()) throw ContractError("no run records");
  SolveTable t;
  std::set<std::string> problems;
  std::set<std::string> solvers;
  std::map<std::pair<std::string, std::string>, const RunRecord*> by_pair;
  for (const auto& r : records) {
    if (r.history.empty()) throw ContractError("empty history for " + r.problem + "/" + r.solver);
    problems.insert(r.problem);
    solvers.insert(r.solver);
    if (!by_pair.emplace(std::make_pair(r.problem, r.solver), &r).second) {
      throw ContractError("duplicate record for " + r.problem + "/" + r.solver);
    }
  }
  t.problems.assign(problems.begin(), problems.end());
  t.solvers.assign(solvers.begin(), solvers.end());

  for (const auto& p : t.problems) {
    double fL = std::numeric_limits<double>::infinity();
    for (const auto& s : t.solvers) {
      auto it = by_pair.find({p, s});
      if (it == by_pair.end()) throw ContractError("missing record for " + p + "/" + s);
      fL = std::min(fL, it->second->best());
      t.n_p[p] = it->second->n_p;
    }
    for (const auto& s : t.solvers) {
      const RunRecord& r = *by_pair.at({p, s});
      // Each solver measures progress from its own f(x0); fL is shared.
      const double f0 = std::max(r.f0(), fL);
      t.hits[{p, s}] = first_hit_evals(r.history, convergence_threshold(f0, fL, tau));
    }
  }
  return t;
}

}  // namespace

double RunRecord::f0() const {
  if (history.empty()) throw ContractError("empty history");
  return history.front();
}

double RunRecord::best() const {
  if (history.empty()) throw ContractError("empty history");
  return *std::min_element(history.begin(), history.end());
}

double convergence_threshold(double f0, double fL, double tau) {
  if (fL > f0) throw ContractError("fL must not exceed f0");
  return fL + tau * (f0 - fL);
}

std::optional<std::int64_t> first_hit_evals(const std::vector<double>& history, double threshold) {
  for (std::size_t k = 0; k < history.size(); ++k) {
    if (history[k] <= threshold) return static_cast<std::int64_t>(k + 1);
  }
  return std::nullopt;
}

Curves data_profile(const std::vector<RunRecord>& records, double tau, const std::vector<double>& kappa_grid) {
  const SolveTable t = tabulate(records, tau);
  const double total = static_cast<double>(t.problems.size());
  Curves out;
  for (const auto& s : t.solvers) {
    auto& curve = out[s];
    for (double kappa : kappa_grid) {
      int solved = 0;
      for (const auto& p : t.problems) {
        const auto& hit = t.hits.at({p, s});
        if (hit && static_cast<double>(*hit) <= kappa * (t.n_p.at(p) + 1)) ++solved;
      }
      curve.push_back(solved / total);
    }
  }
  return out;
}

Curves performance_profile(const std::vector<RunRecord>& records, double tau, const std::vector<double>& iota_grid) {
  const SolveTable t = tabulate(records, tau);
  const double total = static_cast<double>(t.problems.size());
  std::map<std::string, std::optional<std::int64_t>> fastest;
  for (const auto& p : t.problems) {
    std::optional<std::int64_t> best;
    for (const auto& s : t.solvers) {
      const auto& hit = t.hits.at({p, s});
      if (hit && (!best || *hit < *best)) best = hit;
    }
    fastest[p] = best;
  }
  Curves out;
  for (const auto& s : t.solvers) {
    auto& curve = out[s];
    for (double iota : iota_grid) {
      int count = 0;
      for (const auto& p : t.problems) {
        const auto& hit = t.hits.at({p, s});
        if (!hit) continue;
        const double ratio = static_cast<double>(*hit) / static_cast<double>(*fastest.at(p));
        if (ratio <= iota) ++count;
      }
      curve.push_back(count / total);
    }
  }
  return out;
}

std::vector<double> default_tau_grid() { return {1e-1, 1e-3, 1e-5}; }

std::vector<double> default_kappa_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 100; ++k) g.push_back(k);
  return g;
}

std::vector<double> default_iota_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 60; ++k) g.push_back(std::pow(2.0, k / 10.0));
  return g;
}

std::vector<RunRecord> read_records_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw ContractError(source + ": empty input");
  std::vector<RunRecord> records;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    std::stringstream ss(line);
    std::string problem, solver, n_p, eval, best;
    if (!std::getline(ss, problem, ',') || !std::getline(ss, solver, ',') || !std::getline(ss, n_p, ',') ||
        !std::getline(ss, eval, ',') || !std::getline(ss, best, ',')) {
      throw ContractError(source + ": row " + std::to_string(row) + " has too few fields");
    }
    RunRecord* r;
    auto key = std::make_pair(problem, solver);
    if (auto it = index.find(key); it != index.end()) {
      r = &records[it->second];
    } else {
      index.emplace(key, records.size());
      records.push_back({problem, solver, 0, {}});
      r = &records.back();
    }
    try {
      r->n_p = std::stoi(n_p);
      const long long e = std::stoll(eval);
      if (e != static_cast<long long>(r->history.size()) + 1) {
        throw ContractError(source + ": row " + std::to_string(row) + " breaks the eval sequence");
      }
      r->history.push_back(std::stod(best));
    } catch (const ContractError&) {
      throw;
    } catch (const std::exception&) {
      throw ContractError(source + ": row " + std::to_string(row) + " is malformed");
    }
  }
  if (records.empty()) throw ContractError(source + ": no records");
  return records;
}

void write_curves_csv(std::ostream& out, const Curves& curves, const std::vector<double>& grid) {
  out << "solver_id,grid_value,curve_value\n";
  char buf[64];
  for (const auto& [solver, curve] : curves) {
    for (std::size_t k = 0; k < grid.size() && k < curve.size(); ++k) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g", grid[k], curve[k]);
      out << solver << ',' << buf << '\n';
    }
  }
}

}  // namespace hullopt::profiles
