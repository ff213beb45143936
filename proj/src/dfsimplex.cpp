#include "hullopt/dfsimplex.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace hullopt {
namespace {

void append_unique(std::vector<Sample>& into, const std::vector<Sample>& from) {
  for (const auto& s : from) {
    const bool seen = std::any_of(into.begin(), into.end(), [&](const Sample& t) { return t.y == s.y; });
    if (!seen) into.push_back(s);
  }
}

}  // namespace

const char* to_string(StopReason reason) {
  return reason == StopReason::ToleranceReached ? "tolerance_reached" : "budget_exhausted";
}

int choose_pivot(const Vector& y, double tau) {
  if (y.size() == 0) throw StructuralError("pivot of an empty weight vector");
  (void)tau;  // argmax meets the threshold for every tau <= 1
  Eigen::Index best = 0;
  for (Eigen::Index i = 1; i < y.size(); ++i) {
    if (y[i] > y[best]) best = i;
  }
  return static_cast<int>(best);
}

DfSimplexState make_state(const Vector& y0, double phi_y0, const DfSimplexConfig& cfg) {
  DfSimplexState s;
  s.y = y0;
  s.phi_y = phi_y0;
  if (cfg.initial_steps.empty()) {
    s.step = Vector::Constant(y0.size(), cfg.initial_step);
  } else {
    if (static_cast<Eigen::Index>(cfg.initial_steps.size()) != y0.size()) {
      throw StructuralError("initial stepsize vector length does not match the simplex");
    }
    s.step = Eigen::Map<const Vector>(cfg.initial_steps.data(), y0.size());
  }
  return s;
}

IterationReport df_simplex_iterate(DfSimplexState& state, const ReducedObjective& phi,
                                   const DfSimplexConfig& cfg, std::mt19937_64& rng) {
  const int size = static_cast<int>(state.y.size());
  const double eps = cfg.tolerance;
  IterationReport report;
  report.steps_at_floor = (state.step.array() == eps).all();
  report.alpha = Vector::Zero(size);
  if (size == 1) {
    ++state.iteration;
    state.last_samples.clear();
    return report;
  }

  const int j = choose_pivot(state.y, cfg.tau);
  report.pivot = j;

  std::vector<int> order;
  order.reserve(size - 1);
  for (int i = 0; i < size; ++i) {
    if (i != j) order.push_back(i);
  }
  if (cfg.shuffle_directions) std::shuffle(order.begin(), order.end(), rng);

  Vector z = state.y;
  double phi_z = state.phi_y;
  Vector next_step = state.step;
  std::vector<Sample> samples;

  for (int i : order) {
    const LineSearchOutcome ls = line_search(phi, z, phi_z, i, j, {state.step[i], cfg.gamma, cfg.delta});
    append_unique(samples, ls.samples);
    if (ls.alpha > 0.0) {
      // Re-derive the accepted point exactly as the line search built it.
      z = ls.direction_sign > 0 ? exchange_step(z, i, j, ls.alpha) : exchange_step(z, j, i, ls.alpha);
      phi_z = ls.f_new;
      report.alpha[i] = ls.alpha;
      next_step[i] = std::max(ls.alpha, eps);
    } else if (!ls.budget_exhausted) {
      next_step[i] = std::max(cfg.theta * state.step[i], eps);
    }
    if (ls.budget_exhausted) {
      report.budget_exhausted = true;
      break;
    }
  }

  if (!report.budget_exhausted) {
    double smallest = state.step[j];
    for (int i : order) smallest = std::min(smallest, next_step[i]);
    next_step[j] = std::max(smallest, eps);
  }

  state.y = std::move(z);
  state.phi_y = phi_z;
  state.step = std::move(next_step);
  state.last_samples = std::move(samples);
  ++state.iteration;
  return report;
}

DfSimplexResult df_simplex_solve(const ReducedObjective& phi, const Vector& y0, const DfSimplexConfig& cfg,
                                 std::optional<double> phi_y0, const DfSimplexSink& sink) {
  cfg.validate();
  require_simplex(y0);

  std::int64_t evals = 0;
  const ReducedObjective counted = [&](const Vector& y) {
    const double v = phi(y);
    ++evals;
    return v;
  };

  DfSimplexResult result;
  result.y = y0;
  if (!phi_y0) {
    try {
      phi_y0 = counted(y0);
    } catch (const BudgetExhausted&) {
      result.f = std::numeric_limits<double>::infinity();
      result.step = Vector::Constant(y0.size(), cfg.initial_step);
      result.stop = StopReason::BudgetExhausted;
      return result;
    }
  }

  DfSimplexState state = make_state(y0, *phi_y0, cfg);
  if (y0.size() == 1) {
    // No exchange directions exist; the stopping test holds vacuously.
    result.f = *phi_y0;
    result.step = Vector::Constant(1, cfg.tolerance);
    result.evals = evals;
    return result;
  }

  std::mt19937_64 rng(cfg.rng_seed);
  for (;;) {
    const IterationReport report = df_simplex_iterate(state, counted, cfg, rng);
    if (sink) {
      sink({state.iteration, state.phi_y, evals, state.step.minCoeff(), state.step.maxCoeff()});
    }
    if (report.budget_exhausted) {
      result.stop = StopReason::BudgetExhausted;
      break;
    }
    if (report.steps_at_floor && report.no_progress()) {
      result.stop = StopReason::ToleranceReached;
      break;
    }
  }

  result.y = state.y;
  result.f = state.phi_y;
  result.step = state.step;
  result.last_samples = std::move(state.last_samples);
  result.iterations = state.iteration;
  result.evals = evals;
  return result;
}

}  // namespace hullopt
