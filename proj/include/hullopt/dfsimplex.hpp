#pragma once

// Direct search over the unit simplex along exchange directions +-(e_i - e_j).

#include "hullopt/core.hpp"
#include "hullopt/linesearch.hpp"

#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace hullopt {

enum class StopReason { ToleranceReached, BudgetExhausted };

const char* to_string(StopReason reason);

struct DfSimplexState {
  Vector y;
  double phi_y = 0.0;
  Vector step;  // alpha-hat, one per coordinate
  int iteration = 0;
  std::vector<Sample> last_samples;
};

/// What one outer iteration did.
struct IterationReport {
  int pivot = 0;
  /// Accepted step per coordinate (0 for the pivot and for failed searches).
  Vector alpha;
  /// Every alpha-hat equalled the tolerance when the iteration started.
  bool steps_at_floor = false;
  bool budget_exhausted = false;

  bool no_progress() const { return alpha.size() == 0 || (alpha.array() == 0.0).all(); }
};

struct DfSimplexTrace {
  int iteration;
  double f;
  std::int64_t evals;
  double min_step;
  double max_step;
};

using DfSimplexSink = std::function<void(const DfSimplexTrace&)>;

struct DfSimplexResult {
  Vector y;
  double f = 0.0;
  Vector step;
  std::vector<Sample> last_samples;
  int iterations = 0;
  std::int64_t evals = 0;
  StopReason stop = StopReason::ToleranceReached;
};

/// Index of the largest weight, lowest index on ties. Satisfies
/// y_j >= tau * max_i y_i for every tau in (0, 1].
int choose_pivot(const Vector& y, double tau = 1.0);

/// Fresh state at y0 with cached phi(y0) and the configured initial stepsizes.
DfSimplexState make_state(const Vector& y0, double phi_y0, const DfSimplexConfig& cfg);

/// One outer iteration: a line search per non-pivot coordinate from the
/// running point, then the stepsize updates. `rng` is used only when
/// cfg.shuffle_directions is set.
IterationReport df_simplex_iterate(DfSimplexState& state, const ReducedObjective& phi,
                                   const DfSimplexConfig& cfg, std::mt19937_64& rng);

/// Iterates until all stepsizes sit at the tolerance and an iteration made no
/// progress, or until the budget runs out. When phi_y0 is given, phi(y0) is
/// not evaluated again. `evals` in the result counts calls made through phi.
DfSimplexResult df_simplex_solve(const ReducedObjective& phi, const Vector& y0, const DfSimplexConfig& cfg,
                                 std::optional<double> phi_y0 = std::nullopt,
                                 const DfSimplexSink& sink = {});

}  // namespace hullopt
