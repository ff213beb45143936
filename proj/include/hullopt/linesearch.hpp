#pragma once

#include "hullopt/core.hpp"

#include <functional>
#include <vector>

namespace hullopt {

/// Objective over simplex weights, phi(y) = f(A y). May throw BudgetExhausted.
using ReducedObjective = std::function<double(const Vector&)>;

struct Sample {
  Vector y;
  double f;
};

struct LineSearchOutcome {
  double alpha = 0.0;
  /// +1: moved along e_i - e_j, -1: flipped to e_j - e_i. A failed search
  /// (alpha == 0) reports +1.
  int direction_sign = 1;
  /// phi at z + alpha d when alpha > 0.
  double f_new = 0.0;
  /// Every point evaluated, in evaluation order.
  std::vector<Sample> samples;
  bool budget_exhausted = false;
};

struct LineSearchParams {
  double initial_step;  // alpha-hat
  double gamma;
  double delta;
};

/// Bidirectional sufficient-decrease search along +-(e_i - e_j) from z with
/// expansion by 1/delta up to the feasibility boundary. phi_z is phi(z) and is
/// never re-evaluated. Probes whose feasible step is zero are skipped.
///
/// If the budget runs out, the outcome keeps any step already accepted and
/// sets budget_exhausted.
LineSearchOutcome line_search(const ReducedObjective& phi, const Vector& z, double phi_z, int i, int j,
                              const LineSearchParams& params);

}  // namespace hullopt
