#include "hullopt/linesearch.hpp"

#include <algorithm>

namespace hullopt {
namespace {

// Moves mass from coordinate `from` to coordinate `to`; sign tells which of
// +-(e_i - e_j) this is.
struct Orientation {
  int to;
  int from;
  int sign;
};

}  // namespace

LineSearchOutcome line_search(const ReducedObjective& phi, const Vector& z, double phi_z, int i, int j,
                              const LineSearchParams& params) {
  if (i == j) throw StructuralError("line search direction needs i != j");
  LineSearchOutcome out;

  auto sufficient = [&](double f, double step) { return f <= phi_z - params.gamma * step * step; };

  try {
    const Orientation orientations[2] = {{i, j, +1}, {j, i, -1}};
    for (const auto& o : orientations) {
      const double bound = feasible_step_bound(z, o.to, o.from);
      double alpha = std::min(bound, params.initial_step);
      if (!(alpha > 0.0)) continue;

      Vector y = exchange_step(z, o.to, o.from, alpha);
      double f = phi(y);
      out.samples.push_back({y, f});
      if (!sufficient(f, alpha)) continue;

      out.alpha = alpha;
      out.direction_sign = o.sign;
      out.f_new = f;
      double beta = std::min(bound, alpha / params.delta);
      while (out.alpha < bound) {
        y = exchange_step(z, o.to, o.from, beta);
        f = phi(y);
        out.samples.push_back({y, f});
        if (!sufficient(f, beta)) break;
        out.alpha = beta;
        out.f_new = f;
        beta = std::min(bound, beta / params.delta);
      }
      return out;
    }
  } catch (const BudgetExhausted&) {
    out.budget_exhausted = true;
  }
  return out;
}

}  // namespace hullopt
