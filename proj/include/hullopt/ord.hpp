#pragma once

// Inner-approximation outer loop over atom subsets: optimize on the current
// hull, refine by one atom, drop zero-weight atoms.

#include "hullopt/core.hpp"
#include "hullopt/dfsimplex.hpp"

#include <functional>
#include <optional>
#include <random>
#include <vector>

namespace hullopt {

class PoisednessFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RefineOutcome {
  bool found = false;
  AtomId atom = -1;
  double mu = 0.0;
  Vector x_next;
  double f_next = 0.0;
  int candidates_tried = 0;
  bool budget_exhausted = false;
};

/// Scans A \ active in a random order without repetition and returns the
/// first atom a with f(x + mu (a - x)) <= f(x) - gamma mu^2 at mu = mu_hat.
RefineOutcome refine_phase(BudgetedObjective& f, const Vector& x_bar, double f_bar, const AtomSet& atoms,
                           const std::vector<AtomId>& active, double mu_hat, double gamma,
                           std::mt19937_64& rng);

/// Least-squares simplex gradient at y_bar from the last DF-SIMPLEX sweep plus
/// one extra point y_bar - eps sqrt(2)/m e, evaluated through phi. Throws
/// PoisednessFailure when the sample directions do not span R^m.
Vector simplex_gradient(const std::vector<Sample>& samples, const Vector& y_bar, double f_bar, double eps,
                        const ReducedObjective& phi);

/// Least-squares gradient from already evaluated samples (no extra point).
Vector simplex_gradient_from(const std::vector<Sample>& samples, const Vector& y_bar, double f_bar);

/// Positions h (into the active list) to drop. ZeroWeight drops every
/// zero-weight position; GradientFiltered additionally requires
/// g^T (e_h - y_bar) >= 0 and falls back to ZeroWeight when g is absent.
std::vector<int> drop_phase(const Vector& y_bar, DropRule rule, const std::optional<Vector>& gradient);

struct Reexpressed {
  std::vector<AtomId> ids;
  Vector y;
};

/// Weights over (active \ dropped) u {added}: kept atoms scale by (1 - mu),
/// the added atom takes mu.
Reexpressed reexpress_weights(const Vector& y_bar, const std::vector<AtomId>& active,
                              std::optional<std::pair<AtomId, double>> added, const std::vector<int>& dropped);

struct OrdIterationRecord {
  int k;
  int active_size;
  double f_bar;
  bool refine_success;
  int dropped;
  std::int64_t evals;
  double mu_hat;
  double eps;
  bool gradient_fallback;
  std::vector<AtomId> active_ids;  // A^k
  Vector x;                        // x^k
  Vector x_bar;
};

using OrdSink = std::function<void(const OrdIterationRecord&)>;

struct OrdResult {
  Vector x;
  double f = 0.0;
  std::vector<AtomId> active_ids;
  Vector weights;
  std::int64_t evals = 0;
  int iterations = 0;
  StopReason stop = StopReason::ToleranceReached;
  std::vector<OrdIterationRecord> trace;

  /// Fraction of all atoms carrying zero weight in the final representation.
  double sparsity(int total_atoms) const;
};

OrdResult ord_solve(BudgetedObjective& f, const AtomSet& atoms, const OrdConfig& cfg, AtomId start,
                    const OrdSink& sink = {});

}  // namespace hullopt
