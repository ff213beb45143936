#pragma once

// Stationarity measures and tangent-cone oracles for checking the solvers.
// Nothing in here is used by the solvers themselves.

#include "hullopt/core.hpp"

#include <stdexcept>
#include <vector>

namespace hullopt::analysis {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Weights at or below this are treated as zero when building cones.
inline constexpr double kZeroWeightTol = 1e-12;
/// Largest simplex handled by the enumeration projector.
inline constexpr int kProjectionCap = 12;

/// Tangent cone of the simplex at y: {v : e^T v = 0, v_i >= 0 for i in zero_set}.
struct ConeSpec {
  Vector y;
  std::vector<int> zero_set;

  static ConeSpec at(const Vector& y, double zero_tol = kZeroWeightTol);
};

/// max over the simplex of -g^T (y - y_bar) = g^T y_bar - min_i g_i.
double kkt_gap(const Vector& g, const Vector& y_bar);

/// Euclidean projection onto the tangent cone by enumerating which zero-set
/// coordinates are pinned to zero. Exact; exponential in |zero_set|.
Vector tangent_cone_project(const Vector& v, const ConeSpec& cone);

struct SignedExchange {
  int sign;  // +1 for e_i - e_j, -1 for e_j - e_i
  int i;
  int j;

  Vector direction(int size) const;
};

/// Exchange directions +-(e_i - e_j) feasible at y for pivot j (y_j > 0).
std::vector<SignedExchange> feasible_direction_set(const Vector& y, int j, double zero_tol = kZeroWeightTol);

/// max_a -grad^T (a - x) over the atoms; zero iff x is stationary on the hull.
double stationarity_gap_hull(const Vector& grad, const AtomSet& atoms, const Vector& x);

/// Non-negative least squares min ||B c - v||, c >= 0 (Lawson-Hanson).
Vector nnls(const Matrix& b, const Vector& v, int max_iter = 500);

/// Residual of the best non-negative combination of the given directions.
double nonneg_combination_residual(const std::vector<Vector>& directions, const Vector& v);

}  // namespace hullopt::analysis
