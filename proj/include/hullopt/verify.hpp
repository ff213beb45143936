#pragma once

// Randomized property suites for the solvers and the geometric bounds they
// rely on. Drives the `verify` subcommand.

#include "hullopt/core.hpp"
#include "hullopt/linesearch.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hullopt::verify {

struct PropertyReport {
  std::string name;
  int trials = 0;
  int failures = 0;
  /// Smallest slack seen; negative means the property was violated.
  double worst_margin = 0.0;

  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  int trials = 100;
  std::uint64_t seed = 1;
  /// Runs the DF-SIMPLEX based properties with the sign of gamma flipped.
  bool inject_fault = false;
};

std::vector<PropertyReport> run_verification(const VerifyOptions& opts);

// Generators and oracles shared with the test suites.

/// Random simplex point; with probability boundary_prob a random subset of
/// coordinates is zeroed before renormalizing, leaving at least min_support
/// nonzeros.
Vector random_simplex_point(int size, std::mt19937_64& rng, double boundary_prob = 0.5, int min_support = 1);

/// Random convex quadratic phi(y) = 0.5 (y - c)^T Q (y - c) with its
/// gradient and Lipschitz constant (largest eigenvalue of Q).
struct Quadratic {
  Matrix q;
  Vector center;
  double lipschitz = 0.0;

  double operator()(const Vector& y) const { return 0.5 * (y - center).dot(q * (y - center)); }
  Vector gradient(const Vector& y) const { return q * (y - center); }
};

Quadratic random_convex_quadratic(int size, std::mt19937_64& rng);

/// Euclidean projection onto the unit simplex (sort-based).
Vector project_to_simplex(const Vector& v);

/// Nearest point of conv(atoms) to c, by accelerated projected gradient on
/// the barycentric weights.
Vector project_onto_hull(const AtomSet& atoms, const Vector& c, int iterations = 20000);

struct IdentificationCheck {
  bool entered_ball = false;
  int violations = 0;
  int iterations = 0;
  double final_distance = 0.0;
};

/// True when no atom has a gradient gap in (margin, factor * margin], i.e.
/// every gap is either negligible or clearly positive.
bool well_separated(const AtomSet& atoms, const Vector& c, const Vector& x_star, double factor = 50.0);

/// Runs ORD on f(x) = ||x - c||^2 and checks that after x^k first comes
/// within `radius` of x_star, no atom with gradient gap above the margin is in A^k.
IdentificationCheck check_identification(const AtomSet& atoms, const Vector& c, const Vector& x_star,
                                         DropRule rule, std::uint64_t seed, double radius = 1e-2);

}  // namespace hullopt::verify
