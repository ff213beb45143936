#include "hullopt/verify.hpp"

#include "hullopt/analysis.hpp"
#include "hullopt/dfsimplex.hpp"
#include "hullopt/ord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace hullopt::verify {
namespace {

class Tally {
 public:
  explicit Tally(std::string name) { report_.name = std::move(name); report_.worst_margin = std::numeric_limits<double>::infinity(); }

  void add(double margin) {
    ++report_.trials;
    if (!(margin >= 0.0)) ++report_.failures;
    report_.worst_margin = std::min(report_.worst_margin, margin);
  }

  PropertyReport done() const { return report_; }

 private:
  PropertyReport report_;
};

Vector random_normal(int size, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(size);
  for (int i = 0; i < size; ++i) v[i] = g(rng);
  return v;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Brute-force re-execution of the sufficient-decrease tests: lists the whole
// candidate step ladder first, then scans it.
std::pair<double, int> reference_line_search(const ReducedObjective& phi, const Vector& z, double phi_z, int i,
                                             int j, double ahat, double gamma, double delta) {
  for (int sign : {+1, -1}) {
    const int to = sign > 0 ? i : j;
    const int from = sign > 0 ? j : i;
    const double bound = z[from];
    const double first = std::min(bound, ahat);
    if (!(first > 0.0)) continue;
    std::vector<double> ladder{first};
    while (ladder.back() < bound) ladder.push_back(std::min(bound, ladder.back() / delta));
    auto point = [&](double a) {
      Vector y = z;
      if (a >= bound) {
        y[to] += bound;
        y[from] = 0.0;
      } else {
        y[to] += a;
        y[from] -= a;
        if (y[from] < 0.0 && y[from] > -kClampTol) y[from] = 0.0;
      }
      return y;
    };
    if (!(phi(point(first)) <= phi_z - gamma * first * first)) continue;
    std::size_t accepted = 0;
    while (accepted + 1 < ladder.size()) {
      const double b = ladder[accepted + 1];
      if (!(phi(point(b)) <= phi_z - gamma * b * b)) break;
      ++accepted;
    }
    return {ladder[accepted], sign};
  }
  return {0.0, +1};
}

// DF-SIMPLEX driven through iterate() so the fault mode can bypass config
// validation with a negative gamma.
struct Driven {
  Vector y;
  bool monotone = true;
  bool feasible = true;
};

Driven drive_dfsimplex(const ReducedObjective& phi, const Vector& y0, const DfSimplexConfig& cfg, int max_iter) {
  DfSimplexState state = make_state(y0, phi(y0), cfg);
  std::mt19937_64 rng(cfg.rng_seed);
  Driven d;
  for (int k = 0; k < max_iter; ++k) {
    const double before = state.phi_y;
    const IterationReport r = df_simplex_iterate(state, phi, cfg, rng);
    if (state.phi_y > before) d.monotone = false;
    if (!in_simplex(state.y)) d.feasible = false;
    if (r.steps_at_floor && r.no_progress()) break;
  }
  d.y = state.y;
  return d;
}

}  // namespace

Vector random_simplex_point(int size, std::mt19937_64& rng, double boundary_prob, int min_support) {
  std::exponential_distribution<double> ex(1.0);
  Vector y(size);
  for (int i = 0; i < size; ++i) y[i] = ex(rng);
  const int keep = std::clamp(min_support, 1, size);
  if (keep < size && std::uniform_real_distribution<double>(0.0, 1.0)(rng) < boundary_prob) {
    std::vector<int> order(size);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int k = keep; k < size; ++k) {
      if (std::bernoulli_distribution(0.5)(rng)) y[order[k]] = 0.0;
    }
  }
  y /= y.sum();
  return y;
}

Quadratic random_convex_quadratic(int size, std::mt19937_64& rng) {
  Quadratic q;
  Matrix b(size, size);
  for (int c = 0; c < size; ++c) b.col(c) = random_normal(size, rng);
  q.q = b.transpose() * b + 0.1 * Matrix::Identity(size, size);
  q.center = random_normal(size, rng) * 0.5 + Vector::Constant(size, 1.0 / size);
  q.lipschitz = Eigen::SelfAdjointEigenSolver<Matrix>(q.q).eigenvalues().maxCoeff();
  return q;
}

Vector project_to_simplex(const Vector& v) {
  std::vector<double> u(v.data(), v.data() + v.size());
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double shift = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) shift = t;
  }
  return (v.array() - shift).max(0.0).matrix();
}

Vector project_onto_hull(const AtomSet& atoms, const Vector& c, int iterations) {
  const Matrix& a = atoms.matrix();
  const Matrix gram = a.transpose() * a;
  const double lipschitz = 2.0 * Eigen::SelfAdjointEigenSolver<Matrix>(gram).eigenvalues().maxCoeff();
  const Vector atc = a.transpose() * c;
  Vector w = Vector::Constant(atoms.size(), 1.0 / atoms.size());
  Vector prev = w;
  Vector v = w;
  double t = 1.0;
  for (int k = 0; k < iterations; ++k) {
    const Vector grad = 2.0 * (gram * v - atc);
    w = project_to_simplex(v - grad / lipschitz);
    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    v = w + ((t - 1.0) / t_next) * (w - prev);
    prev = w;
    t = t_next;
  }
  return a * w;
}

bool well_separated(const AtomSet& atoms, const Vector& c, const Vector& x_star, double factor) {
  const Vector grad = 2.0 * (x_star - c);
  double scale = 0.0;
  for (AtomId id = 0; id < atoms.size(); ++id) scale = std::max(scale, (atoms.atom(id) - x_star).norm());
  const double margin = 1e-3 * scale;
  for (AtomId id = 0; id < atoms.size(); ++id) {
    const double gap = grad.dot(atoms.atom(id) - x_star);
    if (gap > margin && gap < factor * margin) return false;
  }
  return true;
}

IdentificationCheck check_identification(const AtomSet& atoms, const Vector& c, const Vector& x_star,
                                         DropRule rule, std::uint64_t seed, double radius) {
  BudgetedObjective f([c](const Vector& x) { return (x - c).squaredNorm(); }, 500000);
  f.enable_memoization(true);
  OrdConfig cfg;
  cfg.drop_rule = rule;
  cfg.rng_seed = seed;
  const OrdResult res = ord_solve(f, atoms, cfg, static_cast<AtomId>(seed % atoms.size()));

  const Vector grad = 2.0 * (x_star - c);
  double scale = 0.0;
  for (AtomId id = 0; id < atoms.size(); ++id) scale = std::max(scale, (atoms.atom(id) - x_star).norm());
  const double margin = 1e-3 * scale;
  std::vector<AtomId> far;
  for (AtomId id = 0; id < atoms.size(); ++id) {
    if (grad.dot(atoms.atom(id) - x_star) > margin) far.push_back(id);
  }

  IdentificationCheck out;
  out.iterations = res.iterations;
  out.final_distance = (res.x - x_star).norm();
  // A^k at the entering iteration was assembled before x^k got close; checks
  // start with the next one.
  for (const auto& rec : res.trace) {
    if (!out.entered_ball) {
      out.entered_ball = (rec.x - x_star).norm() <= radius;
      continue;
    }
    for (AtomId id : far) {
      if (std::find(rec.active_ids.begin(), rec.active_ids.end(), id) != rec.active_ids.end()) ++out.violations;
    }
  }
  // The final active set counts as one more iteration.
  if (out.entered_ball) {
    for (AtomId id : far) {
      if (std::find(res.active_ids.begin(), res.active_ids.end(), id) != res.active_ids.end()) ++out.violations;
    }
  }
  return out;
}

std::vector<PropertyReport> run_verification(const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  std::vector<PropertyReport> reports;
  const int trials = std::max(1, opts.trials);

  {
    Tally measure("cone_measure_bound");
    Tally generators("tangent_cone_generators");
    Tally polar("polar_decomposition");
    Tally kkt("kkt_gap_tangent_bound");
    for (int t = 0; t < trials; ++t) {
      const int size = uniform_int(rng, 2, 8);
      // At a vertex the bound fails whenever v lies in the normal cone, so the
      // samples keep at least two nonzero weights.
      const Vector y = random_simplex_point(size, rng, 0.5, 2);
      const Vector v = random_normal(size, rng);
      const int j = choose_pivot(y);
      const auto cone = analysis::ConeSpec::at(y);
      const Vector vt = analysis::tangent_cone_project(v, cone);
      const auto dirs = analysis::feasible_direction_set(y, j);

      std::vector<Vector> vecs;
      double best = -std::numeric_limits<double>::infinity();
      for (const auto& d : dirs) {
        vecs.push_back(d.direction(size));
        best = std::max(best, v.dot(vecs.back()));
      }
      measure.add(best - vt.norm() / (2.0 * (size - 1)) + 1e-10);
      generators.add(1e-8 - analysis::nonneg_combination_residual(vecs, vt));

      const Vector vn = v - vt;
      double worst = std::abs(vt.dot(vn));
      for (const auto& d : vecs) worst = std::max(worst, vn.dot(d));
      polar.add(1e-10 - worst);

      const Vector g = random_normal(size, rng);
      const Vector neg_t = analysis::tangent_cone_project(-g, cone);
      kkt.add(std::sqrt(2.0) * neg_t.norm() + 1e-10 - analysis::kkt_gap(g, y));
    }
    reports.push_back(measure.done());
    reports.push_back(generators.done());
    reports.push_back(polar.done());
    reports.push_back(kkt.done());
  }

  {
    Tally bound("dfsimplex_stationarity_bound");
    Tally monotone("dfsimplex_monotone_feasible");
    const int runs = std::max(1, trials / 5);
    for (int t = 0; t < runs; ++t) {
      const int size = uniform_int(rng, 3, 8);
      const Quadratic q = random_convex_quadratic(size, rng);
      DfSimplexConfig cfg;
      cfg.rng_seed = rng();
      if (opts.inject_fault) cfg.gamma = -1.0;
      const ReducedObjective phi = [&](const Vector& y) { return q(y); };
      const Vector y0 = simplex_vertex(size, uniform_int(rng, 0, size - 1));
      const Driven d = drive_dfsimplex(phi, y0, cfg, opts.inject_fault ? 2000 : 1000000);
      const double c = 2.0 * std::sqrt(2.0) * (size - 1) * (2.0 * q.lipschitz + cfg.gamma);
      bound.add(c * cfg.tolerance - analysis::kkt_gap(q.gradient(d.y), d.y));
      monotone.add(d.monotone && d.feasible ? 0.0 : -1.0);
    }
    reports.push_back(bound.done());
    reports.push_back(monotone.done());
  }

  {
    Tally oracle("line_search_oracle_equivalence");
    for (int t = 0; t < trials; ++t) {
      const int size = uniform_int(rng, 2, 6);
      const Quadratic q = random_convex_quadratic(size, rng);
      const Vector lin = random_normal(size, rng);
      const ReducedObjective phi = [&](const Vector& y) { return q(y) + lin.dot(y); };
      const Vector z = random_simplex_point(size, rng);
      const int i = uniform_int(rng, 0, size - 1);
      int j = uniform_int(rng, 0, size - 2);
      if (j >= i) ++j;
      const double ahat = std::pow(10.0, std::uniform_real_distribution<double>(-4.0, 0.0)(rng));
      const double gamma = std::pow(10.0, std::uniform_real_distribution<double>(-6.0, 0.0)(rng));
      const double delta = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
      const double phi_z = phi(z);
      const auto got = line_search(phi, z, phi_z, i, j, {ahat, gamma, delta});
      const auto want = reference_line_search(phi, z, phi_z, i, j, ahat, gamma, delta);
      oracle.add(got.alpha == want.first && got.direction_sign == want.second ? 0.0 : -1.0);
    }
    reports.push_back(oracle.done());
  }

  {
    Tally affine("simplex_gradient_affine_exact");
    for (int t = 0; t < trials; ++t) {
      const int size = uniform_int(rng, 2, 10);
      const Vector c = random_normal(size, rng);
      const double offset = random_normal(1, rng)[0];
      const ReducedObjective phi = [&](const Vector& y) { return c.dot(y) + offset; };
      DfSimplexConfig cfg;
      cfg.rng_seed = rng();
      const auto res = df_simplex_solve(phi, random_simplex_point(size, rng), cfg);
      double err;
      try {
        const Vector g = simplex_gradient(res.last_samples, res.y, res.f, cfg.tolerance, phi);
        err = (g - c).lpNorm<Eigen::Infinity>();
      } catch (const PoisednessFailure&) {
        err = std::numeric_limits<double>::infinity();
      }
      affine.add(1e-8 - err);
    }
    reports.push_back(affine.done());
  }

  {
    Tally ident("identification_exterior_target");
    const int runs = std::max(2, trials / 20);
    for (int t = 0; t < runs; ++t) {
      const std::uint64_t seed = rng();
      const AtomSet atoms = [&] {
        std::mt19937_64 local(seed);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Matrix a(3, 10);
        for (int c = 0; c < 10; ++c)
          for (int r = 0; r < 3; ++r) a(r, c) = u(local);
        return AtomSet(a);
      }();
      // Target well outside the unit cube so x* sits on the hull boundary.
      Vector c = random_normal(3, rng);
      c = Vector::Constant(3, 0.5) + 1.5 * c.normalized();
      const Vector x_star = project_onto_hull(atoms, c);
      if (!well_separated(atoms, c, x_star)) {
        --t;
        continue;
      }
      const DropRule rule = t % 2 == 0 ? DropRule::ZeroWeight : DropRule::GradientFiltered;
      const auto check = check_identification(atoms, c, x_star, rule, seed);
      ident.add(check.entered_ball && check.violations == 0 ? 0.0 : -1.0);
    }
    reports.push_back(ident.done());
  }

  return reports;
}

}  // namespace hullopt::verify
