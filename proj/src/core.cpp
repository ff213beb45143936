#include "hullopt/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hullopt {

AtomSet::AtomSet(Matrix atoms) : atoms_(std::move(atoms)) {
  if (atoms_.rows() < 1 || atoms_.cols() < 1) {
    throw StructuralError("AtomSet needs at least one atom of dimension >= 1");
  }
}

AtomSet AtomSet::from_rows(const std::vector<std::vector<double>>& atoms) {
  if (atoms.empty() || atoms.front().empty()) {
    throw StructuralError("AtomSet needs at least one atom of dimension >= 1");
  }
  const auto n = atoms.front().size();
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t j = 0; j < atoms.size(); ++j) {
    if (atoms[j].size() != n) throw StructuralError("atoms have different dimensions");
    for (std::size_t r = 0; r < n; ++r) m(r, j) = atoms[j][r];
  }
  return AtomSet(std::move(m));
}

Matrix AtomSet::subset(const std::vector<AtomId>& ids) const {
  Matrix out(atoms_.rows(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t c = 0; c < ids.size(); ++c) {
    if (ids[c] < 0 || ids[c] >= size()) throw StructuralError("atom id out of range");
    out.col(c) = atoms_.col(ids[c]);
  }
  return out;
}

bool in_simplex(const Vector& w, double sum_tol) {
  if (w.size() == 0) return false;
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!(w[i] >= 0.0)) return false;
  }
  return std::abs(w.sum() - 1.0) <= sum_tol;
}

void require_simplex(const Vector& w) {
  if (!in_simplex(w)) throw StructuralError("weights are not a point of the unit simplex");
}

Vector simplex_vertex(int size, int i) {
  if (i < 0 || i >= size) throw StructuralError("vertex index out of range");
  Vector e = Vector::Zero(size);
  e[i] = 1.0;
  return e;
}

Vector combine(const AtomSet& atoms, const std::vector<AtomId>& ids, const Vector& w) {
  if (static_cast<Eigen::Index>(ids.size()) != w.size()) {
    throw StructuralError("weight vector length does not match the atom subset");
  }
  Vector x = Vector::Zero(atoms.dim());
  for (std::size_t c = 0; c < ids.size(); ++c) {
    if (ids[c] < 0 || ids[c] >= atoms.size()) throw StructuralError("atom id out of range");
    x += w[static_cast<Eigen::Index>(c)] * atoms.atom(ids[c]);
  }
  return x;
}

Vector combine(const AtomSet& atoms, const SimplexWeights& weights) {
  return combine(atoms, weights.ids, weights.w);
}

double feasible_step_bound(const Vector& z, int i, int j) {
  if (i == j) throw StructuralError("exchange direction needs two distinct indices");
  if (i < 0 || j < 0 || i >= z.size() || j >= z.size()) {
    throw StructuralError("exchange index out of range");
  }
  return z[j];
}

Vector exchange_step(const Vector& z, int i, int j, double step) {
  Vector out = z;
  if (step >= z[j]) {
    // Moving all of coordinate j's mass keeps the sum exact.
    out[i] += z[j];
    out[j] = 0.0;
  } else {
    out[i] += step;
    out[j] -= step;
    if (out[j] < 0.0 && out[j] > -kClampTol) out[j] = 0.0;
  }
  return out;
}

BudgetedObjective::BudgetedObjective(Function f, std::optional<std::int64_t> budget)
    : f_(std::move(f)), budget_(budget) {
  if (budget_ && *budget_ <= 0) throw StructuralError("budget must be positive");
}

std::int64_t BudgetedObjective::remaining() const {
  if (!budget_) return std::numeric_limits<std::int64_t>::max();
  return std::max<std::int64_t>(0, *budget_ - count_);
}

double BudgetedObjective::best() const {
  return trace_.empty() ? std::numeric_limits<double>::infinity() : trace_.back().best_so_far;
}

double BudgetedObjective::evaluate(const Vector& x) {
  std::vector<double> key;
  if (memoize_) {
    key.assign(x.data(), x.data() + x.size());
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  }
  if (exhausted()) throw BudgetExhausted();
  const double value = f_(x);
  if (!std::isfinite(value)) throw NonFiniteValue("objective returned a non-finite value");
  ++count_;
  const double best_so_far = trace_.empty() ? value : std::min(trace_.back().best_so_far, value);
  trace_.push_back({count_, value, best_so_far});
  if (memoize_) cache_.emplace(std::move(key), value);
  return value;
}

void DfSimplexConfig::validate() const {
  if (!(tau > 0.0 && tau <= 1.0)) throw StructuralError("tau must lie in (0, 1]");
  if (!(theta > 0.0 && theta < 1.0)) throw StructuralError("theta must lie in (0, 1)");
  if (!(gamma > 0.0)) throw StructuralError("gamma must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw StructuralError("delta must lie in (0, 1)");
  if (!(initial_step > 0.0)) throw StructuralError("initial stepsize must be positive");
  for (double s : initial_steps) {
    if (!(s > 0.0)) throw StructuralError("initial stepsizes must be positive");
  }
  if (!(tolerance > 0.0)) throw StructuralError("tolerance must be positive");
}

double OrdConfig::tolerance_at(int k) const {
  return std::max(eps_min, eps0 * std::pow(eps_decay, k));
}

void OrdConfig::validate() const {
  if (!(eps0 > 0.0)) throw StructuralError("eps0 must be positive");
  if (!(eps_decay > 0.0 && eps_decay < 1.0)) throw StructuralError("eps_decay must lie in (0, 1)");
  if (!(eps_min > 0.0 && eps_min <= eps0)) throw StructuralError("eps_min must lie in (0, eps0]");
  if (!(mu0 > 0.0 && mu0 < 1.0)) throw StructuralError("mu0 must lie in (0, 1)");
  if (!(gamma > 0.0)) throw StructuralError("gamma must be positive");
  if (!(theta > 0.0 && theta < 1.0)) throw StructuralError("theta must lie in (0, 1)");
  if (!(refine_stop_factor > 0.0)) throw StructuralError("refine stop factor must be positive");
  inner.validate();
}

const char* to_string(DropRule rule) {
  return rule == DropRule::ZeroWeight ? "zero_weight" : "gradient_filtered";
}

DropRule drop_rule_from_string(const std::string& name) {
  if (name == "zero_weight") return DropRule::ZeroWeight;
  if (name == "gradient_filtered") return DropRule::GradientFiltered;
  throw StructuralError("unknown drop rule: " + name);
}

}  // namespace hullopt
