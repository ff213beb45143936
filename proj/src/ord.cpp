#include "hullopt/ord.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hullopt {

RefineOutcome refine_phase(BudgetedObjective& f, const Vector& x_bar, double f_bar, const AtomSet& atoms,
                           const std::vector<AtomId>& active, double mu_hat, double gamma,
                           std::mt19937_64& rng) {
  std::vector<char> is_active(static_cast<std::size_t>(atoms.size()), 0);
  for (AtomId id : active) is_active.at(static_cast<std::size_t>(id)) = 1;
  std::vector<AtomId> candidates;
  for (AtomId id = 0; id < atoms.size(); ++id) {
    if (!is_active[static_cast<std::size_t>(id)]) candidates.push_back(id);
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);

  RefineOutcome out;
  const double target = f_bar - gamma * mu_hat * mu_hat;
  for (AtomId id : candidates) {
    Vector x = x_bar + mu_hat * (atoms.atom(id) - x_bar);
    double value;
    try {
      value = f.evaluate(x);
    } catch (const BudgetExhausted&) {
      out.budget_exhausted = true;
      return out;
    }
    ++out.candidates_tried;
    if (value <= target) {
      out.found = true;
      out.atom = id;
      out.mu = mu_hat;
      out.x_next = std::move(x);
      out.f_next = value;
      return out;
    }
  }
  return out;
}

Vector simplex_gradient_from(const std::vector<Sample>& samples, const Vector& y_bar, double f_bar) {
  const auto size = y_bar.size();
  const auto rows = static_cast<Eigen::Index>(samples.size());
  if (rows < size) throw PoisednessFailure("fewer sample points than coordinates");
  Matrix st(rows, size);
  Vector b(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& s = samples[static_cast<std::size_t>(r)];
    if (s.y.size() != size) throw StructuralError("sample dimension mismatch");
    st.row(r) = (s.y - y_bar).transpose();
    b[r] = s.f - f_bar;
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(st);
  if (cod.rank() < size) throw PoisednessFailure("sample set is not poised");
  return cod.solve(b);
}

Vector simplex_gradient(const std::vector<Sample>& samples, const Vector& y_bar, double f_bar, double eps,
                        const ReducedObjective& phi) {
  const auto size = y_bar.size();
  std::vector<Sample> all = samples;
  Vector extra = y_bar - Vector::Constant(size, eps * std::sqrt(2.0) / static_cast<double>(size));
  const double f_extra = phi(extra);
  all.push_back({std::move(extra), f_extra});
  return simplex_gradient_from(all, y_bar, f_bar);
}

std::vector<int> drop_phase(const Vector& y_bar, DropRule rule, const std::optional<Vector>& gradient) {
  if (rule == DropRule::GradientFiltered && gradient && gradient->size() != y_bar.size()) {
    throw StructuralError("gradient length does not match the weights");
  }
  const bool filter = rule == DropRule::GradientFiltered && gradient.has_value();
  double g_dot_y = 0.0;
  if (filter) g_dot_y = gradient->dot(y_bar);
  std::vector<int> out;
  for (Eigen::Index h = 0; h < y_bar.size(); ++h) {
    if (y_bar[h] != 0.0) continue;
    // g^T (e_h - y)
    if (filter && (*gradient)[h] - g_dot_y < 0.0) continue;
    out.push_back(static_cast<int>(h));
  }
  return out;
}

Reexpressed reexpress_weights(const Vector& y_bar, const std::vector<AtomId>& active,
                              std::optional<std::pair<AtomId, double>> added, const std::vector<int>& dropped) {
  if (static_cast<Eigen::Index>(active.size()) != y_bar.size()) {
    throw StructuralError("weights do not match the active set");
  }
  std::vector<char> drop(active.size(), 0);
  for (int h : dropped) {
    if (h < 0 || h >= static_cast<int>(active.size())) throw StructuralError("drop position out of range");
    if (y_bar[h] != 0.0) throw StructuralError("cannot drop an atom with positive weight");
    drop[static_cast<std::size_t>(h)] = 1;
  }
  double mu = 0.0;
  if (added) {
    mu = added->second;
    if (!(mu > 0.0 && mu <= 1.0)) throw StructuralError("refine step must lie in (0, 1]");
    if (std::find(active.begin(), active.end(), added->first) != active.end()) {
      throw StructuralError("added atom is already active");
    }
  }

  Reexpressed out;
  std::vector<double> w;
  for (std::size_t h = 0; h < active.size(); ++h) {
    if (drop[h]) continue;
    out.ids.push_back(active[h]);
    w.push_back((1.0 - mu) * y_bar[static_cast<Eigen::Index>(h)]);
  }
  if (added) {
    out.ids.push_back(added->first);
    w.push_back(mu);
  }
  if (out.ids.empty()) throw StructuralError("re-expression left no atoms");
  out.y = Eigen::Map<Vector>(w.data(), static_cast<Eigen::Index>(w.size()));
  return out;
}

double OrdResult::sparsity(int total_atoms) const {
  if (total_atoms <= 0) return 0.0;
  const auto positive = (weights.array() > 0.0).count();
  return static_cast<double>(total_atoms - positive) / static_cast<double>(total_atoms);
}

OrdResult ord_solve(BudgetedObjective& f, const AtomSet& atoms, const OrdConfig& cfg, AtomId start,
                    const OrdSink& sink) {
  cfg.validate();
  if (start < 0 || start >= atoms.size()) throw StructuralError("start atom id out of range");

  const std::int64_t evals_before = f.eval_count();
  OrdResult result;
  std::vector<AtomId> active{start};
  Vector y = Vector::Ones(1);
  Vector x = atoms.atom(start);
  result.x = x;
  result.active_ids = active;
  result.weights = y;

  double fx;
  try {
    fx = f.evaluate(x);
  } catch (const BudgetExhausted&) {
    result.f = std::numeric_limits<double>::infinity();
    result.stop = StopReason::BudgetExhausted;
    return result;
  }

  std::mt19937_64 rng(cfg.rng_seed);
  double mu_hat = cfg.mu0;

  for (int k = 0;; ++k) {
    const double eps = cfg.tolerance_at(k);
    const Matrix subset = atoms.subset(active);
    const ReducedObjective phi = [&](const Vector& w) { return f.evaluate(subset * w); };

    // Optimize
    DfSimplexConfig inner = cfg.inner;
    inner.tolerance = eps;
    inner.initial_steps.clear();
    inner.rng_seed = rng();
    const DfSimplexResult solved = df_simplex_solve(phi, y, inner, fx);
    const Vector& y_bar = solved.y;
    const double f_bar = solved.f;
    const Vector x_bar = subset * y_bar;
    bool out_of_budget = solved.stop == StopReason::BudgetExhausted;

    // Refine
    RefineOutcome refined;
    if (!out_of_budget) {
      refined = refine_phase(f, x_bar, f_bar, atoms, active, mu_hat, cfg.gamma, rng);
      out_of_budget = refined.budget_exhausted;
    }
    const int candidates = atoms.size() - static_cast<int>(active.size());

    // Drop
    std::optional<Vector> gradient;
    bool fallback = false;
    const bool has_zero = (y_bar.array() == 0.0).any();
    if (cfg.drop_rule == DropRule::GradientFiltered && has_zero) {
      if (out_of_budget) {
        fallback = true;
      } else {
        try {
          gradient = simplex_gradient(solved.last_samples, y_bar, f_bar, eps, phi);
        } catch (const PoisednessFailure&) {
          fallback = true;
        } catch (const BudgetExhausted&) {
          fallback = true;
          out_of_budget = true;
        }
      }
    }
    const std::vector<int> dropped = drop_phase(y_bar, cfg.drop_rule, gradient);

    std::optional<std::pair<AtomId, double>> added;
    if (refined.found) added = std::make_pair(refined.atom, refined.mu);
    Reexpressed next = reexpress_weights(y_bar, active, added, dropped);

    OrdIterationRecord record{k,
                              static_cast<int>(active.size()),
                              f_bar,
                              refined.found,
                              static_cast<int>(dropped.size()),
                              f.eval_count() - evals_before,
                              mu_hat,
                              eps,
                              fallback,
                              active,
                              x,
                              x_bar};
    if (sink) sink(record);
    result.trace.push_back(std::move(record));

    bool stop = out_of_budget;
    if (refined.found) {
      x = refined.x_next;
      fx = refined.f_next;
    } else {
      x = x_bar;
      fx = f_bar;
      if (candidates == 0) {
        stop = stop || dropped.empty();
      } else {
        double farthest = 0.0;
        std::vector<char> is_active(static_cast<std::size_t>(atoms.size()), 0);
        for (AtomId id : active) is_active[static_cast<std::size_t>(id)] = 1;
        for (AtomId id = 0; id < atoms.size(); ++id) {
          if (!is_active[static_cast<std::size_t>(id)]) {
            farthest = std::max(farthest, (atoms.atom(id) - x_bar).norm());
          }
        }
        stop = stop || mu_hat * farthest <= cfg.refine_stop_factor;
      }
      mu_hat *= cfg.theta;
    }
    active = std::move(next.ids);
    y = std::move(next.y);
    result.iterations = k + 1;

    if (stop) {
      result.stop = out_of_budget ? StopReason::BudgetExhausted : StopReason::ToleranceReached;
      break;
    }
  }

  result.x = x;
  result.f = fx;
  result.active_ids = active;
  result.weights = y;
  result.evals = f.eval_count() - evals_before;
  return result;
}

}  // namespace hullopt
