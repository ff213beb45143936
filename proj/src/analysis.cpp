#include "hullopt/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hullopt::analysis {

ConeSpec ConeSpec::at(const Vector& y, double zero_tol) {
  ConeSpec c;
  c.y = y;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y[i] <= zero_tol) c.zero_set.push_back(static_cast<int>(i));
  }
  return c;
}

double kkt_gap(const Vector& g, const Vector& y_bar) {
  if (g.size() != y_bar.size()) throw StructuralError("gradient and weights differ in length");
  return g.dot(y_bar) - g.minCoeff();
}

Vector tangent_cone_project(const Vector& v, const ConeSpec& cone) {
  const auto size = v.size();
  if (size > kProjectionCap) throw CapExceeded("tangent cone projection is capped at 12 coordinates");
  const auto& zero = cone.zero_set;
  const std::size_t subsets = std::size_t{1} << zero.size();

  Vector best = Vector::Zero(size);
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < subsets; ++mask) {
    // Pinned coordinates are zero; the rest get v minus their mean.
    std::vector<char> pinned(static_cast<std::size_t>(size), 0);
    for (std::size_t b = 0; b < zero.size(); ++b) {
      if (mask & (std::size_t{1} << b)) pinned[static_cast<std::size_t>(zero[b])] = 1;
    }
    double free_sum = 0.0;
    int free_count = 0;
    for (Eigen::Index i = 0; i < size; ++i) {
      if (!pinned[static_cast<std::size_t>(i)]) {
        free_sum += v[i];
        ++free_count;
      }
    }
    const double shift = free_count > 0 ? free_sum / free_count : 0.0;
    Vector u = Vector::Zero(size);
    for (Eigen::Index i = 0; i < size; ++i) {
      if (!pinned[static_cast<std::size_t>(i)]) u[i] = v[i] - shift;
    }
    bool feasible = true;
    for (int i : zero) {
      if (u[i] < -1e-14) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    const double dist = (u - v).squaredNorm();
    if (dist < best_dist) {
      best_dist = dist;
      best = u;
    }
  }
  for (int i : zero) best[i] = std::max(best[i], 0.0);
  return best;
}

Vector SignedExchange::direction(int size) const {
  Vector d = Vector::Zero(size);
  d[i] = sign;
  d[j] = -sign;
  return d;
}

std::vector<SignedExchange> feasible_direction_set(const Vector& y, int j, double zero_tol) {
  if (j < 0 || j >= y.size()) throw StructuralError("pivot index out of range");
  if (!(y[j] > zero_tol)) throw StructuralError("pivot coordinate must be positive");
  std::vector<SignedExchange> out;
  for (int i = 0; i < static_cast<int>(y.size()); ++i) {
    if (i == j) continue;
    out.push_back({+1, i, j});
    if (y[i] > zero_tol) out.push_back({-1, i, j});
  }
  return out;
}

double stationarity_gap_hull(const Vector& grad, const AtomSet& atoms, const Vector& x) {
  if (grad.size() != atoms.dim() || x.size() != atoms.dim()) {
    throw StructuralError("gradient, point and atoms differ in dimension");
  }
  double worst = -std::numeric_limits<double>::infinity();
  for (AtomId id = 0; id < atoms.size(); ++id) {
    worst = std::max(worst, -grad.dot(atoms.atom(id) - x));
  }
  return worst;
}

Vector nnls(const Matrix& b, const Vector& v, int max_iter) {
  const auto cols = b.cols();
  Vector c = Vector::Zero(cols);
  std::vector<char> passive(static_cast<std::size_t>(cols), 0);
  const double tol = 1e-12 * std::max(1.0, b.norm() * v.norm());

  auto solve_passive = [&]() {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    }
    Matrix bp(b.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) bp.col(static_cast<Eigen::Index>(k)) = b.col(idx[k]);
    const Vector sp = bp.completeOrthogonalDecomposition().solve(v);
    Vector s = Vector::Zero(cols);
    for (std::size_t k = 0; k < idx.size(); ++k) s[idx[k]] = sp[static_cast<Eigen::Index>(k)];
    return s;
  };

  for (int iter = 0; iter < max_iter; ++iter) {
    const Vector w = b.transpose() * (v - b * c);
    Eigen::Index t = -1;
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!passive[static_cast<std::size_t>(j)] && w[j] > tol && (t < 0 || w[j] > w[t])) t = j;
    }
    if (t < 0) break;
    passive[static_cast<std::size_t>(t)] = 1;

    for (int inner = 0; inner < max_iter; ++inner) {
      const Vector s = solve_passive();
      bool positive = true;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s[j] <= 0.0) positive = false;
      }
      if (positive) {
        c = s;
        break;
      }
      double step = 1.0;
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && s[j] <= 0.0) step = std::min(step, c[j] / (c[j] - s[j]));
      }
      c += step * (s - c);
      for (Eigen::Index j = 0; j < cols; ++j) {
        if (passive[static_cast<std::size_t>(j)] && c[j] <= 1e-15) {
          passive[static_cast<std::size_t>(j)] = 0;
          c[j] = 0.0;
        }
      }
    }
  }
  return c;
}

double nonneg_combination_residual(const std::vector<Vector>& directions, const Vector& v) {
  if (directions.empty()) return v.norm();
  Matrix b(v.size(), static_cast<Eigen::Index>(directions.size()));
  for (std::size_t k = 0; k < directions.size(); ++k) b.col(static_cast<Eigen::Index>(k)) = directions[k];
  const Vector c = nnls(b, v);
  return (b * c - v).norm();
}

}  // namespace hullopt::analysis
