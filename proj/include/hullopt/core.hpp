#pragma once

// Domain types shared by the simplex and convex-hull solvers.

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hullopt {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using AtomId = int;

/// Dimension/length mismatches and violated structural preconditions.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised by BudgetedObjective::evaluate once the evaluation budget is spent.
/// Solvers catch it and stop gracefully with their best point so far.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted() : std::runtime_error("evaluation budget exhausted") {}
};

class NonFiniteValue : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Absolute tolerance on |sum(w) - 1| for simplex membership.
inline constexpr double kSimplexSumTol = 1e-12;
/// Negative rounding residue in (-kClampTol, 0) is clamped to exactly zero.
inline constexpr double kClampTol = 1e-15;

/// The finite atom set whose convex hull is the feasible region. Atoms are
/// the columns of an n x m matrix; the column index is the stable atom id.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(Matrix atoms);
  static AtomSet from_rows(const std::vector<std::vector<double>>& atoms);

  int dim() const { return static_cast<int>(atoms_.rows()); }
  int size() const { return static_cast<int>(atoms_.cols()); }
  auto atom(AtomId id) const { return atoms_.col(id); }
  const Matrix& matrix() const { return atoms_; }

  /// Columns for the given ids, in order.
  Matrix subset(const std::vector<AtomId>& ids) const;

 private:
  Matrix atoms_;
};

/// A point of the unit simplex paired with the ordered atom ids it weights.
struct SimplexWeights {
  std::vector<AtomId> ids;
  Vector w;

  int size() const { return static_cast<int>(w.size()); }
};

/// True if w is non-negative and sums to one within kSimplexSumTol.
bool in_simplex(const Vector& w, double sum_tol = kSimplexSumTol);

/// Throws StructuralError unless w is a simplex point.
void require_simplex(const Vector& w);

/// Vertex e_i of the simplex of the given size.
Vector simplex_vertex(int size, int i);

/// Sum_i w_i a_{ids[i]}.
Vector combine(const AtomSet& atoms, const SimplexWeights& weights);
Vector combine(const AtomSet& atoms, const std::vector<AtomId>& ids, const Vector& w);

/// Largest step a such that z + a (e_i - e_j) stays in the simplex; that is z_j.
double feasible_step_bound(const Vector& z, int i, int j);

/// z + step (e_i - e_j), with the step taken exactly to the boundary when
/// step equals z_j and tiny negative residue clamped.
Vector exchange_step(const Vector& z, int i, int j, double step);

struct TraceEntry {
  std::int64_t eval_index;  // 1-based
  double f;
  double best_so_far;
};

/// Black-box objective with evaluation counting, a hard budget, and a
/// best-so-far trace. Confined to one solver run at a time.
class BudgetedObjective {
 public:
  using Function = std::function<double(const Vector&)>;

  explicit BudgetedObjective(Function f, std::optional<std::int64_t> budget = std::nullopt);

  /// Evaluates f(x). Throws BudgetExhausted without calling f when the budget
  /// is spent and NonFiniteValue when f returns NaN or an infinity.
  double evaluate(const Vector& x);
  double operator()(const Vector& x) { return evaluate(x); }

  std::int64_t eval_count() const { return count_; }
  std::optional<std::int64_t> budget() const { return budget_; }
  bool exhausted() const { return budget_ && count_ >= *budget_; }
  std::int64_t remaining() const;
  const std::vector<TraceEntry>& trace() const { return trace_; }
  double best() const;

  /// Opt-in memoization keyed on the exact coordinates of x. Cache hits are
  /// neither counted nor traced.
  void enable_memoization(bool on) { memoize_ = on; }

 private:
  Function f_;
  std::optional<std::int64_t> budget_;
  std::int64_t count_ = 0;
  std::vector<TraceEntry> trace_;
  bool memoize_ = false;
  std::map<std::vector<double>, double> cache_;
};

struct DfSimplexConfig {
  double tau = 1.0;
  double theta = 0.5;
  double gamma = 1e-6;
  double delta = 0.5;
  double initial_step = 1.0;
  /// Per-coordinate initial stepsizes; empty means broadcast initial_step.
  std::vector<double> initial_steps;
  double tolerance = 1e-4;
  bool shuffle_directions = false;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

enum class DropRule { ZeroWeight, GradientFiltered };

struct OrdConfig {
  double eps0 = 1e-1;
  double eps_decay = 0.5;
  double eps_min = 1e-4;
  double mu0 = 0.5;
  double gamma = 1e-6;
  double theta = 0.5;
  DropRule drop_rule = DropRule::GradientFiltered;
  double refine_stop_factor = 1e-4;
  std::uint64_t rng_seed = 0;
  DfSimplexConfig inner;

  /// Inner tolerance for outer iteration k: max(eps_min, eps0 * eps_decay^k).
  double tolerance_at(int k) const;
  void validate() const;
};

const char* to_string(DropRule rule);
DropRule drop_rule_from_string(const std::string& name);

}  // namespace hullopt
