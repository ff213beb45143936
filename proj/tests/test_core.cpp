#include "hullopt/core.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace hullopt;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("combine: vertex weight and midpoint") {
  const AtomSet a = AtomSet::from_rows({{0, 0}, {1, 0}});
  CHECK(combine(a, {0, 1}, vec({1, 0})).isApprox(vec({0, 0})));
  const AtomSet b = AtomSet::from_rows({{0, 0}, {2, 0}});
  CHECK(combine(b, {0, 1}, vec({0.5, 0.5})).isApprox(vec({1, 0})));
}

TEST_CASE("combine: three atoms against a hand dot product") {
  const AtomSet a = AtomSet::from_rows({{1, 1}, {3, 1}, {1, 5}});
  const SimplexWeights w{{0, 1, 2}, vec({0.25, 0.25, 0.5})};
  // 0.25*(1,1) + 0.25*(3,1) + 0.5*(1,5)
  const Vector x = combine(a, w);
  CHECK(x[0] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("combine: subset ids pick columns by global id") {
  const AtomSet a = AtomSet::from_rows({{0, 0}, {4, 0}, {0, 8}});
  CHECK(combine(a, {2, 1}, vec({0.5, 0.5})).isApprox(vec({2, 4})));
}

TEST_CASE("combine: mismatches are structural errors") {
  const AtomSet a = AtomSet::from_rows({{0, 0}, {1, 0}});
  CHECK_THROWS_AS(combine(a, {0, 1}, vec({1})), StructuralError);
  CHECK_THROWS_AS(combine(a, {0, 5}, vec({0.5, 0.5})), StructuralError);
  CHECK_THROWS_AS(AtomSet::from_rows({{0, 0}, {1}}), StructuralError);
  CHECK_THROWS_AS(AtomSet::from_rows({}), StructuralError);
}

TEST_CASE("combine is linear in the weights") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Matrix m(4, 6);
  for (int c = 0; c < 6; ++c)
    for (int r = 0; r < 4; ++r) m(r, c) = 10.0 * u(rng);
  const AtomSet a(m);
  const std::vector<AtomId> ids{0, 1, 2, 3, 4, 5};
  for (int t = 0; t < 50; ++t) {
    Vector p(6), q(6);
    for (int i = 0; i < 6; ++i) {
      p[i] = u(rng);
      q[i] = u(rng);
    }
    p /= p.sum();
    q /= q.sum();
    const double lam = u(rng);
    const Vector lhs = combine(a, ids, lam * p + (1 - lam) * q);
    const Vector rhs = lam * combine(a, ids, p) + (1 - lam) * combine(a, ids, q);
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("feasible_step_bound returns z_j") {
  CHECK(feasible_step_bound(vec({0.5, 0.5}), 0, 1) == 0.5);
  CHECK(feasible_step_bound(vec({1, 0}), 1, 0) == 1.0);
  CHECK(feasible_step_bound(vec({0.2, 0.5, 0.3}), 0, 2) == 0.3);
  CHECK_THROWS_AS(feasible_step_bound(vec({0.5, 0.5}), 1, 1), StructuralError);
  CHECK_THROWS_AS(feasible_step_bound(vec({0.5, 0.5}), 0, 2), StructuralError);
}

TEST_CASE("feasible_step_bound is the largest feasible step") {
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> ex(1.0);
  for (int t = 0; t < 200; ++t) {
    const int size = 2 + static_cast<int>(rng() % 6);
    Vector z(size);
    for (int k = 0; k < size; ++k) z[k] = ex(rng);
    z /= z.sum();
    const int i = static_cast<int>(rng() % size);
    const int j = (i + 1 + static_cast<int>(rng() % (size - 1))) % size;
    const double bound = feasible_step_bound(z, i, j);
    CHECK(in_simplex(exchange_step(z, i, j, bound)));
    Vector beyond = z;
    beyond[i] += bound + 1e-9;
    beyond[j] -= bound + 1e-9;
    CHECK_FALSE(in_simplex(beyond));
  }
}

TEST_CASE("exchange_step lands exactly on the boundary") {
  const Vector z = vec({0.1, 0.7, 0.2});
  const Vector y = exchange_step(z, 1, 0, 0.1);
  CHECK(y[0] == 0.0);
  CHECK(y[1] == doctest::Approx(0.8));
  CHECK(in_simplex(y));
}

TEST_CASE("simplex helpers") {
  CHECK(in_simplex(vec({0.25, 0.75})));
  CHECK_FALSE(in_simplex(vec({-1e-20, 1.0})));
  CHECK_FALSE(in_simplex(vec({0.5, 0.6})));
  CHECK_FALSE(in_simplex(Vector()));
  CHECK(simplex_vertex(3, 2).isApprox(vec({0, 0, 1})));
  CHECK_THROWS_AS(simplex_vertex(3, 3), StructuralError);
  CHECK_THROWS_AS(require_simplex(vec({0.5, 0.4})), StructuralError);
}

TEST_CASE("evaluate counts and traces") {
  BudgetedObjective f([](const Vector& x) { return x.squaredNorm(); });
  CHECK(f.eval_count() == 0);
  CHECK(f.evaluate(vec({0, 0})) == 0.0);
  CHECK(f.eval_count() == 1);
  CHECK(f.trace().size() == 1);
}

TEST_CASE("evaluate: budget exhaustion does not call the black box") {
  int calls = 0;
  BudgetedObjective f(
      [&](const Vector& x) {
        ++calls;
        return x.sum();
      },
      1);
  f.evaluate(vec({1}));
  CHECK_THROWS_AS(f.evaluate(vec({2})), BudgetExhausted);
  CHECK(calls == 1);
  CHECK(f.eval_count() == 1);
  CHECK(f.remaining() == 0);
}

TEST_CASE("evaluate: best_so_far is monotone") {
  BudgetedObjective f([](const Vector& x) { return x.squaredNorm(); });
  f.evaluate(vec({1, 0}));
  f.evaluate(vec({0, 0}));
  f.evaluate(vec({3, 0}));
  REQUIRE(f.trace().size() == 3);
  CHECK(f.trace()[0].best_so_far == 1.0);
  CHECK(f.trace()[1].best_so_far == 0.0);
  CHECK(f.trace()[2].best_so_far == 0.0);
  CHECK(f.trace()[2].f == 9.0);
  CHECK(f.trace()[2].eval_index == 3);
  CHECK(f.trace().size() == static_cast<std::size_t>(f.eval_count()));
}

TEST_CASE("evaluate: non-finite values are hard errors") {
  BudgetedObjective f([](const Vector& x) { return std::log(x[0]); });
  CHECK_THROWS_AS(f.evaluate(vec({0})), NonFiniteValue);
  CHECK_THROWS_AS(f.evaluate(vec({-1})), NonFiniteValue);
}

TEST_CASE("memoization serves repeats without counting") {
  int calls = 0;
  BudgetedObjective f(
      [&](const Vector& x) {
        ++calls;
        return x[0];
      },
      2);
  f.enable_memoization(true);
  f.evaluate(vec({1}));
  f.evaluate(vec({1}));
  f.evaluate(vec({2}));
  CHECK(f.evaluate(vec({2})) == 2.0);
  CHECK(calls == 2);
  CHECK(f.eval_count() == 2);
}

TEST_CASE("config validation") {
  DfSimplexConfig d;
  CHECK_NOTHROW(d.validate());
  d.theta = 1.0;
  CHECK_THROWS_AS(d.validate(), StructuralError);
  d = {};
  d.initial_steps = {1.0, 0.0};
  CHECK_THROWS_AS(d.validate(), StructuralError);

  OrdConfig o;
  CHECK_NOTHROW(o.validate());
  o.mu0 = 0.0;
  CHECK_THROWS_AS(o.validate(), StructuralError);
  o = {};
  o.inner.delta = 1.5;
  CHECK_THROWS_AS(o.validate(), StructuralError);
}

TEST_CASE("tolerance schedule decays to its floor") {
  OrdConfig o;
  CHECK(o.tolerance_at(0) == doctest::Approx(0.1));
  CHECK(o.tolerance_at(1) == doctest::Approx(0.05));
  for (int k = 1; k < 20; ++k) CHECK(o.tolerance_at(k) <= o.tolerance_at(k - 1));
  CHECK(o.tolerance_at(50) == o.eps_min);
}

TEST_CASE("drop rule names round trip") {
  CHECK(drop_rule_from_string(to_string(DropRule::ZeroWeight)) == DropRule::ZeroWeight);
  CHECK(drop_rule_from_string(to_string(DropRule::GradientFiltered)) == DropRule::GradientFiltered);
  CHECK_THROWS(drop_rule_from_string("sometimes"));
}
