#pragma once

// Test-function catalog and problem generators for the benchmark harness.

#include "hullopt/core.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace hullopt::bench {

struct TestFunction {
  std::string name;
  int n = 0;
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
};

/// The 25 catalog names, in catalog order.
const std::vector<std::string>& catalog();

/// Whether the function is built from (x_{2i-1}, x_{2i}) pairs and needs even n.
bool requires_even_n(const std::string& name);

/// Valid (name, n) combinations only; throws std::invalid_argument otherwise.
TestFunction make_test_function(const std::string& name, int n);

AtomSet generate_uniform_atoms(int n, int m, double lo, double hi, std::uint64_t seed);
AtomSet generate_uniform_atoms(int n, int m, std::uint64_t seed);

/// {+-radius e_i}; their hull is the l1 ball of that radius.
AtomSet l1_ball_atoms(int n, double radius);

AtomId random_vertex_start(int m, std::uint64_t seed);

/// Unit of reproducibility: everything a run depends on.
struct ProblemManifest {
  std::string function;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
  std::int64_t budget = 0;  // 0 selects the default 100 (n + 1)

  std::int64_t effective_budget() const { return budget > 0 ? budget : 100 * (n + 1); }
  std::string id() const;
};

void to_json(nlohmann::json& j, const ProblemManifest& p);
void from_json(const nlohmann::json& j, ProblemManifest& p);

struct ProblemInstance {
  ProblemManifest manifest;
  TestFunction function;
  AtomSet atoms;
  AtomId start = 0;
};

ProblemInstance make_problem(const ProblemManifest& manifest);

/// Central-difference gradient with step h * max(1, |x_i|).
Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x, double h = 1e-6);

}  // namespace hullopt::bench
