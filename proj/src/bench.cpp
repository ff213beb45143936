#include "hullopt/bench.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace hullopt::bench {
namespace {

using Value = std::function<double(const Vector&)>;
using Gradient = std::function<Vector(const Vector&)>;

struct Entry {
  const char* name;
  bool paired;
  int min_n;
  Value (*value)(int n);
  Gradient (*gradient)(int n);
};

double sq(double v) { return v * v; }

// Functions of consecutive pairs (u, v) = (x_{2i-1}, x_{2i}), summed.
template <typename F>
Value paired_value(F term) {
  return [term](const Vector& x) {
    double s = 0.0;
    for (Eigen::Index k = 0; k + 1 < x.size(); k += 2) s += term(x[k], x[k + 1]);
    return s;
  };
}

template <typename G>
Gradient paired_gradient(G term) {
  return [term](const Vector& x) {
    Vector g = Vector::Zero(x.size());
    for (Eigen::Index k = 0; k + 1 < x.size(); k += 2) {
      const auto [du, dv] = term(x[k], x[k + 1]);
      g[k] = du;
      g[k + 1] = dv;
    }
    return g;
  };
}

struct Pair {
  double du;
  double dv;
};

// Formulas follow Andrei's unconstrained test collection and CUTEst. Indices
// in the comments are 1-based as in those sources.
const Entry kEntries[] = {
    // sum_{i<n} (-4 x_i + 3) + (x_i^2 + x_n^2)^2
    {"arwhead", false, 2,
     [](int) -> Value {
       return [](const Vector& x) {
         const auto n = x.size();
         double s = 0.0;
         for (Eigen::Index i = 0; i + 1 < n; ++i) s += -4.0 * x[i] + 3.0 + sq(sq(x[i]) + sq(x[n - 1]));
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         const auto n = x.size();
         Vector g = Vector::Zero(n);
         for (Eigen::Index i = 0; i + 1 < n; ++i) {
           const double t = sq(x[i]) + sq(x[n - 1]);
           g[i] += -4.0 + 4.0 * t * x[i];
           g[n - 1] += 4.0 * t * x[n - 1];
         }
         return g;
       };
     }},
    // sum_{i<n} cos(-0.5 x_{i+1} + x_i^2)
    {"cosine", false, 2,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) s += std::cos(-0.5 * x[i + 1] + sq(x[i]));
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g = Vector::Zero(x.size());
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
           const double d = -std::sin(-0.5 * x[i + 1] + sq(x[i]));
           g[i] += d * 2.0 * x[i];
           g[i + 1] += d * -0.5;
         }
         return g;
       };
     }},
    // (x_1 - 1)^2 + sum_{i>1} 100 (x_i - x_{i-1}^3)^2
    {"cube", false, 1,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = sq(x[0] - 1.0);
         for (Eigen::Index i = 1; i < x.size(); ++i) s += 100.0 * sq(x[i] - x[i - 1] * x[i - 1] * x[i - 1]);
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g = Vector::Zero(x.size());
         g[0] = 2.0 * (x[0] - 1.0);
         for (Eigen::Index i = 1; i < x.size(); ++i) {
           const double r = x[i] - x[i - 1] * x[i - 1] * x[i - 1];
           g[i] += 200.0 * r;
           g[i - 1] += -600.0 * r * sq(x[i - 1]);
         }
         return g;
       };
     }},
    // sum x_i exp(x_i) - 2 x_i - x_i^2
    {"diagonal8", false, 1,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i < x.size(); ++i) s += x[i] * std::exp(x[i]) - 2.0 * x[i] - sq(x[i]);
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g(x.size());
         for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = std::exp(x[i]) * (1.0 + x[i]) - 2.0 - 2.0 * x[i];
         return g;
       };
     }},
    // (1.5 - u(1-v))^2 + (2.25 - u(1-v^2))^2 + (2.625 - u(1-v^3))^2
    {"ext_beale", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) {
         return sq(1.5 - u * (1.0 - v)) + sq(2.25 - u * (1.0 - v * v)) + sq(2.625 - u * (1.0 - v * v * v));
       });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double t1 = 1.5 - u * (1.0 - v);
         const double t2 = 2.25 - u * (1.0 - v * v);
         const double t3 = 2.625 - u * (1.0 - v * v * v);
         return Pair{-2.0 * (t1 * (1.0 - v) + t2 * (1.0 - v * v) + t3 * (1.0 - v * v * v)),
                     2.0 * (t1 * u + t2 * 2.0 * u * v + t3 * 3.0 * u * v * v)};
       });
     }},
    // ((u - 3)/100)^2 - (u - v) + exp(20 (u - v))
    {"ext_cliff", true, 2,
     [](int) -> Value {
       return paired_value(
           [](double u, double v) { return sq((u - 3.0) / 100.0) - (u - v) + std::exp(20.0 * (u - v)); });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double e = 20.0 * std::exp(20.0 * (u - v));
         return Pair{2.0 * (u - 3.0) / 1e4 - 1.0 + e, 1.0 - e};
       });
     }},
    // (u - 2)^2 + (u - 2)^2 v^2 + (v + 1)^2
    {"ext_denschnb", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) { return sq(u - 2.0) * (1.0 + v * v) + sq(v + 1.0); });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         return Pair{2.0 * (u - 2.0) * (1.0 + v * v), 2.0 * sq(u - 2.0) * v + 2.0 * (v + 1.0)};
       });
     }},
    // (2(u + v)^2 + (u - v)^2 - 8)^2 + (5u^2 + (v - 3)^2 - 9)^2
    {"ext_denschnf", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) {
         return sq(2.0 * sq(u + v) + sq(u - v) - 8.0) + sq(5.0 * u * u + sq(v - 3.0) - 9.0);
       });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double a = 2.0 * sq(u + v) + sq(u - v) - 8.0;
         const double b = 5.0 * u * u + sq(v - 3.0) - 9.0;
         return Pair{2.0 * a * (4.0 * (u + v) + 2.0 * (u - v)) + 2.0 * b * 10.0 * u,
                     2.0 * a * (4.0 * (u + v) - 2.0 * (u - v)) + 2.0 * b * 2.0 * (v - 3.0)};
       });
     }},
    // (-13 + u + ((5 - v) v - 2) v)^2 + (-29 + u + ((1 + v) v - 14) v)^2
    {"ext_freudenstein_roth", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) {
         return sq(-13.0 + u + ((5.0 - v) * v - 2.0) * v) + sq(-29.0 + u + ((1.0 + v) * v - 14.0) * v);
       });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double a = -13.0 + u + ((5.0 - v) * v - 2.0) * v;
         const double b = -29.0 + u + ((1.0 + v) * v - 14.0) * v;
         return Pair{2.0 * (a + b), 2.0 * a * (10.0 * v - 3.0 * v * v - 2.0) + 2.0 * b * (3.0 * v * v + 2.0 * v - 14.0)};
       });
     }},
    // (u - 10)^2 + (u v - 50000)^2
    {"ext_hiebert", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) { return sq(u - 10.0) + sq(u * v - 50000.0); });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double r = u * v - 50000.0;
         return Pair{2.0 * (u - 10.0) + 2.0 * r * v, 2.0 * r * u};
       });
     }},
    // (u^2 + v - 11)^2 + (u + v^2 - 7)^2
    {"ext_himmelblau", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) { return sq(u * u + v - 11.0) + sq(u + v * v - 7.0); });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double a = u * u + v - 11.0;
         const double b = u + v * v - 7.0;
         return Pair{4.0 * a * u + 2.0 * b, 2.0 * a + 4.0 * b * v};
       });
     }},
    // u + 100 (u^2 + v^2 - 1)^2
    {"ext_maratos", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) { return u + 100.0 * sq(u * u + v * v - 1.0); });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double t = u * u + v * v - 1.0;
         return Pair{1.0 + 400.0 * t * u, 400.0 * t * v};
       });
     }},
    // sum_{i<n} (x_i - 1)^2 + (sum_j x_j^2 - 0.25)^2
    {"ext_penalty", false, 1,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) s += sq(x[i] - 1.0);
         return s + sq(x.squaredNorm() - 0.25);
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         const double t = x.squaredNorm() - 0.25;
         Vector g = 4.0 * t * x;
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) g[i] += 2.0 * (x[i] - 1.0);
         return g;
       };
     }},
    // (u^2 + v^2 + u v)^2 + sin^2(u) + cos^2(v)
    {"ext_psc1", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) {
         return sq(u * u + v * v + u * v) + sq(std::sin(u)) + sq(std::cos(v));
       });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double a = u * u + v * v + u * v;
         return Pair{2.0 * a * (2.0 * u + v) + std::sin(2.0 * u), 2.0 * a * (2.0 * v + u) - std::sin(2.0 * v)};
       });
     }},
    // 100 (v - u^2)^2 + (1 - u)^2
    {"ext_rosenbrock", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) { return 100.0 * sq(v - u * u) + sq(1.0 - u); });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double r = v - u * u;
         return Pair{-400.0 * u * r - 2.0 * (1.0 - u), 200.0 * r};
       });
     }},
    // sum_i ((n - sum_j cos x_j) + i (1 - cos x_i) - sin x_i)^2
    {"ext_trigonometric", false, 1,
     [](int) -> Value {
       return [](const Vector& x) {
         const auto n = x.size();
         const double c = static_cast<double>(n) - x.array().cos().sum();
         double s = 0.0;
         for (Eigen::Index i = 0; i < n; ++i) {
           s += sq(c + static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]));
         }
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         const auto n = x.size();
         const double c = static_cast<double>(n) - x.array().cos().sum();
         Vector r(n);
         for (Eigen::Index i = 0; i < n; ++i) {
           r[i] = c + static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
         }
         const double total = r.sum();
         Vector g(n);
         for (Eigen::Index k = 0; k < n; ++k) {
           g[k] = 2.0 * total * std::sin(x[k]) +
                  2.0 * r[k] * (static_cast<double>(k + 1) * std::sin(x[k]) - std::cos(x[k]));
         }
         return g;
       };
     }},
    // 100 (v - u^3)^2 + (1 - u)^2
    {"ext_white_holst", true, 2,
     [](int) -> Value {
       return paired_value([](double u, double v) { return 100.0 * sq(v - u * u * u) + sq(1.0 - u); });
     },
     [](int) -> Gradient {
       return paired_gradient([](double u, double v) {
         const double r = v - u * u * u;
         return Pair{-600.0 * u * u * r - 2.0 * (1.0 - u), 200.0 * r};
       });
     }},
    // sum_{i<n} 100 (x_{i+1} - x_i + 1 - x_i^2)^2
    {"fletchcr", false, 2,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) s += 100.0 * sq(x[i + 1] - x[i] + 1.0 - sq(x[i]));
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g = Vector::Zero(x.size());
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
           const double r = x[i + 1] - x[i] + 1.0 - sq(x[i]);
           g[i + 1] += 200.0 * r;
           g[i] += 200.0 * r * (-1.0 - 2.0 * x[i]);
         }
         return g;
       };
     }},
    // sum_{i<n} sin^2(2 x_i) sin^2(2 x_{i+1}) + 0.05 (x_i^2 + x_{i+1}^2)
    {"genhumps", false, 2,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
           s += sq(std::sin(2.0 * x[i])) * sq(std::sin(2.0 * x[i + 1])) + 0.05 * (sq(x[i]) + sq(x[i + 1]));
         }
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g = Vector::Zero(x.size());
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
           const double a = sq(std::sin(2.0 * x[i]));
           const double b = sq(std::sin(2.0 * x[i + 1]));
           g[i] += 2.0 * std::sin(4.0 * x[i]) * b + 0.1 * x[i];
           g[i + 1] += 2.0 * std::sin(4.0 * x[i + 1]) * a + 0.1 * x[i + 1];
         }
         return g;
       };
     }},
    // sum_{i<n} -1.5 x_i + 2.5 x_{i+1} + 1 + (x_i - x_{i+1})^2 + sin(x_i + x_{i+1})
    {"mccormk", false, 2,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
           s += -1.5 * x[i] + 2.5 * x[i + 1] + 1.0 + sq(x[i] - x[i + 1]) + std::sin(x[i] + x[i + 1]);
         }
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g = Vector::Zero(x.size());
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
           const double d = 2.0 * (x[i] - x[i + 1]);
           const double c = std::cos(x[i] + x[i + 1]);
           g[i] += -1.5 + d + c;
           g[i + 1] += 2.5 - d + c;
         }
         return g;
       };
     }},
    // sum (i x_i)^2
    {"power", false, 1,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i < x.size(); ++i) s += sq(static_cast<double>(i + 1) * x[i]);
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g(x.size());
         for (Eigen::Index i = 0; i < x.size(); ++i) g[i] = 2.0 * sq(static_cast<double>(i + 1)) * x[i];
         return g;
       };
     }},
    // sum (x_i - 1)^4
    {"quartc", false, 1,
     [](int) -> Value {
       return [](const Vector& x) { return (x.array() - 1.0).pow(4).sum(); };
     },
     [](int) -> Gradient {
       return [](const Vector& x) -> Vector { return 4.0 * (x.array() - 1.0).cube(); };
     }},
    // sum sin(x_i)
    {"sine", false, 1,
     [](int) -> Value {
       return [](const Vector& x) { return x.array().sin().sum(); };
     },
     [](int) -> Gradient {
       return [](const Vector& x) -> Vector { return x.array().cos(); };
     }},
    // sum_{i=1}^{n-1} (x_i + x_{i+1} - i)^2
    {"staircase1", false, 2,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) s += sq(x[i] + x[i + 1] - static_cast<double>(i + 1));
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g = Vector::Zero(x.size());
         for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
           const double r = 2.0 * (x[i] + x[i + 1] - static_cast<double>(i + 1));
           g[i] += r;
           g[i + 1] += r;
         }
         return g;
       };
     }},
    // sum_{i=2}^{n} (x_{i-1} + x_i - i)^2
    {"staircase2", false, 2,
     [](int) -> Value {
       return [](const Vector& x) {
         double s = 0.0;
         for (Eigen::Index i = 1; i < x.size(); ++i) s += sq(x[i - 1] + x[i] - static_cast<double>(i + 1));
         return s;
       };
     },
     [](int) -> Gradient {
       return [](const Vector& x) {
         Vector g = Vector::Zero(x.size());
         for (Eigen::Index i = 1; i < x.size(); ++i) {
           const double r = 2.0 * (x[i - 1] + x[i] - static_cast<double>(i + 1));
           g[i - 1] += r;
           g[i] += r;
         }
         return g;
       };
     }},
};

const Entry& find_entry(const std::string& name) {
  for (const auto& e : kEntries) {
    if (name == e.name) return e;
  }
  throw std::invalid_argument("unknown test function: " + name);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

const std::vector<std::string>& catalog() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& e : kEntries) out.emplace_back(e.name);
    return out;
  }();
  return names;
}

bool requires_even_n(const std::string& name) { return find_entry(name).paired; }

TestFunction make_test_function(const std::string& name, int n) {
  const Entry& e = find_entry(name);
  if (n < e.min_n) throw std::invalid_argument(name + " needs n >= " + std::to_string(e.min_n));
  if (e.paired && n % 2 != 0) throw std::invalid_argument(name + " needs an even dimension");
  TestFunction f;
  f.name = e.name;
  f.n = n;
  Value value = e.value(n);
  f.value = [value, n](const Vector& x) {
    if (x.size() != n) throw StructuralError("test function evaluated at a point of the wrong dimension");
    return value(x);
  };
  f.gradient = e.gradient(n);
  return f;
}

AtomSet generate_uniform_atoms(int n, int m, double lo, double hi, std::uint64_t seed) {
  if (n < 1 || m < 1) throw StructuralError("need n >= 1 and m >= 1");
  if (!(lo < hi)) throw StructuralError("need lo < hi");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(lo, hi);
  Matrix a(n, m);
  for (int j = 0; j < m; ++j) {
    for (int r = 0; r < n; ++r) a(r, j) = coord(rng);
  }
  return AtomSet(std::move(a));
}

AtomSet generate_uniform_atoms(int n, int m, std::uint64_t seed) { return generate_uniform_atoms(n, m, 0.0, 10.0, seed); }

AtomSet l1_ball_atoms(int n, double radius) {
  if (n < 1) throw StructuralError("need n >= 1");
  if (!(radius > 0.0)) throw StructuralError("radius must be positive");
  Matrix a = Matrix::Zero(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    a(i, 2 * i) = radius;
    a(i, 2 * i + 1) = -radius;
  }
  return AtomSet(std::move(a));
}

AtomId random_vertex_start(int m, std::uint64_t seed) {
  if (m < 1) throw StructuralError("need m >= 1");
  std::mt19937_64 rng(splitmix64(seed));
  std::uniform_int_distribution<int> pick(0, m - 1);
  return pick(rng);
}

std::string ProblemManifest::id() const {
  return function + "_n" + std::to_string(n) + "_m" + std::to_string(m) + "_s" + std::to_string(seed);
}

void to_json(nlohmann::json& j, const ProblemManifest& p) {
  j = nlohmann::json{{"function", p.function}, {"n", p.n}, {"m", p.m}, {"seed", p.seed},
                     {"budget", p.effective_budget()}};
}

void from_json(const nlohmann::json& j, ProblemManifest& p) {
  j.at("function").get_to(p.function);
  j.at("n").get_to(p.n);
  j.at("m").get_to(p.m);
  p.seed = j.value("seed", std::uint64_t{0});
  p.budget = j.value("budget", std::int64_t{0});
}

ProblemInstance make_problem(const ProblemManifest& manifest) {
  ProblemInstance p;
  p.manifest = manifest;
  p.function = make_test_function(manifest.function, manifest.n);
  p.atoms = generate_uniform_atoms(manifest.n, manifest.m, manifest.seed);
  p.start = random_vertex_start(manifest.m, manifest.seed);
  return p;
}

Vector central_difference(const std::function<double(const Vector&)>& f, const Vector& x, double h) {
  Vector g(x.size());
  Vector probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double step = h * std::max(1.0, std::abs(x[i]));
    probe[i] = x[i] + step;
    const double up = f(probe);
    probe[i] = x[i] - step;
    const double down = f(probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

}  // namespace hullopt::bench
