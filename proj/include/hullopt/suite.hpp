#pragma once

// Benchmark suite runner: builds problems from manifests, runs solvers under
// budget, and reads/writes trace and summary CSVs.

#include "hullopt/bench.hpp"
#include "hullopt/core.hpp"
#include "hullopt/profiles.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace hullopt::suite {

inline const char* const kOrd = "ord";
inline const char* const kDfSimplex = "dfsimplex";

struct SuiteConfig {
  std::vector<std::pair<int, int>> sizes;  // (n, m)
  std::vector<std::string> functions;      // empty selects the whole catalog
  std::vector<std::uint64_t> seeds{0};
  std::vector<std::string> solvers{kOrd, kDfSimplex};
  OrdConfig ord;
  DfSimplexConfig dfsimplex;
  std::string output_dir = "results";
  int jobs = 1;

  /// Every (function, n, m, seed) combination. Paired functions are skipped
  /// for odd n when the catalog is implied, and rejected when named.
  std::vector<bench::ProblemManifest> manifests() const;
  void validate() const;
};

SuiteConfig suite_from_json(const nlohmann::json& j);

struct RunResult {
  bench::ProblemManifest manifest;
  std::string solver;
  double final_f = 0.0;
  std::int64_t evals = 0;
  double sparsity = 0.0;
  double seconds = 0.0;
  std::vector<TraceEntry> trace;
  std::string error;  // non-empty when the run failed
};

RunResult run_one(const bench::ProblemInstance& problem, const std::string& solver, const OrdConfig& ord,
                  const DfSimplexConfig& dfsimplex);

/// Runs every manifest x solver; result order is manifest-major and does not
/// depend on the number of workers.
std::vector<RunResult> run_suite(const SuiteConfig& cfg);

std::string trace_file_name(const RunResult& r);
void write_trace_csv(std::ostream& out, const std::vector<TraceEntry>& trace);
void write_summary_csv(std::ostream& out, const std::vector<RunResult>& results);

/// One trace file per run plus summary.csv.
void write_outputs(const std::filesystem::path& dir, const std::vector<RunResult>& results);

std::vector<profiles::RunRecord> to_records(const std::vector<RunResult>& results);

/// Loads a directory written by write_outputs, or a long-format records CSV.
std::vector<profiles::RunRecord> load_records(const std::filesystem::path& input);

}  // namespace hullopt::suite
