#pragma once

#include <string>
#include <vector>

#include "spgmo/problem.hpp"
#include "spgmo/solver.hpp"

namespace spgmo {

/// One algorithm entry of a bench configuration: a named SolverConfig.
struct AlgoSpec {
  std::string name;  // pgmo | spgmo | spgmo-ls | apgmo | aspgmo | apgmo-sc | aspgmo-sc
  SolverConfig config;
};

/// Batched-experiment configuration: problems x algorithms, `runs` seeded
/// start points each, shared across algorithms when shared_starts is set.
struct BenchConfig {
  std::vector<ProblemDesc> problems;
  std::vector<AlgoSpec> algorithms;
  int runs = 1;
  std::uint64_t seed = 0;
  bool shared_starts = true;
  double tol = 1e-4;
  int max_iter = 500;
  int threads = 0;  // 0 = hardware concurrency
  bool verbose = false;
};

BenchConfig bench_config_from_json(const std::string& json_text);
AlgoSpec algo_spec_from_name(const std::string& name);

/// Aggregate of one (problem, algorithm) cell.  Means are over converged
/// runs only; a cell with no converged run renders as "--".
struct BenchRow {
  std::string problem;
  std::string algorithm;
  int runs = 0;
  int converged = 0;
  double mean_iter = 0.0;
  double mean_feval = 0.0;
  double mean_time_ms = 0.0;
  double success_rate = 0.0;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  /// per (problem, algorithm, run): iteration counts, -1 when not converged
  std::vector<std::vector<std::vector<int>>> run_iters;
};

/// Run the sweep.  Starts are sampled uniformly in each problem's box from
/// the config seed before dispatch, so results do not depend on scheduling;
/// aggregation is ordered by (problem, algorithm, run).
BenchResult run_bench(const BenchConfig& cfg);

std::string bench_rows_to_csv(const std::vector<BenchRow>& rows);
std::string bench_rows_to_markdown(const std::vector<BenchRow>& rows);
std::string bench_rows_to_json(const std::vector<BenchRow>& rows);

/// Final objective vectors per (algorithm, iteration budget, run) for
/// value-space scatter plots.  CSV columns: algo,kmax,run,F1..Fm.
struct FrontRow {
  std::string algorithm;
  int kmax = 0;
  int run = 0;
  Vector F;
};

std::vector<FrontRow> run_front(const ProblemInstance& p,
                                const std::vector<AlgoSpec>& algos,
                                const std::vector<int>& kmax_list, int runs,
                                std::uint64_t seed, double tol, int threads = 0);

std::string front_rows_to_csv(const std::vector<FrontRow>& rows, Index m);

/// Seeded uniform starts in the sampling box (run-major layout).
std::vector<Vector> sample_starts(const ProblemInstance& p, int runs,
                                  std::uint64_t seed);

}  // namespace spgmo
