#pragma once

#include <optional>
#include <string>
#include <vector>

#include "spgmo/problem.hpp"
#include "spgmo/stepsize.hpp"
#include "spgmo/subproblem.hpp"

namespace spgmo {

enum class Algorithm {
  kPGMO,       // alpha = (L_max, ..., L_max), unit steps
  kSPGMO,      // alpha from the scaling strategy (default recorded L), unit steps
  kSPGMO_LS,   // alpha from the scaling strategy, Armijo steps
  kAPGMO,      // accelerated, alpha = L_max, convex momentum schedule
  kASPGMO,     // accelerated, alpha = L, convex momentum schedule
  kAPGMO_SC,   // accelerated, alpha = L_max, theta = sqrt(mu_min / L_max)
  kASPGMO_SC,  // accelerated, alpha = L, theta = sqrt(min_i mu_i / L_i)
};

const char* algorithm_name(Algorithm a);
std::optional<Algorithm> algorithm_from_name(const std::string& name);
bool is_accelerated(Algorithm a);

struct SolverConfig {
  Algorithm algorithm = Algorithm::kSPGMO;
  ScalingStrategy scaling = ScalingStrategy::known_l();
  std::optional<LineSearchParams> line_search;  // SPGMO_LS; defaulted if unset
  double tol = 1e-4;
  int max_iter = 500;
  std::optional<double> mu_hat_override;  // _SC schedules
  SubproblemSettings subproblem;
  bool store_points = true;
  bool store_trace = true;  // off: keep only counters and the final state
};

struct IterationRecord {
  int k = 0;
  Vector x;        // iterate the subproblem was solved at (empty if not stored)
  Vector F;        // F(x^k)
  double residual = 0.0;  // ||d^k|| plain, ||x^{k+1} - y^k|| accelerated
  double t = 1.0;         // accepted stepsize (0 on the certifying record)
  Vector alpha;
  Vector lambda;
  std::optional<double> gamma;  // accelerated momentum
  double gap = 0.0;             // certified subproblem gap
  long fevals = 0;              // cumulative at the end of this iteration
};

enum class SolveStatus { kConverged, kMaxIterations, kError };

struct SolveReport {
  SolveStatus status = SolveStatus::kMaxIterations;
  std::string error;  // set when status == kError
  int iterations = 0;  // subproblem solves; == trace.size() when traced
  long fevals = 0;     // full-vector f/F evaluations
  long gevals = 0;     // Jacobian evaluations
  double wall_time_ms = 0.0;
  Vector final_x;
  Vector final_F;
  double final_residual = 0.0;
  std::vector<IterationRecord> trace;

  bool converged() const { return status == SolveStatus::kConverged; }
  /// x^0 ... x^K as stored in the trace plus the final point when it was
  /// produced by a step that has no own record.
  std::vector<Vector> points() const;
};

const char* status_name(SolveStatus s);

/// Momentum coefficient gamma_k = (theta_k - mu)(1 - theta_prev) / ((1 - mu) theta_prev).
/// With theta_k = 2/(k+2), mu = 0 it equals (k-1)/(k+2); with
/// theta = sqrt(mu) it equals (1 - sqrt(mu))/(1 + sqrt(mu)).
double momentum_gamma(double theta_k, double theta_prev, double mu_hat);

/// Run the configured method from x0.  Subproblem and line-search failures
/// are reported via status kError with the partial trace attached; invalid
/// inputs and configurations throw.
SolveReport run(const ProblemInstance& p, const SolverConfig& cfg,
                const Vector& x0);

}  // namespace spgmo
