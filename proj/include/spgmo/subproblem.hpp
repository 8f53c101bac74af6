#pragma once

#include <optional>

#include "spgmo/errors.hpp"
#include "spgmo/nonsmooth.hpp"
#include "spgmo/types.hpp"

namespace spgmo {

/// Solution of a direction-finding subproblem.
///
/// Plain form (point x, scaling alpha, regularization ell):
///   min_d  max_i [<grad f_i(x), d> + g(x+d) - g(x)] / alpha_i + (ell/2) ||d||^2
/// Accelerated form (point y, offsets c_i, scaling L):
///   min_x  max_i [<grad f_i(y), x-y> + g(x) + c_i] / L_i + 1/2 ||x-y||^2
struct DirectionSolution {
  Vector d;         // direction; x_next - y for the accelerated form
  Vector x_next;    // base point + d
  Vector lambda;    // dual simplex weights
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;  // primal_value - dual_value, certified >= 0
  int inner_iters = 0;
};

struct SubproblemSettings {
  /// Absolute duality-gap target; 0 selects the default
  /// 1e-10 * max(1, max_i ||grad f_i / alpha_i||^2).
  double gap_tol = 0.0;
  int max_inner = 10000;
  /// kExact: closed-form step on quadratic duals (g = Zero), derivative
  /// bisection otherwise (the dual is differentiable since the inner prox
  /// minimizer is unique).  kClassic: open-loop 2/(t+2) steps.
  enum class StepRule { kExact, kClassic };
  StepRule step_rule = StepRule::kExact;
};

/// Inner solve exhausted max_inner with gap > 1e3 * tolerance; carries the
/// best iterate found.
class NonCertifiedError : public std::runtime_error {
 public:
  NonCertifiedError(const std::string& what, DirectionSolution best)
      : std::runtime_error(what), best(std::move(best)) {}
  DirectionSolution best;
};

/// Everything a dual evaluation needs.  For the plain form, offsets is empty
/// and ell > 0; the accelerated form has ell = 1 and per-objective constants.
struct DualContext {
  const Vector& base;       // x (plain) or y (accelerated)
  const Matrix& jacobian;   // m x n, rows grad f_i at base
  const NonsmoothSpec& g;
  const Vector& alpha;      // alpha (plain) or L (accelerated)
  double ell = 1.0;
  std::optional<Vector> offsets;  // accelerated: c_i = f_i(y) - F_i(x^k)
  double g_at_base = 0.0;         // g(x), plain form only
};

struct DualProbe {
  double q = 0.0;       // dual value at lambda
  Vector supergradient; // per-objective bracket values at the inner minimizer
  Vector d;             // inner minimizer (as a direction from base)
};

/// Danskin-style evaluation of the concave dual at lambda: the inner
/// minimizer through one prox, its value, and the supergradient.
DualProbe dual_probe(const DualContext& ctx, const Vector& lambda);

/// Maximize the dual over the unit simplex with Frank-Wolfe and recover the
/// primal direction.  The linearized Frank-Wolfe gap equals the primal-dual
/// gap of the recovered pair, so the stopping test certifies optimality.
DirectionSolution solve_direction(const Vector& x, const Matrix& J,
                                  const NonsmoothSpec& g, const Vector& alpha,
                                  double ell,
                                  const SubproblemSettings& settings = {});

/// Accelerated variant; returns x_next = x(lambda*) and d = x_next - y.
DirectionSolution solve_accelerated(const Vector& y, const Matrix& J_at_y,
                                    const Vector& offsets,
                                    const NonsmoothSpec& g, const Vector& L,
                                    const SubproblemSettings& settings = {});

}  // namespace spgmo
