#pragma once

#include <optional>

#include "spgmo/problem.hpp"
#include "spgmo/subproblem.hpp"
#include "spgmo/types.hpp"

namespace spgmo {

/// Rule producing the per-objective scaling vector alpha^k each iteration.
///   Constant(ell)     alpha_i = ell (recovers the unscaled method)
///   KnownL / KnownMu  recorded smoothness constants
///   BarzilaiBorwein   <s, y_i> / <s, s> clamped to [lo, hi]
///   PerClass          linear objectives get a tiny alpha, others the base rule
struct ScalingStrategy {
  enum class Kind { kConstant, kKnownL, kKnownMu, kBarzilaiBorwein, kPerClass };

  Kind kind = Kind::kKnownL;
  double ell = 1.0;                 // Constant
  double bb_lo = 1e-8, bb_hi = 1e12, bb_init = 1.0;
  double linear_alpha = 1e-6;       // PerClass
  Kind per_class_base = Kind::kKnownL;

  static ScalingStrategy constant(double ell);
  static ScalingStrategy known_l();
  static ScalingStrategy known_mu();
  static ScalingStrategy barzilai_borwein(double lo = 1e-8, double hi = 1e12,
                                          double init = 1.0);
  static ScalingStrategy per_class(double linear_alpha,
                                   Kind base = Kind::kKnownL);
};

struct LineSearchParams {
  double sigma = 1e-4;   // sufficient-decrease fraction, in (0, 1)
  double t_init = 1.0;
  double halving = 0.5;
  int max_halvings = 60;
};

struct ArmijoResult {
  double t = 1.0;
  int trials = 0;   // full-vector F evaluations
  Vector F_accepted;  // F(x + t d), reusable by the caller
};

/// Largest t in {1, 1/2, 1/4, ...} with
///   F_i(x + t d) - F_i(x) <= t sigma D_i for every i,
/// where D_i = <grad f_i(x), d> + g(x+d) - g(x) are the certified decreases.
ArmijoResult armijo(const ProblemInstance& p, const Vector& x, const Vector& d,
                    const Vector& decrease, const LineSearchParams& params);

/// Same, reusing a precomputed F(x); trials counts only trial evaluations.
ArmijoResult armijo_from(const ProblemInstance& p, const Vector& x,
                         const Vector& Fx, const Vector& d,
                         const Vector& decrease,
                         const LineSearchParams& params);

struct BacktrackResult {
  Vector x_next;
  Vector alpha;
  int rounds = 0;
  DirectionSolution last;
};

/// Smoothness estimation: solve the scaled subproblem at the current alpha,
/// then multiply alpha_i by tau for every objective violating the descent
/// inequality f_i(x+) - f_i(x) <= <grad f_i(x), x+ - x> + alpha_i/2 ||x+ - x||^2.
/// The accepted alpha_i stays below tau * L_i when f_i is L_i-smooth.
BacktrackResult backtrack_smoothness(const ProblemInstance& p, const Vector& x,
                                     const Vector& alpha0, double tau,
                                     const SubproblemSettings& settings = {});

/// BB1 curvature estimates: alpha_i = clamp(<s, y_i>/<s, s>, lo, hi) with
/// s = x - x_prev and y_i the gradient difference; fallback_i when
/// <s, y_i> <= 0 (e.g. linear objectives).
Vector bb_scaling(const Vector& x_prev, const Matrix& J_prev, const Vector& x,
                  const Matrix& J, double alpha_lo, double alpha_hi,
                  const Vector& fallback);

/// Iteration state the strategies may consume.
struct ScalingState {
  int k = 0;
  const Vector* x = nullptr;
  const Matrix* J = nullptr;
  const Vector* x_prev = nullptr;
  const Matrix* J_prev = nullptr;
  const Vector* alpha_prev = nullptr;
};

Vector resolve_scaling(const ScalingStrategy& strategy,
                       const ProblemInstance& p, const ScalingState& state);

}  // namespace spgmo
