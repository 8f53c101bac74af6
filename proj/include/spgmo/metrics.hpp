#pragma once

#include <vector>

#include "spgmo/problem.hpp"
#include "spgmo/solver.hpp"
#include "spgmo/subproblem.hpp"

namespace spgmo {

/// Merit w_ell^alpha(x): the negative optimal value of the direction
/// subproblem at x.  Nonnegative, and zero exactly at Pareto critical points.
double merit_w(const ProblemInstance& p, const Vector& x, const Vector& alpha,
               double ell, const SubproblemSettings& settings = {});

/// sigma^L-style scaled gap: min_i (F_i(x) - F_i(z)) / L_i.  A lower bound
/// of the merit u_0^L(x) for every fixed z.
double scaled_gap(const ProblemInstance& p, const Vector& x, const Vector& z,
                  const Vector& L);
double scaled_gap(const ProblemInstance& p, const Vector& x, const Vector& z);

enum class Momentum { kConvex, kStronglyConvex };

/// Momentum-corrected squared distance
///   rho_k(z) = || x_next/theta - (1-theta)/theta x - z ||^2.
double momentum_rho(const Vector& x_next, const Vector& x, double theta,
                    const Vector& z);

/// Lyapunov value E_k(z) for an accelerated run.  k = 0 uses rho_{-1} with
/// x^{-1} = x^0; k >= 1 uses the stored points (x^k, x^{k-1}) and theta_{k-1}.
/// Convex:           E_k = sigma_k(z)/theta_{k-1}^2 + rho_{k-1}(z)/2
/// Strongly convex:  E_k = (1 - sqrt(mu))^{-k} (sigma_k(z) + mu/2 rho_{k-1}(z))
double lyapunov(const std::vector<Vector>& points, const ProblemInstance& p,
                int k, const Vector& z, Momentum mode, double mu_hat);

/// Per-step inequality equivalent to E_{k+1} <= E_k with the exploding
/// (1-sqrt(mu))^{-k} prefactor divided out:
///   sigma_{k+1} + mu/2 rho_k <= (1 - sqrt(mu)) (sigma_k + mu/2 rho_{k-1}).
/// Returns (lhs, rhs) for k >= 0.
std::pair<double, double> lyapunov_sc_step(const std::vector<Vector>& points,
                                           const ProblemInstance& p, int k,
                                           const Vector& z, double mu_hat);

struct RateDiagnostics {
  std::vector<double> ratios;   // ||x^{k+1} - x*|| / ||x^k - x*||
  double fitted_rate = 0.0;     // exp of the least-squares log-distance slope
  double spgmo_bound = 0.0;     // sqrt(1 - min_i mu_i/L_i), if recorded
  double pgmo_bound = 0.0;      // sqrt(1 - mu_min/L_max), if recorded
  bool bounds_available = false;
};

/// Contraction diagnostics of an iterate sequence against a reference point.
/// Entries whose denominator falls below 1e-14 are excluded; fewer than
/// three usable points raise InsufficientDataError.
RateDiagnostics contraction_ratios(const std::vector<Vector>& points,
                                   const Vector& x_star,
                                   const ProblemInstance* p = nullptr);

/// Computable over-estimate of the level-set diameter on strongly convex
/// instances with quadratic objectives:
///   2 max_i sqrt(2 (f_i(x0) + g(x0) - min f_i) / mu_i).
/// The g(x0) term keeps it an over-estimate when g is not identically zero.
double level_set_radius_bound(const ProblemInstance& p, const Vector& x0);

}  // namespace spgmo
