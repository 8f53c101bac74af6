#include "spgmo/metrics.hpp"

#include <cmath>

#include "spgmo/errors.hpp"

namespace spgmo {

double merit_w(const ProblemInstance& p, const Vector& x, const Vector& alpha,
               double ell, const SubproblemSettings& settings) {
  DirectionSolution sol =
      solve_direction(x, p.jacobian(x), p.g, alpha, ell, settings);
  return -sol.primal_value;
}

double scaled_gap(const ProblemInstance& p, const Vector& x, const Vector& z,
                  const Vector& L) {
  const Vector Fx = p.F(x);
  const Vector Fz = p.F(z);
  double out = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < p.m; ++i) {
    if (!(L[i] > 0.0)) throw InvalidInputError("scaled_gap: L_i must be > 0");
    out = std::min(out, (Fx[i] - Fz[i]) / L[i]);
  }
  return out;
}

double scaled_gap(const ProblemInstance& p, const Vector& x, const Vector& z) {
  if (!p.smoothness) throw ConfigError("scaled_gap: smoothness not recorded");
  return scaled_gap(p, x, z, p.smoothness->L);
}

double momentum_rho(const Vector& x_next, const Vector& x, double theta,
                    const Vector& z) {
  if (!(theta > 0.0)) throw InvalidInputError("momentum_rho: theta must be > 0");
  Vector u = x_next / theta - ((1.0 - theta) / theta) * x - z;
  return u.squaredNorm();
}

namespace {

double theta_of(Momentum mode, double mu_hat, int k) {
  // k = -1 is the schedule seed: 2 for the convex closed form, sqrt(mu) else.
  if (mode == Momentum::kStronglyConvex) {
    if (!(mu_hat > 0.0 && mu_hat <= 1.0)) {
      throw InvalidInputError("lyapunov: strongly convex mode needs mu_hat in (0,1]");
    }
    return std::sqrt(mu_hat);
  }
  return 2.0 / static_cast<double>(k + 2);
}

}  // namespace

double lyapunov(const std::vector<Vector>& points, const ProblemInstance& p,
                int k, const Vector& z, Momentum mode, double mu_hat) {
  if (k < 0 || static_cast<size_t>(k) >= points.size()) {
    throw InvalidInputError("lyapunov: index out of range");
  }
  const double theta = theta_of(mode, mu_hat, k - 1);
  const Vector& xk = points[static_cast<size_t>(k)];
  const Vector& xk_prev = k == 0 ? points[0] : points[static_cast<size_t>(k - 1)];
  const double rho = momentum_rho(xk, xk_prev, theta, z);
  const double sigma = scaled_gap(p, xk, z);
  if (mode == Momentum::kConvex) {
    return sigma / (theta * theta) + 0.5 * rho;
  }
  const double r = 1.0 - std::sqrt(mu_hat);
  return std::pow(r, -k) * (sigma + 0.5 * mu_hat * rho);
}

std::pair<double, double> lyapunov_sc_step(const std::vector<Vector>& points,
                                           const ProblemInstance& p, int k,
                                           const Vector& z, double mu_hat) {
  if (k < 0 || static_cast<size_t>(k + 1) >= points.size()) {
    throw InvalidInputError("lyapunov_sc_step: index out of range");
  }
  const double theta = std::sqrt(mu_hat);
  const auto& xk1 = points[static_cast<size_t>(k + 1)];
  const auto& xk = points[static_cast<size_t>(k)];
  const auto& xkm = k == 0 ? points[0] : points[static_cast<size_t>(k - 1)];
  const double lhs =
      scaled_gap(p, xk1, z) + 0.5 * mu_hat * momentum_rho(xk1, xk, theta, z);
  const double rhs =
      (1.0 - theta) *
      (scaled_gap(p, xk, z) + 0.5 * mu_hat * momentum_rho(xk, xkm, theta, z));
  return {lhs, rhs};
}

RateDiagnostics contraction_ratios(const std::vector<Vector>& points,
                                   const Vector& x_star,
                                   const ProblemInstance* p) {
  constexpr double kCutoff = 1e-14;
  RateDiagnostics out;
  std::vector<double> logd;
  std::vector<int> ks;
  for (size_t k = 0; k + 1 < points.size(); ++k) {
    const double den = (points[k] - x_star).norm();
    const double num = (points[k + 1] - x_star).norm();
    if (den < kCutoff) continue;
    out.ratios.push_back(num / den);
  }
  for (size_t k = 0; k < points.size(); ++k) {
    const double d = (points[k] - x_star).norm();
    if (d < kCutoff) continue;
    logd.push_back(std::log(d));
    ks.push_back(static_cast<int>(k));
  }
  if (logd.size() < 3) {
    throw InsufficientDataError("contraction_ratios: fewer than 3 usable points");
  }
  // least-squares slope of log distance against iteration index
  double mk = 0.0, my = 0.0;
  for (size_t i = 0; i < logd.size(); ++i) {
    mk += ks[i];
    my += logd[i];
  }
  mk /= static_cast<double>(ks.size());
  my /= static_cast<double>(logd.size());
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < logd.size(); ++i) {
    num += (ks[i] - mk) * (logd[i] - my);
    den += (ks[i] - mk) * (ks[i] - mk);
  }
  out.fitted_rate = den > 0.0 ? std::exp(num / den) : 0.0;
  if (p != nullptr && p->smoothness) {
    out.spgmo_bound = std::sqrt(1.0 - p->mu_hat());
    out.pgmo_bound = std::sqrt(1.0 - p->mu_min() / p->L_max());
    out.bounds_available = true;
  }
  return out;
}

double level_set_radius_bound(const ProblemInstance& p, const Vector& x0) {
  if (!p.smoothness) {
    throw ConfigError("level_set_radius_bound: smoothness not recorded");
  }
  const double g0 = p.g.value(x0);
  double best = 0.0;
  for (Index i = 0; i < p.m; ++i) {
    const double mu = p.smoothness->mu[i];
    if (!(mu > 0.0)) {
      throw ConfigError("level_set_radius_bound: requires mu_i > 0");
    }
    const double fmin = p.smooth[i].quadratic_min_value();
    const double gap = p.smooth[i].value(x0) + g0 - fmin;
    best = std::max(best, std::sqrt(2.0 * std::max(gap, 0.0) / mu));
  }
  return 2.0 * best;
}

}  // namespace spgmo
