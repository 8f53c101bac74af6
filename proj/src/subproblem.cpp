#include "spgmo/subproblem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spgmo {

namespace {

/// Inner minimizer for the weights lambda.  Plain form:
///   d(lambda) = prox_{(beta/ell) g}(x - v/ell) - x,
/// accelerated form (ell = 1, with g(x) in place of the g difference):
///   x(lambda) = prox_{beta g}(y - v) with per-objective offsets,
/// with v = sum_i (lambda_i / alpha_i) grad f_i and beta = sum_i lambda_i / alpha_i.
DualProbe probe_impl(const DualContext& ctx, const Vector& lambda) {
  const Index m = ctx.jacobian.rows();
  Vector w = lambda.cwiseQuotient(ctx.alpha);
  const double beta = w.sum();
  Vector v = ctx.jacobian.transpose() * w;

  DualProbe out;
  const bool accelerated = ctx.offsets.has_value();
  if (accelerated) {
    Vector x_cand = ctx.g.prox(beta, ctx.base - v);
    out.d = x_cand - ctx.base;
    const double gx = ctx.g.value(x_cand);
    out.supergradient.resize(m);
    for (Index i = 0; i < m; ++i) {
      out.supergradient[i] =
          (ctx.jacobian.row(i).dot(out.d) + gx + (*ctx.offsets)[i]) /
          ctx.alpha[i];
    }
    out.q = lambda.dot(out.supergradient) + 0.5 * out.d.squaredNorm();
  } else {
    Vector y = ctx.g.prox(beta / ctx.ell, ctx.base - v / ctx.ell);
    out.d = y - ctx.base;
    const double dg = ctx.g.value(y) - ctx.g_at_base;
    out.supergradient.resize(m);
    for (Index i = 0; i < m; ++i) {
      out.supergradient[i] =
          (ctx.jacobian.row(i).dot(out.d) + dg) / ctx.alpha[i];
    }
    out.q = lambda.dot(out.supergradient) +
            0.5 * ctx.ell * out.d.squaredNorm();
  }
  return out;
}

Index argmax_lowest_index(const Vector& v) {
  Index best = 0;
  for (Index i = 1; i < v.size(); ++i) {
    if (v[i] > v[best]) best = i;
  }
  return best;
}

/// Exact maximizing step along the pairwise direction e_j - e_a for
/// quadratic duals (g = Zero):
///   q(eta) = -||v + eta (u_j - u_a)||^2 / (2 ell) + k + eta (k_j - k_a)
/// with u_i = grad f_i / alpha_i and k the offset part (zero in plain form).
double pairwise_exact_step_zero_g(const DualContext& ctx, const Vector& lambda,
                                  Index j, Index a, double eta_max) {
  Vector w = lambda.cwiseQuotient(ctx.alpha);
  Vector v = ctx.jacobian.transpose() * w;
  Vector diff = (ctx.jacobian.row(j) / ctx.alpha[j] -
                 ctx.jacobian.row(a) / ctx.alpha[a])
                    .transpose();
  const double denom = diff.squaredNorm() / ctx.ell;
  double slope = -v.dot(diff) / ctx.ell;
  if (ctx.offsets) {
    slope += (*ctx.offsets)[j] / ctx.alpha[j] - (*ctx.offsets)[a] / ctx.alpha[a];
  }
  if (denom <= 0.0) return slope > 0.0 ? eta_max : 0.0;
  return std::clamp(slope / denom, 0.0, eta_max);
}

/// Pairwise step by bisection on the directional derivative
///   h'(eta) = supergradient_j - supergradient_a at lambda + eta (e_j - e_a),
/// monotone non-increasing by concavity; h'(0) > 0 whenever the gap is
/// positive.  Endpoint checked first so full transfers stay exact.
double pairwise_bisection_step(const DualContext& ctx, const Vector& lambda,
                               Index j, Index a, double eta_max) {
  auto deriv = [&](double eta) {
    Vector lam = lambda;
    lam[j] += eta;
    lam[a] -= eta;
    DualProbe pr = probe_impl(ctx, lam);
    return pr.supergradient[j] - pr.supergradient[a];
  };
  if (deriv(eta_max) >= 0.0) return eta_max;
  double lo = 0.0, hi = eta_max;
  for (int it = 0; it < 60 && hi - lo > 1e-17 * eta_max; ++it) {
    const double mid = 0.5 * (lo + hi);
    (deriv(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DirectionSolution finish(const DualContext& ctx, const Vector& lambda,
                         const DualProbe& pr, int iters) {
  DirectionSolution sol;
  sol.d = pr.d;
  sol.x_next = ctx.base + pr.d;
  sol.lambda = lambda;
  const double quad = 0.5 * ctx.ell * pr.d.squaredNorm();
  sol.primal_value = pr.supergradient.maxCoeff() + quad;
  sol.dual_value = pr.q;
  sol.gap = std::max(0.0, sol.primal_value - sol.dual_value);
  sol.inner_iters = iters;
  return sol;
}

DirectionSolution frank_wolfe(const DualContext& ctx,
                              const SubproblemSettings& settings) {
  const Index m = ctx.jacobian.rows();
  for (Index i = 0; i < m; ++i) {
    if (!(ctx.alpha[i] > 0.0)) {
      throw InvalidInputError("subproblem: scaling entries must be > 0");
    }
  }
  if (!(ctx.ell > 0.0)) {
    throw InvalidInputError("subproblem: ell must be > 0");
  }
  if (settings.max_inner < 1) {
    throw InvalidInputError("subproblem: max_inner must be >= 1");
  }

  double gap_tol = settings.gap_tol;
  if (gap_tol <= 0.0) {
    double scale = 0.0;
    for (Index i = 0; i < m; ++i) {
      scale = std::max(
          scale, (ctx.jacobian.row(i) / ctx.alpha[i]).squaredNorm());
    }
    gap_tol = 1e-10 * std::max(1.0, scale);
  }

  Vector lambda = Vector::Constant(m, 1.0 / static_cast<double>(m));
  const bool smooth_dual = ctx.g.kind() == NonsmoothSpec::Kind::kZero;

  DirectionSolution best;
  double best_gap = std::numeric_limits<double>::infinity();

  for (int t = 0;; ++t) {
    DualProbe pr = probe_impl(ctx, lambda);
    const Index j = argmax_lowest_index(pr.supergradient);
    // Linearized gap; equals the primal-dual gap of the recovered pair.
    const double fw_gap = pr.supergradient[j] - lambda.dot(pr.supergradient);
    if (fw_gap < best_gap) {
      best = finish(ctx, lambda, pr, t);
      best_gap = fw_gap;
    }
    if (fw_gap <= gap_tol) {
      best.inner_iters = t;
      return best;
    }
    if (t >= settings.max_inner) break;

    if (settings.step_rule == SubproblemSettings::StepRule::kClassic) {
      const double eta = 2.0 / (t + 2.0);
      lambda *= (1.0 - eta);
      lambda[j] += eta;
    } else {
      // pairwise transfer from the worst active vertex to the best one
      Index a = -1;
      for (Index i = 0; i < m; ++i) {
        if (lambda[i] <= 0.0) continue;
        if (a < 0 || pr.supergradient[i] < pr.supergradient[a]) a = i;
      }
      if (a < 0 || a == j) break;  // all weight already on the target vertex
      const double eta_max = lambda[a];
      const double eta =
          smooth_dual
              ? pairwise_exact_step_zero_g(ctx, lambda, j, a, eta_max)
              : pairwise_bisection_step(ctx, lambda, j, a, eta_max);
      lambda[j] += eta;
      lambda[a] = (eta == eta_max) ? 0.0 : lambda[a] - eta;
    }
    // simplex hygiene against rounding drift
    const double sum = lambda.sum();
    if (std::abs(sum - 1.0) > 1e-15) {
      lambda = lambda.cwiseMax(0.0);
      lambda /= lambda.sum();
    }
  }

  if (best_gap > 1e3 * gap_tol) {
    std::ostringstream os;
    os << "subproblem not certified: gap " << best_gap << " > 1000 * "
       << gap_tol << " after " << settings.max_inner << " inner iterations";
    throw NonCertifiedError(os.str(), best);
  }
  return best;
}

}  // namespace

DualProbe dual_probe(const DualContext& ctx, const Vector& lambda) {
  return probe_impl(ctx, lambda);
}

DirectionSolution solve_direction(const Vector& x, const Matrix& J,
                                  const NonsmoothSpec& g, const Vector& alpha,
                                  double ell,
                                  const SubproblemSettings& settings) {
  if (J.rows() != alpha.size() || J.cols() != x.size()) {
    throw InvalidInputError("solve_direction: dimension mismatch");
  }
  DualContext ctx{x, J, g, alpha, ell, std::nullopt, g.value(x)};
  if (!std::isfinite(ctx.g_at_base)) {
    throw InvalidInputError("solve_direction: base point infeasible for g");
  }
  return frank_wolfe(ctx, settings);
}

DirectionSolution solve_accelerated(const Vector& y, const Matrix& J_at_y,
                                    const Vector& offsets,
                                    const NonsmoothSpec& g, const Vector& L,
                                    const SubproblemSettings& settings) {
  if (J_at_y.rows() != L.size() || J_at_y.cols() != y.size() ||
      offsets.size() != L.size()) {
    throw InvalidInputError("solve_accelerated: dimension mismatch");
  }
  if (!offsets.allFinite()) {
    throw InvalidInputError("solve_accelerated: offsets must be finite");
  }
  DualContext ctx{y, J_at_y, g, L, 1.0, offsets, 0.0};
  return frank_wolfe(ctx, settings);
}

}  // namespace spgmo
