#include "spgmo/stepsize.hpp"

#include <cmath>
#include <sstream>

#include "spgmo/errors.hpp"

namespace spgmo {

ScalingStrategy ScalingStrategy::constant(double ell) {
  if (!(ell > 0.0)) throw InvalidInputError("constant scaling: ell must be > 0");
  ScalingStrategy s;
  s.kind = Kind::kConstant;
  s.ell = ell;
  return s;
}

ScalingStrategy ScalingStrategy::known_l() {
  ScalingStrategy s;
  s.kind = Kind::kKnownL;
  return s;
}

ScalingStrategy ScalingStrategy::known_mu() {
  ScalingStrategy s;
  s.kind = Kind::kKnownMu;
  return s;
}

ScalingStrategy ScalingStrategy::barzilai_borwein(double lo, double hi,
                                                  double init) {
  if (!(lo > 0.0) || !(hi >= lo) || !(init > 0.0)) {
    throw InvalidInputError("barzilai_borwein: need 0 < lo <= hi, init > 0");
  }
  ScalingStrategy s;
  s.kind = Kind::kBarzilaiBorwein;
  s.bb_lo = lo;
  s.bb_hi = hi;
  s.bb_init = init;
  return s;
}

ScalingStrategy ScalingStrategy::per_class(double linear_alpha, Kind base) {
  if (!(linear_alpha > 0.0)) {
    throw InvalidInputError("per_class: linear_alpha must be > 0");
  }
  if (base == Kind::kPerClass) {
    throw InvalidInputError("per_class: base strategy cannot be per-class");
  }
  ScalingStrategy s;
  s.kind = Kind::kPerClass;
  s.linear_alpha = linear_alpha;
  s.per_class_base = base;
  return s;
}

ArmijoResult armijo(const ProblemInstance& p, const Vector& x, const Vector& d,
                    const Vector& decrease, const LineSearchParams& params) {
  return armijo_from(p, x, p.F(x), d, decrease, params);
}

ArmijoResult armijo_from(const ProblemInstance& p, const Vector& x,
                         const Vector& Fx, const Vector& d,
                         const Vector& decrease,
                         const LineSearchParams& params) {
  if (!(params.sigma > 0.0 && params.sigma < 1.0)) {
    throw InvalidInputError("armijo: sigma must be in (0, 1)");
  }
  for (Index i = 0; i < decrease.size(); ++i) {
    if (!(decrease[i] < 0.0)) {
      throw InvalidInputError("armijo: d is not a certified descent direction");
    }
  }
  double t = params.t_init;
  ArmijoResult res;
  for (int h = 0; h <= params.max_halvings; ++h) {
    Vector Ft = p.F(x + t * d);
    ++res.trials;
    bool ok = true;
    for (Index i = 0; i < decrease.size(); ++i) {
      if (!(Ft[i] - Fx[i] <= t * params.sigma * decrease[i])) {
        ok = false;
        break;
      }
    }
    if (ok) {
      res.t = t;
      res.F_accepted = std::move(Ft);
      return res;
    }
    t *= params.halving;
  }
  std::ostringstream os;
  os << "armijo: no acceptable step after " << params.max_halvings
     << " halvings (last t = " << t / params.halving << ")";
  throw LineSearchError(os.str(), t / params.halving, res.trials);
}

BacktrackResult backtrack_smoothness(const ProblemInstance& p, const Vector& x,
                                     const Vector& alpha0, double tau,
                                     const SubproblemSettings& settings) {
  if (!(tau > 1.0)) throw InvalidInputError("backtrack: tau must be > 1");
  for (Index i = 0; i < alpha0.size(); ++i) {
    if (!(alpha0[i] > 0.0)) {
      throw InvalidInputError("backtrack: alpha0 entries must be > 0");
    }
  }
  constexpr int kMaxRounds = 200;
  const Matrix J = p.jacobian(x);
  const Vector fx = p.smooth_values(x);
  BacktrackResult res;
  res.alpha = alpha0;
  for (int round = 1; round <= kMaxRounds; ++round) {
    res.last = solve_direction(x, J, p.g, res.alpha, 1.0, settings);
    const Vector xp = res.last.x_next;
    const Vector s = xp - x;
    const double sn = s.squaredNorm();
    bool all_ok = true;
    for (Index i = 0; i < p.m; ++i) {
      const double lhs = p.smooth[i].value(xp) - fx[i];
      const double rhs = J.row(i).dot(s) + 0.5 * res.alpha[i] * sn;
      // tiny slack: the inequality is tight for quadratics along the top
      // eigenvector, and rounding must not trigger a spurious increase
      const double slack = 1e-10 * std::max(1.0, std::abs(fx[i]));
      if (lhs > rhs + slack) {
        res.alpha[i] *= tau;
        all_ok = false;
      }
    }
    res.rounds = round;
    if (all_ok) {
      res.x_next = xp;
      return res;
    }
  }
  throw BacktrackingError("backtrack: descent inequality never satisfied");
}

Vector bb_scaling(const Vector& x_prev, const Matrix& J_prev, const Vector& x,
                  const Matrix& J, double alpha_lo, double alpha_hi,
                  const Vector& fallback) {
  const Vector s = x - x_prev;
  const double ss = s.squaredNorm();
  if (ss == 0.0) throw InvalidInputError("bb_scaling: x == x_prev");
  Vector alpha(J.rows());
  for (Index i = 0; i < J.rows(); ++i) {
    const double sy = s.dot((J.row(i) - J_prev.row(i)).transpose());
    alpha[i] = sy > 0.0 ? std::clamp(sy / ss, alpha_lo, alpha_hi)
                        : fallback[i];
  }
  return alpha;
}

Vector resolve_scaling(const ScalingStrategy& strategy,
                       const ProblemInstance& p, const ScalingState& state) {
  switch (strategy.kind) {
    case ScalingStrategy::Kind::kConstant:
      return Vector::Constant(p.m, strategy.ell);
    case ScalingStrategy::Kind::kKnownL:
      if (!p.smoothness) {
        throw ConfigError("KnownL scaling requires recorded smoothness");
      }
      return p.smoothness->L;
    case ScalingStrategy::Kind::kKnownMu: {
      if (!p.smoothness) {
        throw ConfigError("KnownMu scaling requires recorded smoothness");
      }
      for (Index i = 0; i < p.m; ++i) {
        if (!(p.smoothness->mu[i] > 0.0)) {
          throw ConfigError("KnownMu scaling requires mu_i > 0 for all i");
        }
      }
      return p.smoothness->mu;
    }
    case ScalingStrategy::Kind::kBarzilaiBorwein: {
      if (state.k == 0 || state.x_prev == nullptr || state.J_prev == nullptr) {
        return Vector::Constant(p.m, strategy.bb_init);
      }
      Vector fallback = state.alpha_prev
                            ? *state.alpha_prev
                            : Vector::Constant(p.m, strategy.bb_init);
      return bb_scaling(*state.x_prev, *state.J_prev, *state.x, *state.J,
                        strategy.bb_lo, strategy.bb_hi, fallback);
    }
    case ScalingStrategy::Kind::kPerClass: {
      Vector alpha(p.m);
      switch (strategy.per_class_base) {
        case ScalingStrategy::Kind::kConstant:
          alpha.setConstant(strategy.ell);
          break;
        case ScalingStrategy::Kind::kKnownL:
        case ScalingStrategy::Kind::kKnownMu: {
          if (!p.smoothness) {
            throw ConfigError("per-class base requires recorded smoothness");
          }
          const bool use_mu =
              strategy.per_class_base == ScalingStrategy::Kind::kKnownMu;
          for (Index i = 0; i < p.m; ++i) {
            alpha[i] = use_mu ? p.smoothness->mu[i] : p.smoothness->L[i];
            if (!p.smooth[i].is_linear() && !(alpha[i] > 0.0)) {
              throw ConfigError("per-class base needs positive constants");
            }
          }
          break;
        }
        case ScalingStrategy::Kind::kBarzilaiBorwein: {
          ScalingStrategy base = ScalingStrategy::barzilai_borwein(
              strategy.bb_lo, strategy.bb_hi, strategy.bb_init);
          alpha = resolve_scaling(base, p, state);
          break;
        }
        case ScalingStrategy::Kind::kPerClass:
          throw ConfigError("per-class base cannot be per-class");
      }
      for (Index i = 0; i < p.m; ++i) {
        if (p.smooth[i].is_linear()) alpha[i] = strategy.linear_alpha;
      }
      return alpha;
    }
  }
  throw ConfigError("unknown scaling strategy");
}

}  // namespace spgmo
