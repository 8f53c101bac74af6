#include "spgmo/solver.hpp"

#include <chrono>
#include <cmath>

#include "spgmo/errors.hpp"

namespace spgmo {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::kPGMO: return "pgmo";
    case Algorithm::kSPGMO: return "spgmo";
    case Algorithm::kSPGMO_LS: return "spgmo-ls";
    case Algorithm::kAPGMO: return "apgmo";
    case Algorithm::kASPGMO: return "aspgmo";
    case Algorithm::kAPGMO_SC: return "apgmo-sc";
    case Algorithm::kASPGMO_SC: return "aspgmo-sc";
  }
  return "?";
}

std::optional<Algorithm> algorithm_from_name(const std::string& name) {
  for (Algorithm a :
       {Algorithm::kPGMO, Algorithm::kSPGMO, Algorithm::kSPGMO_LS,
        Algorithm::kAPGMO, Algorithm::kASPGMO, Algorithm::kAPGMO_SC,
        Algorithm::kASPGMO_SC}) {
    if (name == algorithm_name(a)) return a;
  }
  // tolerate underscores
  std::string t = name;
  for (char& ch : t) {
    if (ch == '_') ch = '-';
  }
  if (t != name) return algorithm_from_name(t);
  return std::nullopt;
}

bool is_accelerated(Algorithm a) {
  return a == Algorithm::kAPGMO || a == Algorithm::kASPGMO ||
         a == Algorithm::kAPGMO_SC || a == Algorithm::kASPGMO_SC;
}

const char* status_name(SolveStatus s) {
  switch (s) {
    case SolveStatus::kConverged: return "converged";
    case SolveStatus::kMaxIterations: return "max_iterations";
    case SolveStatus::kError: return "error";
  }
  return "?";
}

std::vector<Vector> SolveReport::points() const {
  std::vector<Vector> pts;
  for (const auto& rec : trace) {
    if (rec.x.size() > 0) pts.push_back(rec.x);
  }
  if (final_x.size() > 0 &&
      (pts.empty() || (pts.back() - final_x).norm() > 0.0)) {
    pts.push_back(final_x);
  }
  return pts;
}

double momentum_gamma(double theta_k, double theta_prev, double mu_hat) {
  if (!(theta_prev > 0.0)) {
    throw InvalidInputError("momentum_gamma: theta_prev must be > 0");
  }
  if (mu_hat < 0.0 || mu_hat >= 1.0) {
    throw InvalidInputError("momentum_gamma: mu_hat must be in [0, 1)");
  }
  return (theta_k - mu_hat) * (1.0 - theta_prev) /
         ((1.0 - mu_hat) * theta_prev);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start)
      .count();
}

SolveReport run_plain(const ProblemInstance& p, const SolverConfig& cfg,
                      const Vector& x0) {
  const auto start = Clock::now();
  SolveReport rep;
  rep.final_x = x0;

  const bool line_search = cfg.algorithm == Algorithm::kSPGMO_LS;
  LineSearchParams ls = cfg.line_search.value_or(LineSearchParams{});

  ScalingStrategy strategy = cfg.scaling;
  if (cfg.algorithm == Algorithm::kPGMO) {
    strategy = ScalingStrategy::constant(p.L_max());
  }

  Vector x = x0;
  Vector Fx = p.F(x);
  ++rep.fevals;
  Vector x_prev, alpha_prev;
  Matrix J_prev;

  try {
    for (int k = 0; k < cfg.max_iter; ++k) {
      Matrix J = p.jacobian(x);
      ++rep.gevals;

      ScalingState st;
      st.k = k;
      st.x = &x;
      st.J = &J;
      if (k > 0) {
        st.x_prev = &x_prev;
        st.J_prev = &J_prev;
        st.alpha_prev = &alpha_prev;
      }
      Vector alpha = resolve_scaling(strategy, p, st);

      DirectionSolution sol =
          solve_direction(x, J, p.g, alpha, 1.0, cfg.subproblem);
      ++rep.iterations;
      const double residual = sol.d.norm();

      IterationRecord rec;
      rec.k = k;
      if (cfg.store_points) rec.x = x;
      rec.F = Fx;
      rec.residual = residual;
      rec.alpha = alpha;
      rec.lambda = sol.lambda;
      rec.gap = sol.gap;

      if (residual <= cfg.tol) {
        rec.t = 0.0;
        rec.fevals = rep.fevals;
        if (cfg.store_trace) rep.trace.push_back(std::move(rec));
        rep.status = SolveStatus::kConverged;
        rep.final_residual = residual;
        break;
      }

      double t = 1.0;
      if (line_search) {
        Vector decrease(p.m);
        const double dg = p.g.value(sol.x_next) - p.g.value(x);
        for (Index i = 0; i < p.m; ++i) {
          decrease[i] = J.row(i).dot(sol.d) + dg;
        }
        ArmijoResult ar = armijo_from(p, x, Fx, sol.d, decrease, ls);
        rep.fevals += ar.trials;
        t = ar.t;
        x_prev = x;
        x = x + t * sol.d;
        Fx = std::move(ar.F_accepted);
      } else {
        x_prev = x;
        x = sol.x_next;
        Fx = p.F(x);
        ++rep.fevals;
      }
      J_prev = std::move(J);
      alpha_prev = alpha;

      rec.t = t;
      rec.fevals = rep.fevals;
      if (cfg.store_trace) rep.trace.push_back(std::move(rec));
      rep.final_x = x;
      rep.final_residual = residual;
    }
  } catch (const NonCertifiedError& e) {
    rep.status = SolveStatus::kError;
    rep.error = std::string("subproblem: ") + e.what();
  } catch (const LineSearchError& e) {
    rep.status = SolveStatus::kError;
    rep.error = std::string("line_search: ") + e.what();
  }

  rep.final_F = Fx;
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

SolveReport run_accelerated(const ProblemInstance& p, const SolverConfig& cfg,
                            const Vector& x0) {
  const auto start = Clock::now();
  SolveReport rep;
  rep.final_x = x0;

  if (!p.smoothness) {
    throw ConfigError("accelerated methods require recorded smoothness");
  }
  const bool scaled = cfg.algorithm == Algorithm::kASPGMO ||
                      cfg.algorithm == Algorithm::kASPGMO_SC;
  const bool strongly = cfg.algorithm == Algorithm::kAPGMO_SC ||
                        cfg.algorithm == Algorithm::kASPGMO_SC;
  const Vector alpha =
      scaled ? p.smoothness->L : Vector::Constant(p.m, p.L_max());

  double mu_hat = 0.0;
  if (strongly) {
    mu_hat = cfg.mu_hat_override.value_or(scaled ? p.mu_hat()
                                                 : p.mu_min() / p.L_max());
    if (!(mu_hat > 0.0 && mu_hat <= 1.0)) {
      throw ConfigError("strongly convex momentum requires mu_hat in (0, 1]");
    }
  }

  // theta_{-1} = 2 makes the convex closed form (k-1)/(k+2) hold from k = 0;
  // gamma_0 is moot either way because x^{-1} = x^0.
  double theta_prev = strongly ? std::sqrt(mu_hat) : 2.0;

  Vector x = x0;
  Vector x_prev = x0;
  Vector Fx = p.F(x);
  ++rep.fevals;

  try {
    for (int k = 0; k < cfg.max_iter; ++k) {
      const double theta_k =
          strongly ? std::sqrt(mu_hat) : 2.0 / static_cast<double>(k + 2);
      const double gamma =
          mu_hat >= 1.0 ? 0.0 : momentum_gamma(theta_k, theta_prev, mu_hat);
      Vector y = x + gamma * (x - x_prev);

      Matrix J = p.jacobian(y);
      ++rep.gevals;
      Vector fy = p.smooth_values(y);
      ++rep.fevals;
      Vector offsets = fy - Fx;

      DirectionSolution sol =
          solve_accelerated(y, J, offsets, p.g, alpha, cfg.subproblem);
      ++rep.iterations;
      const double residual = (sol.x_next - y).norm();

      IterationRecord rec;
      rec.k = k;
      if (cfg.store_points) rec.x = x;
      rec.F = Fx;
      rec.residual = residual;
      rec.t = 1.0;
      rec.alpha = alpha;
      rec.lambda = sol.lambda;
      rec.gamma = gamma;
      rec.gap = sol.gap;

      x_prev = x;
      x = sol.x_next;
      Fx = p.F(x);
      ++rep.fevals;
      theta_prev = theta_k;

      rec.fevals = rep.fevals;
      if (cfg.store_trace) rep.trace.push_back(std::move(rec));
      rep.final_x = x;
      rep.final_residual = residual;

      if (residual <= cfg.tol) {
        rep.status = SolveStatus::kConverged;
        break;
      }
    }
  } catch (const NonCertifiedError& e) {
    rep.status = SolveStatus::kError;
    rep.error = std::string("subproblem: ") + e.what();
  }

  rep.final_F = Fx;
  rep.wall_time_ms = elapsed_ms(start);
  return rep;
}

}  // namespace

SolveReport run(const ProblemInstance& p, const SolverConfig& cfg,
                const Vector& x0) {
  p.validate_point(x0);
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be > 0");
  if (cfg.max_iter < 0) throw ConfigError("max_iter must be >= 0");
  if (p.g.is_indicator() && !p.g.feasible(x0)) {
    throw InvalidInputError("x0 is infeasible for the indicator term");
  }
  if (is_accelerated(cfg.algorithm)) return run_accelerated(p, cfg, x0);
  return run_plain(p, cfg, x0);
}

}  // namespace spgmo
