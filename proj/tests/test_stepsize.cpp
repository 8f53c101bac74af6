#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "spgmo/errors.hpp"
#include "spgmo/problem.hpp"
#include "spgmo/rng.hpp"
#include "spgmo/stepsize.hpp"

using namespace spgmo;

namespace {

ProblemInstance scalar_quadratic(double curvature) {
  ProblemInstance p;
  p.name = "scalar";
  p.n = 1;
  p.m = 1;
  Matrix A(1, 1);
  A << curvature;
  p.smooth.push_back(SmoothObjective::quadratic(A, Vector::Zero(1)));
  p.g = NonsmoothSpec::zero();
  Vector mu(1), L(1);
  mu << curvature;
  L << curvature;
  p.smoothness = Smoothness{mu, L};
  p.box_lo = Vector::Constant(1, -2.0);
  p.box_hi = Vector::Constant(1, 2.0);
  return p;
}

Vector scalar(double v) {
  Vector x(1);
  x << v;
  return x;
}

}  // namespace

TEST_CASE("armijo accepts t = 1 on the gentle scalar quadratic") {
  auto p = scalar_quadratic(1.0);
  LineSearchParams params;
  auto res = armijo(p, scalar(1.0), scalar(-1.0), scalar(-1.0), params);
  CHECK(res.t == 1.0);
  CHECK(res.trials == 1);
  CHECK(res.F_accepted[0] == doctest::Approx(0.0));
}

TEST_CASE("armijo halving grid on a stiff quadratic") {
  // f = (L/2) x^2 with L = 8 from x = 1 along d = -grad/2 = -4, D = -32:
  // enumerate the halving grid of (L/2)(1-4t)^2 - L/2 <= -32 t sigma.
  const double L = 8.0;
  auto p = scalar_quadratic(L);
  LineSearchParams params;
  params.sigma = 1e-4;
  double expected = 1.0;
  int steps = 1;
  while (true) {
    const double z = 1.0 - 4.0 * expected;
    const double lhs = 0.5 * L * z * z - 0.5 * L;
    if (lhs <= expected * params.sigma * (-32.0)) break;
    expected *= 0.5;
    ++steps;
  }
  CHECK(expected == 0.25);
  auto res = armijo(p, scalar(1.0), scalar(-4.0), scalar(-32.0), params);
  CHECK(res.t == expected);
  CHECK(res.trials == steps);
}

TEST_CASE("armijo acceptance is exact: doubling the step breaks it") {
  Rng rng(12);
  auto p = gen_quadratic_family(6, 2, 30.0, 5.0, true, 2);
  LineSearchParams params;
  for (int trial = 0; trial < 40; ++trial) {
    Vector x = rng.uniform_vector(p.box_lo, p.box_hi);
    Matrix J = p.jacobian(x);
    auto sol = solve_direction(x, J, p.g, p.smoothness->L, 1.0, {});
    if (sol.d.norm() < 1e-10) continue;
    const double dg = p.g.value(x + sol.d) - p.g.value(x);
    Vector D(p.m);
    for (Index i = 0; i < p.m; ++i) D[i] = J.row(i).dot(sol.d) + dg;
    auto res = armijo(p, x, sol.d, D, params);
    Vector Fx = p.F(x);
    Vector Ft = p.F(x + res.t * sol.d);
    for (Index i = 0; i < p.m; ++i) {
      CHECK(Ft[i] - Fx[i] <= res.t * params.sigma * D[i]);
    }
    if (res.t < 1.0) {
      const double t2 = 2.0 * res.t;
      Vector F2 = p.F(x + t2 * sol.d);
      bool violated = false;
      for (Index i = 0; i < p.m; ++i) {
        if (F2[i] - Fx[i] > t2 * params.sigma * D[i]) violated = true;
      }
      CHECK(violated);
    }
  }
}

TEST_CASE("armijo stepsize lower bound with recorded L") {
  Rng rng(77);
  auto p = gen_quadratic_family(8, 2, 12.0, 3.0, false, 9);
  LineSearchParams params;
  for (int trial = 0; trial < 30; ++trial) {
    Vector x = rng.uniform_vector(p.box_lo, p.box_hi);
    Matrix J = p.jacobian(x);
    // alpha in [mu, L] as a line-search method would pick
    Vector alpha(p.m);
    for (Index i = 0; i < p.m; ++i) {
      alpha[i] = p.smoothness->mu[i] *
                 std::pow(p.smoothness->L[i] / p.smoothness->mu[i],
                          rng.uniform());
    }
    auto sol = solve_direction(x, J, p.g, alpha, 1.0, {});
    if (sol.d.norm() < 1e-10) continue;
    Vector D(p.m);
    for (Index i = 0; i < p.m; ++i) D[i] = J.row(i).dot(sol.d);
    auto res = armijo(p, x, sol.d, D, params);
    double tmin = 1.0;
    for (Index i = 0; i < p.m; ++i) {
      tmin = std::min(tmin,
                      (1.0 - params.sigma) * alpha[i] / p.smoothness->L[i]);
    }
    CHECK(res.t >= tmin - 1e-12);
  }
}

TEST_CASE("armijo rejects non-descent input and bounded halvings") {
  auto p = scalar_quadratic(1.0);
  LineSearchParams params;
  CHECK_THROWS_AS(armijo(p, scalar(1.0), scalar(1.0), scalar(0.5), params),
                  InvalidInputError);
  // inconsistent oracle: claimed decrease cannot be met
  ProblemInstance bad = scalar_quadratic(1.0);
  bad.smooth[0] = SmoothObjective::generic(
      [](const Vector& x) { return x[0]; },
      [](const Vector&) { return -Vector::Ones(1); });
  CHECK_THROWS_AS(armijo(bad, scalar(0.0), scalar(1.0), scalar(-1.0), params),
                  LineSearchError);
}

TEST_CASE("backtracking accepts the exact curvature in one round") {
  // Hessian L I: the descent lemma is tight at alpha = L
  const double L = 4.0;
  ProblemInstance p;
  p.n = 2;
  p.m = 1;
  p.smooth.push_back(
      SmoothObjective::quadratic(L * Matrix::Identity(2, 2), Vector::Zero(2)));
  p.g = NonsmoothSpec::zero();
  Vector x(2);
  x << 1.0, -2.0;
  auto res = backtrack_smoothness(p, x, Vector::Constant(1, L), 2.0, {});
  CHECK(res.rounds == 1);
  CHECK(res.alpha[0] == L);
}

TEST_CASE("backtracking grows understated curvature within tau L") {
  const double L = 4.0, tau = 2.0;
  ProblemInstance p;
  p.n = 2;
  p.m = 1;
  p.smooth.push_back(
      SmoothObjective::quadratic(L * Matrix::Identity(2, 2), Vector::Zero(2)));
  p.g = NonsmoothSpec::zero();
  Vector x(2);
  x << 1.0, 0.5;
  auto res = backtrack_smoothness(p, x, Vector::Constant(1, L / 4.0), tau, {});
  CHECK(res.alpha[0] < tau * L + 1e-9);
  // the accepted alpha satisfies the descent inequality by construction
  const Vector s = res.x_next - x;
  const double lhs = p.smooth[0].value(res.x_next) - p.smooth[0].value(x);
  const double rhs = p.jacobian(x).row(0).dot(s) +
                     0.5 * res.alpha[0] * s.squaredNorm();
  CHECK(lhs <= rhs + 1e-9);
}

TEST_CASE("backtracking at a critical point returns alpha0 untouched") {
  auto p = scalar_quadratic(2.0);
  auto res = backtrack_smoothness(p, scalar(0.0), scalar(0.5), 3.0, {});
  CHECK(res.rounds == 1);
  CHECK(res.alpha[0] == 0.5);
  CHECK(res.x_next[0] == 0.0);
}

TEST_CASE("backtracking bound across random instances") {
  Rng rng(3);
  auto p = gen_quadratic_family(6, 2, 20.0, 7.0, true, 5);
  for (int trial = 0; trial < 10; ++trial) {
    Vector x = rng.uniform_vector(p.box_lo, p.box_hi);
    const double tau = 1.0 + rng.uniform(0.3, 1.5);
    Vector alpha0 = 0.05 * p.smoothness->mu;
    auto res = backtrack_smoothness(p, x, alpha0, tau, {});
    for (Index i = 0; i < p.m; ++i) {
      CHECK(res.alpha[i] < tau * p.smoothness->L[i] + 1e-9);
    }
  }
}

TEST_CASE("backtracking flags an inconsistent value oracle") {
  // a value jump the gradient does not admit: the descent inequality fails
  // at every candidate step no matter how large alpha grows
  ProblemInstance p;
  p.n = 2;
  p.m = 1;
  p.smooth.push_back(SmoothObjective::generic(
      [](const Vector& x) {
        return 0.5 * x.squaredNorm() + (x[0] < 1.0 ? 10.0 : 0.0);
      },
      [](const Vector& x) { return x; }));
  p.g = NonsmoothSpec::zero();
  Vector x(2);
  x << 1.0, 0.0;
  // tau close to 1 keeps steps finite across the whole round budget
  CHECK_THROWS_AS(backtrack_smoothness(p, x, Vector::Ones(1), 1.05, {}),
                  BacktrackingError);
}

TEST_CASE("bb quotient is a Rayleigh quotient on quadratics") {
  Rng rng(42);
  auto p = gen_quadratic_family(7, 2, 15.0, 2.0, false, 31);
  for (int trial = 0; trial < 25; ++trial) {
    Vector a = rng.uniform_vector(p.box_lo, p.box_hi);
    Vector b = rng.uniform_vector(p.box_lo, p.box_hi);
    if ((a - b).norm() < 1e-12) continue;
    Vector alpha = bb_scaling(a, p.jacobian(a), b, p.jacobian(b), 1e-8, 1e12,
                              Vector::Ones(p.m));
    for (Index i = 0; i < p.m; ++i) {
      CHECK(alpha[i] >= p.smoothness->mu[i] * (1.0 - 1e-9));
      CHECK(alpha[i] <= p.smoothness->L[i] * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("bb on an isotropic quadratic recovers the exact curvature") {
  const double c = 3.25;
  ProblemInstance p;
  p.n = 3;
  p.m = 1;
  p.smooth.push_back(
      SmoothObjective::quadratic(c * Matrix::Identity(3, 3), Vector::Zero(3)));
  Rng rng(6);
  Vector a = rng.normal_vector(3), b = rng.normal_vector(3);
  Vector alpha =
      bb_scaling(a, p.jacobian(a), b, p.jacobian(b), 1e-8, 1e12, Vector::Ones(1));
  CHECK(alpha[0] == doctest::Approx(c));
}

TEST_CASE("bb falls back on zero-curvature objectives and clamps") {
  auto p = example_4_4(0.5);
  Vector a(2), b(2);
  a << 2.0, 0.0;
  b << 1.0, 0.0;
  Vector fb(2);
  fb << 0.123, 0.456;
  Vector alpha = bb_scaling(a, p.jacobian(a), b, p.jacobian(b), 1e-8, 1e12, fb);
  CHECK(alpha[0] == doctest::Approx(1.0));  // Rayleigh of the identity
  CHECK(alpha[1] == 0.456);                 // linear: y = 0
  // clamping
  Vector clamped = bb_scaling(a, p.jacobian(a), b, p.jacobian(b), 2.0, 3.0, fb);
  CHECK(clamped[0] == 2.0);
  CHECK_THROWS_AS(bb_scaling(a, p.jacobian(a), a, p.jacobian(a), 1e-8, 1e12, fb),
                  InvalidInputError);
}

TEST_CASE("resolve_scaling variants") {
  auto p = example_3_1(100.0);
  ScalingState st;

  Vector c = resolve_scaling(ScalingStrategy::constant(100.0), p, st);
  CHECK(c[0] == 100.0);
  CHECK(c[1] == 100.0);

  Vector l = resolve_scaling(ScalingStrategy::known_l(), p, st);
  CHECK(l[0] == 1.0);
  CHECK(l[1] == 100.0);

  Vector m = resolve_scaling(ScalingStrategy::known_mu(), p, st);
  CHECK(m[0] == 1.0);
  CHECK(m[1] == 100.0);

  auto p44 = example_4_4(0.01);
  Vector pc = resolve_scaling(ScalingStrategy::per_class(1e-6), p44, st);
  CHECK(pc[0] == 1.0);
  CHECK(pc[1] == 1e-6);

  // BB at k = 0 returns the init vector
  Vector b0 = resolve_scaling(ScalingStrategy::barzilai_borwein(), p, st);
  CHECK(b0[0] == 1.0);

  ProblemInstance bare;
  bare.n = 1;
  bare.m = 1;
  bare.smooth.push_back(SmoothObjective::linear(Vector::Ones(1)));
  CHECK_THROWS_AS(resolve_scaling(ScalingStrategy::known_l(), bare, st),
                  ConfigError);
  CHECK_THROWS_AS(resolve_scaling(ScalingStrategy::known_mu(), bare, st),
                  ConfigError);
  CHECK_THROWS_AS(resolve_scaling(ScalingStrategy::known_mu(), p44, st),
                  ConfigError);
}
