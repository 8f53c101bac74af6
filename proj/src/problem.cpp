#include "spgmo/problem.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "spgmo/errors.hpp"
#include "spgmo/rng.hpp"

namespace spgmo {

using nlohmann::json;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

SmoothObjective SmoothObjective::quadratic(Matrix A, Vector b) {
  if (A.rows() != A.cols() || A.rows() != b.size()) {
    throw InvalidInputError("quadratic: inconsistent A, b dimensions");
  }
  SmoothObjective f;
  f.kind_ = Kind::kQuadratic;
  f.A_ = std::move(A);
  f.b_ = std::move(b);
  return f;
}

SmoothObjective SmoothObjective::linear(Vector c) {
  SmoothObjective f;
  f.kind_ = Kind::kLinear;
  f.c_ = std::move(c);
  return f;
}

SmoothObjective SmoothObjective::generic(ValueFn value, GradFn gradient) {
  SmoothObjective f;
  f.kind_ = Kind::kGeneric;
  f.value_ = std::move(value);
  f.grad_ = std::move(gradient);
  return f;
}

double SmoothObjective::value(const Vector& x) const {
  switch (kind_) {
    case Kind::kQuadratic:
      return 0.5 * x.dot(A_ * x) + b_.dot(x);
    case Kind::kLinear:
      return c_.dot(x);
    case Kind::kGeneric:
      return value_(x);
  }
  return 0.0;
}

Vector SmoothObjective::gradient(const Vector& x) const {
  switch (kind_) {
    case Kind::kQuadratic:
      return A_ * x + b_;
    case Kind::kLinear:
      return c_;
    case Kind::kGeneric:
      return grad_(x);
  }
  return Vector::Zero(x.size());
}

double SmoothObjective::quadratic_min_value() const {
  if (kind_ != Kind::kQuadratic) {
    throw InvalidInputError("quadratic_min_value: not a quadratic objective");
  }
  Vector xbar = A_.ldlt().solve(-b_);
  return 0.5 * xbar.dot(A_ * xbar) + b_.dot(xbar);
}

void ProblemInstance::validate_point(const Vector& x) const {
  if (x.size() != n) {
    std::ostringstream os;
    os << "point has dimension " << x.size() << ", expected " << n;
    throw InvalidInputError(os.str());
  }
  if (!x.allFinite()) throw InvalidInputError("point has non-finite entries");
}

Vector ProblemInstance::F(const Vector& x) const {
  validate_point(x);
  const double gx = g.value(x);
  Vector out(m);
  for (Index i = 0; i < m; ++i) {
    out[i] = (gx == kInf) ? kInf : smooth[i].value(x) + gx;
  }
  return out;
}

Vector ProblemInstance::smooth_values(const Vector& x) const {
  validate_point(x);
  Vector out(m);
  for (Index i = 0; i < m; ++i) out[i] = smooth[i].value(x);
  return out;
}

Matrix ProblemInstance::jacobian(const Vector& x) const {
  validate_point(x);
  Matrix J(m, n);
  for (Index i = 0; i < m; ++i) J.row(i) = smooth[i].gradient(x).transpose();
  return J;
}

double ProblemInstance::L_max() const {
  if (!smoothness) throw ConfigError("smoothness not recorded on instance");
  return smoothness->L.maxCoeff();
}

double ProblemInstance::mu_min() const {
  if (!smoothness) throw ConfigError("smoothness not recorded on instance");
  return smoothness->mu.minCoeff();
}

double ProblemInstance::mu_hat() const {
  if (!smoothness) throw ConfigError("smoothness not recorded on instance");
  return (smoothness->mu.array() / smoothness->L.array()).minCoeff();
}

namespace {

/// Random orthogonal matrix from QR of a Gaussian matrix, with the sign of
/// each column fixed so the factorization is canonical.
Matrix random_orthogonal(Index n, Rng& rng) {
  Matrix G(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) G(i, j) = rng.normal();
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j) {
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  }
  return Q;
}

/// Eigenvalues spanning [lo, hi]: endpoints placed exactly, interior entries
/// log-uniform in [lo, hi].
Vector spectrum(Index n, double lo, double hi, Rng& rng) {
  Vector d(n);
  d[0] = lo;
  d[n - 1] = hi;
  const double llo = std::log(lo), lhi = std::log(hi);
  for (Index i = 1; i + 1 < n; ++i) {
    d[i] = std::exp(rng.uniform(llo, lhi));
  }
  return d;
}

}  // namespace

ProblemInstance gen_quadratic_family(Index n, Index m, double kappa,
                                     double zeta, bool with_l1,
                                     std::uint64_t seed) {
  if (n < 2) throw InvalidInputError("gen_quadratic_family: n must be >= 2");
  if (m < 2) throw InvalidInputError("gen_quadratic_family: m must be >= 2");
  if (kappa < 1.0 || zeta < 1.0) {
    throw InvalidInputError("gen_quadratic_family: kappa and zeta must be >= 1");
  }

  ProblemInstance p;
  p.n = n;
  p.m = m;
  Vector mu(m), L(m);

  const double box = static_cast<double>(n);  // +-10 for n=10, +-100 for n=100
  const double anchor_radius = 0.25 * (2.0 * box);

  for (Index i = 0; i < m; ++i) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(i)));
    const double lo = (i == 1) ? zeta : 1.0;
    const double hi = (i == 1) ? zeta * kappa : kappa;
    Matrix H = random_orthogonal(n, rng);
    Vector d = spectrum(n, lo, hi, rng);
    Matrix A = H * d.asDiagonal() * H.transpose();
    A = 0.5 * (A + A.transpose()).eval();
    Vector t = rng.normal_vector(n);
    t *= anchor_radius / t.norm();
    Vector b = -(A * t);
    p.smooth.push_back(SmoothObjective::quadratic(std::move(A), std::move(b)));
    mu[i] = lo;
    L[i] = hi;
  }

  p.g = with_l1 ? NonsmoothSpec::weighted_l1(1.0 / static_cast<double>(n))
                : NonsmoothSpec::zero();
  p.smoothness = Smoothness{mu, L};
  p.box_lo = Vector::Constant(n, -box);
  p.box_hi = Vector::Constant(n, box);

  ProblemDesc desc;
  desc.kind = "quadratic_family";
  desc.n = n;
  desc.m = m;
  desc.kappa = kappa;
  desc.zeta = zeta;
  desc.with_l1 = with_l1;
  desc.seed = seed;
  p.desc = desc;

  std::ostringstream os;
  os << "qp_n" << n << "_m" << m << "_k" << kappa << "_z" << zeta
     << (with_l1 ? "_l1" : "") << "_s" << seed;
  p.name = os.str();
  return p;
}

ProblemInstance example_3_1(double L) {
  if (!(L > 1.0)) throw InvalidInputError("example_3_1: L must be > 1");
  ProblemInstance p;
  p.name = "example_3_1";
  p.n = 2;
  p.m = 2;
  p.smooth.push_back(
      SmoothObjective::quadratic(Matrix::Identity(2, 2), Vector::Zero(2)));
  p.smooth.push_back(
      SmoothObjective::quadratic(L * Matrix::Identity(2, 2), Vector::Zero(2)));
  p.g = NonsmoothSpec::zero();
  Vector mu(2), Lv(2);
  mu << 1.0, L;
  Lv << 1.0, L;
  p.smoothness = Smoothness{mu, Lv};
  p.box_lo = Vector::Constant(2, -5.0);
  p.box_hi = Vector::Constant(2, 5.0);
  ProblemDesc desc;
  desc.kind = "example_3_1";
  desc.n = 2;
  desc.m = 2;
  desc.L = L;
  p.desc = desc;
  return p;
}

ProblemInstance example_4_4(double c) {
  if (!(c > 0.0)) throw InvalidInputError("example_4_4: c must be > 0");
  ProblemInstance p;
  p.name = "example_4_4";
  p.n = 2;
  p.m = 2;
  p.smooth.push_back(
      SmoothObjective::quadratic(Matrix::Identity(2, 2), Vector::Zero(2)));
  Vector grad(2);
  grad << c, 0.0;
  p.smooth.push_back(SmoothObjective::linear(grad));
  p.g = NonsmoothSpec::fixed_and_halfspace({{1, 0.0}}, {0});
  // Any L_2 > 0 upper-bounds a linear objective; recording 1 makes
  // L_max = 1, so PGMO runs with unit scaling on this instance.
  Vector mu(2), Lv(2);
  mu << 1.0, 0.0;
  Lv << 1.0, 1.0;
  p.smoothness = Smoothness{mu, Lv};
  Vector lo(2), hi(2);
  lo << 0.0, 0.0;
  hi << 5.0, 0.0;
  p.box_lo = lo;
  p.box_hi = hi;
  ProblemDesc desc;
  desc.kind = "example_4_4";
  desc.n = 2;
  desc.m = 2;
  desc.c = c;
  p.desc = desc;
  return p;
}

ProblemInstance scaled_problem(const ProblemInstance& p) {
  if (!p.smoothness) {
    throw ConfigError("scaled_problem: smoothness not recorded");
  }
  if (p.g.kind() == NonsmoothSpec::Kind::kWeightedL1 && p.g.weight() > 0.0) {
    throw InvalidInputError(
        "scaled_problem: a weighted l1 term cannot be shared across "
        "objectives after per-objective scaling");
  }
  ProblemInstance q;
  q.name = p.name + "_scaled";
  q.n = p.n;
  q.m = p.m;
  q.g = p.g;  // indicators and zero are invariant under positive scaling
  Vector mu(p.m), L(p.m);
  for (Index i = 0; i < p.m; ++i) {
    const double Li = p.smoothness->L[i];
    const auto& f = p.smooth[i];
    switch (f.kind()) {
      case SmoothObjective::Kind::kQuadratic:
        q.smooth.push_back(
            SmoothObjective::quadratic(f.A() / Li, f.b() / Li));
        break;
      case SmoothObjective::Kind::kLinear:
        q.smooth.push_back(SmoothObjective::linear(f.c() / Li));
        break;
      case SmoothObjective::Kind::kGeneric:
        q.smooth.push_back(SmoothObjective::generic(
            [f, Li](const Vector& x) { return f.value(x) / Li; },
            [f, Li](const Vector& x) { return Vector(f.gradient(x) / Li); }));
        break;
    }
    mu[i] = p.smoothness->mu[i] / Li;
    L[i] = 1.0;
  }
  q.smoothness = Smoothness{mu, L};
  q.box_lo = p.box_lo;
  q.box_hi = p.box_hi;
  return q;
}

ProblemInstance make_problem(const ProblemDesc& desc) {
  if (desc.kind == "quadratic_family") {
    return gen_quadratic_family(desc.n, desc.m, desc.kappa, desc.zeta,
                                desc.with_l1, desc.seed);
  }
  if (desc.kind == "example_3_1") return example_3_1(desc.L);
  if (desc.kind == "example_4_4") return example_4_4(desc.c);
  throw InvalidInputError("unknown problem kind: " + desc.kind);
}

ProblemInstance problem_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidInputError(std::string("problem json: ") + e.what());
  }
  if (!j.contains("kind")) throw InvalidInputError("problem json: missing kind");
  ProblemDesc desc;
  desc.kind = j.at("kind").get<std::string>();
  if (desc.kind == "quadratic_family") {
    desc.n = j.at("n").get<Index>();
    desc.m = j.value("m", 2);
    desc.kappa = j.at("kappa").get<double>();
    desc.zeta = j.value("zeta", 1.0);
    desc.with_l1 = j.value("with_l1", false);
    desc.seed = j.value("seed", std::uint64_t{0});
  } else if (desc.kind == "example_3_1") {
    desc.L = j.value("L", 1e3);
  } else if (desc.kind == "example_4_4") {
    desc.c = j.value("c", 1e-2);
  } else {
    throw InvalidInputError("unknown problem kind: " + desc.kind);
  }
  ProblemInstance p = make_problem(desc);
  if (j.contains("name")) p.name = j.at("name").get<std::string>();
  return p;
}

std::string problem_to_json(const ProblemInstance& p, bool include_matrices) {
  if (!p.desc) {
    throw InvalidInputError("problem_to_json: instance has no description");
  }
  const ProblemDesc& d = *p.desc;
  json j;
  j["kind"] = d.kind;
  j["name"] = p.name;
  if (d.kind == "quadratic_family") {
    j["n"] = d.n;
    j["m"] = d.m;
    j["kappa"] = d.kappa;
    j["zeta"] = d.zeta;
    j["with_l1"] = d.with_l1;
    j["seed"] = d.seed;
  } else if (d.kind == "example_3_1") {
    j["L"] = d.L;
  } else if (d.kind == "example_4_4") {
    j["c"] = d.c;
  }
  if (include_matrices) {
    json mats = json::array();
    json bs = json::array();
    for (const auto& f : p.smooth) {
      if (f.kind() != SmoothObjective::Kind::kQuadratic) continue;
      std::vector<double> flat(f.A().size());
      // row-major for the audit dump
      for (Index r = 0; r < f.A().rows(); ++r)
        for (Index c = 0; c < f.A().cols(); ++c)
          flat[static_cast<size_t>(r * f.A().cols() + c)] = f.A()(r, c);
      mats.push_back(flat);
      bs.push_back(std::vector<double>(f.b().data(), f.b().data() + f.b().size()));
    }
    j["A_row_major"] = mats;
    j["b"] = bs;
  }
  return j.dump();
}

}  // namespace spgmo
