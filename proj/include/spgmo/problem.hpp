#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spgmo/nonsmooth.hpp"
#include "spgmo/types.hpp"

namespace spgmo {

/// One smooth objective f_i: value + gradient oracles plus a class tag.
/// Quadratic and linear objectives carry their data so curvatures, scaled
/// copies and exact minimizers can be derived from them.
class SmoothObjective {
 public:
  enum class Kind { kGeneric, kQuadratic, kLinear };

  using ValueFn = std::function<double(const Vector&)>;
  using GradFn = std::function<Vector(const Vector&)>;

  /// f(x) = 1/2 <x, A x> + <b, x>; A must be symmetric PSD.
  static SmoothObjective quadratic(Matrix A, Vector b);
  /// f(x) = <c, x>.
  static SmoothObjective linear(Vector c);
  static SmoothObjective generic(ValueFn value, GradFn gradient);

  double value(const Vector& x) const;
  Vector gradient(const Vector& x) const;

  Kind kind() const { return kind_; }
  bool is_linear() const { return kind_ == Kind::kLinear; }
  const Matrix& A() const { return A_; }
  const Vector& b() const { return b_; }
  const Vector& c() const { return c_; }

  /// Unconstrained minimum value of a quadratic objective (solves A x = -b).
  double quadratic_min_value() const;

 private:
  SmoothObjective() = default;
  Kind kind_ = Kind::kGeneric;
  ValueFn value_;
  GradFn grad_;
  Matrix A_;
  Vector b_, c_;
};

/// Per-objective (mu_i, L_i) pairs, 0 <= mu_i <= L_i, L_i > 0.
struct Smoothness {
  Vector mu;
  Vector L;
};

/// Construction parameters, kept on the instance for serialization.
struct ProblemDesc {
  std::string kind;  // "quadratic_family" | "example_3_1" | "example_4_4"
  Index n = 0, m = 0;
  double kappa = 1.0, zeta = 1.0;
  bool with_l1 = false;
  std::uint64_t seed = 0;
  double L = 0.0;  // example_3_1
  double c = 0.0;  // example_4_4
};

/// Immutable problem model: m smooth objectives, one shared nonsmooth term,
/// optional smoothness record, and a box for start-point sampling.  All
/// oracles are pure functions of their inputs; instances are safe to share
/// across threads.
struct ProblemInstance {
  std::string name;
  Index n = 0;
  Index m = 0;
  std::vector<SmoothObjective> smooth;
  NonsmoothSpec g = NonsmoothSpec::zero();
  std::optional<Smoothness> smoothness;
  Vector box_lo, box_hi;
  std::optional<ProblemDesc> desc;

  /// F_i(x) = f_i(x) + g(x); +inf per objective when an indicator is violated.
  Vector F(const Vector& x) const;
  /// Row i is the gradient of f_i at x.
  Matrix jacobian(const Vector& x) const;
  /// Smooth parts only, without g.
  Vector smooth_values(const Vector& x) const;

  bool has_smoothness() const { return smoothness.has_value(); }
  double L_max() const;
  double mu_min() const;
  /// min_i mu_i / L_i.
  double mu_hat() const;

  void validate_point(const Vector& x) const;
};

/// Table-style random quadratic family.  Objective i is
/// f_i(x) = 1/2 <x, A_i x> + <b_i, x> with A_i = H_i D_i H_i^T, H_i a seeded
/// random orthogonal matrix (QR of a Gaussian matrix, sign-fixed) and D_i
/// spanning [1, kappa] for objective 1 (and objectives >= 3), [zeta, zeta*kappa]
/// for objective 2.  Spectrum endpoints are placed exactly so the recorded
/// (mu_i, L_i) are exact; interior eigenvalues are log-uniform.  Anchors t_i
/// are seeded on the sphere of radius (box width)/4 and b_i = -A_i t_i, so
/// the per-objective minimizers differ.  Sampling box is +-n per coordinate.
/// g = WeightedL1(1/n) when with_l1, else Zero.  Deterministic in seed.
ProblemInstance gen_quadratic_family(Index n, Index m, double kappa,
                                     double zeta, bool with_l1,
                                     std::uint64_t seed);

/// Bi-objective f_1 = 1/2 ||x||^2, f_2 = (L/2) ||x||^2 on R^2, g = 0.
/// The unique Pareto solution is the origin.
ProblemInstance example_3_1(double L);

/// f_1 = 1/2 ||x||^2, f_2 = c x_1 on X = {x_1 >= 0, x_2 = 0}; objective 2 is
/// tagged linear for per-class scaling.  Unique Pareto solution (0, 0).
ProblemInstance example_4_4(double c);

/// The scaled problem F^L with f_i' = f_i / L_i (and g unchanged, which
/// requires g to be Zero or an indicator).  Records smoothness (mu_i/L_i, 1).
ProblemInstance scaled_problem(const ProblemInstance& p);

/// Dispatch on a description.
ProblemInstance make_problem(const ProblemDesc& desc);

/// Problem description JSON:
///   {"kind": "quadratic_family", "n":, "m":, "kappa":, "zeta":, "with_l1":, "seed":}
///   {"kind": "example_3_1", "L":}
///   {"kind": "example_4_4", "c":}
/// to_json can embed the dense quadratic data (row-major) for audits.
ProblemInstance problem_from_json(const std::string& json_text);
std::string problem_to_json(const ProblemInstance& p,
                            bool include_matrices = false);

}  // namespace spgmo
