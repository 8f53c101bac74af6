#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "spgmo/types.hpp"

namespace spgmo {

/// Shared nonsmooth term g.  One g is common to all objectives; the dual
/// direction solver recovers its primal through a single prox of this term.
///
/// Variants:
///   Zero               g = 0
///   WeightedL1         g(x) = w * ||x||_1
///   Box                g = indicator of {l <= x <= u} (entries may be +-inf)
///   FixedAndHalfspace  g = indicator of {x_i = v_i (i fixed), x_j >= 0 (j nonneg)}
class NonsmoothSpec {
 public:
  enum class Kind { kZero, kWeightedL1, kBox, kFixedAndHalfspace };

  /// Feasibility tolerance for "x in X" decisions of the indicator variants.
  static constexpr double kFeasTol = 1e-12;

  static NonsmoothSpec zero();
  static NonsmoothSpec weighted_l1(double weight);
  static NonsmoothSpec box(Vector lo, Vector hi);
  static NonsmoothSpec fixed_and_halfspace(
      std::vector<std::pair<Index, double>> fixed, std::vector<Index> nonneg);

  Kind kind() const { return kind_; }
  bool is_indicator() const {
    return kind_ == Kind::kBox || kind_ == Kind::kFixedAndHalfspace;
  }
  double weight() const { return weight_; }

  /// g(x); +inf when an indicator constraint is violated beyond kFeasTol.
  double value(const Vector& x) const;

  /// argmin_y  beta * g(y) + 1/2 ||y - v||^2, beta > 0.
  /// Zero -> v; WeightedL1 -> soft-threshold at beta*w; indicators ->
  /// Euclidean projection (beta irrelevant).
  Vector prox(double beta, const Vector& v) const;

  bool feasible(const Vector& x) const {
    return value(x) < std::numeric_limits<double>::infinity();
  }

 private:
  NonsmoothSpec() = default;

  Kind kind_ = Kind::kZero;
  double weight_ = 0.0;                             // WeightedL1
  Vector lo_, hi_;                                  // Box
  std::vector<std::pair<Index, double>> fixed_;     // FixedAndHalfspace
  std::vector<Index> nonneg_;
};

}  // namespace spgmo
