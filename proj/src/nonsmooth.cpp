#include "spgmo/nonsmooth.hpp"

#include <algorithm>
#include <cmath>

#include "spgmo/errors.hpp"

namespace spgmo {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

NonsmoothSpec NonsmoothSpec::zero() {
  NonsmoothSpec g;
  g.kind_ = Kind::kZero;
  return g;
}

NonsmoothSpec NonsmoothSpec::weighted_l1(double weight) {
  if (weight < 0.0) throw InvalidInputError("weighted_l1: weight must be >= 0");
  NonsmoothSpec g;
  g.kind_ = Kind::kWeightedL1;
  g.weight_ = weight;
  return g;
}

NonsmoothSpec NonsmoothSpec::box(Vector lo, Vector hi) {
  if (lo.size() != hi.size()) throw InvalidInputError("box: size mismatch");
  for (Index i = 0; i < lo.size(); ++i) {
    if (lo[i] > hi[i]) throw InvalidInputError("box: requires l <= u");
  }
  NonsmoothSpec g;
  g.kind_ = Kind::kBox;
  g.lo_ = std::move(lo);
  g.hi_ = std::move(hi);
  return g;
}

NonsmoothSpec NonsmoothSpec::fixed_and_halfspace(
    std::vector<std::pair<Index, double>> fixed, std::vector<Index> nonneg) {
  NonsmoothSpec g;
  g.kind_ = Kind::kFixedAndHalfspace;
  g.fixed_ = std::move(fixed);
  g.nonneg_ = std::move(nonneg);
  return g;
}

double NonsmoothSpec::value(const Vector& x) const {
  switch (kind_) {
    case Kind::kZero:
      return 0.0;
    case Kind::kWeightedL1:
      return weight_ * x.lpNorm<1>();
    case Kind::kBox: {
      for (Index i = 0; i < x.size(); ++i) {
        if (x[i] < lo_[i] - kFeasTol || x[i] > hi_[i] + kFeasTol) return kInf;
      }
      return 0.0;
    }
    case Kind::kFixedAndHalfspace: {
      for (const auto& [i, v] : fixed_) {
        if (std::abs(x[i] - v) > kFeasTol) return kInf;
      }
      for (Index i : nonneg_) {
        if (x[i] < -kFeasTol) return kInf;
      }
      return 0.0;
    }
  }
  return 0.0;
}

Vector NonsmoothSpec::prox(double beta, const Vector& v) const {
  if (!(beta > 0.0)) throw InvalidInputError("prox: beta must be > 0");
  switch (kind_) {
    case Kind::kZero:
      return v;
    case Kind::kWeightedL1: {
      const double t = beta * weight_;
      Vector y(v.size());
      for (Index i = 0; i < v.size(); ++i) {
        y[i] = std::copysign(std::max(std::abs(v[i]) - t, 0.0), v[i]);
      }
      return y;
    }
    case Kind::kBox: {
      Vector y(v.size());
      for (Index i = 0; i < v.size(); ++i) {
        y[i] = std::min(std::max(v[i], lo_[i]), hi_[i]);
      }
      return y;
    }
    case Kind::kFixedAndHalfspace: {
      Vector y = v;
      for (const auto& [i, val] : fixed_) y[i] = val;
      for (Index i : nonneg_) y[i] = std::max(y[i], 0.0);
      return y;
    }
  }
  return v;
}

}  // namespace spgmo
