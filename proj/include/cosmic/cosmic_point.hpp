#pragma once

#include <cmath>

#include "cosmic/errors.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

// A point of the cosmic closure csm X = X u hzn X: either an ordinary
// (finite) vector or a direction dir x, canonically represented by the
// unit vector x/||x||.
class CosmicPoint {
public:
  static CosmicPoint finite(Vec x) { return CosmicPoint(std::move(x), false); }

  // The payload must already be a unit vector (within unit_tol).
  static CosmicPoint direction(Vec unit, double unit_tol = 1e-12) {
    if (std::abs(unit.norm() - 1.0) > unit_tol) {
      throw NonUnitDirectionError("direction representer must have unit norm, got ||u|| = " +
                                  std::to_string(unit.norm()));
    }
    return CosmicPoint(std::move(unit), true);
  }

  bool is_direction() const { return is_direction_; }
  bool is_finite() const { return !is_direction_; }

  const Vec& value() const { return value_; }

  std::size_t dim() const { return value_.dim(); }

  // Image under the embedding of csm X into the closed unit ball:
  // finite x -> x/(1+||x||), directions map to their unit representer.
  Vec embed() const {
    if (is_direction_) return value_;
    return value_ * (1.0 / (1.0 + value_.norm()));
  }

private:
  CosmicPoint(Vec v, bool is_dir) : value_(std::move(v)), is_direction_(is_dir) {}

  Vec value_;
  bool is_direction_ = false;
};

// dir x, represented by x/||x||. Positively homogeneous in x.
inline CosmicPoint direction_of(const Vec& x, double zero_tol = 1e-14) {
  return CosmicPoint::direction(x.normalized(zero_tol));
}

// Extended Poincare metric on csm X: the Euclidean metric after embedding
// into the closed unit ball. Symmetric, bounded by 2.
inline double poincare_distance(const CosmicPoint& p, const CosmicPoint& q) {
  if (p.dim() != q.dim()) {
    throw DimensionMismatchError("poincare_distance: points live in different dimensions");
  }
  return (p.embed() - q.embed()).norm();
}

// Directions are equal when their unit representers coincide within tol.
inline bool directions_equal(const CosmicPoint& p, const CosmicPoint& q, double tol = 1e-12) {
  return p.is_direction() && q.is_direction() && approx_equal(p.value(), q.value(), tol);
}

}  // namespace cosmic
