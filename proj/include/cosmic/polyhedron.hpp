#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cosmic/cone2.hpp"
#include "cosmic/errors.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

// Halfspace row <u, x> <= eta of an H-polyhedron.
struct HRow {
  Vec normal;
  double offset;
};

// Intersection of finitely many halfspaces in R^d. May be empty or
// unbounded; emptiness is detected lazily by the operations that need it.
class PolyhedronH {
public:
  PolyhedronH(std::size_t dim, std::vector<HRow> rows) : dim_(dim), rows_(std::move(rows)) {
    if (dim_ < 1) throw DomainError("polyhedron dimension must be >= 1");
    for (const HRow& r : rows_) {
      if (r.normal.dim() != dim_) {
        throw DimensionMismatchError("polyhedron row normal has wrong dimension");
      }
      if (r.normal.norm() == 0.0) throw DomainError("polyhedron row normal must be nonzero");
      if (!std::isfinite(r.offset)) throw DomainError("polyhedron row offset must be finite");
    }
  }

  std::size_t dim() const { return dim_; }
  const std::vector<HRow>& rows() const { return rows_; }

  bool contains(const Vec& x, double tol = 1e-9) const {
    if (x.dim() != dim_) throw DimensionMismatchError("point dimension mismatch");
    for (const HRow& r : rows_) {
      if (dot(r.normal, x) > r.offset + tol) return false;
    }
    return true;
  }

private:
  std::size_t dim_;
  std::vector<HRow> rows_;
};

// Recession cone in H-form: drop the offsets. Exact for nonempty closed
// convex P; meaningless when P is empty (caller responsibility).
inline PolyhedronH recession_cone(const PolyhedronH& p) {
  std::vector<HRow> rows;
  rows.reserve(p.rows().size());
  for (const HRow& r : p.rows()) rows.push_back({r.normal, 0.0});
  return PolyhedronH(p.dim(), std::move(rows));
}

// Recession cone of a planar H-polyhedron, as an exact angular cone.
inline Cone2 recession_cone2(const PolyhedronH& p) {
  if (p.dim() != 2) throw UnsupportedDimensionError("recession_cone2 needs dimension 2");
  Cone2 k = Cone2::plane();
  for (const HRow& r : p.rows()) {
    k = intersect(k, Cone2::halfplane_with_outer_normal(r.normal));
  }
  return k;
}

// Minkowski decomposition conv(points) + cone(rays) of a planar H-polyhedron.
struct VertexRayDecomposition {
  std::vector<Vec> points;
  std::vector<Vec> rays;
};

namespace detail {

inline bool nearly_parallel(const Vec& a, const Vec& b, double tol = 1e-12) {
  // |a x b| relative to |a||b|
  const double cross = a[0] * b[1] - a[1] * b[0];
  return std::fabs(cross) <= tol * a.norm() * b.norm();
}

}  // namespace detail

// Brute-force vertex/ray decomposition by enumerating 2x2 active-constraint
// systems with feasibility filtering. Intended for small row counts
// (the callers cap at about a dozen rows).
inline VertexRayDecomposition decompose(const PolyhedronH& p, double feas_tol = 1e-9) {
  if (p.dim() != 2) throw UnsupportedDimensionError("decompose needs dimension 2");
  const auto& rows = p.rows();

  if (rows.empty()) {
    return {{Vec::zero(2)}, Cone2::plane().generators()};
  }

  bool any_independent_pair = false;
  for (std::size_t i = 0; i < rows.size() && !any_independent_pair; ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (!detail::nearly_parallel(rows[i].normal, rows[j].normal)) {
        any_independent_pair = true;
        break;
      }
    }
  }

  if (!any_independent_pair) {
    // All normals are parallel: the set is a slab/halfplane/line along the
    // common normal direction u. Reduce to an interval on the u-axis.
    const Vec u = rows[0].normal.normalized();
    double lo = -HUGE_VAL, hi = HUGE_VAL;
    for (const HRow& r : rows) {
      const double c = dot(r.normal, u);  // +-||normal||
      const double bound = r.offset / c;
      if (c > 0) hi = std::min(hi, bound);
      else lo = std::max(lo, bound);
    }
    if (lo > hi + feas_tol) throw EmptySetError("polyhedron is empty");
    const Vec v{-u[1], u[0]};  // lineality direction
    VertexRayDecomposition d;
    if (std::isfinite(lo)) d.points.push_back(lo * u);
    if (std::isfinite(hi) && (d.points.empty() || hi != lo)) d.points.push_back(hi * u);
    if (d.points.empty()) d.points.push_back(Vec::zero(2));
    d.rays.push_back(v);
    d.rays.push_back(-1.0 * v);
    if (!std::isfinite(lo)) d.rays.push_back(-1.0 * u);
    if (!std::isfinite(hi)) d.rays.push_back(u);
    return d;
  }

  // Pointed case: a nonempty planar polyhedron whose normals span the plane
  // contains no line, hence has at least one vertex.
  std::vector<Vec> vertices;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      const Vec& a = rows[i].normal;
      const Vec& b = rows[j].normal;
      const double det = a[0] * b[1] - a[1] * b[0];
      if (std::fabs(det) <= 1e-12 * a.norm() * b.norm()) continue;
      const Vec x{(rows[i].offset * b[1] - rows[j].offset * a[1]) / det,
                  (a[0] * rows[j].offset - b[0] * rows[i].offset) / det};
      if (!p.contains(x, feas_tol)) continue;
      bool dup = false;
      for (const Vec& v : vertices) {
        if (approx_equal(v, x, 1e-9 * (1.0 + x.norm()))) { dup = true; break; }
      }
      if (!dup) vertices.push_back(x);
    }
  }
  if (vertices.empty()) throw EmptySetError("polyhedron is empty");
  return {std::move(vertices), recession_cone2(p).generators()};
}

// Closed conic hull of A - B = {a - b : a in A, b in B}: the angular hull of
// all vertex differences together with the recession directions of A and the
// negated recession directions of B.
inline Cone2 conic_hull_of_difference(const PolyhedronH& a, const PolyhedronH& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw UnsupportedDimensionError("conic_hull_of_difference needs dimension 2");
  }
  const VertexRayDecomposition da = decompose(a);
  const VertexRayDecomposition db = decompose(b);
  std::vector<double> angles;
  for (const Vec& pa : da.points) {
    for (const Vec& pb : db.points) {
      const Vec d = pa - pb;
      if (d.norm() > 1e-12) angles.push_back(std::atan2(d[1], d[0]));
    }
  }
  for (const Vec& r : da.rays) angles.push_back(std::atan2(r[1], r[0]));
  for (const Vec& r : db.rays) angles.push_back(std::atan2(-r[1], -r[0]));
  return angular_hull(std::move(angles));
}

// Closure of the set of separating functionals U u {0}: the polar of
// ccone(A - B). Nonzero elements u satisfy sup<A,u> <= inf<B,u>; the result
// strictly contains {0} exactly when A and B can be separated.
inline Cone2 separating_functionals(const PolyhedronH& a, const PolyhedronH& b) {
  return polar(conic_hull_of_difference(a, b));
}

}  // namespace cosmic
