#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "cosmic/errors.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

inline constexpr double kAngleTol = 1e-12;
inline const double kTau = 2.0 * M_PI;

// Angle into [0, 2*pi), snapping values within kAngleTol of the wrap point to 0.
inline double canon_angle(double theta) {
  double r = std::fmod(theta, kTau);
  if (r < 0) r += kTau;
  if (r >= kTau - kAngleTol) r = 0.0;
  return r;
}

// Circular distance between two angles, in [0, pi].
inline double angle_distance(double a, double b) {
  double d = std::fabs(canon_angle(a) - canon_angle(b));
  return std::min(d, kTau - d);
}

enum class ConeKind { Zero, Ray, Line, Sector, Halfplane, Plane };

inline const char* to_string(ConeKind k) {
  switch (k) {
    case ConeKind::Zero: return "Zero";
    case ConeKind::Ray: return "Ray";
    case ConeKind::Line: return "Line";
    case ConeKind::Sector: return "Sector";
    case ConeKind::Halfplane: return "Halfplane";
    case ConeKind::Plane: return "Plane";
  }
  return "?";
}

// Closed convex cone in the plane, in angular-interval form. The six kinds
// are exactly the closed convex cones of R^2:
//   Zero        {0}
//   Ray         R+ * u(start)
//   Line        span of u(start), start in [0, pi)
//   Sector      directions in [start, start+width], 0 < width < pi
//   Halfplane   directions in [start, start+pi]
//   Plane       all of R^2
class Cone2 {
public:
  static Cone2 zero() { return Cone2(ConeKind::Zero, 0.0, 0.0); }
  static Cone2 plane() { return Cone2(ConeKind::Plane, 0.0, kTau); }

  static Cone2 ray(double angle) { return Cone2(ConeKind::Ray, canon_angle(angle), 0.0); }

  static Cone2 ray(const Vec& u) {
    require_dim2(u);
    if (u.norm() <= kAngleTol) throw DomainError("ray direction must be nonzero");
    return ray(std::atan2(u[1], u[0]));
  }

  static Cone2 line(double angle) {
    double a = canon_angle(angle);
    if (a >= M_PI) a = canon_angle(a - M_PI);
    if (a >= M_PI) a = 0.0;  // canon rounding at the seam
    return Cone2(ConeKind::Line, a, 0.0);
  }

  static Cone2 line(const Vec& u) {
    require_dim2(u);
    if (u.norm() <= kAngleTol) throw DomainError("line direction must be nonzero");
    return line(std::atan2(u[1], u[0]));
  }

  // Closed angular interval [start, start+width]; width is clamped to a kind:
  // ~0 -> Ray, (0,pi) -> Sector, ~pi -> Halfplane, >= 2pi -> Plane.
  static Cone2 sector(double start, double width) {
    if (width < -kAngleTol) throw DomainError("sector width must be nonnegative");
    if (width >= kTau - kAngleTol) return plane();
    if (width <= kAngleTol) return ray(start);
    if (std::fabs(width - M_PI) <= kAngleTol) return Cone2(ConeKind::Halfplane, canon_angle(start), M_PI);
    if (width > M_PI) throw DomainError("angular width in (pi, 2pi) is not a convex cone");
    return Cone2(ConeKind::Sector, canon_angle(start), width);
  }

  // Halfplane {x : <n, x> <= 0} for a nonzero normal n.
  static Cone2 halfplane_with_outer_normal(const Vec& n) {
    require_dim2(n);
    if (n.norm() <= kAngleTol) throw DomainError("halfplane normal must be nonzero");
    return sector(std::atan2(n[1], n[0]) + M_PI / 2.0, M_PI);
  }

  ConeKind kind() const { return kind_; }
  double start() const { return start_; }
  double width() const { return width_; }

  bool contains_angle(double theta, double tol = kAngleTol) const {
    switch (kind_) {
      case ConeKind::Zero: return false;
      case ConeKind::Plane: return true;
      case ConeKind::Ray: return angle_distance(theta, start_) <= tol;
      case ConeKind::Line:
        return std::min(angle_distance(theta, start_), angle_distance(theta, start_ + M_PI)) <= tol;
      case ConeKind::Sector:
      case ConeKind::Halfplane: {
        const double delta = canon_angle(theta - start_);
        return delta <= width_ + tol || delta >= kTau - tol;
      }
    }
    return false;
  }

  // Membership of a vector; the origin belongs to every cone.
  bool contains(const Vec& x, double tol = kAngleTol) const {
    require_dim2(x);
    if (x.norm() == 0.0) return true;
    return contains_angle(std::atan2(x[1], x[0]), tol);
  }

  // Angular distance from dir(x) to the cone (0 when inside).
  double angle_to(const Vec& x) const {
    require_dim2(x);
    if (x.norm() == 0.0) return 0.0;
    const double theta = std::atan2(x[1], x[0]);
    switch (kind_) {
      case ConeKind::Zero: return M_PI;  // no direction belongs
      case ConeKind::Plane: return 0.0;
      case ConeKind::Ray: return angle_distance(theta, start_);
      case ConeKind::Line:
        return std::min(angle_distance(theta, start_), angle_distance(theta, start_ + M_PI));
      case ConeKind::Sector:
      case ConeKind::Halfplane: {
        const double delta = canon_angle(theta - start_);
        if (delta <= width_) return 0.0;
        return std::min(delta - width_, kTau - delta);
      }
    }
    return M_PI;
  }

  Cone2 negated() const {
    switch (kind_) {
      case ConeKind::Zero:
      case ConeKind::Plane: return *this;
      case ConeKind::Ray: return ray(start_ + M_PI);
      case ConeKind::Line: return *this;
      case ConeKind::Sector: return sector(start_ + M_PI, width_);
      case ConeKind::Halfplane: return sector(start_ + M_PI, M_PI);
    }
    return *this;
  }

  // Finite set of unit generators whose conic hull is the cone.
  std::vector<Vec> generators() const {
    switch (kind_) {
      case ConeKind::Zero: return {};
      case ConeKind::Ray: return {unit(start_)};
      case ConeKind::Line: return {unit(start_), unit(start_ + M_PI)};
      case ConeKind::Sector: return {unit(start_), unit(start_ + width_)};
      case ConeKind::Halfplane:
        return {unit(start_), unit(start_ + M_PI / 2.0), unit(start_ + M_PI)};
      case ConeKind::Plane:
        return {unit(0.0), unit(M_PI / 2.0), unit(M_PI), unit(3.0 * M_PI / 2.0)};
    }
    return {};
  }

  std::string str() const {
    switch (kind_) {
      case ConeKind::Zero: return "Zero";
      case ConeKind::Plane: return "Plane";
      case ConeKind::Ray: return "Ray(" + std::to_string(start_) + ")";
      case ConeKind::Line: return "Line(" + std::to_string(start_) + ")";
      case ConeKind::Sector:
        return "Sector(" + std::to_string(start_) + ", width=" + std::to_string(width_) + ")";
      case ConeKind::Halfplane: return "Halfplane(" + std::to_string(start_) + ")";
    }
    return "?";
  }

  static Vec unit(double angle) { return Vec{std::cos(angle), std::sin(angle)}; }

private:
  Cone2(ConeKind k, double s, double w) : kind_(k), start_(s), width_(w) {}

  static void require_dim2(const Vec& v) {
    if (v.dim() != 2) throw UnsupportedDimensionError("planar cone calculus needs dimension 2");
  }

  ConeKind kind_;
  double start_;
  double width_;
};

struct ConeClassification {
  ConeKind kind;
  bool is_ray;
  bool is_linear_subspace;
};

inline ConeClassification classify(const Cone2& k) {
  const ConeKind kk = k.kind();
  return ConeClassification{
      kk,
      kk == ConeKind::Ray,
      kk == ConeKind::Zero || kk == ConeKind::Line || kk == ConeKind::Plane,
  };
}

// Polar cone K^- = {x : <x, k> <= 0 for all k in K}. Exact in angular form.
inline Cone2 polar(const Cone2& k) {
  switch (k.kind()) {
    case ConeKind::Zero: return Cone2::plane();
    case ConeKind::Plane: return Cone2::zero();
    case ConeKind::Ray: return Cone2::sector(k.start() + M_PI / 2.0, M_PI);
    case ConeKind::Line: return Cone2::line(k.start() + M_PI / 2.0);
    case ConeKind::Sector: return Cone2::sector(k.start() + k.width() + M_PI / 2.0, M_PI - k.width());
    case ConeKind::Halfplane: return Cone2::ray(k.start() + 3.0 * M_PI / 2.0);
  }
  return Cone2::zero();
}

// K^+ = -K^-.
inline Cone2 polar_plus(const Cone2& k) { return polar(k).negated(); }

// Orthogonal complement of the linear span of K.
inline Cone2 perp(const Cone2& k) {
  switch (k.kind()) {
    case ConeKind::Zero: return Cone2::plane();
    case ConeKind::Ray:
    case ConeKind::Line: return Cone2::line(k.start() + M_PI / 2.0);
    default: return Cone2::zero();
  }
}

namespace detail {

// Closed arc [lo, lo+width] on the circle, width in [0, pi].
struct Arc {
  double lo;
  double width;
};

inline std::vector<Arc> cone_arcs(const Cone2& k) {
  switch (k.kind()) {
    case ConeKind::Zero: return {};
    case ConeKind::Ray: return {{k.start(), 0.0}};
    case ConeKind::Line: return {{k.start(), 0.0}, {canon_angle(k.start() + M_PI), 0.0}};
    case ConeKind::Sector:
    case ConeKind::Halfplane: return {{k.start(), k.width()}};
    case ConeKind::Plane: return {{0.0, kTau}};  // callers shortcut Plane first
  }
  return {};
}

}  // namespace detail

// Exact angular intersection of two closed convex planar cones.
inline Cone2 intersect(const Cone2& k1, const Cone2& k2) {
  using detail::Arc;
  if (k1.kind() == ConeKind::Zero || k2.kind() == ConeKind::Zero) return Cone2::zero();
  if (k1.kind() == ConeKind::Plane) return k2;
  if (k2.kind() == ConeKind::Plane) return k1;

  std::vector<double> points;
  std::vector<Arc> arcs;
  for (const Arc& a : detail::cone_arcs(k1)) {
    for (const Arc& b : detail::cone_arcs(k2)) {
      for (double shift : {-kTau, 0.0, kTau}) {
        const double lo = std::max(a.lo, b.lo + shift);
        const double hi = std::min(a.lo + a.width, b.lo + b.width + shift);
        if (hi < lo - kAngleTol) continue;
        const double w = std::max(0.0, hi - lo);
        if (w <= kAngleTol) {
          points.push_back(canon_angle(lo));
        } else {
          arcs.push_back({canon_angle(lo), w});
        }
      }
    }
  }

  // Dedupe point angles and drop the ones already covered by an arc.
  std::vector<double> pts;
  for (double p : points) {
    bool dup = false;
    for (double q : pts) {
      if (angle_distance(p, q) <= kAngleTol) { dup = true; break; }
    }
    for (const Arc& a : arcs) {
      const double d = canon_angle(p - a.lo);
      if (d <= a.width + kAngleTol || d >= kTau - kAngleTol) { dup = true; break; }
    }
    if (!dup) pts.push_back(p);
  }

  // Dedupe arcs (shift redundancy can repeat an identical arc).
  std::vector<Arc> uarcs;
  for (const Arc& a : arcs) {
    bool dup = false;
    for (const Arc& b : uarcs) {
      if (angle_distance(a.lo, b.lo) <= kAngleTol && std::fabs(a.width - b.width) <= kAngleTol) {
        dup = true;
        break;
      }
    }
    if (!dup) uarcs.push_back(a);
  }

  if (uarcs.empty()) {
    if (pts.empty()) return Cone2::zero();
    if (pts.size() == 1) return Cone2::ray(pts[0]);
    if (pts.size() == 2 && std::fabs(angle_distance(pts[0], pts[1]) - M_PI) <= kAngleTol) {
      return Cone2::line(pts[0]);
    }
    throw DomainError("cone intersection produced a non-convex angle set");
  }

  if (uarcs.size() == 1 && pts.empty()) return Cone2::sector(uarcs[0].lo, uarcs[0].width);

  // Touching arcs can appear when inputs share a boundary ray; merge them.
  std::sort(uarcs.begin(), uarcs.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
  Arc merged = uarcs[0];
  for (std::size_t i = 1; i < uarcs.size(); ++i) {
    const double gap = canon_angle(uarcs[i].lo - (merged.lo + merged.width));
    if (gap <= kAngleTol || gap >= kTau - kAngleTol) {
      const double hi = std::max(merged.lo + merged.width, uarcs[i].lo + uarcs[i].width);
      merged.width = hi - merged.lo;
    } else if (angle_distance(merged.lo, uarcs[i].lo + uarcs[i].width) <= kAngleTol) {
      merged.lo = uarcs[i].lo;
      merged.width += uarcs[i].width;
    } else {
      throw DomainError("cone intersection produced a non-convex angle set");
    }
  }
  if (!pts.empty()) throw DomainError("cone intersection produced a non-convex angle set");
  return Cone2::sector(merged.lo, merged.width);
}

// K1 == K2 up to angular tolerance.
inline bool cone_equal(const Cone2& a, const Cone2& b, double tol = kAngleTol) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case ConeKind::Zero:
    case ConeKind::Plane: return true;
    case ConeKind::Ray: return angle_distance(a.start(), b.start()) <= tol;
    case ConeKind::Line: {
      const double d = angle_distance(a.start(), b.start());
      return std::min(d, std::fabs(d - M_PI)) <= tol;
    }
    case ConeKind::Sector:
    case ConeKind::Halfplane:
      return angle_distance(a.start(), b.start()) <= tol && std::fabs(a.width() - b.width()) <= tol;
  }
  return false;
}

// inner subseteq outer, up to angular tolerance.
inline bool cone_contains(const Cone2& outer, const Cone2& inner, double tol = kAngleTol) {
  switch (inner.kind()) {
    case ConeKind::Zero: return true;
    case ConeKind::Plane: return outer.kind() == ConeKind::Plane;
    case ConeKind::Ray: return outer.contains_angle(inner.start(), tol);
    case ConeKind::Line:
      return outer.contains_angle(inner.start(), tol) &&
             outer.contains_angle(inner.start() + M_PI, tol);
    case ConeKind::Sector:
    case ConeKind::Halfplane: {
      if (outer.kind() == ConeKind::Plane) return true;
      if (outer.kind() == ConeKind::Sector || outer.kind() == ConeKind::Halfplane) {
        const double delta = canon_angle(inner.start() - outer.start());
        const double d0 = (delta >= kTau - tol) ? 0.0 : delta;
        return d0 <= outer.width() + tol && d0 + inner.width() <= outer.width() + tol;
      }
      return false;
    }
  }
  return false;
}

// Smallest closed convex cone containing the given ray directions
// (angles in radians). Exceeding any closed halfplane yields the plane.
inline Cone2 angular_hull(std::vector<double> angles) {
  if (angles.empty()) return Cone2::zero();
  for (double& a : angles) a = canon_angle(a);
  std::sort(angles.begin(), angles.end());
  std::vector<double> uniq;
  for (double a : angles) {
    if (uniq.empty() || angle_distance(uniq.back(), a) > kAngleTol) uniq.push_back(a);
  }
  if (uniq.size() > 1 && angle_distance(uniq.front(), uniq.back()) <= kAngleTol) uniq.pop_back();
  if (uniq.size() == 1) return Cone2::ray(uniq[0]);

  // Largest circular gap between consecutive directions determines the hull.
  const std::size_t m = uniq.size();
  double max_gap = -1.0;
  std::size_t gap_end = 0;  // index of the angle that follows the largest gap
  for (std::size_t i = 0; i < m; ++i) {
    const double next = (i + 1 < m) ? uniq[i + 1] : uniq[0] + kTau;
    const double gap = next - uniq[i];
    if (gap > max_gap) {
      max_gap = gap;
      gap_end = (i + 1 < m) ? i + 1 : 0;
    }
  }
  const double span = kTau - max_gap;
  const double start = uniq[gap_end];
  if (span <= kAngleTol) return Cone2::ray(start);
  if (span > M_PI + kAngleTol) return Cone2::plane();
  if (span < M_PI - kAngleTol) return Cone2::sector(start, span);

  // Span of (about) pi: line when only the two boundary rays occur,
  // halfplane when some direction lies strictly inside.
  bool has_interior = false;
  for (double a : uniq) {
    if (angle_distance(a, start) > kAngleTol && angle_distance(a, start + span) > kAngleTol) {
      has_interior = true;
      break;
    }
  }
  return has_interior ? Cone2::sector(start, M_PI) : Cone2::line(start);
}

}  // namespace cosmic
