#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cosmic/cone2.hpp"
#include "cosmic/errors.hpp"
#include "cosmic/polyhedron.hpp"
#include "cosmic/root_find.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

// {x : <u, x> <= eta}
struct HalfspaceSet {
  HalfspaceSet(Vec u, double eta) : normal(std::move(u)), offset(eta) {
    if (normal.norm() == 0.0) throw DomainError("halfspace normal must be nonzero");
  }
  Vec normal;
  double offset;
};

// {x : <u, x> = eta}
struct HyperplaneSet {
  HyperplaneSet(Vec u, double eta) : normal(std::move(u)), offset(eta) {
    if (normal.norm() == 0.0) throw DomainError("hyperplane normal must be nonzero");
  }
  Vec normal;
  double offset;
};

// offset + span(basis). The basis is orthonormalized on construction
// (same subspace, friendlier projection); an empty basis is the single
// point {offset}.
struct AffineSubspaceSet {
  AffineSubspaceSet(std::vector<Vec> raw_basis, Vec off) : offset(std::move(off)) {
    for (Vec v : raw_basis) {
      if (v.dim() != offset.dim()) throw DimensionMismatchError("affine basis dimension mismatch");
      for (const Vec& b : basis) v -= dot(b, v) * b;
      if (v.norm() > 1e-10) basis.push_back(v.normalized());
    }
    if (basis.size() > offset.dim()) throw DomainError("affine basis larger than ambient dimension");
  }
  std::vector<Vec> basis;
  Vec offset;
};

// {x : lo <= x <= hi} componentwise.
struct BoxSet {
  BoxSet(Vec lo_, Vec hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
    if (lo.dim() != hi.dim()) throw DimensionMismatchError("box corner dimension mismatch");
    for (std::size_t i = 0; i < lo.dim(); ++i) {
      if (lo[i] > hi[i]) throw DomainError("box needs lo <= hi componentwise");
    }
  }
  Vec lo, hi;
};

struct BallSet {
  BallSet(Vec c, double r) : center(std::move(c)), radius(r) {
    if (!(r > 0)) throw DomainError("ball radius must be positive");
  }
  Vec center;
  double radius;
};

// {(x1, x2) : x1 > 0, x2 >= c/x1} for c > 0 -- the epigraph of the
// reciprocal branch. Closed (and convex) in R^2 despite the open x1
// condition, since x1 -> 0+ forces x2 -> +inf.
struct EpigraphReciprocalSet {
  explicit EpigraphReciprocalSet(double scale) : c(scale) {
    if (!(c > 0)) throw DomainError("epigraph scale must be positive");
  }
  double c;
};

using SetDescriptor = std::variant<HalfspaceSet, HyperplaneSet, AffineSubspaceSet, BoxSet, BallSet,
                                   EpigraphReciprocalSet, PolyhedronH>;

inline std::size_t set_dim(const SetDescriptor& s) {
  return std::visit(
      [](const auto& v) -> std::size_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfspaceSet> || std::is_same_v<T, HyperplaneSet>) {
          return v.normal.dim();
        } else if constexpr (std::is_same_v<T, AffineSubspaceSet>) {
          return v.offset.dim();
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          return v.lo.dim();
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return v.center.dim();
        } else if constexpr (std::is_same_v<T, EpigraphReciprocalSet>) {
          return 2;
        } else {
          return v.dim();
        }
      },
      s);
}

inline bool set_contains(const SetDescriptor& s, const Vec& x, double tol = 1e-9) {
  return std::visit(
      [&](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfspaceSet>) {
          return dot(v.normal, x) <= v.offset + tol;
        } else if constexpr (std::is_same_v<T, HyperplaneSet>) {
          return std::fabs(dot(v.normal, x) - v.offset) <= tol;
        } else if constexpr (std::is_same_v<T, AffineSubspaceSet>) {
          Vec r = x - v.offset;
          for (const Vec& b : v.basis) r -= dot(b, r) * b;
          return r.norm() <= tol;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          for (std::size_t i = 0; i < x.dim(); ++i) {
            if (x[i] < v.lo[i] - tol || x[i] > v.hi[i] + tol) return false;
          }
          return true;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          return (x - v.center).norm() <= v.radius + tol;
        } else if constexpr (std::is_same_v<T, EpigraphReciprocalSet>) {
          return x[0] > 0 && x[0] * x[1] >= v.c - tol;
        } else {
          return v.contains(x, tol);
        }
      },
      s);
}

namespace detail {

inline Vec project_halfspace(const Vec& u, double eta, const Vec& x) {
  const double t = (dot(u, x) - eta) / dot(u, u);
  return t > 0 ? x - t * u : x;
}

inline Vec project_hyperplane(const Vec& u, double eta, const Vec& x) {
  const double t = (dot(u, x) - eta) / dot(u, u);
  return x - t * u;
}

// Nearest point of the reciprocal epigraph. Infeasible points project onto
// the boundary curve (t, c/t); stationarity of the squared distance gives
// the quartic t^4 - x1 t^3 + c x2 t - c^2 = 0, solved on a sign-change
// bracket (the quartic is negative at 0+ and grows like t^4).
inline Vec project_epigraph_reciprocal(double c, const Vec& x, double tol) {
  if (x[0] > 0 && x[0] * x[1] >= c) return x;
  const double x1 = x[0], x2 = x[1];
  auto g = [=](double t) { return ((t - x1) * t * t * t) + c * x2 * t - c * c; };
  auto dg = [=](double t) { return 4.0 * t * t * t - 3.0 * x1 * t * t + c * x2; };

  double hi = std::max({1.0, x1 + 1.0, std::sqrt(c)});
  int guard = 0;
  while (g(hi) < 0 && guard++ < 200) hi *= 2.0;
  if (g(hi) < 0) throw NoConvergenceError("epigraph projection bracket failed");

  const double scale = std::max({1.0, c * c, std::fabs(x1) * hi * hi * hi, c * std::fabs(x2) * hi});
  double t = rootfind::solve_bracketed(g, dg, rootfind::Bracket{0.0, hi}, tol * scale, 300);
  for (int i = 0; i < 3; ++i) {  // polish to machine precision
    const double d = dg(t);
    if (d == 0.0) break;
    const double step = g(t) / d;
    if (t - step > 0) t -= step;
  }
  return Vec{t, c / t};
}

// Dykstra's algorithm over the halfspace rows: converges to the nearest
// point of the intersection, not merely a feasible point. Sweeps until the
// iterate moves less than tol, capped.
inline Vec project_polyhedron_dykstra(const PolyhedronH& p, const Vec& x, double tol,
                                      std::size_t max_sweeps) {
  if (p.rows().empty()) return x;
  Vec y = x;
  std::vector<Vec> inc(p.rows().size(), Vec::zero(p.dim()));
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    const Vec y_before = y;
    for (std::size_t i = 0; i < p.rows().size(); ++i) {
      const Vec z = y + inc[i];
      const Vec ynew = project_halfspace(p.rows()[i].normal, p.rows()[i].offset, z);
      inc[i] = z - ynew;
      y = ynew;
    }
    if ((y - y_before).norm() < tol) return y;
  }
  throw NoConvergenceError("Dykstra projection exceeded " + std::to_string(max_sweeps) +
                           " sweeps (empty or ill-conditioned polyhedron?)");
}

}  // namespace detail

// Nearest-point projection onto the described set. Closed-form everywhere
// except PolyhedronH (Dykstra) and EpigraphReciprocal (quartic root).
inline Vec project(const SetDescriptor& s, const Vec& x, double tol = 1e-12,
                   std::size_t dykstra_cap = 100000) {
  if (x.dim() != set_dim(s)) throw DimensionMismatchError("projection point dimension mismatch");
  return std::visit(
      [&](const auto& v) -> Vec {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfspaceSet>) {
          return detail::project_halfspace(v.normal, v.offset, x);
        } else if constexpr (std::is_same_v<T, HyperplaneSet>) {
          return detail::project_hyperplane(v.normal, v.offset, x);
        } else if constexpr (std::is_same_v<T, AffineSubspaceSet>) {
          Vec y = v.offset;
          for (const Vec& b : v.basis) y += dot(b, x - v.offset) * b;
          return y;
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          Vec y = x;
          for (std::size_t i = 0; i < y.dim(); ++i) y[i] = std::clamp(y[i], v.lo[i], v.hi[i]);
          return y;
        } else if constexpr (std::is_same_v<T, BallSet>) {
          const Vec d = x - v.center;
          const double n = d.norm();
          if (n <= v.radius) return x;
          return v.center + (v.radius / n) * d;
        } else if constexpr (std::is_same_v<T, EpigraphReciprocalSet>) {
          return detail::project_epigraph_reciprocal(v.c, x, tol);
        } else {
          return detail::project_polyhedron_dykstra(v, x, tol, dykstra_cap);
        }
      },
      s);
}

// Exact recession cone for the planar descriptors; nullopt when the set does
// not live in R^2 (no cone analysis there).
inline std::optional<Cone2> recession_cone2_of(const SetDescriptor& s) {
  if (set_dim(s) != 2) return std::nullopt;
  return std::visit(
      [](const auto& v) -> std::optional<Cone2> {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfspaceSet>) {
          return Cone2::halfplane_with_outer_normal(v.normal);
        } else if constexpr (std::is_same_v<T, HyperplaneSet>) {
          return Cone2::line(Vec{-v.normal[1], v.normal[0]});
        } else if constexpr (std::is_same_v<T, AffineSubspaceSet>) {
          if (v.basis.empty()) return Cone2::zero();
          if (v.basis.size() == 1) return Cone2::line(v.basis[0]);
          return Cone2::plane();
        } else if constexpr (std::is_same_v<T, BoxSet> || std::is_same_v<T, BallSet>) {
          return Cone2::zero();
        } else if constexpr (std::is_same_v<T, EpigraphReciprocalSet>) {
          return Cone2::sector(0.0, M_PI / 2.0);  // the nonnegative quadrant
        } else {
          return recession_cone2(v);
        }
      },
      s);
}

inline std::string set_name(const SetDescriptor& s) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfspaceSet>) return "halfspace";
        else if constexpr (std::is_same_v<T, HyperplaneSet>) return "hyperplane";
        else if constexpr (std::is_same_v<T, AffineSubspaceSet>) return "affine_subspace";
        else if constexpr (std::is_same_v<T, BoxSet>) return "box";
        else if constexpr (std::is_same_v<T, BallSet>) return "ball";
        else if constexpr (std::is_same_v<T, EpigraphReciprocalSet>) return "epigraph_reciprocal";
        else { (void)v; return "polyhedron"; }
      },
      s);
}

}  // namespace cosmic
