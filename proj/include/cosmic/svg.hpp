#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "cosmic/errors.hpp"
#include "cosmic/orbit.hpp"
#include "cosmic/sets.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

namespace svgdetail {

inline std::string fmt6(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

struct Frame {
  double wx0, wy0, wx1, wy1;  // world box (square)
  double size;                // canvas pixels

  double X(double x) const { return (x - wx0) / (wx1 - wx0) * size; }
  double Y(double y) const { return size - (y - wy0) / (wy1 - wy0) * size; }
  std::string pt(const Vec& p) const { return fmt6(X(p[0])) + "," + fmt6(Y(p[1])); }
};

inline Frame make_frame(const std::vector<OrbitRecord>& orbit, const std::vector<Vec>& extra) {
  double x0 = HUGE_VAL, y0 = HUGE_VAL, x1 = -HUGE_VAL, y1 = -HUGE_VAL;
  auto eat = [&](const Vec& p) {
    x0 = std::min(x0, p[0]);
    x1 = std::max(x1, p[0]);
    y0 = std::min(y0, p[1]);
    y1 = std::max(y1, p[1]);
  };
  for (const OrbitRecord& r : orbit) eat(r.x);
  for (const Vec& p : extra) eat(p);
  double w = x1 - x0, h = y1 - y0;
  if (!(w > 1e-9)) { x0 -= 1.0; x1 += 1.0; w = x1 - x0; }
  if (!(h > 1e-9)) { y0 -= 1.0; y1 += 1.0; h = y1 - y0; }
  x0 -= 0.1 * w; x1 += 0.1 * w;
  y0 -= 0.1 * h; y1 += 0.1 * h;
  // Square world box so the drawing is isometric.
  const double cx = 0.5 * (x0 + x1), cy = 0.5 * (y0 + y1);
  const double half = 0.5 * std::max(x1 - x0, y1 - y0);
  return Frame{cx - half, cy - half, cx + half, cy + half, 800.0};
}

// Segment of the line <u,x> = eta visible inside the frame, as a t-interval
// around the foot point along the line direction.
inline bool clip_line(const Frame& f, const Vec& u, double eta, Vec& p_out, Vec& q_out) {
  const double nn = u[0] * u[0] + u[1] * u[1];
  const Vec p0{u[0] * eta / nn, u[1] * eta / nn};
  const Vec d{-u[1] / std::sqrt(nn), u[0] / std::sqrt(nn)};
  double tlo = -HUGE_VAL, thi = HUGE_VAL;
  auto slab = [&](double origin, double dir, double lo, double hi) {
    if (std::fabs(dir) < 1e-15) return origin >= lo && origin <= hi;
    double a = (lo - origin) / dir, b = (hi - origin) / dir;
    if (a > b) std::swap(a, b);
    tlo = std::max(tlo, a);
    thi = std::min(thi, b);
    return true;
  };
  if (!slab(p0[0], d[0], f.wx0, f.wx1)) return false;
  if (!slab(p0[1], d[1], f.wy0, f.wy1)) return false;
  if (tlo >= thi) return false;
  p_out = p0 + tlo * d;
  q_out = p0 + thi * d;
  return true;
}

// Frame rectangle clipped against the halfplane <u,x> <= eta.
inline std::vector<Vec> clip_rect_halfplane(const Frame& f, const Vec& u, double eta) {
  std::vector<Vec> poly = {Vec{f.wx0, f.wy0}, Vec{f.wx1, f.wy0}, Vec{f.wx1, f.wy1},
                           Vec{f.wx0, f.wy1}};
  std::vector<Vec> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Vec& a = poly[i];
    const Vec& b = poly[(i + 1) % poly.size()];
    const double fa = dot(u, a) - eta;
    const double fb = dot(u, b) - eta;
    if (fa <= 0) out.push_back(a);
    if ((fa < 0 && fb > 0) || (fa > 0 && fb < 0)) {
      const double t = fa / (fa - fb);
      out.push_back(a + t * (b - a));
    }
  }
  return out;
}

inline void draw_polygon(std::string& svg, const Frame& f, const std::vector<Vec>& pts,
                         const std::string& fill, const std::string& cls) {
  if (pts.size() < 3) return;
  svg += "  <polygon class=\"" + cls + "\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) svg += ' ';
    svg += f.pt(pts[i]);
  }
  svg += "\" fill=\"" + fill + "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
}

inline void draw_line(std::string& svg, const Frame& f, const Vec& p, const Vec& q,
                      const std::string& stroke, const std::string& cls) {
  svg += "  <line class=\"" + cls + "\" x1=\"" + fmt6(f.X(p[0])) + "\" y1=\"" + fmt6(f.Y(p[1])) +
         "\" x2=\"" + fmt6(f.X(q[0])) + "\" y2=\"" + fmt6(f.Y(q[1])) + "\" stroke=\"" + stroke +
         "\" stroke-width=\"1.5\"/>\n";
}

inline void draw_set(std::string& svg, const Frame& f, const SetDescriptor& s,
                     const std::string& stroke) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, HalfspaceSet>) {
          draw_polygon(svg, f, clip_rect_halfplane(f, v.normal, v.offset), stroke, "set-fill");
          Vec p, q;
          if (clip_line(f, v.normal, v.offset, p, q)) draw_line(svg, f, p, q, stroke, "set-boundary");
        } else if constexpr (std::is_same_v<T, HyperplaneSet>) {
          Vec p, q;
          if (clip_line(f, v.normal, v.offset, p, q)) draw_line(svg, f, p, q, stroke, "set-boundary");
        } else if constexpr (std::is_same_v<T, AffineSubspaceSet>) {
          if (v.basis.size() == 1) {
            const Vec& d = v.basis[0];
            const Vec n{-d[1], d[0]};
            Vec p, q;
            if (clip_line(f, n, dot(n, v.offset), p, q)) draw_line(svg, f, p, q, stroke, "set-boundary");
          }
        } else if constexpr (std::is_same_v<T, BoxSet>) {
          svg += "  <rect class=\"set-boundary\" x=\"" + fmt6(f.X(v.lo[0])) + "\" y=\"" +
                 fmt6(f.Y(v.hi[1])) + "\" width=\"" + fmt6(f.X(v.hi[0]) - f.X(v.lo[0])) +
                 "\" height=\"" + fmt6(f.Y(v.lo[1]) - f.Y(v.hi[1])) + "\" fill=\"" + stroke +
                 "\" fill-opacity=\"0.15\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
        } else if constexpr (std::is_same_v<T, BallSet>) {
          const double r = v.radius / (f.wx1 - f.wx0) * f.size;
          svg += "  <circle class=\"set-boundary\" cx=\"" + fmt6(f.X(v.center[0])) + "\" cy=\"" +
                 fmt6(f.Y(v.center[1])) + "\" r=\"" + fmt6(r) + "\" fill=\"" + stroke +
                 "\" fill-opacity=\"0.15\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
        } else if constexpr (std::is_same_v<T, EpigraphReciprocalSet>) {
          if (f.wy1 <= 0 || f.wx1 <= 0) return;
          const double tlo = std::max(1e-9, v.c / f.wy1);
          const double thi = f.wx1;
          if (thi <= tlo) return;
          const int n = 256;
          std::vector<Vec> curve;
          curve.reserve(n + 1);
          for (int i = 0; i <= n; ++i) {
            const double t = tlo * std::pow(thi / tlo, static_cast<double>(i) / n);
            curve.push_back(Vec{t, v.c / t});
          }
          std::vector<Vec> region = curve;
          region.push_back(Vec{thi, f.wy1});
          draw_polygon(svg, f, region, stroke, "set-fill");
          svg += "  <polyline class=\"set-boundary\" points=\"";
          for (std::size_t i = 0; i < curve.size(); ++i) {
            if (i) svg += ' ';
            svg += f.pt(curve[i]);
          }
          svg += "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.5\"/>\n";
        } else {  // PolyhedronH
          for (const HRow& r : v.rows()) {
            Vec p, q;
            if (clip_line(f, r.normal, r.offset, p, q)) draw_line(svg, f, p, q, stroke, "set-boundary");
          }
        }
      },
      s);
}

}  // namespace svgdetail

// Deterministic SVG 1.1 picture of a planar orbit: set boundaries with a
// shaded feasible side, the orbit (b_n) as red dots, the intermediate a_n
// as blue dots, and the detected limit direction as an arrow from the view
// center. Byte-identical output for identical inputs.
inline std::string render_svg(const std::vector<SetDescriptor>& sets,
                              const std::vector<OrbitRecord>& orbit, const std::vector<Vec>& a_seq,
                              const std::optional<Vec>& limit_dir) {
  using namespace svgdetail;
  if (orbit.empty()) throw DomainError("render_svg: empty orbit");
  if (orbit.front().x.dim() != 2) throw UnsupportedDimensionError("render_svg needs dimension 2");

  const Frame f = make_frame(orbit, a_seq);
  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" height=\"800\" "
         "viewBox=\"0 0 800 800\">\n";
  svg += "  <defs>\n    <marker id=\"arrowhead\" markerWidth=\"10\" markerHeight=\"8\" "
         "refX=\"9\" refY=\"4\" orient=\"auto\">\n      <polygon points=\"0,0 10,4 0,8\" "
         "fill=\"#2ca02c\"/>\n    </marker>\n  </defs>\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"800\" height=\"800\" fill=\"white\"/>\n";

  const char* palette[] = {"#000000", "#1f77b4", "#7f7f7f"};
  for (std::size_t i = 0; i < sets.size(); ++i) {
    draw_set(svg, f, sets[i], palette[std::min<std::size_t>(i, 2)]);
  }

  for (const Vec& a : a_seq) {
    svg += "  <circle class=\"a\" cx=\"" + fmt6(f.X(a[0])) + "\" cy=\"" + fmt6(f.Y(a[1])) +
           "\" r=\"2.5\" fill=\"#1f77b4\"/>\n";
  }
  for (const OrbitRecord& r : orbit) {
    svg += "  <circle class=\"b\" cx=\"" + fmt6(f.X(r.x[0])) + "\" cy=\"" + fmt6(f.Y(r.x[1])) +
           "\" r=\"2.5\" fill=\"#d62728\"/>\n";
  }

  if (limit_dir && limit_dir->dim() == 2) {
    const Vec c{0.5 * (f.wx0 + f.wx1), 0.5 * (f.wy0 + f.wy1)};
    const double len = 0.35 * (f.wx1 - f.wx0);
    const Vec tip = c + len * (*limit_dir);
    svg += "  <line class=\"limit-arrow\" x1=\"" + fmt6(f.X(c[0])) + "\" y1=\"" + fmt6(f.Y(c[1])) +
           "\" x2=\"" + fmt6(f.X(tip[0])) + "\" y2=\"" + fmt6(f.Y(tip[1])) +
           "\" stroke=\"#2ca02c\" stroke-width=\"2\" marker-end=\"url(#arrowhead)\"/>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace cosmic
