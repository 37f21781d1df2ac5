#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "cosmic/errors.hpp"

namespace cosmic::rootfind {

// Bracket [lo, hi] with g(lo) < 0 < g(hi). Endpoints may lie on the boundary
// of an open domain; they are never returned as the root.
struct Bracket {
  double lo;
  double hi;
};

// Grows a sign-change bracket for a continuous g on the open interval
// (dom_lo, dom_hi), starting next to `start`. Probes approach finite
// endpoints geometrically and march outward by doubling steps on unbounded
// sides. Throws BracketFailureError after max_steps probes without a sign
// change.
inline Bracket grow_bracket(const std::function<double(double)>& g, double dom_lo, double dom_hi,
                            double start, int max_steps = 200) {
  double p0 = start;
  if (!(p0 > dom_lo && p0 < dom_hi)) {
    if (std::isfinite(dom_lo) && std::isfinite(dom_hi)) p0 = 0.5 * (dom_lo + dom_hi);
    else if (std::isfinite(dom_lo)) p0 = dom_lo + 1.0;
    else if (std::isfinite(dom_hi)) p0 = dom_hi - 1.0;
    else p0 = 0.0;
  }

  const double g0 = g(p0);
  if (g0 == 0.0) return {p0, p0};

  const bool march_right = g0 < 0.0;
  double step = std::max(1.0, 0.5 * std::fabs(p0));
  double prev = p0;
  for (int k = 0; k < max_steps; ++k) {
    double cand;
    if (march_right) {
      cand = std::isfinite(dom_hi) ? dom_hi - (dom_hi - prev) * 0.5 : prev + step;
    } else {
      cand = std::isfinite(dom_lo) ? dom_lo + (prev - dom_lo) * 0.5 : prev - step;
    }
    const double gc = g(cand);
    if (std::isnan(gc)) throw BracketFailureError("bracket probe evaluated to NaN");
    if ((gc >= 0.0) != (g0 >= 0.0) || gc == 0.0) {
      return march_right ? Bracket{prev, cand} : Bracket{cand, prev};
    }
    prev = cand;
    step *= 2.0;
  }
  throw BracketFailureError("no sign change found within " + std::to_string(max_steps) +
                            " bracket growth steps");
}

// Newton iteration safeguarded by a maintained sign-change bracket with
// bisection fallback; stops on |g| < tol (residual control). `dg` may be
// null, in which case a secant slope estimate drives the Newton step.
inline double solve_bracketed(const std::function<double(double)>& g,
                              const std::function<double(double)>& dg, Bracket br, double tol,
                              int max_iter = 200) {
  double lo = br.lo, hi = br.hi;
  double p = 0.5 * (lo + hi);
  double prev_p = lo, prev_g = 0.0;
  bool have_prev = false;

  for (int it = 0; it < max_iter; ++it) {
    const double gp = g(p);
    if (std::fabs(gp) < tol) return p;
    if (gp < 0.0) lo = p;
    else hi = p;

    double slope = 0.0;
    if (dg) {
      slope = dg(p);
    } else if (have_prev && p != prev_p) {
      slope = (gp - prev_g) / (p - prev_p);
    }
    prev_p = p;
    prev_g = gp;
    have_prev = true;

    double next;
    if (std::isfinite(slope) && slope > 0.0) {
      next = p - gp / slope;
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    } else {
      next = 0.5 * (lo + hi);
    }
    if (next == p) next = 0.5 * (lo + hi);  // no progress; force bisection
    p = next;
  }
  throw NoConvergenceError("root finder did not reach |g| < " + std::to_string(tol) + " within " +
                           std::to_string(max_iter) + " iterations");
}

}  // namespace cosmic::rootfind
