#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cosmic/cone_analysis.hpp"
#include "cosmic/cosmic_point.hpp"
#include "cosmic/errors.hpp"
#include "cosmic/operators.hpp"
#include "cosmic/sets.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

// Per-step log entry of an orbit x_{n+1} = T x_n. The normalized iterate
// q = x/||x|| is skipped (not zero-filled) when ||x|| <= zero_tol: the
// quotient is not defined there.
struct OrbitRecord {
  std::size_t n = 0;
  Vec x;
  double norm = 0.0;
  std::optional<Vec> q;
  std::optional<Vec> x_over_n;  // n >= 1
  std::optional<Vec> step;      // n >= 1
};

namespace detail {

inline OrbitRecord make_record(std::size_t n, Vec x, const Vec* prev, double zero_tol) {
  OrbitRecord r;
  r.n = n;
  r.norm = x.norm();
  if (r.norm > zero_tol) r.q = x * (1.0 / r.norm);
  if (n >= 1) {
    r.x_over_n = x * (1.0 / static_cast<double>(n));
    if (prev) r.step = x - *prev;
  }
  r.x = std::move(x);
  return r;
}

}  // namespace detail

// Iterates T from x0 and logs records for n = 0..n_steps. Deterministic;
// operator errors are rethrown with the failing step attached.
inline std::vector<OrbitRecord> iterate(const Operator& t, const Vec& x0, std::size_t n_steps,
                                        double zero_tol = 1e-14) {
  if (n_steps < 1) throw DomainError("iterate needs n_steps >= 1");
  std::vector<OrbitRecord> orbit;
  orbit.reserve(n_steps + 1);
  orbit.push_back(detail::make_record(0, x0, nullptr, zero_tol));
  Vec x = x0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    Vec next;
    try {
      next = t(x);
    } catch (const NoConvergenceError& e) {
      throw NoConvergenceError(std::string(e.what()) + " (at orbit step " + std::to_string(n) +
                               ")");
    } catch (const BracketFailureError& e) {
      throw BracketFailureError(std::string(e.what()) + " (at orbit step " + std::to_string(n) +
                                ")");
    }
    orbit.push_back(detail::make_record(n, next, &x, zero_tol));
    x = std::move(next);
  }
  return orbit;
}

// Estimate of v = P_cl-ran(Id-T)(0) via the Pazy limit x_n/n -> -v: returns
// minus the mean of x/n over the final tail_fraction of the records.
inline Vec estimate_v(const std::vector<OrbitRecord>& orbit, double tail_fraction = 0.2) {
  if (orbit.size() < 10) throw OrbitTooShortError("estimate_v needs at least 10 records");
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw DomainError("tail_fraction must lie in (0, 1]");
  }
  std::vector<const Vec*> tails;
  for (const OrbitRecord& r : orbit) {
    if (r.x_over_n) tails.push_back(&*r.x_over_n);
  }
  if (tails.empty()) throw OrbitTooShortError("estimate_v: no x/n samples");
  const std::size_t count = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(tail_fraction * static_cast<double>(tails.size()))));
  Vec sum = Vec::zero(orbit.front().x.dim());
  for (std::size_t i = tails.size() - count; i < tails.size(); ++i) sum += *tails[i];
  return -1.0 * (sum * (1.0 / static_cast<double>(count)));
}

enum class TrichotomyCase { BoundedOrbit, DivergentSublinear, DivergentLinear, Undetermined };

inline const char* to_string(TrichotomyCase c) {
  switch (c) {
    case TrichotomyCase::BoundedOrbit: return "BoundedOrbit";
    case TrichotomyCase::DivergentSublinear: return "DivergentSublinear";
    case TrichotomyCase::DivergentLinear: return "DivergentLinear";
    case TrichotomyCase::Undetermined: return "Undetermined";
  }
  return "?";
}

struct TrichotomyThresholds {
  double bounded_norm_cap;          // orbit counts as bounded only below this
  double linear_rate_threshold;     // ||x||/n above this means linear growth
  std::size_t growth_window;        // tail records examined for growth

  static TrichotomyThresholds defaults_for(const Vec& x0, std::size_t orbit_len) {
    return TrichotomyThresholds{
        1e3 * (1.0 + x0.norm()),
        1e-3,
        std::max<std::size_t>(5, orbit_len / 10),
    };
  }
};

struct TrichotomyDiagnostics {
  double final_norm = 0.0;
  double norm_over_n_tail = 0.0;  // mean of ||x||/n over the growth window
  double residual_tail = 0.0;     // mean of ||x_n - x_{n-1}|| over the window
  double halving_ratio = 0.0;     // rate(N) / rate(N/2); ~1 for linear growth
  bool growing = false;
};

// Finite-sample verdict. No finite orbit can decide the trichotomy exactly;
// the verdict therefore carries the thresholds it was judged against.
struct TrichotomyVerdict {
  TrichotomyCase kind = TrichotomyCase::Undetermined;
  Vec v_estimate;
  TrichotomyDiagnostics diagnostics;
  TrichotomyThresholds thresholds{};
};

// Heuristic classification of a finite orbit into Pazy's three regimes:
//  - bounded: tail norms under the cap and no sustained windowed growth;
//  - linear:  ||x||/n settled above linear_rate_threshold (the rate at n
//             stays comparable to the rate at n/2);
//  - sublinear: sustained growth whose rate ||x||/n is below the threshold
//             or still decaying toward zero.
inline TrichotomyVerdict classify_trichotomy(const std::vector<OrbitRecord>& orbit,
                                             const TrichotomyThresholds& th) {
  if (orbit.size() < th.growth_window + 1 || orbit.size() < 2) {
    throw OrbitTooShortError("classify_trichotomy: orbit shorter than the growth window");
  }
  const std::size_t n_last = orbit.back().n;
  const std::size_t w = th.growth_window;
  const std::size_t tail_begin = orbit.size() - w;

  double tail_max = 0.0, prev_max = 0.0;
  double rate_sum = 0.0, step_sum = 0.0;
  std::size_t rate_count = 0, step_count = 0;
  for (std::size_t i = tail_begin; i < orbit.size(); ++i) {
    tail_max = std::max(tail_max, orbit[i].norm);
    if (orbit[i].n >= 1) {
      rate_sum += orbit[i].norm / static_cast<double>(orbit[i].n);
      ++rate_count;
    }
    if (orbit[i].step) {
      step_sum += orbit[i].step->norm();
      ++step_count;
    }
  }
  const std::size_t prev_begin = tail_begin >= w ? tail_begin - w : 0;
  for (std::size_t i = prev_begin; i < tail_begin; ++i) prev_max = std::max(prev_max, orbit[i].norm);

  TrichotomyDiagnostics diag;
  diag.final_norm = orbit.back().norm;
  diag.norm_over_n_tail = rate_count ? rate_sum / static_cast<double>(rate_count) : 0.0;
  diag.residual_tail = step_count ? step_sum / static_cast<double>(step_count) : 0.0;
  diag.growing = tail_max > prev_max * (1.0 + 1e-9) + 1e-12;

  const OrbitRecord& mid = orbit[orbit.size() / 2];
  const double rate_end = n_last >= 1 ? orbit.back().norm / static_cast<double>(n_last) : 0.0;
  const double rate_mid = mid.n >= 1 ? mid.norm / static_cast<double>(mid.n) : 0.0;
  diag.halving_ratio = rate_mid > 0.0 ? rate_end / rate_mid : 0.0;

  TrichotomyVerdict verdict;
  verdict.diagnostics = diag;
  verdict.thresholds = th;
  verdict.v_estimate = Vec::zero(orbit.front().x.dim());

  if (!diag.growing && tail_max < th.bounded_norm_cap) {
    verdict.kind = TrichotomyCase::BoundedOrbit;
    return verdict;  // v reported as 0 for bounded orbits
  }
  if (orbit.size() >= 10) verdict.v_estimate = estimate_v(orbit);
  if (diag.growing && diag.norm_over_n_tail > th.linear_rate_threshold &&
      diag.halving_ratio >= 0.8) {
    verdict.kind = TrichotomyCase::DivergentLinear;
  } else if (diag.growing) {
    verdict.kind = TrichotomyCase::DivergentSublinear;
  } else {
    verdict.kind = TrichotomyCase::Undetermined;
  }
  return verdict;
}

inline TrichotomyVerdict classify_trichotomy(const std::vector<OrbitRecord>& orbit) {
  if (orbit.empty()) throw OrbitTooShortError("classify_trichotomy: empty orbit");
  return classify_trichotomy(orbit,
                             TrichotomyThresholds::defaults_for(orbit.front().x, orbit.size()));
}

struct CosmicDetection {
  std::optional<Vec> limit;          // final q when the window settled
  std::vector<Vec> window_directions;  // cluster-point summary of the window
};

// Declares cosmic convergence when all pairwise Poincare distances between
// the normalized iterates of the last `window` records stay below dir_tol,
// and returns the final direction. Otherwise reports the window's set of
// directions for cluster diagnostics.
inline CosmicDetection detect_cosmic_limit(const std::vector<OrbitRecord>& orbit,
                                           std::size_t window = 200, double dir_tol = 1e-6) {
  CosmicDetection out;
  if (window < 2 || orbit.size() < window) return out;
  std::vector<const Vec*> qs;
  for (std::size_t i = orbit.size() - window; i < orbit.size(); ++i) {
    if (!orbit[i].q) return out;  // quotient undefined inside the window
    qs.push_back(&*orbit[i].q);
  }
  for (const Vec* q : qs) out.window_directions.push_back(*q);
  double worst = 0.0;
  for (std::size_t i = 0; i < qs.size() && worst < dir_tol; ++i) {
    for (std::size_t j = i + 1; j < qs.size(); ++j) {
      worst = std::max(worst, (*qs[i] - *qs[j]).norm());
      if (worst >= dir_tol) break;
    }
  }
  if (worst < dir_tol) out.limit = *qs.back();
  return out;
}

enum class OneDimSign { PlusOne, MinusOne };

struct OneDimCertificate {
  OneDimSign sign;
  double min_step;  // most negative / smallest displacement seen
  double max_step;
  std::size_t steps;
};

// One-dimensional dichotomy for fixed-point-free T: the first step decides
// the sign and the whole orbit must then be strictly monotone. A vanishing
// or sign-reversing step betrays a fixed point (intermediate value theorem)
// and is reported as such.
inline OneDimCertificate classify_1d(const Operator& t, double x0, std::size_t n_steps,
                                     double fixed_tol = 1e-14) {
  if (t.dim() != 1) throw UnsupportedDimensionError("classify_1d needs a 1-D operator");
  if (n_steps < 1) throw DomainError("classify_1d needs n_steps >= 1");
  double x = x0;
  double min_step = HUGE_VAL, max_step = -HUGE_VAL;
  int dir = 0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    const double next = t(Vec{x})[0];
    const double step = next - x;
    if (std::fabs(step) <= fixed_tol) {
      throw FixedPointDetectedError("T x = x within " + std::to_string(fixed_tol) + " at step " +
                                    std::to_string(n) + " (x = " + std::to_string(x) + ")");
    }
    if (dir == 0) dir = step > 0 ? 1 : -1;
    if ((step > 0 ? 1 : -1) != dir) {
      throw FixedPointDetectedError("orbit reversed direction at step " + std::to_string(n) +
                                    "; a fixed point lies between");
    }
    min_step = std::min(min_step, step);
    max_step = std::max(max_step, step);
    x = next;
  }
  return OneDimCertificate{dir > 0 ? OneDimSign::PlusOne : OneDimSign::MinusOne, min_step,
                           max_step, n_steps};
}

// Alternating projections a_{n+1} = P_A b_n, b_{n+1} = P_B a_{n+1} = T b_n.
struct APResult {
  std::vector<OrbitRecord> b_orbit;  // records of b_0..b_N
  std::vector<Vec> a_seq;            // a_1..a_N
  Vec gap_estimate;                  // b_N - a_N, the tail gap vector
  std::optional<ConeAnalysis> cones;  // filled when both recession cones are known
};

inline APResult alternating_projections(const SetDescriptor& a_set, const SetDescriptor& b_set,
                                        const Vec& b0, std::size_t n_steps,
                                        double zero_tol = 1e-14, double proj_tol = 1e-12) {
  if (set_dim(a_set) != set_dim(b_set) || set_dim(a_set) != b0.dim()) {
    throw DimensionMismatchError("alternating_projections: dimensions disagree");
  }
  if (n_steps < 1) throw DomainError("alternating_projections needs n_steps >= 1");
  APResult res;
  res.b_orbit.reserve(n_steps + 1);
  res.a_seq.reserve(n_steps);
  res.b_orbit.push_back(detail::make_record(0, b0, nullptr, zero_tol));
  Vec b = b0;
  for (std::size_t n = 1; n <= n_steps; ++n) {
    Vec a;
    Vec bnext;
    try {
      a = project(a_set, b, proj_tol);
      bnext = project(b_set, a, proj_tol);
    } catch (const NoConvergenceError& e) {
      throw NoConvergenceError(std::string(e.what()) + " (at alternating-projections step " +
                               std::to_string(n) + ")");
    }
    res.a_seq.push_back(a);
    res.b_orbit.push_back(detail::make_record(n, bnext, &b, zero_tol));
    b = std::move(bnext);
  }
  res.gap_estimate = res.b_orbit.back().x - res.a_seq.back();

  const auto rec_a = recession_cone2_of(a_set);
  const auto rec_b = recession_cone2_of(b_set);
  if (rec_a && rec_b) res.cones = analyze_recession(*rec_a, *rec_b);
  return res;
}

}  // namespace cosmic
