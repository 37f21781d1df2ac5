#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cosmic/errors.hpp"
#include "cosmic/rng.hpp"
#include "cosmic/scalar_fn.hpp"
#include "cosmic/sets.hpp"
#include "cosmic/vec.hpp"

namespace cosmic {

enum class OperatorClass { Nonexpansive, FirmlyNonexpansive };

inline const char* to_string(OperatorClass c) {
  return c == OperatorClass::FirmlyNonexpansive ? "firmly_nonexpansive" : "nonexpansive";
}

// Evaluable self-map of R^d with a claimed regularity class. Immutable after
// construction; apply is pure, so concurrent evaluation is safe.
class Operator {
public:
  Operator(std::string name, std::size_t dim, OperatorClass cls, std::function<Vec(const Vec&)> fn)
      : name_(std::move(name)), dim_(dim), class_(cls), fn_(std::move(fn)) {
    if (dim_ < 1) throw DomainError("operator dimension must be >= 1");
    if (!fn_) throw DomainError("operator needs an apply function");
  }

  const std::string& name() const { return name_; }
  std::size_t dim() const { return dim_; }
  OperatorClass claimed_class() const { return class_; }

  Vec operator()(const Vec& x) const {
    if (x.dim() != dim_) {
      throw DimensionMismatchError("operator " + name_ + " expects dimension " +
                                   std::to_string(dim_));
    }
    Vec y = fn_(x);
    if (y.dim() != dim_) throw DomainError("operator " + name_ + " changed the dimension");
    return y;
  }

private:
  std::string name_;
  std::size_t dim_;
  OperatorClass class_;
  std::function<Vec(const Vec&)> fn_;
};

inline Operator identity_op(std::size_t dim) {
  return Operator("identity", dim, OperatorClass::FirmlyNonexpansive,
                  [](const Vec& x) { return x; });
}

inline Operator translation_op(const Vec& offset) {
  return Operator("translation" + offset.str(), offset.dim(), OperatorClass::Nonexpansive,
                  [offset](const Vec& x) { return x + offset; });
}

// x -> factor * x. Not nonexpansive for |factor| > 1; used to exercise the
// empirical class checker.
inline Operator scaling_op(std::size_t dim, double factor) {
  return Operator("scaling(" + std::to_string(factor) + ")", dim, OperatorClass::Nonexpansive,
                  [factor](const Vec& x) { return factor * x; });
}

inline Operator rotation2_op(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return Operator("rotation(" + std::to_string(angle) + ")", 2, OperatorClass::Nonexpansive,
                  [c, s](const Vec& x) {
                    return Vec{c * x[0] - s * x[1], s * x[0] + c * x[1]};
                  });
}

inline Operator projector_op(SetDescriptor s, double tol = 1e-12) {
  const std::size_t d = set_dim(s);
  auto shared = std::make_shared<SetDescriptor>(std::move(s));
  return Operator("P_" + set_name(*shared), d, OperatorClass::FirmlyNonexpansive,
                  [shared, tol](const Vec& x) { return project(*shared, x, tol); });
}

// One-dimensional proximity operator as an Operator value.
inline Operator prox_op_1d(ScalarConvexFn f, double tol = 1e-12) {
  return Operator("prox(" + f.name() + ")", 1, OperatorClass::FirmlyNonexpansive,
                  [f = std::move(f), tol](const Vec& x) {
                    return Vec{prox_scalar(f, x[0], tol)};
                  });
}

// Prox of x -> f(<a, x>) for a unit vector a: acts as the scalar prox along
// a and as the identity on the orthogonal complement,
//   T x = (x - <a,x> a) + prox_f(<a,x>) a.
inline Operator lift_prox_along_direction(const Vec& a, ScalarConvexFn f, double tol = 1e-12) {
  if (std::fabs(a.norm() - 1.0) > 1e-12) {
    throw NonUnitDirectionError("lift direction must be a unit vector, ||a|| = " +
                                std::to_string(a.norm()));
  }
  return Operator("prox(" + f.name() + " o <a,.>)", a.dim(), OperatorClass::FirmlyNonexpansive,
                  [a, f = std::move(f), tol](const Vec& x) {
                    const double xi = dot(a, x);
                    return (x - xi * a) + prox_scalar(f, xi, tol) * a;
                  });
}

// Subspace-lifted map: identity on Y-perp, `inner` on Y (coordinates in the
// given orthonormal basis),
//   T x = x - U U^T x + U inner(U^T x).
// Iterating T keeps the Y-perp part frozen while inner iterates on Y.
inline Operator lifted_resolvent(const std::vector<Vec>& basis, Operator inner) {
  if (basis.empty()) throw DomainError("lifted_resolvent needs at least one basis vector");
  const std::size_t d = basis[0].dim();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].dim() != d) throw DimensionMismatchError("basis vectors have mixed dimensions");
    for (std::size_t j = 0; j <= i; ++j) {
      const double want = (i == j) ? 1.0 : 0.0;
      if (std::fabs(dot(basis[i], basis[j]) - want) > 1e-10) {
        throw BasisNotOrthonormalError("basis is not orthonormal within 1e-10");
      }
    }
  }
  if (inner.dim() != basis.size()) {
    throw DimensionMismatchError("inner operator dimension must match the basis size");
  }
  return Operator("lifted(" + inner.name() + ")", d, OperatorClass::FirmlyNonexpansive,
                  [basis, inner = std::move(inner)](const Vec& x) {
                    std::vector<double> y(basis.size());
                    for (std::size_t i = 0; i < basis.size(); ++i) y[i] = dot(basis[i], x);
                    const Vec inner_y = inner(Vec(y));
                    Vec out = x;
                    for (std::size_t i = 0; i < basis.size(); ++i) {
                      out += (inner_y[i] - y[i]) * basis[i];
                    }
                    return out;
                  });
}

// Prox of F(p) = exp(p1)/p2 on {p2 > 0}: damped Newton on the gradient
// system
//   g1 = exp(p1)/p2   + p1 - x1
//   g2 = -exp(p1)/p2^2 + p2 - x2,
// with step halving whenever a trial leaves {p2 > 0} or fails to reduce
// ||g||. F is strictly convex on its domain, so the minimizer is unique;
// ||g|| < tol at return.
inline Vec prox_exp_ratio(const Vec& x, double tol = 1e-12, int max_iter = 500) {
  if (x.dim() != 2) throw UnsupportedDimensionError("prox_exp_ratio lives in R^2");
  double p1 = std::min(x[0], 0.0);
  double p2 = std::max(x[1], 1.0);
  auto gnorm = [&x](double q1, double q2) {
    const double e = std::exp(q1);
    const double g1 = e / q2 + q1 - x[0];
    const double g2 = -e / (q2 * q2) + q2 - x[1];
    return std::sqrt(g1 * g1 + g2 * g2);
  };
  for (int it = 0; it < max_iter; ++it) {
    const double e = std::exp(p1);
    const double g1 = e / p2 + p1 - x[0];
    const double g2 = -e / (p2 * p2) + p2 - x[1];
    const double gn = std::sqrt(g1 * g1 + g2 * g2);
    if (gn < tol) return Vec{p1, p2};

    // Hessian of the objective: positive definite on {p2 > 0}.
    const double j11 = e / p2 + 1.0;
    const double j12 = -e / (p2 * p2);
    const double j22 = 2.0 * e / (p2 * p2 * p2) + 1.0;
    const double det = j11 * j22 - j12 * j12;
    const double d1 = (-g1 * j22 + g2 * j12) / det;
    const double d2 = (-g2 * j11 + g1 * j12) / det;

    double t = 1.0;
    double q1 = p1 + d1, q2 = p2 + d2;
    for (int h = 0; h < 60; ++h) {
      q1 = p1 + t * d1;
      q2 = p2 + t * d2;
      if (q2 > 0 && gnorm(q1, q2) < gn) break;
      t *= 0.5;
    }
    if (q2 <= 0) q2 = 0.5 * p2;  // last resort: stay in the domain
    p1 = q1;
    p2 = q2;
  }
  throw NoConvergenceError("prox_exp_ratio: damped Newton did not reach ||g|| < " +
                           std::to_string(tol));
}

inline Operator prox_exp_ratio_op(double tol = 1e-12) {
  return Operator("prox(exp(x1)/x2)", 2, OperatorClass::FirmlyNonexpansive,
                  [tol](const Vec& x) { return prox_exp_ratio(x, tol); });
}

// Right-to-left composition: compose({F, G}) applies G first, then F.
inline Operator compose(std::vector<Operator> ops) {
  if (ops.empty()) throw DomainError("compose needs at least one operator");
  const std::size_t d = ops.front().dim();
  std::string name;
  for (const Operator& op : ops) {
    if (op.dim() != d) throw DimensionMismatchError("composed operators must share a dimension");
    if (!name.empty()) name += " o ";
    name += op.name();
  }
  return Operator(name, d, OperatorClass::Nonexpansive,
                  [ops = std::move(ops)](const Vec& x) {
                    Vec y = x;
                    for (auto it = ops.rbegin(); it != ops.rend(); ++it) y = (*it)(y);
                    return y;
                  });
}

// Empirical (non)expansiveness report over seeded uniform pairs in a box.
// Reports only; never throws on a violation.
struct ClassCheckReport {
  double max_ratio = 0.0;           // max ||Tx-Ty|| / ||x-y||
  double max_firm_violation = 0.0;  // max(0, ||Tx-Ty||^2 - <Tx-Ty, x-y>)
  std::size_t pairs_used = 0;
};

inline ClassCheckReport check_operator_class(const Operator& t, const Vec& box_lo,
                                             const Vec& box_hi, std::size_t n_pairs,
                                             std::uint64_t seed) {
  if (n_pairs < 1) throw DomainError("check_operator_class needs n_pairs >= 1");
  if (box_lo.dim() != t.dim() || box_hi.dim() != t.dim()) {
    throw DimensionMismatchError("check box dimension mismatch");
  }
  Rng rng(seed);
  ClassCheckReport rep;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    std::vector<double> xs(t.dim()), ys(t.dim());
    for (std::size_t i = 0; i < t.dim(); ++i) xs[i] = rng.uniform(box_lo[i], box_hi[i]);
    for (std::size_t i = 0; i < t.dim(); ++i) ys[i] = rng.uniform(box_lo[i], box_hi[i]);
    const Vec x(xs), y(ys);
    const Vec dxy = x - y;
    if (dxy.norm() < 1e-12) continue;
    const Vec dT = t(x) - t(y);
    rep.max_ratio = std::max(rep.max_ratio, dT.norm() / dxy.norm());
    rep.max_firm_violation =
        std::max(rep.max_firm_violation, dT.norm() * dT.norm() - dot(dT, dxy));
    ++rep.pairs_used;
  }
  return rep;
}

}  // namespace cosmic
