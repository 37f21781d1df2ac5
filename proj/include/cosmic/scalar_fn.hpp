#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>

#include "cosmic/errors.hpp"
#include "cosmic/root_find.hpp"

namespace cosmic {

// Proper convex lsc function of one real variable, defined on an open
// interval; the derivative must be available wherever prox root finding
// evaluates it. Built-ins also expose the second derivative so the prox
// solver can take true Newton steps.
class ScalarConvexFn {
public:
  // c/x on (0, inf), +inf elsewhere; c > 0.
  static ScalarConvexFn reciprocal_pos(double c) {
    if (!(c > 0)) throw DomainError("reciprocal_pos needs c > 0");
    ScalarConvexFn f;
    f.name_ = "reciprocal_pos(" + std::to_string(c) + ")";
    f.dom_lo_ = 0.0;
    f.value_ = [c](double x) { return c / x; };
    f.deriv_ = [c](double x) { return -c / (x * x); };
    f.second_ = [c](double x) { return 2.0 * c / (x * x * x); };
    return f;
  }

  // exp(-x) on all of R. Bounded below, no minimizer.
  static ScalarConvexFn exp_neg() {
    ScalarConvexFn f;
    f.name_ = "exp_neg";
    f.value_ = [](double x) { return std::exp(-x); };
    f.deriv_ = [](double x) { return -std::exp(-x); };
    f.second_ = [](double x) { return std::exp(-x); };
    return f;
  }

  static ScalarConvexFn custom(std::function<double(double)> value,
                               std::function<double(double)> deriv, double dom_lo, double dom_hi,
                               std::string name = "custom") {
    if (!value || !deriv) throw DomainError("custom scalar function needs value and derivative");
    if (!(dom_lo < dom_hi)) throw DomainError("custom scalar function needs a nonempty open domain");
    ScalarConvexFn f;
    f.name_ = std::move(name);
    f.value_ = std::move(value);
    f.deriv_ = std::move(deriv);
    f.dom_lo_ = dom_lo;
    f.dom_hi_ = dom_hi;
    return f;
  }

  double value(double x) const { return value_(x); }
  double derivative(double x) const { return deriv_(x); }
  bool has_second_derivative() const { return static_cast<bool>(second_); }
  double second_derivative(double x) const { return second_(x); }
  double domain_lo() const { return dom_lo_; }
  double domain_hi() const { return dom_hi_; }
  const std::string& name() const { return name_; }

private:
  ScalarConvexFn() = default;

  std::string name_;
  std::function<double(double)> value_;
  std::function<double(double)> deriv_;
  std::function<double(double)> second_;
  double dom_lo_ = -HUGE_VAL;
  double dom_hi_ = HUGE_VAL;
};

// Proximity operator of f: the unique minimizer of f(p) + (p-x)^2/2, located
// as the root of g(p) = p - x + f'(p) inside the open domain. g is strictly
// increasing (f convex), so the bracketed Newton solve is safe; |g| < tol at
// return.
inline double prox_scalar(const ScalarConvexFn& f, double x, double tol = 1e-12) {
  auto g = [&f, x](double p) { return p - x + f.derivative(p); };
  std::function<double(double)> dg;
  if (f.has_second_derivative()) {
    dg = [&f](double p) { return 1.0 + f.second_derivative(p); };
  }
  const auto br = rootfind::grow_bracket(g, f.domain_lo(), f.domain_hi(), x);
  if (br.lo == br.hi) return br.lo;
  return rootfind::solve_bracketed(g, dg, br, tol);
}

}  // namespace cosmic
