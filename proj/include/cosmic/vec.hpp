#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "cosmic/errors.hpp"

namespace cosmic {

// Dense real coordinate vector. Coordinates are validated to be finite at
// construction; arithmetic between vectors of different dimension throws.
class Vec {
public:
  Vec() = default;

  Vec(std::initializer_list<double> xs) : coords_(xs) { validate(); }

  explicit Vec(std::vector<double> xs) : coords_(std::move(xs)) { validate(); }

  static Vec zero(std::size_t dim) { return Vec(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const { return coords_.size(); }

  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  const std::vector<double>& coords() const { return coords_; }

  auto begin() const { return coords_.begin(); }
  auto end() const { return coords_.end(); }

  Vec& operator+=(const Vec& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
    return *this;
  }

  Vec& operator-=(const Vec& o) {
    check_same_dim(o);
    for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
    return *this;
  }

  Vec& operator*=(double s) {
    for (double& c : coords_) c *= s;
    return *this;
  }

  friend Vec operator+(Vec a, const Vec& b) { return a += b; }
  friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
  friend Vec operator*(Vec a, double s) { return a *= s; }
  friend Vec operator*(double s, Vec a) { return a *= s; }
  friend Vec operator-(Vec a) { return a *= -1.0; }

  friend bool operator==(const Vec& a, const Vec& b) { return a.coords_ == b.coords_; }

  double norm() const {
    double s = 0.0;
    for (double c : coords_) s += c * c;
    return std::sqrt(s);
  }

  friend double dot(const Vec& a, const Vec& b) {
    a.check_same_dim(b);
    double s = 0.0;
    for (std::size_t i = 0; i < a.coords_.size(); ++i) s += a.coords_[i] * b.coords_[i];
    return s;
  }

  friend double distance(const Vec& a, const Vec& b) { return (a - b).norm(); }

  // Unit vector x/||x||; throws ZeroVectorError when ||x|| <= zero_tol.
  Vec normalized(double zero_tol = 1e-14) const {
    const double n = norm();
    if (n <= zero_tol) throw ZeroVectorError("cannot normalize a (near-)zero vector");
    Vec r = *this;
    r *= 1.0 / n;
    return r;
  }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
      if (i) s += ", ";
      s += std::to_string(coords_[i]);
    }
    return s + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const Vec& v) { return os << v.str(); }

private:
  void validate() const {
    if (coords_.empty()) throw DomainError("vector must have dimension >= 1");
    for (double c : coords_) {
      if (!std::isfinite(c)) throw DomainError("vector coordinates must be finite");
    }
  }

  void check_same_dim(const Vec& o) const {
    if (coords_.size() != o.coords_.size()) {
      throw DimensionMismatchError("vector dimensions differ: " + std::to_string(coords_.size()) +
                                   " vs " + std::to_string(o.coords_.size()));
    }
  }

  std::vector<double> coords_;
};

inline bool approx_equal(const Vec& a, const Vec& b, double tol) {
  if (a.dim() != b.dim()) return false;
  return (a - b).norm() <= tol;
}

}  // namespace cosmic
