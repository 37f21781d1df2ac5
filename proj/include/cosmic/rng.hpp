#pragma once

#include <cstdint>
#include <random>

#include "cosmic/vec.hpp"

namespace cosmic {

// Deterministic uniform generator. The [0,1) doubles are derived from the
// raw 64-bit stream directly so that identical seeds give identical values
// on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double next01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next01(); }

  Vec uniform_vec(std::size_t dim, double lo, double hi) {
    std::vector<double> c(dim);
    for (double& x : c) x = uniform(lo, hi);
    return Vec(std::move(c));
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace cosmic
