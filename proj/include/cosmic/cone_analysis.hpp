#pragma once

#include "cosmic/cone2.hpp"

namespace cosmic {

// Recession-cone digest for a pair of sets: R = rec A n rec B, its plus-polar
// R^+, and the cluster cone R n R^+ that confines the cluster points of the
// normalized alternating-projection iterates.
struct ConeAnalysis {
  Cone2 R;
  Cone2 R_polar_plus;
  Cone2 cluster_cone;
  bool is_ray_R;
  bool is_ray_cluster;
  bool R_is_subspace;
};

inline ConeAnalysis analyze_recession(const Cone2& rec_a, const Cone2& rec_b) {
  const Cone2 r = intersect(rec_a, rec_b);
  const Cone2 rp = polar_plus(r);
  const Cone2 cluster = intersect(r, rp);
  return ConeAnalysis{
      r,
      rp,
      cluster,
      classify(r).is_ray,
      classify(cluster).is_ray,
      classify(r).is_linear_subspace,
  };
}

}  // namespace cosmic
