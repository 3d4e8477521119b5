#pragma once

#include <cstdint>
#include <vector>

#include "projdim/estimate.hpp"
#include "projdim/projective.hpp"
#include "projdim/semigroup.hpp"

namespace projdim {

/// Orthogonal change of basis for the plane chart used by every cover
/// quantity: the standard basis or the reflection sending the mean direction
/// of the cone K to e3, whichever gives the smaller measured constant.
/// Singular values do not depend on the choice.
Mat3d chart_reflection(const SystemSpec& sys);

/// Points of the cone K spanned by the columns of every effective letter and
/// of its transpose, in the plane chart of chart_reflection. Deterministic.
std::vector<std::array<double, 2>> cone_cloud(const SystemSpec& sys, std::size_t extra_points = 256);

/// Measured distortion constant: the largest operator norm of the Jacobian of
/// phi_U on the cone cloud and of phi_V on its image under phi_{DU}, over the
/// SVDs A = V D U of short words. Never below 1. Throws Error{not_positive}
/// for systems with negative entries.
double cone_constant(const SystemSpec& sys);

struct CoverReport {
  double s = 0.0;
  double delta = 0.0;
  std::uint64_t word_count = 0;
  double cover_cost = 0.0;     // sum over words of C^{2s} phi-type term * r(B)^s
  double cone_constant = 1.0;  // measured, not proven
  double cloud_radius = 0.0;   // r(B)
  std::uint64_t ball_count = 0;  // sum of ceil(a2/a3) + 1 (one ball per word when s < 1)
  int max_word_length = 0;
};

/// Cover of the limit set by the images of K under the first-passage family
/// of a3/a1 <= delta (s >= 1) or a2/a1 <= delta (s < 1).
CoverReport svd_cover_upper(const SystemSpec& sys, double s, double delta);

/// Occupied 2^-n boxes of the cloud, one count per resolution.
std::vector<std::uint64_t> box_counts(const PointCloud& cloud, const std::vector<int>& resolutions);

/// Least-squares slope of log N(n) against n log 2. Resolutions from the first
/// with N(n) > |cloud| / 10 onward are dropped. Throws Error{too_few_scales}
/// with fewer than 3 resolutions or fewer than 2 usable ones.
DimensionEstimate box_dimension_estimate(const PointCloud& cloud, const std::vector<int>& resolutions);

}  // namespace projdim
