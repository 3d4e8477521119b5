#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "projdim/semigroup.hpp"

namespace projdim {

/// phi_M(x) for an m x n row-major matrix: x~ = (x, 1) and the result is
/// (<r_1, x~>, ..., <r_{m-1}, x~>) / <r_m, x~>. Throws Error{denominator_zero}.
std::vector<double> lft_apply(std::span<const double> m, std::size_t rows, std::size_t cols,
                              std::span<const double> x);
/// 3 x 3 case on the positive quadrant.
std::array<double, 2> lft_apply(const Mat3d& m, const std::array<double, 2>& x);

/// Two-row frame B. Membership in the frame set: r2 is a nonnegative unit
/// vector and the rows are independent. Orthonormal frames also have r1 a
/// unit vector orthogonal to r2.
struct PlaneFrame {
  Vec3 r1{1.0, 0.0, 0.0};
  Vec3 r2{0.0, 0.0, 1.0};
  bool orthonormal = true;

  /// phi_B of a plane point x in R^2.
  double apply(const std::array<double, 2>& x) const;
  /// phi_B of the projective class of a nonzero direction v in R^3.
  double apply_direction(const Vec3& v) const;
  /// Throws Error{bad_direction} when an invariant fails (tolerance 1e-12).
  void validate() const;
};

/// Orthonormal frame with r2 = direction and r1 the Gram-Schmidt residue of
/// e1 (e2 when direction is parallel to e1). Throws Error{bad_direction}.
PlaneFrame plane_frame_orthonormal(const Vec3& direction);

/// Frame whose plane has unit normal `normal`: r2 is the normalised midpoint
/// of the plane's intersection with the closed simplex and r1 = normal x r2.
/// Throws Error{bad_direction} when the plane misses the open simplex.
PlaneFrame plane_frame_from_normal(const Vec3& normal);

enum class CoordinateSystem { plane_P, simplex_S };

/// Flat point storage; plane_P points have 2 coordinates, simplex_S have 3.
struct PointCloud {
  CoordinateSystem coords = CoordinateSystem::simplex_S;
  std::uint64_t seed = 0;
  std::vector<double> data;

  std::size_t dim() const { return coords == CoordinateSystem::plane_P ? 2 : 3; }
  std::size_t size() const { return data.size() / dim(); }
  std::span<const double> point(std::size_t i) const { return {data.data() + i * dim(), dim()}; }
};

enum class AttractorMethod { chaos, cylinder };

inline constexpr int kChaosBurnIn = 100;
/// Chaos-game points are generated in fixed chunks, each on its own stream.
inline constexpr std::size_t kChaosChunk = 1 << 14;

/// Samples of the attractor. Chaos iterates x <- phi_{A_i}(x), i ~ p, after a
/// burn-in; cylinder emits phi_w(barycentre) for w in the stopping partition
/// whose size is closest to `budget`. Throws Error{not_contracting} when an
/// effective letter has a negative entry.
PointCloud attractor_points(const SystemSpec& sys, AttractorMethod method, std::size_t budget, std::uint64_t seed,
                            CoordinateSystem coords = CoordinateSystem::simplex_S);

/// Unit directions of chaos-game samples of the stationary measure.
std::vector<Vec3> stationary_directions(const SystemSpec& sys, std::size_t count, std::uint64_t seed);

struct RescaleResult {
  PlaneFrame m;
  double c = 0.0;
  double t = 0.0;
  Vec3 u{};  // unit, first nonzero coordinate nonnegative
};

/// phi_{BA}(x) = c phi_M(x) + t. Needs an orthonormal B and a nonnegative A
/// with A^T r2 positive (Error{not_positive} otherwise). Throws
/// Error{degenerate_gap} when (a2 - a3) / a2 <= 1e-9.
RescaleResult rescale_decompose(const PlaneFrame& b, const Matrix3& a);
/// Float variant; `cofactor_t` is det(A) A^{-1}, best taken from exact minors.
RescaleResult rescale_decompose(const PlaneFrame& b, const Mat3d& a, const Mat3d& cofactor_t, const SvTriple& sv);

/// ||A^T u|| / ||A^T r2|| from the exterior square, free of cancellation.
double xi_ratio(const PlaneFrame& b, const Mat3d& a, const Mat3d& wedge);

/// First-passage words of xi_ratio <= 2^-n (all letters when n = 0).
std::vector<std::vector<Letter>> xi_partition(const PlaneFrame& b, const SystemSpec& sys, int n,
                                              int depth_cap = kDefaultStoppingDepthCap);

/// `count` samples of phi_B mu, reproducible for fixed seed.
std::vector<double> project_measure_samples(const SystemSpec& sys, const PlaneFrame& b, std::size_t count,
                                            std::uint64_t seed);

}  // namespace projdim
