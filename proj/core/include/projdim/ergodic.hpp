#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "projdim/estimate.hpp"
#include "projdim/semigroup.hpp"

namespace projdim {

/// -sum p_i log p_i in nats. Throws Error{bad_vector} unless every p_i > 0
/// and the sum is 1 within 1e-12.
double shannon_entropy(std::span<const double> p);

struct LyapunovStats {
  double chi1 = 0.0, chi2 = 0.0, chi3 = 0.0;  // nats per step
  double stderr1 = 0.0, stderr2 = 0.0, stderr3 = 0.0;
  std::uint64_t steps = 0;  // per chain
  std::uint64_t seed = 0;
  int chains = 0;
};

inline constexpr int kLyapunovChains = 32;
inline constexpr int kRenormalizeEvery = 20;
/// A block is also renormalised early once an entry exceeds this, keeping
/// the frame's condition number small enough for the third exponent.
inline constexpr double kRenormalizeEntry = 64.0;

/// Monte-Carlo exponents of random products with i.i.d. letters ~ p, from 32
/// independent chains of `steps` steps each. Requires steps >= 1000.
LyapunovStats lyapunov_exponents(const SystemSpec& sys, std::uint64_t steps, std::uint64_t seed);

/// Three-branch Lyapunov dimension, clamped to [0, 2]. Throws
/// Error{degenerate_spectrum} unless chi1 > chi2 > chi3.
double lyapunov_dimension(double entropy, const LyapunovStats& chi);

/// Terminal unit normal of the plane chain V <- A_i^T V (normal n <- A_i^{-1} n)
/// after `steps` random letters from the plane with normal (1, -1, 0)/sqrt 2.
/// Sign: first nonzero coordinate positive. Requires steps >= 100.
Vec3 furstenberg_plane_sample(const SystemSpec& sys, std::uint64_t steps, std::uint64_t seed);

/// Plug-in entropy (nats) of the samples binned into [k 2^-n, (k+1) 2^-n).
double dyadic_entropy(std::span<const double> samples, int n);

struct DeltaOptions {
  int planes = 32;
  std::size_t samples = 1'000'000;
  int resolution = 12;
  std::uint64_t seed = 0;
  std::uint64_t lyapunov_steps = 100'000;
  std::uint64_t plane_steps = 200;
};
inline constexpr int kDeltaLevelGap = 4;

/// Mean over nu-random planes V of [H(phi_{B_V} mu, n) - H(., n - 4)] / (4 log 2),
/// reported next to the target min{1, H(p) / (chi1 - chi2)}.
DimensionEstimate empirical_delta(const SystemSpec& sys, const DeltaOptions& opts);

}  // namespace projdim
