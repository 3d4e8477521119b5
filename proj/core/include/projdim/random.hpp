#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace projdim {

using Rng = std::mt19937_64;

/// Independent stream `stream` of the generator family keyed by `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// Well-mixed child seed for task `index` of a run keyed by `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform double in [0, 1) built from the top 53 bits of one draw.
double uniform01(Rng& rng);

/// Index drawn from the distribution whose cumulative sums are `cdf`
/// (last entry must be 1 up to rounding).
std::size_t sample_index(Rng& rng, std::span<const double> cdf);

std::vector<double> cumulative(std::span<const double> weights);

// ---------------------------------------------------------------------------
// Worker pool settings shared by the enumeration and sampling kernels.

/// Worker count used by parallel kernels (default 1).
unsigned worker_count();
void set_worker_count(unsigned n);

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index
/// must write only its own output slot; results are then schedule-independent.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace projdim
