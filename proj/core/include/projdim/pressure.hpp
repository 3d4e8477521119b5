#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "projdim/estimate.hpp"
#include "projdim/semigroup.hpp"

namespace projdim {

/// Log contraction ratios (log a2/a1, log a3/a1) of every word of one length,
/// stored in lexicographic word order.
struct LevelSpectrum {
  int depth = 0;
  std::vector<double> lr2;
  std::vector<double> lr3;
};

/// Spectra of all words of length 1..max_depth. Filling is split by first
/// letter across workers; storage order does not depend on the worker count.
class SpectrumCache {
 public:
  SpectrumCache(const SystemSpec& sys, int max_depth, std::uint64_t cap = node_cap());

  int max_depth() const { return static_cast<int>(levels_.size()); }
  const LevelSpectrum& level(int n) const { return levels_.at(static_cast<std::size_t>(n - 1)); }
  /// log sum over words of length n of phi^s, compensated summation.
  double log_partition_sum(int n, double s) const;
  /// (1/n) log sum at depth n.
  double raw_pressure(int n, double s) const { return log_partition_sum(n, s) / n; }
  std::size_t alphabet_size() const { return alphabet_size_; }

 private:
  std::size_t alphabet_size_;
  std::vector<LevelSpectrum> levels_;
};

/// Sampled word pairs (u, v) with their spectra and that of uv; used to fit
/// the constants of almost-(sub/super)multiplicativity at any s.
class PairSample {
 public:
  static constexpr std::size_t kMaxPairs = 10'000;
  static constexpr std::uint64_t kSeed = 0x9a1f'7e55'0c3dULL;

  PairSample(const SystemSpec& sys, int half_depth, std::uint64_t seed = kSeed);

  /// log max over pairs of phi^s(uv) / (phi^s(u) phi^s(v)), at least 0.
  double log_upper_constant(double s) const;
  /// log min over pairs of the same ratio, at most 0.
  double log_lower_constant(double s) const;
  std::size_t size() const { return pairs_.size(); }
  bool exhaustive() const { return exhaustive_; }

 private:
  struct Pair {
    double u2, u3, v2, v3, w2, w3;
  };
  double log_ratio(const Pair& p, double s) const;
  std::vector<Pair> pairs_;
  bool exhaustive_ = false;
};

/// log sum_{|w| = n} phi^s(A_w); deterministic for any worker count.
double partition_sum(const SystemSpec& sys, double s, int n, std::uint64_t cap = node_cap());

struct PressureEstimate {
  double s = 0.0;
  int depth = 0;
  double raw = 0.0;
  double upper = 0.0;
  double lower = 0.0;
  double submult_constant = 1.0;    // fitted C
  double supermult_constant = 1.0;  // fitted c
  bool heuristic = true;            // C, c are sampled, not proven
  bool widened = false;             // a bracket was widened to contain raw
};

PressureEstimate pressure_estimate(const SystemSpec& sys, double s, int n_max);
/// Same estimate from precomputed data; reuse across many s.
PressureEstimate pressure_estimate(const SpectrumCache& cache, const PairSample& pairs, double s);

/// Default enumeration depth for an alphabet of the given size.
int default_depth(std::size_t alphabet_size);

/// Zero of the depth-n_max raw pressure on [0, 2] by bisection to width tol.
/// The bracket comes from the roots of the upper and lower pressure curves.
/// When P has no sign change the result is a one-sided bound (value at the
/// nearer end, other end infinite, note "bound_only").
DimensionEstimate affinity_dimension(const SystemSpec& sys, double tol, int n_max);

struct ZetaResult {
  double value = 0.0;
  double pruning_loss = 0.0;  // bound on the mass of all pruned subtrees
  std::uint64_t pruned_subtrees = 0;
  std::uint64_t nodes = 0;
};
inline constexpr double kZetaPruneRelative = 1e-15;
/// sum_{n=1}^{n_max} sum_{|w| = n} phi^s(A_w) with relative pruning.
ZetaResult zeta_truncated(const SystemSpec& sys, double s, int n_max, std::uint64_t cap = node_cap());

// ---------------------------------------------------------------------------
// Rauzy subsystems

/// [[1,-e,-e],[-e,1,-e],[-e,-e,1]].
Matrix3 rauzy_conjugator(const Rational& epsilon);
/// Letters A_i^n A_j (i != j, 1 <= n <= N) conjugated by rauzy_conjugator(eps),
/// ordered by n and then by pair (1,2), (1,3), (2,3), (2,1), (3,2), (3,1).
SystemSpec rauzy_gamma_system(int N, const Rational& epsilon = Rational(1, 5));

struct LadderStep {
  int N = 0;
  DimensionEstimate estimate;
};
/// Affinity dimension of the Gamma systems for N/4, N/2 and N (duplicates and
/// zero dropped). Final entry is the N estimate.
std::vector<LadderStep> rauzy_ladder(int N, int n_max, double tol);
DimensionEstimate rauzy_dimension(int N, int n_max, double tol);

}  // namespace projdim
