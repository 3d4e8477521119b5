#include "projdim/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "projdim/error.hpp"
#include "projdim/projective.hpp"
#include "projdim/random.hpp"

namespace projdim {

double shannon_entropy(std::span<const double> p) {
  if (p.empty()) throw Error(Errc::bad_vector, "empty probability vector");
  double total = 0.0;
  double h = 0.0;
  for (double x : p) {
    if (!(x > 0.0)) throw Error(Errc::bad_vector, "probabilities must be positive");
    total += x;
    h -= x * std::log(x);
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::bad_vector, "probabilities must sum to 1");
  return h;
}

namespace {

// In-place modified Gram-Schmidt on the columns of z with one
// reorthogonalisation pass; returns the log column norms.
std::array<double, 3> orthonormalize(Mat3d& z) {
  std::array<double, 3> logs{};
  std::array<Vec3, 3> q;
  for (int j = 0; j < 3; ++j) {
    Vec3 v = z.col(j);
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < j; ++k) v = v - dot(q[k], v) * q[k];
    const double r = norm(v);
    logs[j] = std::log(r);
    q[j] = (1.0 / r) * v;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) z(i, j) = q[j][i];
  return logs;
}

struct MeanErr {
  double mean = 0.0;
  double err = 0.0;
};

MeanErr mean_stderr(const std::vector<double>& xs) {
  MeanErr m;
  const double n = static_cast<double>(xs.size());
  m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) return m;
  double ss = 0.0;
  for (double x : xs) ss += (x - m.mean) * (x - m.mean);
  m.err = std::sqrt(ss / (n - 1.0) / n);
  return m;
}

}  // namespace

LyapunovStats lyapunov_exponents(const SystemSpec& sys, std::uint64_t steps, std::uint64_t seed) {
  if (steps < 1000) throw Error(Errc::validation, "lyapunov_exponents needs at least 1000 steps");
  std::vector<Mat3d> transposes;
  for (const auto& a : sys.effective_alphabet()) transposes.push_back(a.float_view().transpose());
  const auto cdf = cumulative(sys.probability_values());

  std::vector<std::array<double, 3>> per_chain(kLyapunovChains);
  parallel_for(kLyapunovChains, [&](std::size_t c) {
    Rng rng = make_rng(seed, c);
    Mat3d z = Mat3d::identity();
    std::array<double, 3> acc{};
    int since = 0;
    // the transpose product A_n^T ... A_1^T has the same singular values
    for (std::uint64_t s = 0; s < steps; ++s) {
      z = transposes[sample_index(rng, cdf)] * z;
      if (++since >= kRenormalizeEvery || z.max_abs() > kRenormalizeEntry || s + 1 == steps) {
        const auto logs = orthonormalize(z);
        for (int k = 0; k < 3; ++k) acc[k] += logs[k];
        since = 0;
      }
    }
    for (int k = 0; k < 3; ++k) per_chain[c][k] = acc[k] / static_cast<double>(steps);
  });

  LyapunovStats st;
  st.steps = steps;
  st.seed = seed;
  st.chains = kLyapunovChains;
  std::array<MeanErr, 3> me;
  for (int k = 0; k < 3; ++k) {
    std::vector<double> xs;
    for (const auto& v : per_chain) xs.push_back(v[k]);
    me[k] = mean_stderr(xs);
  }
  st.chi1 = me[0].mean;
  st.chi2 = me[1].mean;
  st.chi3 = me[2].mean;
  st.stderr1 = me[0].err;
  st.stderr2 = me[1].err;
  st.stderr3 = me[2].err;
  return st;
}

double lyapunov_dimension(double entropy, const LyapunovStats& chi) {
  if (!(chi.chi1 > chi.chi2 && chi.chi2 > chi.chi3)) {
    throw Error(Errc::degenerate_spectrum, "Lyapunov exponents are not strictly ordered");
  }
  if (entropy < 0.0) throw Error(Errc::domain_error, "entropy must be nonnegative");
  const double g12 = chi.chi1 - chi.chi2;
  const double g13 = chi.chi1 - chi.chi3;
  double d = 0.0;
  if (entropy <= g12) {
    d = entropy / g12;
  } else if (entropy <= g12 + g13) {
    d = 1.0 + (entropy - g12) / g13;
  } else {
    d = 2.0;
  }
  return std::clamp(d, 0.0, 2.0);
}

Vec3 furstenberg_plane_sample(const SystemSpec& sys, std::uint64_t steps, std::uint64_t seed) {
  if (steps < 100) throw Error(Errc::validation, "furstenberg_plane_sample needs at least 100 steps");
  std::vector<Mat3d> inverses;
  for (const auto& a : sys.effective_alphabet()) inverses.push_back(a.inverse().float_view());
  const auto cdf = cumulative(sys.probability_values());
  Rng rng = make_rng(seed);
  Vec3 n = normalized({1.0, -1.0, 0.0});
  for (std::uint64_t s = 0; s < steps; ++s) n = normalized(inverses[sample_index(rng, cdf)].apply(n));
  for (double c : n) {
    if (c == 0.0) continue;
    if (c < 0.0) n = -1.0 * n;
    break;
  }
  return n;
}

double dyadic_entropy(std::span<const double> samples, int n) {
  if (samples.empty()) throw Error(Errc::validation, "dyadic_entropy needs samples");
  std::vector<double> cells(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) cells[i] = std::floor(std::ldexp(samples[i], n));
  std::sort(cells.begin(), cells.end());
  const double total = static_cast<double>(cells.size());
  double h = 0.0;
  std::size_t run = 1;
  for (std::size_t i = 1; i <= cells.size(); ++i) {
    if (i < cells.size() && cells[i] == cells[i - 1]) {
      ++run;
      continue;
    }
    const double q = static_cast<double>(run) / total;
    h -= q * std::log(q);
    run = 1;
  }
  return h;
}

DimensionEstimate empirical_delta(const SystemSpec& sys, const DeltaOptions& opts) {
  if (opts.planes < 1 || opts.samples < 1) throw Error(Errc::validation, "planes and samples must be positive");
  if (opts.resolution <= kDeltaLevelGap) throw Error(Errc::validation, "resolution must exceed 4");
  const auto probs = sys.probability_values();
  const double h = shannon_entropy(probs);
  const LyapunovStats chi = lyapunov_exponents(sys, opts.lyapunov_steps, derive_seed(opts.seed, 0));
  const double gap = chi.chi1 - chi.chi2;
  const double target = gap > 0.0 ? std::min(1.0, h / gap) : 1.0;

  std::vector<double> deltas(static_cast<std::size_t>(opts.planes));
  for (int k = 0; k < opts.planes; ++k) {
    const auto idx = static_cast<std::uint64_t>(k);
    const Vec3 normal = furstenberg_plane_sample(sys, opts.plane_steps, derive_seed(opts.seed, 2 * idx + 1));
    const PlaneFrame b = plane_frame_from_normal(normal);
    const auto xs = project_measure_samples(sys, b, opts.samples, derive_seed(opts.seed, 2 * idx + 2));
    const double fine = dyadic_entropy(xs, opts.resolution);
    const double coarse = dyadic_entropy(xs, opts.resolution - kDeltaLevelGap);
    deltas[static_cast<std::size_t>(k)] = (fine - coarse) / (kDeltaLevelGap * std::log(2.0));
  }
  const MeanErr me = mean_stderr(deltas);
  const auto [lo, hi] = std::minmax_element(deltas.begin(), deltas.end());

  DimensionEstimate est;
  est.method = DimensionMethod::empirical_entropy;
  est.depth = opts.resolution;
  est.value = me.mean;
  est.bracket_lo = *lo;
  est.bracket_hi = *hi;
  est.diagnostics["target"] = target;
  est.diagnostics["entropy"] = h;
  est.diagnostics["chi1"] = chi.chi1;
  est.diagnostics["chi2"] = chi.chi2;
  est.diagnostics["chi3"] = chi.chi3;
  est.diagnostics["stderr"] = me.err;
  est.diagnostics["spread"] = *hi - *lo;
  est.diagnostics["planes"] = opts.planes;
  est.diagnostics["samples"] = static_cast<double>(opts.samples);
  est.notes["estimator"] = "plug-in dyadic entropy difference over 4 levels; biased low at fine scales";
  return est;
}

}  // namespace projdim
