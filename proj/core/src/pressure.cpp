#include "projdim/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "projdim/error.hpp"
#include "projdim/random.hpp"

namespace projdim {

namespace {

// Neumaier-compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

double log_sum_svf(const LevelSpectrum& lv, double s) {
  const std::size_t n = lv.lr2.size();
  if (n == 0) return -std::numeric_limits<double>::infinity();
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) top = std::max(top, log_svf(lv.lr2[i], lv.lr3[i], s));
  CompensatedSum acc;
  for (std::size_t i = 0; i < n; ++i) acc.add(std::exp(log_svf(lv.lr2[i], lv.lr3[i], s) - top));
  return top + std::log(acc.value());
}

void require_nonnegative(const SystemSpec& sys) {
  if (!is_nonnegative(sys)) throw Error(Errc::not_positive, "system '" + sys.label + "' has negative entries");
}

}  // namespace

// ---------------------------------------------------------------------------

SpectrumCache::SpectrumCache(const SystemSpec& sys, int max_depth, std::uint64_t cap) : alphabet_size_(sys.size()) {
  if (max_depth < 1) throw Error(Errc::validation, "depth must be at least 1");
  check_budget(sys.size(), max_depth, cap);
  const ProductEvaluator eval(sys);
  const std::size_t k = sys.size();
  const auto depth = static_cast<std::size_t>(max_depth);

  // per first letter, per level
  std::vector<std::vector<LevelSpectrum>> parts(k, std::vector<LevelSpectrum>(depth));
  parallel_for(k, [&](std::size_t first) {
    auto& mine = parts[first];
    for (std::size_t d = 0; d < depth; ++d) {
      const std::uint64_t count = word_count(k, static_cast<int>(d));
      mine[d].lr2.reserve(count);
      mine[d].lr3.reserve(count);
    }
    walk_words(
        eval, max_depth,
        [&](std::span<const Letter> w, const ScaledMatrix& raw) {
          const SvTriple sv = eval.spectrum(raw);
          auto& lv = mine[w.size() - 1];
          lv.lr2.push_back(sv.log_ratio2());
          lv.lr3.push_back(sv.log_ratio3());
          return WalkAction::descend;
        },
        static_cast<Letter>(first));
  });

  levels_.resize(depth);
  for (std::size_t d = 0; d < depth; ++d) {
    auto& lv = levels_[d];
    lv.depth = static_cast<int>(d + 1);
    const std::uint64_t total = word_count(k, static_cast<int>(d + 1));
    lv.lr2.reserve(total);
    lv.lr3.reserve(total);
    for (std::size_t first = 0; first < k; ++first) {
      auto& src = parts[first][d];
      lv.lr2.insert(lv.lr2.end(), src.lr2.begin(), src.lr2.end());
      lv.lr3.insert(lv.lr3.end(), src.lr3.begin(), src.lr3.end());
      std::vector<double>().swap(src.lr2);
      std::vector<double>().swap(src.lr3);
    }
  }
}

double SpectrumCache::log_partition_sum(int n, double s) const {
  if (s < 0.0) throw Error(Errc::domain_error, "s must be nonnegative");
  if (s == 0.0) return n * std::log(static_cast<double>(alphabet_size_));
  return log_sum_svf(level(n), s);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Letter> decode_word(std::uint64_t index, std::size_t k, int half_depth) {
  for (int len = 1; len <= half_depth; ++len) {
    const std::uint64_t count = word_count(k, len);
    if (index < count) {
      std::vector<Letter> w(static_cast<std::size_t>(len));
      for (int p = len - 1; p >= 0; --p) {
        w[static_cast<std::size_t>(p)] = static_cast<Letter>(index % k);
        index /= k;
      }
      return w;
    }
    index -= count;
  }
  return {};
}

ScaledMatrix raw_product(const ProductEvaluator& eval, std::span<const Letter> w) {
  ScaledMatrix acc = eval.raw_letter(w[0]);
  ScaledMatrix tmp;
  for (std::size_t i = 1; i < w.size(); ++i) {
    multiply_into(acc, eval.raw_letter(w[i]), tmp);
    std::swap(acc, tmp);
  }
  return acc;
}

}  // namespace

PairSample::PairSample(const SystemSpec& sys, int half_depth, std::uint64_t seed) {
  if (half_depth < 1) throw Error(Errc::validation, "pair depth must be at least 1");
  const ProductEvaluator eval(sys);
  const std::size_t k = sys.size();
  std::uint64_t words = 0;
  for (int len = 1; len <= half_depth; ++len) {
    const std::uint64_t c = word_count(k, len);
    if (c > kMaxPairs * kMaxPairs || words > kMaxPairs * kMaxPairs) {
      words = std::numeric_limits<std::uint64_t>::max();
      break;
    }
    words += c;
  }
  exhaustive_ = words <= kMaxPairs && words * words <= kMaxPairs;

  auto make_pair = [&](const ScaledMatrix& u, const ScaledMatrix& v) {
    const SvTriple su = eval.spectrum(u);
    const SvTriple sv = eval.spectrum(v);
    const SvTriple sw = eval.spectrum(u * v);
    return Pair{su.log_ratio2(), su.log_ratio3(), sv.log_ratio2(), sv.log_ratio3(), sw.log_ratio2(), sw.log_ratio3()};
  };

  if (exhaustive_) {
    std::vector<ScaledMatrix> all;
    all.reserve(words);
    for (std::uint64_t i = 0; i < words; ++i) all.push_back(raw_product(eval, decode_word(i, k, half_depth)));
    pairs_.reserve(words * words);
    for (const auto& u : all)
      for (const auto& v : all) pairs_.push_back(make_pair(u, v));
    return;
  }
  Rng rng = make_rng(seed);
  const auto total = static_cast<double>(words);
  pairs_.reserve(kMaxPairs);
  for (std::size_t p = 0; p < kMaxPairs; ++p) {
    const auto iu = static_cast<std::uint64_t>(uniform01(rng) * total);
    const auto iv = static_cast<std::uint64_t>(uniform01(rng) * total);
    const auto wu = decode_word(std::min(iu, words - 1), k, half_depth);
    const auto wv = decode_word(std::min(iv, words - 1), k, half_depth);
    pairs_.push_back(make_pair(raw_product(eval, wu), raw_product(eval, wv)));
  }
}

double PairSample::log_ratio(const Pair& p, double s) const {
  return log_svf(p.w2, p.w3, s) - log_svf(p.u2, p.u3, s) - log_svf(p.v2, p.v3, s);
}

double PairSample::log_upper_constant(double s) const {
  double m = 0.0;
  for (const auto& p : pairs_) m = std::max(m, log_ratio(p, s));
  return m;
}

double PairSample::log_lower_constant(double s) const {
  double m = 0.0;
  for (const auto& p : pairs_) m = std::min(m, log_ratio(p, s));
  return m;
}

// ---------------------------------------------------------------------------

double partition_sum(const SystemSpec& sys, double s, int n, std::uint64_t cap) {
  if (n < 1) throw Error(Errc::validation, "depth must be at least 1");
  if (s < 0.0) throw Error(Errc::domain_error, "s must be nonnegative");
  check_budget(sys.size(), n, cap);
  if (s == 0.0) return n * std::log(static_cast<double>(sys.size()));
  const ProductEvaluator eval(sys);
  const std::size_t k = sys.size();
  // one (max, scaled sum) pair per first letter, merged in letter order
  std::vector<LevelSpectrum> parts(k);
  parallel_for(k, [&](std::size_t first) {
    auto& lv = parts[first];
    walk_words(
        eval, n,
        [&](std::span<const Letter> w, const ScaledMatrix& raw) {
          if (static_cast<int>(w.size()) < n) return WalkAction::descend;
          const SvTriple sv = eval.spectrum(raw);
          lv.lr2.push_back(sv.log_ratio2());
          lv.lr3.push_back(sv.log_ratio3());
          return WalkAction::prune;
        },
        static_cast<Letter>(first));
  });
  std::vector<double> part_logs(k);
  for (std::size_t i = 0; i < k; ++i) part_logs[i] = log_sum_svf(parts[i], s);
  const double top = *std::max_element(part_logs.begin(), part_logs.end());
  CompensatedSum acc;
  for (double l : part_logs) acc.add(std::exp(l - top));
  return top + std::log(acc.value());
}

PressureEstimate pressure_estimate(const SpectrumCache& cache, const PairSample& pairs, double s) {
  PressureEstimate est;
  est.s = s;
  est.depth = cache.max_depth();
  const double log_c_up = pairs.log_upper_constant(s);
  const double log_c_lo = pairs.log_lower_constant(s);
  est.submult_constant = std::exp(log_c_up);
  est.supermult_constant = std::exp(log_c_lo);
  est.upper = std::numeric_limits<double>::infinity();
  est.lower = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= est.depth; ++n) {
    const double l = cache.log_partition_sum(n, s);
    est.upper = std::min(est.upper, (l + log_c_up) / n);
    est.lower = std::max(est.lower, (l + log_c_lo) / n);
    if (n == est.depth) est.raw = l / n;
  }
  if (est.upper < est.raw) {
    est.upper = est.raw;
    est.widened = true;
  }
  if (est.lower > est.raw) {
    est.lower = est.raw;
    est.widened = true;
  }
  return est;
}

PressureEstimate pressure_estimate(const SystemSpec& sys, double s, int n_max) {
  sys.validate();
  require_nonnegative(sys);
  const SpectrumCache cache(sys, n_max);
  const PairSample pairs(sys, std::max(1, n_max / 2));
  PressureEstimate est = pressure_estimate(cache, pairs, s);
  est.heuristic = true;
  return est;
}

std::string to_string(DimensionMethod m) {
  switch (m) {
    case DimensionMethod::pressure_root: return "pressure_root";
    case DimensionMethod::zeta_exponent: return "zeta_exponent";
    case DimensionMethod::lyapunov: return "lyapunov";
    case DimensionMethod::covering: return "covering";
    case DimensionMethod::box_count: return "box_count";
    case DimensionMethod::empirical_entropy: return "empirical_entropy";
  }
  return "unknown";
}

int default_depth(std::size_t alphabet_size) {
  if (alphabet_size <= 30) return 4;
  if (alphabet_size <= 300) return 3;
  return 2;
}

namespace {

template <typename F>
std::pair<double, double> bisect_root(F&& f, double lo, double hi, double tol) {
  // f(lo) > 0 >= f(hi); the returned interval keeps that sign pattern
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace

DimensionEstimate affinity_dimension(const SystemSpec& sys, double tol, int n_max) {
  if (!(tol > 0.0)) throw Error(Errc::validation, "tolerance must be positive");
  sys.validate();
  require_nonnegative(sys);
  constexpr double kInf = std::numeric_limits<double>::infinity();

  DimensionEstimate est;
  est.depth = n_max;
  est.method = DimensionMethod::pressure_root;
  est.notes["brackets"] = positivity_report(sys).positive ? "heuristic" : "unverified (system not strictly positive)";

  const SpectrumCache cache(sys, n_max);
  const PairSample pairs(sys, std::max(1, n_max / 2));
  auto raw = [&](double s) { return cache.raw_pressure(n_max, s); };

  // grid diagnostics
  bool monotone = true;
  double lipschitz = 0.0;
  double prev = raw(0.0);
  for (int i = 1; i <= 8; ++i) {
    const double cur = raw(0.25 * i);
    monotone = monotone && cur < prev;
    lipschitz = std::max(lipschitz, std::abs(cur - prev) / 0.25);
    prev = cur;
  }
  est.diagnostics["grid_monotone"] = monotone ? 1.0 : 0.0;
  est.diagnostics["grid_lipschitz"] = lipschitz;
  est.diagnostics["pair_count"] = static_cast<double>(pairs.size());
  est.diagnostics["pairs_exhaustive"] = pairs.exhaustive() ? 1.0 : 0.0;

  const double p0 = raw(0.0);
  const double p2 = raw(2.0);
  est.diagnostics["P0"] = p0;
  est.diagnostics["P2"] = p2;
  if (p0 <= 0.0) {
    // a single letter: zeta diverges only at s = 0
    est.value = est.bracket_lo = est.bracket_hi = 0.0;
    est.notes["root"] = "P(0) <= 0";
    return est;
  }
  if (p2 > 0.0) {
    est.value = est.bracket_lo = 2.0;
    est.bracket_hi = kInf;
    est.notes["bound_only"] = "s >= 2";
    return est;
  }

  const auto [root_lo, root_hi] = bisect_root(raw, 0.0, 2.0, tol);
  est.value = 0.5 * (root_lo + root_hi);
  est.diagnostics["P_at_value"] = raw(est.value);

  auto upper = [&](double s) { return pressure_estimate(cache, pairs, s).upper; };
  auto lower = [&](double s) { return pressure_estimate(cache, pairs, s).lower; };
  est.bracket_hi = upper(2.0) > 0.0 ? kInf : bisect_root(upper, 0.0, 2.0, tol).second;
  est.bracket_lo = lower(0.0) <= 0.0 ? 0.0 : bisect_root(lower, 0.0, 2.0, tol).first;
  if (est.bracket_lo > root_lo || est.bracket_hi < root_hi) {
    est.bracket_lo = std::min(est.bracket_lo, root_lo);
    est.bracket_hi = std::max(est.bracket_hi, root_hi);
    est.notes["bracket_widened"] = "true";
  }
  const PressureEstimate at = pressure_estimate(cache, pairs, est.value);
  est.diagnostics["submult_constant"] = at.submult_constant;
  est.diagnostics["supermult_constant"] = at.supermult_constant;
  return est;
}

// ---------------------------------------------------------------------------

ZetaResult zeta_truncated(const SystemSpec& sys, double s, int n_max, std::uint64_t cap) {
  if (n_max < 1) throw Error(Errc::validation, "depth must be at least 1");
  if (s < 0.0) throw Error(Errc::domain_error, "s must be nonnegative");
  check_budget(sys.size(), n_max, cap);
  const ProductEvaluator eval(sys);

  // tail bound per remaining depth: sum_{j=1}^{r} (C Z1)^j
  double z1 = 0.0;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    const SvTriple sv = eval.spectrum(eval.raw_letter(i));
    z1 += std::exp(log_svf(sv.log_ratio2(), sv.log_ratio3(), s));
  }
  const double growth = std::exp(PairSample(sys, 1).log_upper_constant(s)) * z1;
  std::vector<double> tail(static_cast<std::size_t>(n_max) + 1, 0.0);
  for (int r = 1; r <= n_max; ++r) tail[r] = tail[r - 1] + std::pow(growth, r);

  ZetaResult res;
  CompensatedSum total;
  CompensatedSum loss;
  walk_words(eval, n_max, [&](std::span<const Letter> w, const ScaledMatrix& raw) {
    ++res.nodes;
    const SvTriple sv = eval.spectrum(raw);
    const double phi = std::exp(log_svf(sv.log_ratio2(), sv.log_ratio3(), s));
    total.add(phi);
    const int remaining = n_max - static_cast<int>(w.size());
    if (remaining == 0) return WalkAction::prune;
    const double bound = phi * tail[static_cast<std::size_t>(remaining)];
    if (bound < kZetaPruneRelative * total.value()) {
      loss.add(bound);
      ++res.pruned_subtrees;
      return WalkAction::prune;
    }
    return WalkAction::descend;
  });
  res.value = total.value();
  res.pruning_loss = loss.value();
  return res;
}

// ---------------------------------------------------------------------------

Matrix3 rauzy_conjugator(const Rational& epsilon) {
  const Rational e = -epsilon;
  return Matrix3::from_rationals({1, e, e, e, 1, e, e, e, 1});
}

SystemSpec rauzy_gamma_system(int N, const Rational& epsilon) {
  if (N < 1) throw Error(Errc::validation, "N must be at least 1");
  if (epsilon <= 0 || epsilon > Rational(1, 5)) throw Error(Errc::validation, "epsilon must lie in (0, 1/5]");
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 1}, {2, 0}};
  std::vector<Matrix3> letters;
  letters.reserve(static_cast<std::size_t>(6 * N));
  for (int n = 1; n <= N; ++n)
    for (const auto& p : kPairs) letters.push_back(rauzy_power_product(p[0], p[1], n));
  SystemSpec sys = SystemSpec::uniform("gamma_" + std::to_string(N), std::move(letters), rauzy_conjugator(epsilon));
  sys.sosc_assumed = true;
  // at epsilon = 1/5 the n = 1 letters carry one exact zero entry, so only
  // negative entries are rejected
  if (!is_nonnegative(sys)) throw Error(Errc::not_positive, "conjugated Gamma letters have negative entries");
  return sys;
}

std::vector<LadderStep> rauzy_ladder(int N, int n_max, double tol) {
  std::vector<int> ns;
  for (int m : {N / 4, N / 2, N}) {
    if (m >= 1 && (ns.empty() || ns.back() != m)) ns.push_back(m);
  }
  std::vector<LadderStep> out;
  for (int m : ns) out.push_back({m, affinity_dimension(rauzy_gamma_system(m), tol, n_max)});
  return out;
}

DimensionEstimate rauzy_dimension(int N, int n_max, double tol) {
  const auto ladder = rauzy_ladder(N, n_max, tol);
  DimensionEstimate est = ladder.back().estimate;
  bool nondecreasing = true;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    est.diagnostics["ladder_N" + std::to_string(ladder[i].N)] = ladder[i].estimate.value;
    if (i > 0 && ladder[i].estimate.value < ladder[i - 1].estimate.value - 2.0 * tol) nondecreasing = false;
  }
  est.diagnostics["ladder_nondecreasing"] = nondecreasing ? 1.0 : 0.0;
  return est;
}

}  // namespace projdim
