#include "projdim/cover.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "projdim/error.hpp"
#include "projdim/random.hpp"

namespace projdim {

namespace {

constexpr std::uint64_t kConeSeed = 0xc0e5;
constexpr std::uint64_t kFrameWordBudget = 512;
constexpr int kFrameMaxLength = 8;
constexpr std::size_t kCloudExtraPoints = 256;
constexpr double kTinyDenominator = 1e-12;

void require_nonnegative(const SystemSpec& sys) {
  if (!is_nonnegative(sys)) throw Error(Errc::not_positive, "system '" + sys.label + "' has negative entries");
}

std::optional<std::array<double, 2>> to_plane(const Vec3& v) {
  if (!(v[2] > kTinyDenominator * norm(v))) return std::nullopt;
  return std::array<double, 2>{v[0] / v[2], v[1] / v[2]};
}

// Operator norm of the Jacobian of phi_M at plane point x.
std::optional<double> lft_jacobian_norm(const Mat3d& m, const std::array<double, 2>& x) {
  const Vec3 y = m.apply({x[0], x[1], 1.0});
  const double den = y[2];
  if (std::abs(den) <= kTinyDenominator) return std::nullopt;
  double j[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) j[a][b] = (m(a, b) * den - y[a] * m(2, b)) / (den * den);
  // largest singular value of a 2x2 matrix
  const double p = j[0][0] * j[0][0] + j[0][1] * j[0][1] + j[1][0] * j[1][0] + j[1][1] * j[1][1];
  const double det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
  const double disc = std::sqrt(std::max(p * p - 4.0 * det * det, 0.0));
  return std::sqrt(0.5 * (p + disc));
}

std::vector<std::vector<Letter>> frame_words(const SystemSpec& sys) {
  int len = 1;
  while (len < kFrameMaxLength && word_count(sys.size(), len + 1) <= kFrameWordBudget) ++len;
  std::vector<std::vector<Letter>> out;
  const ProductEvaluator eval(sys);
  walk_words(eval, len, [&](std::span<const Letter> w, const ScaledMatrix&) {
    out.emplace_back(w.begin(), w.end());
    return WalkAction::descend;
  });
  return out;
}

std::vector<Vec3> cone_generators(const SystemSpec& sys) {
  std::vector<Vec3> gens;
  for (const auto& a : sys.effective_alphabet()) {
    const Mat3d& v = a.float_view();
    for (int j = 0; j < 3; ++j) {
      gens.push_back(v.col(j));
      gens.push_back(v.row(j));
    }
  }
  return gens;
}

double cloud_radius(const std::vector<std::array<double, 2>>& pts) {
  double cx = 0.0, cy = 0.0;
  for (const auto& p : pts) {
    cx += p[0];
    cy += p[1];
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  double r = 0.0;
  for (const auto& p : pts) r = std::max(r, std::hypot(p[0] - cx, p[1] - cy));
  return r;
}


Mat3d mean_direction_reflection(const SystemSpec& sys) {
  Vec3 mean{0.0, 0.0, 0.0};
  for (const auto& g : cone_generators(sys)) mean = mean + normalized(g);
  const Vec3 c = normalized(mean);
  // Householder reflection swapping c and e3
  const Vec3 w{c[0], c[1], c[2] - 1.0};
  const double ww = dot(w, w);
  Mat3d h = Mat3d::identity();
  if (ww < 1e-30) return h;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h(i, j) -= 2.0 * w[i] * w[j] / ww;
  return h;
}

std::vector<std::array<double, 2>> cloud_in_chart(const SystemSpec& sys, const Mat3d& h, std::size_t extra_points) {
  const auto gens = cone_generators(sys);
  std::vector<std::array<double, 2>> out;
  for (const auto& g : gens)
    if (auto p = to_plane(h.apply(g))) out.push_back(*p);
  Rng rng = make_rng(kConeSeed);
  for (std::size_t k = 0; k < extra_points; ++k) {
    Vec3 acc{0.0, 0.0, 0.0};
    for (const auto& g : gens) acc = acc + uniform01(rng) * normalized(g);
    if (auto p = to_plane(h.apply(acc))) out.push_back(*p);
  }
  if (out.empty()) throw Error(Errc::not_positive, "cone has no points with plane coordinates");
  return out;
}

double constant_in_chart(const SystemSpec& sys, const Mat3d& h) {
  const auto cloud = cloud_in_chart(sys, h, kCloudExtraPoints);
  double c = 1.0;
  for (const auto& w : frame_words(sys)) {
    const Matrix3 exact = sys.effective_product(w);
    const ProjectiveSvd svd = projective_svd(h * exact.float_view() * h.transpose(), singular_values(exact));
    Mat3d d;
    d(0, 0) = svd.sv.a2;
    d(1, 1) = svd.sv.a3;
    d(2, 2) = svd.sv.a1;
    const Mat3d du = d * svd.u;
    for (const auto& x : cloud) {
      if (auto j = lft_jacobian_norm(svd.u, x)) c = std::max(c, *j);
      const Vec3 y = du.apply({x[0], x[1], 1.0});
      if (auto py = to_plane(y)) {
        if (auto j = lft_jacobian_norm(svd.v, *py)) c = std::max(c, *j);
      }
    }
  }
  return c;
}

}  // namespace

Mat3d chart_reflection(const SystemSpec& sys) {
  require_nonnegative(sys);
  const Mat3d id = Mat3d::identity();
  const Mat3d h = mean_direction_reflection(sys);
  if (h == id) return id;
  return constant_in_chart(sys, h) < constant_in_chart(sys, id) ? h : id;
}

std::vector<std::array<double, 2>> cone_cloud(const SystemSpec& sys, std::size_t extra_points) {
  return cloud_in_chart(sys, chart_reflection(sys), extra_points);
}

double cone_constant(const SystemSpec& sys) { return constant_in_chart(sys, chart_reflection(sys)); }

CoverReport svd_cover_upper(const SystemSpec& sys, double s, double delta) {
  if (!(s > 0.0 && s < 2.0) && s != 2.0) throw Error(Errc::domain_error, "s must lie in (0, 2]");
  if (!(delta > 0.0 && delta < 1.0)) throw Error(Errc::domain_error, "delta must lie in (0, 1)");
  require_nonnegative(sys);
  CoverReport rep;
  rep.s = s;
  rep.delta = delta;
  rep.cone_constant = cone_constant(sys);
  rep.cloud_radius = cloud_radius(cone_cloud(sys));

  const bool upper_branch = s >= 1.0;
  auto ratio = [upper_branch](const SvTriple& sv) { return upper_branch ? sv.a3 / sv.a1 : sv.a2 / sv.a1; };
  const auto words = stopping_words_below(sys, delta, ratio);
  const ProductEvaluator eval(sys);
  const double c2 = rep.cone_constant * rep.cone_constant;
  double cost = 0.0;
  for (const auto& w : words) {
    ScaledMatrix acc = eval.raw_letter(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) acc = acc * eval.raw_letter(w[i]);
    const SvTriple sv = eval.spectrum(acc);
    const double r2 = sv.a2 / sv.a1;
    const double r3 = sv.a3 / sv.a1;
    if (upper_branch) {
      // ~a2/a3 balls of radius C^2 (a3/a1) r(B)
      cost += std::pow(c2, s) * r2 * std::pow(r3, s - 1.0) * std::pow(rep.cloud_radius, s);
      rep.ball_count += static_cast<std::uint64_t>(std::ceil(sv.a2 / sv.a3)) + 1;
    } else {
      cost += std::pow(c2 * r2 * rep.cloud_radius, s);
      rep.ball_count += 1;
    }
    rep.max_word_length = std::max(rep.max_word_length, static_cast<int>(w.size()));
  }
  rep.word_count = words.size();
  rep.cover_cost = cost;
  return rep;
}

std::vector<std::uint64_t> box_counts(const PointCloud& cloud, const std::vector<int>& resolutions) {
  const std::size_t dim = cloud.dim();
  const std::size_t n = cloud.size();
  std::vector<std::uint64_t> counts(resolutions.size());
  parallel_for(resolutions.size(), [&](std::size_t r) {
    std::vector<std::array<double, 3>> cells(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto p = cloud.point(i);
      std::array<double, 3> cell{0.0, 0.0, 0.0};
      for (std::size_t d = 0; d < dim; ++d) cell[d] = std::floor(std::ldexp(p[d], resolutions[r]));
      cells[i] = cell;
    }
    std::sort(cells.begin(), cells.end());
    counts[r] = static_cast<std::uint64_t>(std::unique(cells.begin(), cells.end()) - cells.begin());
  });
  return counts;
}

DimensionEstimate box_dimension_estimate(const PointCloud& cloud, const std::vector<int>& resolutions) {
  if (resolutions.size() < 3) throw Error(Errc::too_few_scales, "box counting needs at least 3 resolutions");
  if (cloud.size() == 0) throw Error(Errc::validation, "cloud is empty");
  std::vector<int> res = resolutions;
  std::sort(res.begin(), res.end());
  const auto counts = box_counts(cloud, res);
  const double limit = static_cast<double>(cloud.size()) / 10.0;

  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < res.size(); ++i) {
    // sample-limited from here on
    if (static_cast<double>(counts[i]) > limit && i > 0) break;
    xs.push_back(res[i] * std::log(2.0));
    ys.push_back(std::log(static_cast<double>(counts[i])));
  }
  if (xs.size() < 2) throw Error(Errc::too_few_scales, "fewer than 2 resolutions below the sample limit");

  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (my + slope * (xs[i] - mx));
    rss += e * e;
  }
  const double slope_err = xs.size() > 2 ? std::sqrt(rss / (m - 2.0) / sxx) : 0.0;

  DimensionEstimate est;
  est.method = DimensionMethod::box_count;
  est.value = slope;
  est.bracket_lo = slope - 2.0 * slope_err;
  est.bracket_hi = slope + 2.0 * slope_err;
  est.depth = res[xs.size() - 1];
  est.diagnostics["scales_used"] = m;
  est.diagnostics["residual_rms"] = std::sqrt(rss / m);
  est.diagnostics["slope_stderr"] = slope_err;
  for (std::size_t i = 0; i < res.size(); ++i) {
    est.diagnostics["count_n" + std::to_string(res[i])] = static_cast<double>(counts[i]);
  }
  return est;
}

}  // namespace projdim
