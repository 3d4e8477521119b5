#include "projdim/projective.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "projdim/error.hpp"
#include "projdim/random.hpp"

namespace projdim {

std::vector<double> lft_apply(std::span<const double> m, std::size_t rows, std::size_t cols,
                              std::span<const double> x) {
  if (rows < 2 || cols < 1 || m.size() != rows * cols || x.size() + 1 != cols) {
    throw Error(Errc::validation, "lft_apply: shape mismatch");
  }
  auto row_dot = [&](std::size_t r) {
    double acc = m[r * cols + cols - 1];
    for (std::size_t j = 0; j + 1 < cols; ++j) acc += m[r * cols + j] * x[j];
    return acc;
  };
  const double den = row_dot(rows - 1);
  if (den == 0.0) throw Error(Errc::denominator_zero, "lft_apply: <r_m, x~> = 0");
  std::vector<double> out(rows - 1);
  for (std::size_t r = 0; r + 1 < rows; ++r) out[r] = row_dot(r) / den;
  return out;
}

std::array<double, 2> lft_apply(const Mat3d& m, const std::array<double, 2>& x) {
  const auto r = lft_apply(std::span<const double>(m.a.data(), 9), 3, 3, std::span<const double>(x.data(), 2));
  return {r[0], r[1]};
}

// ---------------------------------------------------------------------------

double PlaneFrame::apply(const std::array<double, 2>& x) const {
  return apply_direction({x[0], x[1], 1.0});
}

double PlaneFrame::apply_direction(const Vec3& v) const {
  const double den = dot(r2, v);
  if (den == 0.0) throw Error(Errc::denominator_zero, "frame denominator <r_2, x~> = 0");
  return dot(r1, v) / den;
}

void PlaneFrame::validate() const {
  constexpr double kTol = 1e-12;
  if (std::abs(norm(r2) - 1.0) > kTol) throw Error(Errc::bad_direction, "r2 is not a unit vector");
  for (double c : r2)
    if (c < 0.0) throw Error(Errc::bad_direction, "r2 has a negative coordinate");
  if (norm(cross(r1, r2)) <= kTol) throw Error(Errc::bad_direction, "frame rows are dependent");
  if (orthonormal && (std::abs(dot(r1, r2)) > kTol || std::abs(norm(r1) - 1.0) > kTol)) {
    throw Error(Errc::bad_direction, "frame is not orthonormal");
  }
}

PlaneFrame plane_frame_orthonormal(const Vec3& direction) {
  for (double c : direction) {
    if (!(c >= 0.0)) throw Error(Errc::bad_direction, "direction must have nonnegative coordinates");
  }
  const double len = norm(direction);
  if (len == 0.0) throw Error(Errc::bad_direction, "direction is zero");
  if (std::abs(len - 1.0) > 1e-9) throw Error(Errc::bad_direction, "direction is not a unit vector");
  const Vec3 d = normalized(direction);

  PlaneFrame b;
  b.r2 = d;
  b.orthonormal = true;
  for (const Vec3& ref : {Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 1.0, 0.0}}) {
    const Vec3 res = ref - dot(ref, d) * d;
    if (norm(res) > 1e-8) {
      b.r1 = normalized(res);
      // one more pass keeps orthogonality at rounding level
      b.r1 = normalized(b.r1 - dot(b.r1, d) * d);
      return b;
    }
  }
  throw Error(Errc::bad_direction, "no reference vector independent of direction");
}

PlaneFrame plane_frame_from_normal(const Vec3& normal) {
  const double len = norm(normal);
  if (!(len > 0.0)) throw Error(Errc::bad_direction, "normal is zero");
  const Vec3 n = normalized(normal);
  // intersection of the plane with the simplex edges e_a -> e_b
  std::vector<Vec3> hits;
  for (int a = 0; a < 3; ++a) {
    if (n[a] == 0.0) {
      Vec3 e{0.0, 0.0, 0.0};
      e[a] = 1.0;
      hits.push_back(e);
    }
    for (int b = a + 1; b < 3; ++b) {
      if ((n[a] < 0.0 && n[b] > 0.0) || (n[a] > 0.0 && n[b] < 0.0)) {
        const double lam = n[a] / (n[a] - n[b]);
        Vec3 p{0.0, 0.0, 0.0};
        p[a] = 1.0 - lam;
        p[b] = lam;
        hits.push_back(p);
      }
    }
  }
  if (hits.size() < 2) throw Error(Errc::bad_direction, "plane misses the open simplex");
  // the segment's endpoints are the two hits farthest apart
  std::size_t ia = 0, ib = 1;
  double best = -1.0;
  for (std::size_t i = 0; i < hits.size(); ++i)
    for (std::size_t j = i + 1; j < hits.size(); ++j) {
      const double d = norm(hits[i] - hits[j]);
      if (d > best) {
        best = d;
        ia = i;
        ib = j;
      }
    }
  if (best <= 0.0) throw Error(Errc::bad_direction, "plane meets the simplex in a single point");
  PlaneFrame b;
  b.r2 = normalized(0.5 * (hits[ia] + hits[ib]));
  for (auto& c : b.r2) c = std::max(c, 0.0);
  // a segment along an edge has a boundary midpoint
  if (std::min({b.r2[0], b.r2[1], b.r2[2]}) <= 0.0)
    throw Error(Errc::bad_direction, "plane meets the simplex only on its boundary");
  b.r1 = normalized(cross(n, b.r2));
  b.orthonormal = true;
  return b;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Mat3d> effective_views(const SystemSpec& sys) {
  if (!is_nonnegative(sys)) throw Error(Errc::not_contracting, "a letter does not preserve the positive cone");
  std::vector<Mat3d> out;
  for (const auto& a : sys.effective_alphabet()) out.push_back(a.float_view());
  return out;
}

Vec3 simplex_normalize(const Vec3& v) {
  const double s = v[0] + v[1] + v[2];
  if (!(s > 0.0)) throw Error(Errc::not_contracting, "iterate left the positive cone");
  return {v[0] / s, v[1] / s, v[2] / s};
}

// Chaos-game iterates in simplex normalisation, chunked on independent streams.
std::vector<Vec3> chaos_iterates(const SystemSpec& sys, std::size_t count, std::uint64_t seed) {
  const auto letters = effective_views(sys);
  const auto cdf = cumulative(sys.probability_values());
  const std::size_t chunks = (count + kChaosChunk - 1) / kChaosChunk;
  std::vector<Vec3> out(count);
  parallel_for(chunks, [&](std::size_t c) {
    Rng rng = make_rng(seed, c);
    Vec3 x{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    for (int i = 0; i < kChaosBurnIn; ++i) x = simplex_normalize(letters[sample_index(rng, cdf)].apply(x));
    const std::size_t lo = c * kChaosChunk;
    const std::size_t hi = std::min(count, lo + kChaosChunk);
    for (std::size_t k = lo; k < hi; ++k) {
      x = simplex_normalize(letters[sample_index(rng, cdf)].apply(x));
      out[k] = x;
    }
  });
  return out;
}

void emit(PointCloud& cloud, const Vec3& x) {
  if (cloud.coords == CoordinateSystem::simplex_S) {
    cloud.data.insert(cloud.data.end(), x.begin(), x.end());
    return;
  }
  if (!(x[2] > 0.0)) throw Error(Errc::denominator_zero, "point has no plane coordinates (z = 0)");
  cloud.data.push_back(x[0] / x[2]);
  cloud.data.push_back(x[1] / x[2]);
}

}  // namespace

std::vector<Vec3> stationary_directions(const SystemSpec& sys, std::size_t count, std::uint64_t seed) {
  auto pts = chaos_iterates(sys, count, seed);
  for (auto& p : pts) p = normalized(p);
  return pts;
}

PointCloud attractor_points(const SystemSpec& sys, AttractorMethod method, std::size_t budget, std::uint64_t seed,
                            CoordinateSystem coords) {
  if (budget == 0) throw Error(Errc::validation, "budget must be positive");
  PointCloud cloud;
  cloud.coords = coords;
  cloud.seed = seed;
  if (method == AttractorMethod::chaos) {
    const auto pts = chaos_iterates(sys, budget, seed);
    cloud.data.reserve(budget * cloud.dim());
    for (const auto& p : pts) emit(cloud, p);
    return cloud;
  }

  effective_views(sys);  // cone check
  auto ratio = [](const SvTriple& sv) { return sv.a2 / sv.a1; };
  std::vector<std::vector<Letter>> chosen;
  for (int n = 0; n <= 60; ++n) {
    auto words = stopping_words(sys, n, ratio);
    if (words.size() >= budget) {
      const double over = std::log(static_cast<double>(words.size()) / static_cast<double>(budget));
      const double under =
          chosen.empty() ? std::numeric_limits<double>::infinity()
                         : std::log(static_cast<double>(budget) / static_cast<double>(chosen.size()));
      if (over <= under) chosen = std::move(words);
      break;
    }
    chosen = std::move(words);
  }
  const ProductEvaluator eval(sys);
  for (const auto& w : chosen) {
    ScaledMatrix acc = eval.raw_letter(w[0]);
    for (std::size_t i = 1; i < w.size(); ++i) acc = acc * eval.raw_letter(w[i]);
    emit(cloud, simplex_normalize(eval.effective_view(acc).apply({1.0, 1.0, 1.0})));
  }
  return cloud;
}

// ---------------------------------------------------------------------------

namespace {

// r1 ^ r2 in the basis {e1^e2, e1^e3, e2^e3}
Vec3 wedge_coords(const Vec3& a, const Vec3& b) {
  return {a[0] * b[1] - a[1] * b[0], a[0] * b[2] - a[2] * b[0], a[1] * b[2] - a[2] * b[1]};
}

Vec3 transpose_apply(const Mat3d& a, const Vec3& x) { return a.transpose().apply(x); }

void require_positive_image(const Vec3& w) {
  for (double c : w)
    if (!(c > 0.0)) throw Error(Errc::not_positive, "A^T r2 is not a positive vector");
}

}  // namespace

RescaleResult rescale_decompose(const PlaneFrame& b, const Mat3d& a, const Mat3d& cofactor_t, const SvTriple& sv) {
  if (!(sv.a2 > 0.0) || (sv.a2 - sv.a3) <= kDegenerateGapTolerance * sv.a2) {
    throw Error(Errc::degenerate_gap, "a2 and a3 are too close for a stable u");
  }
  const Vec3 w = transpose_apply(a, b.r2);
  require_positive_image(w);
  const Vec3 a_r1 = transpose_apply(a, b.r1);
  const double w2 = dot(w, w);

  RescaleResult res;
  res.t = dot(a_r1, w) / w2;
  // A^T r1 x A^T r2 = det(A) A^{-1} (r1 x r2), exact-minor based
  const Vec3 n = cofactor_t.apply(cross(b.r1, b.r2));
  res.c = norm(n) / w2;
  res.m.r1 = normalized(cross(w, n));
  res.m.r2 = normalized(w);
  res.m.orthonormal = true;
  Vec3 u = normalized(b.r1 - res.t * b.r2);
  for (double x : u) {
    if (x == 0.0) continue;
    if (x < 0.0) u = -1.0 * u;
    break;
  }
  res.u = u;
  return res;
}

RescaleResult rescale_decompose(const PlaneFrame& b, const Matrix3& a) {
  for (const auto& x : a.numerators())
    if (x < 0) throw Error(Errc::not_positive, "rescale_decompose needs a nonnegative matrix");
  const SvTriple sv = singular_values(a);
  const Matrix3 cof = a.determinant() * a.inverse();
  return rescale_decompose(b, a.float_view(), cof.float_view(), sv);
}

double xi_ratio(const PlaneFrame& b, const Mat3d& a, const Mat3d& wedge) {
  const Vec3 w = transpose_apply(a, b.r2);
  const double w2 = dot(w, w);
  if (!(w2 > 0.0)) throw Error(Errc::degenerate_gap, "A^T r2 vanishes");
  const double t = dot(transpose_apply(a, b.r1), w) / w2;
  // |A^T r1 x A^T r2| = |(wedge A)^T (r1 ^ r2)|
  const double cross_norm = norm(transpose_apply(wedge, wedge_coords(b.r1, b.r2)));
  return cross_norm / (w2 * norm(b.r1 - t * b.r2));
}

std::vector<std::vector<Letter>> xi_partition(const PlaneFrame& b, const SystemSpec& sys, int n, int depth_cap) {
  if (n < 0) throw Error(Errc::validation, "resolution must be nonnegative");
  if (!is_nonnegative(sys)) throw Error(Errc::not_positive, "xi_partition needs a nonnegative system");
  const ProductEvaluator eval(sys);
  const double threshold = std::ldexp(1.0, -n);
  const std::uint64_t cap = node_cap();
  std::uint64_t nodes = 0;
  std::vector<std::vector<Letter>> out;
  walk_words(eval, depth_cap, [&](std::span<const Letter> w, const ScaledMatrix& raw) {
    if (++nodes > cap) throw Error(Errc::budget_exceeded, "xi partition exceeded the node cap");
    if (n == 0 || xi_ratio(b, eval.effective_view(raw), eval.wedge_view(raw)) <= threshold) {
      out.emplace_back(w.begin(), w.end());
      return WalkAction::prune;
    }
    if (static_cast<int>(w.size()) >= depth_cap) {
      throw Error(Errc::not_contracting, "xi partition undecided at depth cap " + std::to_string(depth_cap));
    }
    return WalkAction::descend;
  });
  return out;
}

std::vector<double> project_measure_samples(const SystemSpec& sys, const PlaneFrame& b, std::size_t count,
                                            std::uint64_t seed) {
  const auto pts = chaos_iterates(sys, count, seed);
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) out[i] = b.apply_direction(pts[i]);
  return out;
}

}  // namespace projdim
