#include <gtest/gtest.h>

#include <cmath>

#include "projdim/cover.hpp"
#include "projdim/error.hpp"
#include "projdim/pressure.hpp"

using namespace projdim;

namespace {

PointCloud plane_cloud(const std::vector<double>& data) {
  PointCloud c;
  c.coords = CoordinateSystem::plane_P;
  c.data = data;
  return c;
}

}  // namespace

TEST(ConeConstant, TrivialForAlignedDiagonalLetters) {
  // top singular direction e3, second e1: U = V = I
  const auto sys = SystemSpec::uniform(
      "aligned", {Matrix3::diagonal(1, Rational(1, 9), 9), Matrix3::diagonal(1, Rational(1, 4), 4)});
  EXPECT_NEAR(cone_constant(sys), 1.0, 1e-12);
}

TEST(ConeConstant, AtLeastOneAndRecordedForGammaOne) {
  const double c = cone_constant(rauzy_gamma_system(1));
  EXPECT_GE(c, 1.0);
  EXPECT_TRUE(std::isfinite(c));
  // frozen regression value of the sampled maximisation
  EXPECT_NEAR(c, 19.055127270727557, 1e-9);
  const auto neg = SystemSpec::uniform("neg", {Matrix3::from_integers({{1, -1, 0}, {0, 1, 0}, {0, 0, 1}})});
  EXPECT_THROW(cone_constant(neg), Error);
}

TEST(Cover, CostDecreasesInS) {
  const auto sys = rauzy_gamma_system(5);
  double prev = INFINITY;
  for (double s : {1.55, 1.7, 1.85, 1.99}) {
    const CoverReport r = svd_cover_upper(sys, s, 1e-3);
    EXPECT_GE(r.cover_cost, 0.0);
    EXPECT_LE(r.cover_cost, prev);
    prev = r.cover_cost;
  }
}

TEST(Cover, CostShrinksWithDeltaAboveAffinityDimension) {
  const auto sys = rauzy_gamma_system(10);
  double prev = INFINITY;
  for (int k : {4, 6, 8}) {
    const CoverReport r = svd_cover_upper(sys, 1.9, std::ldexp(1.0, -k));
    EXPECT_LE(r.cover_cost, prev) << k;
    EXPECT_GE(r.ball_count, r.word_count);
    prev = r.cover_cost;
  }
}

TEST(Cover, SingletonCostVanishes) {
  const auto sys = SystemSpec::uniform("one", {Matrix3::diagonal(1, Rational(1, 9), 9)});
  const double a = svd_cover_upper(sys, 0.5, 1e-2).cover_cost;
  const double b = svd_cover_upper(sys, 0.5, 1e-10).cover_cost;
  EXPECT_EQ(svd_cover_upper(sys, 0.5, 1e-10).word_count, 1u);
  // one ellipse of width (1/9)^n: cost scales like delta^(s/2) up to one step
  EXPECT_LT(b, 1e-3 * a);
}

TEST(Cover, TopExponentBoundedByZeta) {
  const auto sys = rauzy_gamma_system(2);
  const CoverReport r = svd_cover_upper(sys, 2.0, 1e-2);
  const double c4 = std::pow(r.cone_constant, 4.0);
  const ZetaResult z = zeta_truncated(sys, 2.0, r.max_word_length);
  EXPECT_LE(r.cover_cost, c4 * r.cloud_radius * r.cloud_radius * (z.value + z.pruning_loss) * (1 + 1e-12));
}

TEST(Cover, ArgumentChecks) {
  const auto sys = rauzy_gamma_system(1);
  EXPECT_THROW(svd_cover_upper(sys, 0.0, 0.1), Error);
  EXPECT_THROW(svd_cover_upper(sys, 1.0, 1.0), Error);
}

TEST(BoxDimension, SinglePointAndGrid) {
  const auto point = plane_cloud(std::vector<double>(2000, 0.3));
  EXPECT_NEAR(box_dimension_estimate(point, {2, 3, 4, 5}).value, 0.0, 1e-12);

  std::vector<double> grid;
  const int m = 1024;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      grid.push_back((i + 0.5) / m);
      grid.push_back((j + 0.5) / m);
    }
  const auto est = box_dimension_estimate(plane_cloud(grid), {2, 3, 4, 5, 6, 7, 8});
  EXPECT_NEAR(est.value, 2.0, 0.05);
  EXPECT_EQ(est.method, DimensionMethod::box_count);
}

TEST(BoxDimension, CountsAreMonotoneAndNested) {
  std::vector<double> big;
  for (int i = 0; i < 5000; ++i) {
    big.push_back(std::fmod(i * 0.618033988749895, 1.0));
    big.push_back(std::fmod(i * 0.414213562373095, 1.0));
  }
  const std::vector<double> small(big.begin(), big.begin() + 2000);
  const auto nb = box_counts(plane_cloud(big), {1, 2, 3, 4, 5, 6});
  const auto ns = box_counts(plane_cloud(small), {1, 2, 3, 4, 5, 6});
  for (std::size_t i = 0; i < nb.size(); ++i) {
    EXPECT_LE(ns[i], nb[i]);
    if (i) EXPECT_GE(nb[i], nb[i - 1]);
  }
}

TEST(BoxDimension, TooFewScales) {
  try {
    box_dimension_estimate(plane_cloud({0.1, 0.2}), {1, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::too_few_scales);
  }
}
