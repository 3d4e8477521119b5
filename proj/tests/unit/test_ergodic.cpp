#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "projdim/error.hpp"
#include "projdim/ergodic.hpp"
#include "projdim/pressure.hpp"
#include "projdim/random.hpp"

using namespace projdim;

TEST(Entropy, ShannonValues) {
  const std::vector<double> u{0.25, 0.25, 0.25, 0.25};
  EXPECT_NEAR(shannon_entropy(u), std::log(4.0), 1e-15);
  const std::vector<double> one{1.0};
  EXPECT_EQ(shannon_entropy(one), 0.0);
  const std::vector<double> bad{0.5, 0.6};
  EXPECT_THROW(shannon_entropy(bad), Error);
  const std::vector<double> zero{1.0, 0.0};
  EXPECT_THROW(shannon_entropy(zero), Error);
}

TEST(LyapunovDimension, ThreeBranches) {
  LyapunovStats chi;
  chi.chi1 = 1.0;
  chi.chi2 = 0.0;
  chi.chi3 = -1.0;
  // g12 = 1, g13 = 2
  EXPECT_DOUBLE_EQ(lyapunov_dimension(0.5, chi), 0.5);
  EXPECT_DOUBLE_EQ(lyapunov_dimension(1.0, chi), 1.0);
  EXPECT_DOUBLE_EQ(lyapunov_dimension(2.0, chi), 1.5);
  EXPECT_DOUBLE_EQ(lyapunov_dimension(3.0, chi), 2.0);
  EXPECT_DOUBLE_EQ(lyapunov_dimension(10.0, chi), 2.0);
  chi.chi2 = 1.0;
  EXPECT_THROW(lyapunov_dimension(1.0, chi), Error);
}

TEST(Lyapunov, DiagonalSystemIsExact) {
  const auto sys = SystemSpec::uniform("t9", std::vector<Matrix3>(3, Matrix3::diagonal(9, 1, Rational(1, 9))));
  const LyapunovStats st = lyapunov_exponents(sys, 2000, 1);
  EXPECT_NEAR(st.chi1, std::log(9.0), 1e-12);
  EXPECT_NEAR(st.chi2, 0.0, 1e-12);
  EXPECT_NEAR(st.chi3, -std::log(9.0), 1e-12);
  EXPECT_EQ(st.chains, kLyapunovChains);
}

TEST(Lyapunov, RauzyExponentsOrderedAndTraceless) {
  const LyapunovStats st = lyapunov_exponents(rauzy_system(), 20000, 7);
  EXPECT_GT(st.chi1 - st.chi2, 3 * std::hypot(st.stderr1, st.stderr2));
  EXPECT_GT(st.chi2 - st.chi3, 3 * std::hypot(st.stderr2, st.stderr3));
  EXPECT_NEAR(st.chi1 + st.chi2 + st.chi3, 0.0, 1e-9);
  EXPECT_NEAR(st.chi1, 0.5005, 0.01);
  EXPECT_THROW(lyapunov_exponents(rauzy_system(), 999, 7), Error);
}

TEST(Lyapunov, ReproducibleAndWorkerIndependent) {
  const auto sys = rauzy_gamma_system(1);
  set_worker_count(1);
  const LyapunovStats a = lyapunov_exponents(sys, 3000, 5);
  set_worker_count(2);
  const LyapunovStats b = lyapunov_exponents(sys, 3000, 5);
  set_worker_count(1);
  EXPECT_EQ(a.chi1, b.chi1);
  EXPECT_EQ(a.chi2, b.chi2);
  EXPECT_EQ(a.chi3, b.chi3);
}

TEST(Furstenberg, PlaneSampleIsUnitNormalMeetingSimplex) {
  const auto sys = rauzy_gamma_system(1);
  const Vec3 n = furstenberg_plane_sample(sys, 200, 3);
  EXPECT_NEAR(norm(n), 1.0, 1e-12);
  EXPECT_GT(n[0] != 0.0 ? n[0] : (n[1] != 0.0 ? n[1] : n[2]), 0.0);
  EXPECT_EQ(n, furstenberg_plane_sample(sys, 200, 3));
  EXPECT_THROW(furstenberg_plane_sample(sys, 99, 3), Error);
}

TEST(DyadicEntropy, UniformAndAtomicSamples) {
  std::vector<double> grid(1 << 12);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = (static_cast<double>(i) + 0.5) / grid.size();
  EXPECT_NEAR(dyadic_entropy(grid, 8), 8 * std::log(2.0), 1e-12);
  const std::vector<double> atom(100, 0.3);
  EXPECT_EQ(dyadic_entropy(atom, 10), 0.0);
}

TEST(EmpiricalDelta, SmallRunIsNearTargetAndReproducible) {
  DeltaOptions o;
  o.planes = 4;
  o.samples = 100'000;
  o.resolution = 10;
  o.lyapunov_steps = 5000;
  o.seed = 1;
  const auto sys = rauzy_gamma_system(3);
  const DimensionEstimate a = empirical_delta(sys, o);
  const DimensionEstimate b = empirical_delta(sys, o);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.method, DimensionMethod::empirical_entropy);
  EXPECT_NEAR(a.value, a.diagnostics.at("target"), 0.15);
  EXPECT_LE(a.bracket_lo, a.value);
  EXPECT_GE(a.bracket_hi, a.value);
}
