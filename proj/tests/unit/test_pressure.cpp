#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "projdim/error.hpp"
#include "projdim/pressure.hpp"
#include "projdim/random.hpp"

using namespace projdim;

namespace {

SystemSpec copies(int k, const Matrix3& m) {
  return SystemSpec::uniform("copies", std::vector<Matrix3>(static_cast<std::size_t>(k), m));
}

}  // namespace

// Frozen values from tests/oracle/gen_oracles.py (numpy SVD on explicit products).
TEST(PartitionSum, MatchesNumpyOracle) {
  EXPECT_NEAR(partition_sum(rauzy_gamma_system(1), 1.5, 3), -2.01897853891393, 1e-11);
  EXPECT_NEAR(partition_sum(rauzy_gamma_system(1), 0.6, 4), 3.57127414191195, 1e-11);
  EXPECT_NEAR(partition_sum(rauzy_gamma_system(10), 1.5, 2), 0.213281093973673, 1e-11);
  EXPECT_NEAR(partition_sum(rauzy_gamma_system(10), 1.5, 3), 0.587607633646631, 1e-10);
  EXPECT_NEAR(partition_sum(rauzy_system(), 1.2, 6), 1.52989715589085, 1e-11);
}

TEST(PartitionSum, AnalyticDiagonalSystem) {
  const auto t9 = copies(3, Matrix3::diagonal(9, 1, Rational(1, 9)));
  for (int n = 1; n <= 4; ++n) EXPECT_NEAR(partition_sum(t9, 0.5, n), 0.0, 1e-12);
  EXPECT_NEAR(partition_sum(t9, 1.5, 2) / 2, std::log(3.0) - std::log(9.0) - 0.5 * std::log(81.0), 1e-12);
}

TEST(PartitionSum, IndependentOfWorkerCount) {
  const auto sys = rauzy_gamma_system(3);
  set_worker_count(1);
  const double a = partition_sum(sys, 1.3, 3);
  set_worker_count(3);
  const double b = partition_sum(sys, 1.3, 3);
  set_worker_count(1);
  EXPECT_EQ(a, b);
}

TEST(SpectrumCache, RawPressureMatchesDirectSum) {
  const auto sys = rauzy_gamma_system(2);
  const SpectrumCache cache(sys, 3);
  for (double s : {0.2, 1.0, 1.7})
    for (int n = 1; n <= 3; ++n) EXPECT_NEAR(cache.raw_pressure(n, s), partition_sum(sys, s, n) / n, 1e-13);
}

TEST(PressureEstimate, BracketContainsRawAndIsHeuristic) {
  const auto sys = rauzy_gamma_system(2);
  for (double s : {0.0, 0.5, 1.0, 1.5, 2.0}) {
    const PressureEstimate p = pressure_estimate(sys, s, 4);
    EXPECT_LE(p.lower, p.raw);
    EXPECT_GE(p.upper, p.raw);
    EXPECT_GE(p.submult_constant, 1.0);
    EXPECT_LE(p.supermult_constant, 1.0);
    EXPECT_TRUE(p.heuristic);
  }
}

TEST(PressureEstimate, ExactForDiagonalSystems) {
  const PressureEstimate p = pressure_estimate(copies(3, Matrix3::diagonal(9, 1, Rational(1, 9))), 0.5, 3);
  EXPECT_NEAR(p.raw, 0.0, 1e-12);
  EXPECT_NEAR(p.upper, 0.0, 1e-12);
  EXPECT_NEAR(p.lower, 0.0, 1e-12);
}

TEST(AffinityDimension, AnalyticOracles) {
  const auto t9 = affinity_dimension(copies(3, Matrix3::diagonal(9, 1, Rational(1, 9))), 1e-6, 3);
  EXPECT_NEAR(t9.value, 0.5, 1e-6);
  EXPECT_LE(t9.bracket_lo, 0.5);
  EXPECT_GE(t9.bracket_hi, 0.5);
  // 30 copies of diag(9, 1/3, 1/3): s = log 30 / log 27
  const auto up = affinity_dimension(copies(30, Matrix3::diagonal(9, Rational(1, 3), Rational(1, 3))), 1e-6, 2);
  EXPECT_NEAR(up.value, std::log(30.0) / std::log(27.0), 1e-6);
  const auto single = affinity_dimension(copies(1, Matrix3::diagonal(4, 1, Rational(1, 4))), 1e-6, 3);
  EXPECT_NEAR(single.value, 0.0, 1e-6);
}

TEST(AffinityDimension, MatchesNumpyRoot) {
  const auto g1 = affinity_dimension(rauzy_gamma_system(1), 1e-7, 4);
  EXPECT_NEAR(g1.value, 1.16286921745859, 1e-7);
  EXPECT_LE(g1.bracket_lo, g1.value);
  EXPECT_GE(g1.bracket_hi, g1.value);
  EXPECT_EQ(g1.diagnostics.at("grid_monotone"), 1.0);
  const auto g5 = affinity_dimension(rauzy_gamma_system(5), 1e-7, 2);
  EXPECT_NEAR(g5.value, 1.4888854370879, 1e-7);
}

TEST(AffinityDimension, BoundOnlyWhenPressureStaysPositive) {
  const auto e = affinity_dimension(copies(9, Matrix3::diagonal(2, 1, Rational(1, 2))), 1e-4, 2);
  EXPECT_EQ(e.value, 2.0);
  EXPECT_EQ(e.bracket_hi, std::numeric_limits<double>::infinity());
  EXPECT_EQ(e.notes.count("bound_only"), 1u);
}

TEST(AffinityDimension, RejectsNegativeEntries) {
  const auto sys = SystemSpec::uniform("neg", {Matrix3::from_integers({{1, -1, 0}, {0, 1, 0}, {0, 0, 1}})});
  try {
    affinity_dimension(sys, 1e-3, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::not_positive);
  }
}

TEST(Zeta, TruncatedSumMatchesOracleWithinPruningLoss) {
  const ZetaResult z = zeta_truncated(rauzy_gamma_system(1), 1.5, 4);
  EXPECT_NEAR(z.value, 0.870643849312983, 1e-12 + z.pruning_loss);
  EXPECT_LE(z.pruning_loss, 1e-13);
  EXPECT_LE(z.nodes, 6u + 36u + 216u + 1296u);
}

TEST(Rauzy, GammaConstructionAndEpsilonRange) {
  EXPECT_EQ(rauzy_gamma_system(4).size(), 24u);
  EXPECT_EQ(rauzy_gamma_system(4).label, "gamma_4");
  EXPECT_THROW(rauzy_gamma_system(2, Rational(1, 4)), Error);
  EXPECT_THROW(rauzy_gamma_system(2, Rational(0)), Error);
  EXPECT_THROW(rauzy_gamma_system(0), Error);
  EXPECT_TRUE(rauzy_conjugator(Rational(1, 5)).determinant() != 0);
}

TEST(Rauzy, LadderIsNondecreasing) {
  const auto ladder = rauzy_ladder(8, 2, 1e-4);
  ASSERT_EQ(ladder.size(), 3u);
  EXPECT_EQ(ladder[0].N, 2);
  EXPECT_EQ(ladder[1].N, 4);
  EXPECT_EQ(ladder[2].N, 8);
  EXPECT_LE(ladder[0].estimate.value, ladder[1].estimate.value + 2e-4);
  EXPECT_LE(ladder[1].estimate.value, ladder[2].estimate.value + 2e-4);
}

TEST(Depth, DefaultsByAlphabetSize) {
  EXPECT_EQ(default_depth(6), 4);
  EXPECT_EQ(default_depth(30), 4);
  EXPECT_EQ(default_depth(120), 3);
  EXPECT_EQ(default_depth(600), 2);
}
