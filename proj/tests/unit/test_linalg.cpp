#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "projdim/error.hpp"
#include "projdim/linalg.hpp"
#include "projdim/semigroup.hpp"

using namespace projdim;

namespace {

Matrix3 random_word(std::mt19937_64& rng, int len) {
  const auto letters = rauzy_alphabet();
  Matrix3 p = Matrix3::identity();
  for (int k = 0; k < len; ++k) p = p * letters[rng() % 3];
  return p;
}

Eigen::Vector3d eigen_singular_values(const Matrix3& a) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a.float_view()(i, j);
  return Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues();
}

}  // namespace

TEST(SingularValues, FrozenNumpyOracle) {
  const auto l = rauzy_alphabet();
  const SvTriple sv = singular_values(l[0] * l[1] * l[1] * l[2] * l[0]);
  EXPECT_NEAR(sv.a1, 18.0798423603683, 1e-12);
  EXPECT_NEAR(sv.a2, 0.286332909768602, 1e-13);
  EXPECT_NEAR(sv.a3, 0.193167515421452, 1e-13);
}

TEST(SingularValues, AgreeWithEigenOnRandomWords) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 300; ++t) {
    const Matrix3 a = random_word(rng, 1 + static_cast<int>(rng() % 12));
    const SvTriple sv = singular_values(a);
    const Eigen::Vector3d ref = eigen_singular_values(a);
    EXPECT_NEAR(sv.a1, ref(0), 1e-12 * ref(0));
    EXPECT_NEAR(sv.a2, ref(1), 1e-9 * ref(1));
    // Eigen loses relative accuracy on a3 for ill-conditioned words
    EXPECT_NEAR(sv.a3, ref(2), 1e-12 * ref(0));
    EXPECT_NEAR(sv.a1 * sv.a2 * sv.a3, 1.0, 1e-12);
  }
}

TEST(SingularValues, ZeroDeterminantThrows) {
  EXPECT_THROW(singular_values(Matrix3::from_integers({{1, 2, 3}, {2, 4, 6}, {1, 0, 0}})), Error);
}

TEST(SingularValues, PrecisionWarningOnExtremeCondition) {
  const auto a = Matrix3::diagonal(Rational(BigInt(1) << 30), 1, Rational(1, BigInt(1) << 30));
  EXPECT_TRUE(singular_values(a).precision_warning);
  EXPECT_FALSE(singular_values(Matrix3::diagonal(9, 1, Rational(1, 9))).precision_warning);
}

TEST(Svf, BranchesAreContinuousAndAnalyticOnDiagonal) {
  const SvTriple sv = singular_values(Matrix3::diagonal(9, 1, Rational(1, 9)));
  EXPECT_NEAR(svf(sv, 0.5), 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(svf(sv, 1.0), 1.0 / 9.0, 1e-15);
  EXPECT_NEAR(svf(sv, 1.5), std::pow(1.0 / 9.0, 1.0) * std::pow(1.0 / 81.0, 0.5), 1e-15);
  EXPECT_NEAR(svf(sv, 2.0), 1.0 / 729.0, 1e-17);
  for (double s : {1.0, 2.0}) EXPECT_NEAR(svf(sv, s - 1e-12), svf(sv, s + 1e-12), 1e-12);
  EXPECT_DOUBLE_EQ(svf(sv, 0.0), 1.0);
}

TEST(Svf, NormsRouteAgreesOnRandomWords) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const Matrix3 a = random_word(rng, 1 + static_cast<int>(rng() % 10));
    for (double s : {0.0, 0.3, 1.0, 1.5, 2.0}) {
      const double x = svf(a, s);
      EXPECT_NEAR(svf_via_norms(a, s), x, 1e-9 * x) << s;
    }
  }
  EXPECT_THROW(svf_via_norms(Matrix3::identity(), 2.5), Error);
}

TEST(OperatorNorm, ExactBoundsBracketValue) {
  const auto a = Matrix3::from_integers({{3, 1, 2}, {1, 1, 1}, {0, 0, 1}});
  const OperatorNorm n = operator_norm(a);
  EXPECT_NEAR(n.value, eigen_singular_values(a)(0), 1e-12);
  EXPECT_LE(nearest_double(n.lower_sq), n.value * n.value * (1 + 1e-15));
  EXPECT_GE(nearest_double(n.upper_sq), n.value * n.value * (1 - 1e-15));
}

TEST(Jacobi, DecomposesSymmetricMatrix) {
  Mat3d s;
  s.a = {4, 1, 2, 1, 3, 0, 2, 0, 5};
  const SymmetricEigen e = jacobi_eigen(s);
  EXPECT_GE(e.values[0], e.values[1]);
  EXPECT_GE(e.values[1], e.values[2]);
  for (int k = 0; k < 3; ++k) {
    const Vec3 v = e.vectors.col(k);
    const Vec3 sv = s.apply(v);
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(sv[i], e.values[k] * v[i], 1e-12);
  }
}

TEST(ProjectiveSvd, ReconstructsMatrix) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const Matrix3 a = random_word(rng, 1 + static_cast<int>(rng() % 8));
    const ProjectiveSvd p = projective_svd(a);
    Mat3d d;
    d(0, 0) = p.sv.a2;
    d(1, 1) = p.sv.a3;
    d(2, 2) = p.sv.a1;
    const Mat3d r = p.v * d * p.u;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) EXPECT_NEAR(r(i, j), a.float_view()(i, j), 1e-9 * p.sv.a1);
    const Mat3d uu = p.u * p.u.transpose();
    const Mat3d vv = p.v * p.v.transpose();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(uu(i, j), i == j ? 1.0 : 0.0, 1e-12);
        EXPECT_NEAR(vv(i, j), i == j ? 1.0 : 0.0, 1e-12);
      }
  }
}
