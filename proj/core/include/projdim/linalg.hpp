#pragma once

#include <array>

#include "projdim/matrix3.hpp"

namespace projdim {

/// Singular values a1 >= a2 >= a3 >= 0 of a 3x3 matrix.
struct SvTriple {
  double a1 = 1.0;
  double a2 = 1.0;
  double a3 = 1.0;
  /// Set when a1/a3 exceeds 1e12; values are still returned.
  bool precision_warning = false;

  double log_ratio2() const;  // log(a2/a1)
  double log_ratio3() const;  // log(a3/a1)
};

inline constexpr double kPrecisionLossCondition = 1e12;
inline constexpr double kDegenerateGapTolerance = 1e-9;

/// Symmetric 3x3 eigen-decomposition by cyclic Jacobi rotations.
/// Eigenvalues are sorted descending; column k of `vectors` pairs with values[k].
struct SymmetricEigen {
  std::array<double, 3> values{};
  Mat3d vectors;
};
SymmetricEigen jacobi_eigen(const Mat3d& symmetric, double tol = 1e-12);

/// Singular values from the cached float view. The top value comes from
/// A^T A, the product a1*a2 from the exterior square (exact minors), and a3
/// from the exact determinant, which keeps all three relatively accurate.
/// Throws Error{singular_input} when the exact determinant is zero.
SvTriple singular_values(const Matrix3& a);

/// Hot-path variant on precomputed views. `abs_det` must be nonzero.
SvTriple singular_values(const Mat3d& a, const Mat3d& wedge2, double abs_det);

/// Projective singular value function phi^s, branchwise in s with the
/// s >= 2 branch taken as (a2 a3 / a1^2)^(s/2) so the function is continuous.
double svf(const SvTriple& sv, double s);
double svf(const Matrix3& a, double s);
/// log phi^s, used by pressure sums to avoid underflow.
double log_svf(double log_ratio2, double log_ratio3, double s);

/// phi^s computed only from the operator norms of A and its exterior square.
/// Requires 0 <= s <= 2 (Error{domain_error} otherwise) and, for s > 1, a
/// unimodular A.
double svf_via_norms(const Matrix3& a, double s);

struct OperatorNorm {
  double value = 0.0;            // spectral norm a1
  Rational frobenius_sq;         // ||A||_F^2, exact
  Rational lower_sq;             // ||A||_F^2 / 3 <= ||A||_2^2
  Rational upper_sq;             // ||A||_2^2 <= ||A||_F^2
};
OperatorNorm operator_norm(const Matrix3& a);
double operator_norm(const Mat3d& a);

/// SVD arranged as A = V D U with D = diag(a2, a3, a1): U sends the top right
/// singular vector to e3, V sends e3 to the top left singular vector.
struct ProjectiveSvd {
  Mat3d u;
  Mat3d v;
  SvTriple sv;
};
ProjectiveSvd projective_svd(const Matrix3& a);
ProjectiveSvd projective_svd(const Mat3d& a, const SvTriple& sv);

}  // namespace projdim
