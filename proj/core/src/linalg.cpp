#include "projdim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "projdim/error.hpp"

namespace projdim {

double SvTriple::log_ratio2() const { return std::log(a2 / a1); }
double SvTriple::log_ratio3() const { return std::log(a3 / a1); }

SymmetricEigen jacobi_eigen(const Mat3d& symmetric, double tol) {
  Mat3d m = symmetric;
  Mat3d v = Mat3d::identity();
  double scale = 0.0;
  for (double x : m.a) scale += x * x;
  scale = std::sqrt(scale);

  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = std::sqrt(2.0 * (m(0, 1) * m(0, 1) + m(0, 2) * m(0, 2) + m(1, 2) * m(1, 2)));
    if (off <= tol * scale || off == 0.0) break;
    for (int p = 0; p < 2; ++p) {
      for (int q = p + 1; q < 3; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < 3; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (int k = 0; k < 3; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
        for (int k = 0; k < 3; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&m](int x, int y) { return m(x, x) > m(y, y); });
  SymmetricEigen out;
  for (int k = 0; k < 3; ++k) {
    out.values[k] = m(order[k], order[k]);
    for (int r = 0; r < 3; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

namespace {

double top_singular_value(const Mat3d& a) {
  const Mat3d gram = a.transpose() * a;
  const auto eig = jacobi_eigen(gram);
  return std::sqrt(std::max(eig.values[0], 0.0));
}

}  // namespace

SvTriple singular_values(const Mat3d& a, const Mat3d& wedge2, double abs_det) {
  SvTriple sv;
  sv.a1 = top_singular_value(a);
  const double w = top_singular_value(wedge2);
  sv.a2 = w / sv.a1;
  sv.a3 = abs_det / w;
  if (sv.a3 > sv.a2) std::swap(sv.a2, sv.a3);
  sv.precision_warning = sv.a1 / sv.a3 > kPrecisionLossCondition;
  return sv;
}

SvTriple singular_values(const Matrix3& a) {
  const Rational det = a.determinant();
  if (det == 0) throw Error(Errc::singular_input, "singular_values of a singular matrix");
  return singular_values(a.float_view(), exterior_square(a).float_view(), std::abs(nearest_double(det)));
}

double log_svf(double log_ratio2, double log_ratio3, double s) {
  if (s <= 1.0) return s * log_ratio2;
  if (s <= 2.0) return log_ratio2 + (s - 1.0) * log_ratio3;
  return 0.5 * s * (log_ratio2 + log_ratio3);
}

double svf(const SvTriple& sv, double s) {
  if (s < 0.0) throw Error(Errc::domain_error, "svf requires s >= 0");
  return std::exp(log_svf(sv.log_ratio2(), sv.log_ratio3(), s));
}

double svf(const Matrix3& a, double s) { return svf(singular_values(a), s); }

double operator_norm(const Mat3d& a) { return top_singular_value(a); }

OperatorNorm operator_norm(const Matrix3& a) {
  OperatorNorm n;
  n.value = top_singular_value(a.float_view());
  n.frobenius_sq = a.frobenius_squared();
  n.lower_sq = n.frobenius_sq / 3;
  n.upper_sq = n.frobenius_sq;
  return n;
}

double svf_via_norms(const Matrix3& a, double s) {
  if (s < 0.0 || s > 2.0) throw Error(Errc::domain_error, "svf_via_norms requires 0 <= s <= 2");
  if (a.determinant() == 0) throw Error(Errc::singular_input, "svf_via_norms of a singular matrix");
  const double n1 = operator_norm(a).value;
  const double n2 = operator_norm(exterior_square(a)).value;
  if (s <= 1.0) return std::pow(n2 / (n1 * n1), s);
  if (!a.is_unimodular()) throw Error(Errc::domain_error, "svf_via_norms with s > 1 needs det = 1");
  return std::pow(n2, 2.0 - s) / std::pow(n1, 1.0 + s);
}

namespace {

Mat3d float_inverse(const Mat3d& a) {
  const double det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
                     a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                     a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  Mat3d inv;
  inv(0, 0) = (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) / det;
  inv(0, 1) = (a(0, 2) * a(2, 1) - a(0, 1) * a(2, 2)) / det;
  inv(0, 2) = (a(0, 1) * a(1, 2) - a(0, 2) * a(1, 1)) / det;
  inv(1, 0) = (a(1, 2) * a(2, 0) - a(1, 0) * a(2, 2)) / det;
  inv(1, 1) = (a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0)) / det;
  inv(1, 2) = (a(0, 2) * a(1, 0) - a(0, 0) * a(1, 2)) / det;
  inv(2, 0) = (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)) / det;
  inv(2, 1) = (a(0, 1) * a(2, 0) - a(0, 0) * a(2, 1)) / det;
  inv(2, 2) = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)) / det;
  return inv;
}

ProjectiveSvd assemble_svd(const Mat3d& a, const Mat3d& a_inv, const SvTriple& sv) {
  const Vec3 u1 = jacobi_eigen(a.transpose() * a).vectors.col(0);
  // top eigenvector of A^{-1} A^{-T} is the smallest right singular vector
  const Mat3d inv_gram = a_inv * a_inv.transpose();
  Vec3 u3 = jacobi_eigen(inv_gram).vectors.col(0);
  u3 = normalized(u3 - dot(u3, u1) * u1);
  const Vec3 u2 = normalized(cross(u3, u1));

  const Vec3 v1 = normalized(a.apply(u1));
  Vec3 v3 = normalized(a_inv.transpose().apply(u3));
  v3 = normalized(v3 - dot(v3, v1) * v1);
  Vec3 v2 = normalized(cross(v3, v1));
  if (dot(a.apply(u2), v2) < 0) v2 = -1.0 * v2;

  ProjectiveSvd out;
  out.sv = sv;
  const std::array<Vec3, 3> urows = {u2, u3, u1};
  const std::array<Vec3, 3> vcols = {v2, v3, v1};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out.u(i, j) = urows[i][j];
      out.v(j, i) = vcols[i][j];
    }
  return out;
}

}  // namespace

ProjectiveSvd projective_svd(const Matrix3& a) {
  const SvTriple sv = singular_values(a);
  return assemble_svd(a.float_view(), a.inverse().float_view(), sv);
}

ProjectiveSvd projective_svd(const Mat3d& a, const SvTriple& sv) { return assemble_svd(a, float_inverse(a), sv); }

}  // namespace projdim
