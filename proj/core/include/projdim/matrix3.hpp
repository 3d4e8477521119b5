#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>

#include "projdim/rational.hpp"

namespace projdim {

using Vec3 = std::array<double, 3>;

// Row-major 3x3 matrix of doubles.
struct Mat3d {
  std::array<double, 9> a{};

  double operator()(int i, int j) const { return a[3 * i + j]; }
  double& operator()(int i, int j) { return a[3 * i + j]; }

  static Mat3d identity();
  Mat3d transpose() const;
  Vec3 apply(const Vec3& v) const;
  Vec3 row(int i) const { return {a[3 * i], a[3 * i + 1], a[3 * i + 2]}; }
  Vec3 col(int j) const { return {a[j], a[3 + j], a[6 + j]}; }
  double max_abs() const;

  friend Mat3d operator*(const Mat3d& x, const Mat3d& y);
  friend bool operator==(const Mat3d&, const Mat3d&) = default;
};

double dot(const Vec3& u, const Vec3& v);
double norm(const Vec3& v);
Vec3 cross(const Vec3& u, const Vec3& v);
Vec3 normalized(const Vec3& v);
Vec3 operator-(const Vec3& u, const Vec3& v);
Vec3 operator+(const Vec3& u, const Vec3& v);
Vec3 operator*(double s, const Vec3& v);

// Exact matrix over the rationals, stored as integer numerators over a common
// positive denominator with gcd(numerators, denominator) == 1. The nearest
// double of every entry is cached in `float_view()`.
class Matrix3 {
 public:
  Matrix3();  // zero matrix

  static Matrix3 identity();
  static Matrix3 from_integers(std::initializer_list<std::initializer_list<long long>> rows);
  static Matrix3 from_rationals(const std::array<Rational, 9>& entries);
  static Matrix3 from_scaled(std::array<BigInt, 9> numerators, BigInt denominator);
  static Matrix3 diagonal(const Rational& a, const Rational& b, const Rational& c);

  Rational entry(int i, int j) const;
  const std::array<BigInt, 9>& numerators() const { return num_; }
  const BigInt& denominator() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  const Mat3d& float_view() const { return view_; }

  Rational determinant() const;
  Rational trace() const;
  bool is_unimodular() const { return determinant() == 1; }
  bool is_zero() const;
  Matrix3 transpose() const;
  Matrix3 inverse() const;  // throws Error{singular_input}
  Rational frobenius_squared() const;

  std::size_t hash() const;
  std::string str() const;

  friend Matrix3 operator*(const Matrix3& x, const Matrix3& y);
  friend Matrix3 operator+(const Matrix3& x, const Matrix3& y);
  friend Matrix3 operator-(const Matrix3& x, const Matrix3& y);
  friend Matrix3 operator*(const Rational& s, const Matrix3& x);
  friend bool operator==(const Matrix3& x, const Matrix3& y) { return x.den_ == y.den_ && x.num_ == y.num_; }

 private:
  void canonicalize();
  void refresh_view();

  std::array<BigInt, 9> num_;
  BigInt den_;
  Mat3d view_;
};

inline Matrix3 mat_mul(const Matrix3& x, const Matrix3& y) { return x * y; }

// Matrix of 2x2 minors in the basis {e1^e2, e1^e3, e2^e3}.
Matrix3 exterior_square(const Matrix3& a);

Matrix3 commutator(const Matrix3& x, const Matrix3& y);

// Non-canonical scaled form used on enumeration hot paths: value = num / den.
// Products never reduce by gcd; callers convert to Matrix3 when they need a
// canonical representative.
struct ScaledMatrix {
  std::array<BigInt, 9> num;
  BigInt den{1};

  static ScaledMatrix from(const Matrix3& m) { return {m.numerators(), m.denominator()}; }
  Matrix3 canonical() const { return Matrix3::from_scaled(num, den); }
};

ScaledMatrix operator*(const ScaledMatrix& x, const ScaledMatrix& y);
void multiply_into(const ScaledMatrix& x, const ScaledMatrix& y, ScaledMatrix& out);
Mat3d float_view(const ScaledMatrix& m);
// Float view of the exterior square, computed from exact minors.
Mat3d exterior_square_view(const ScaledMatrix& m);
// Float view of det(A) A^{-1}, computed from exact minors.
Mat3d adjugate_view_of(const ScaledMatrix& m);
// Exact determinant as a double (nearest).
double determinant_value(const ScaledMatrix& m);

}  // namespace projdim
