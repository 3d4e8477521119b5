#include "projdim/matrix3.hpp"

#include <cmath>
#include <sstream>

#include "projdim/error.hpp"

namespace projdim {

Mat3d Mat3d::identity() {
  Mat3d m;
  m.a[0] = m.a[4] = m.a[8] = 1.0;
  return m;
}

Mat3d Mat3d::transpose() const {
  Mat3d t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t(i, j) = (*this)(j, i);
  return t;
}

Vec3 Mat3d::apply(const Vec3& v) const {
  return {a[0] * v[0] + a[1] * v[1] + a[2] * v[2],
          a[3] * v[0] + a[4] * v[1] + a[5] * v[2],
          a[6] * v[0] + a[7] * v[1] + a[8] * v[2]};
}

double Mat3d::max_abs() const {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

Mat3d operator*(const Mat3d& x, const Mat3d& y) {
  Mat3d r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
  return r;
}

double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }
Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}
Vec3 normalized(const Vec3& v) {
  const double n = norm(v);
  return {v[0] / n, v[1] / n, v[2] / n};
}
Vec3 operator-(const Vec3& u, const Vec3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
Vec3 operator+(const Vec3& u, const Vec3& v) { return {u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

// ---------------------------------------------------------------------------

Matrix3::Matrix3() : den_(1) { refresh_view(); }

Matrix3 Matrix3::identity() { return from_integers({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

Matrix3 Matrix3::from_integers(std::initializer_list<std::initializer_list<long long>> rows) {
  if (rows.size() != 3) throw Error(Errc::validation, "Matrix3 needs 3 rows");
  std::array<BigInt, 9> num;
  int i = 0;
  for (const auto& row : rows) {
    if (row.size() != 3) throw Error(Errc::validation, "Matrix3 rows need 3 entries");
    int j = 0;
    for (long long v : row) num[3 * i + j++] = v;
    ++i;
  }
  return from_scaled(std::move(num), 1);
}

Matrix3 Matrix3::from_rationals(const std::array<Rational, 9>& entries) {
  BigInt den = 1;
  for (const auto& e : entries) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(e));
  std::array<BigInt, 9> num;
  for (int k = 0; k < 9; ++k) {
    num[k] = boost::multiprecision::numerator(entries[k]) * (den / boost::multiprecision::denominator(entries[k]));
  }
  return from_scaled(std::move(num), std::move(den));
}

Matrix3 Matrix3::from_scaled(std::array<BigInt, 9> numerators, BigInt denominator) {
  if (denominator == 0) throw Error(Errc::validation, "zero denominator");
  Matrix3 m;
  m.num_ = std::move(numerators);
  m.den_ = std::move(denominator);
  m.canonicalize();
  m.refresh_view();
  return m;
}

Matrix3 Matrix3::diagonal(const Rational& a, const Rational& b, const Rational& c) {
  return from_rationals({a, 0, 0, 0, b, 0, 0, 0, c});
}

void Matrix3::canonicalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  if (den_ == 1) return;
  BigInt g = den_;
  for (const auto& x : num_) {
    if (g == 1) break;
    if (x != 0) g = boost::multiprecision::gcd(g, x);
  }
  if (is_zero()) g = den_;
  if (g > 1) {
    den_ /= g;
    for (auto& x : num_) x /= g;
  }
}

void Matrix3::refresh_view() {
  for (int k = 0; k < 9; ++k) view_.a[k] = nearest_double(num_[k], den_);
}

Rational Matrix3::entry(int i, int j) const { return Rational(num_[3 * i + j], den_); }

bool Matrix3::is_zero() const {
  for (const auto& x : num_)
    if (x != 0) return false;
  return true;
}

namespace {

BigInt det_numerator(const std::array<BigInt, 9>& n) {
  return n[0] * (n[4] * n[8] - n[5] * n[7]) - n[1] * (n[3] * n[8] - n[5] * n[6]) +
         n[2] * (n[3] * n[7] - n[4] * n[6]);
}

}  // namespace

Rational Matrix3::determinant() const { return Rational(det_numerator(num_), den_ * den_ * den_); }

Rational Matrix3::trace() const { return Rational(num_[0] + num_[4] + num_[8], den_); }

Matrix3 Matrix3::transpose() const {
  std::array<BigInt, 9> t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[3 * i + j] = num_[3 * j + i];
  return from_scaled(std::move(t), den_);
}

Matrix3 Matrix3::inverse() const {
  const BigInt det = det_numerator(num_);
  if (det == 0) throw Error(Errc::singular_input, "matrix is singular");
  const auto& n = num_;
  // adjugate of the numerator matrix; A^{-1} = den * adj(N) / det(N)
  std::array<BigInt, 9> adj = {
      n[4] * n[8] - n[5] * n[7], n[2] * n[7] - n[1] * n[8], n[1] * n[5] - n[2] * n[4],
      n[5] * n[6] - n[3] * n[8], n[0] * n[8] - n[2] * n[6], n[2] * n[3] - n[0] * n[5],
      n[3] * n[7] - n[4] * n[6], n[1] * n[6] - n[0] * n[7], n[0] * n[4] - n[1] * n[3]};
  for (auto& x : adj) x *= den_;
  return from_scaled(std::move(adj), det);
}

Rational Matrix3::frobenius_squared() const {
  BigInt s = 0;
  for (const auto& x : num_) s += x * x;
  return Rational(s, den_ * den_);
}

std::size_t Matrix3::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  auto mix = [&h](const BigInt& x) {
    const BigInt low = abs(x) & BigInt(0xffffffffffffffffULL);
    std::size_t v = static_cast<std::size_t>(low.convert_to<std::uint64_t>());
    if (x < 0) v = ~v;
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (const auto& x : num_) mix(x);
  mix(den_);
  return h;
}

std::string Matrix3::str() const {
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < 3; ++i) {
    os << (i ? ", [" : "[");
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << to_string(entry(i, j));
    os << ']';
  }
  os << ']';
  return os.str();
}

Matrix3 operator*(const Matrix3& x, const Matrix3& y) {
  std::array<BigInt, 9> r;
  const auto& a = x.num_;
  const auto& b = y.num_;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[3 * i + j] = a[3 * i] * b[j] + a[3 * i + 1] * b[3 + j] + a[3 * i + 2] * b[6 + j];
  return Matrix3::from_scaled(std::move(r), x.den_ * y.den_);
}

Matrix3 operator+(const Matrix3& x, const Matrix3& y) {
  std::array<BigInt, 9> r;
  for (int k = 0; k < 9; ++k) r[k] = x.num_[k] * y.den_ + y.num_[k] * x.den_;
  return Matrix3::from_scaled(std::move(r), x.den_ * y.den_);
}

Matrix3 operator-(const Matrix3& x, const Matrix3& y) {
  std::array<BigInt, 9> r;
  for (int k = 0; k < 9; ++k) r[k] = x.num_[k] * y.den_ - y.num_[k] * x.den_;
  return Matrix3::from_scaled(std::move(r), x.den_ * y.den_);
}

Matrix3 operator*(const Rational& s, const Matrix3& x) {
  std::array<BigInt, 9> r;
  for (int k = 0; k < 9; ++k) r[k] = x.num_[k] * boost::multiprecision::numerator(s);
  return Matrix3::from_scaled(std::move(r), x.den_ * boost::multiprecision::denominator(s));
}

namespace {

// minor(rows r0<r1, cols c0<c1) of a row-major numerator array
template <typename T>
T minor2(const std::array<T, 9>& n, int r0, int r1, int c0, int c1) {
  return n[3 * r0 + c0] * n[3 * r1 + c1] - n[3 * r0 + c1] * n[3 * r1 + c0];
}

constexpr int kPair[3][2] = {{0, 1}, {0, 2}, {1, 2}};

std::array<BigInt, 9> minors(const std::array<BigInt, 9>& n) {
  std::array<BigInt, 9> m;
  for (int p = 0; p < 3; ++p)
    for (int q = 0; q < 3; ++q) m[3 * p + q] = minor2(n, kPair[p][0], kPair[p][1], kPair[q][0], kPair[q][1]);
  return m;
}

}  // namespace

Matrix3 exterior_square(const Matrix3& a) {
  return Matrix3::from_scaled(minors(a.numerators()), a.denominator() * a.denominator());
}

Matrix3 commutator(const Matrix3& x, const Matrix3& y) { return x * y - y * x; }

// ---------------------------------------------------------------------------

void multiply_into(const ScaledMatrix& x, const ScaledMatrix& y, ScaledMatrix& out) {
  const auto& a = x.num;
  const auto& b = y.num;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      BigInt& r = out.num[3 * i + j];
      r = a[3 * i] * b[j];
      r += a[3 * i + 1] * b[3 + j];
      r += a[3 * i + 2] * b[6 + j];
    }
  out.den = x.den * y.den;
}

ScaledMatrix operator*(const ScaledMatrix& x, const ScaledMatrix& y) {
  ScaledMatrix r;
  multiply_into(x, y, r);
  return r;
}

Mat3d float_view(const ScaledMatrix& m) {
  Mat3d v;
  for (int k = 0; k < 9; ++k) v.a[k] = nearest_double(m.num[k], m.den);
  return v;
}

Mat3d exterior_square_view(const ScaledMatrix& m) {
  const auto mn = minors(m.num);
  const BigInt den2 = m.den * m.den;
  Mat3d v;
  for (int k = 0; k < 9; ++k) v.a[k] = nearest_double(mn[k], den2);
  return v;
}

Mat3d adjugate_view_of(const ScaledMatrix& m) {
  const auto& n = m.num;
  const std::array<BigInt, 9> adj = {
      n[4] * n[8] - n[5] * n[7], n[2] * n[7] - n[1] * n[8], n[1] * n[5] - n[2] * n[4],
      n[5] * n[6] - n[3] * n[8], n[0] * n[8] - n[2] * n[6], n[2] * n[3] - n[0] * n[5],
      n[3] * n[7] - n[4] * n[6], n[1] * n[6] - n[0] * n[7], n[0] * n[4] - n[1] * n[3]};
  const BigInt den2 = m.den * m.den;
  Mat3d v;
  for (int k = 0; k < 9; ++k) v.a[k] = nearest_double(adj[k], den2);
  return v;
}

double determinant_value(const ScaledMatrix& m) { return nearest_double(det_numerator(m.num), m.den * m.den * m.den); }

}  // namespace projdim
