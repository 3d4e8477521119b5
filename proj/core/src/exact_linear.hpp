#pragma once

// Small exact linear-algebra kernels over the rationals (internal).

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "projdim/matrix3.hpp"
#include "projdim/rational.hpp"

namespace projdim::detail {

// Incrementally maintained row-echelon basis of a subspace of Q^N.
template <std::size_t N>
class EchelonBasis {
 public:
  using Vector = std::array<Rational, N>;

  // Returns true (and stores the vector) iff v is independent of the basis.
  bool add(Vector v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const std::size_t p = pivots_[r];
      if (v[p] == 0) continue;
      const Rational f = v[p] / rows_[r][p];
      for (std::size_t k = 0; k < N; ++k) v[k] -= f * rows_[r][k];
    }
    for (std::size_t k = 0; k < N; ++k) {
      if (v[k] != 0) {
        // normalise pivot to 1 and eliminate it from earlier rows
        const Rational pv = v[k];
        for (auto& x : v) x /= pv;
        for (auto& row : rows_) {
          if (row[k] == 0) continue;
          const Rational f = row[k];
          for (std::size_t j = 0; j < N; ++j) row[j] -= f * v[j];
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(k);
        return true;
      }
    }
    return false;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<Vector> rows_;
  std::vector<std::size_t> pivots_;
};

using QVec3 = std::array<Rational, 3>;

// Basis of {v in Q^3 : <e, v> = 0 for every equation e}.
inline std::vector<QVec3> nullspace(const std::vector<QVec3>& equations) {
  // reduced row echelon form
  std::vector<QVec3> rows = equations;
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (int c = 0; c < 3 && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const Rational pv = rows[r][c];
    for (auto& x : rows[r]) x /= pv;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][c] == 0) continue;
      const Rational f = rows[k][c];
      for (int j = 0; j < 3; ++j) rows[k][j] -= f * rows[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<QVec3> basis;
  for (int free = 0; free < 3; ++free) {
    bool is_pivot = false;
    for (int pc : pivot_col) is_pivot |= (pc == free);
    if (is_pivot) continue;
    QVec3 v = {0, 0, 0};
    v[free] = 1;
    for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -rows[k][free];
    basis.push_back(v);
  }
  return basis;
}

// Continued-fraction convergents of x with denominators up to max_den.
inline std::vector<Rational> convergents(double x, long long max_den = 1'000'000) {
  std::vector<Rational> out;
  if (!std::isfinite(x)) return out;
  BigInt h_prev = 1, h = static_cast<long long>(std::floor(x));
  BigInt k_prev = 0, k = 1;
  out.emplace_back(h, k);
  double frac = x - std::floor(x);
  for (int it = 0; it < 40 && frac > 1e-15; ++it) {
    const double inv = 1.0 / frac;
    const auto a = static_cast<long long>(std::floor(inv));
    frac = inv - static_cast<double>(a);
    BigInt h_next = a * h + h_prev;
    BigInt k_next = a * k + k_prev;
    if (k_next > max_den) break;
    h_prev = h;
    h = h_next;
    k_prev = k;
    k = k_next;
    out.emplace_back(h, k);
  }
  return out;
}

// Real roots of x^3 + b x^2 + c x + d (numerical, possibly repeated).
inline std::vector<double> cubic_real_roots(double b, double c, double d) {
  const double p = c - b * b / 3.0;
  const double q = 2.0 * b * b * b / 27.0 - b * c / 3.0 + d;
  const double shift = -b / 3.0;
  const double disc = q * q / 4.0 + p * p * p / 27.0;
  std::vector<double> roots;
  if (std::abs(p) < 1e-14 && std::abs(q) < 1e-14) {
    roots = {shift};
  } else if (disc > 1e-14) {
    const double sq = std::sqrt(disc);
    roots = {std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) + shift};
  } else {
    const double m = 2.0 * std::sqrt(std::max(-p / 3.0, 0.0));
    const double arg = (m == 0.0) ? 0.0 : std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double theta = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) + shift);
  }
  // a few Newton steps
  for (auto& x : roots) {
    for (int it = 0; it < 8; ++it) {
      const double f = ((x + b) * x + c) * x + d;
      const double df = (3.0 * x + 2.0 * b) * x + c;
      if (df == 0.0) break;
      x -= f / df;
    }
  }
  return roots;
}

// Distinct rational eigenvalues of a rational 3x3 matrix.
inline std::vector<Rational> rational_eigenvalues(const Matrix3& a) {
  const Rational tr = a.trace();
  Rational c2 = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) c2 += a.entry(i, i) * a.entry(j, j) - a.entry(i, j) * a.entry(j, i);
  const Rational det = a.determinant();
  auto poly = [&](const Rational& x) { return ((x - tr) * x + c2) * x - det; };
  std::vector<Rational> found;
  for (double root : cubic_real_roots(-nearest_double(tr), nearest_double(c2), -nearest_double(det))) {
    for (const Rational& cand : convergents(root)) {
      if (poly(cand) != 0) continue;
      bool dup = false;
      for (const auto& f : found) dup |= (f == cand);
      if (!dup) found.push_back(cand);
      break;
    }
  }
  return found;
}

}  // namespace projdim::detail
