#include <array>
#include <vector>

#include "exact_linear.hpp"
#include "projdim/error.hpp"
#include "projdim/semigroup.hpp"

namespace projdim {

namespace {

using Flat = std::array<Rational, 9>;

Flat flatten(const Matrix3& m) {
  Flat f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) f[3 * i + j] = m.entry(i, j);
  return f;
}

Matrix3 traceless_part(const Matrix3& m) {
  const Rational t = m.trace() / 3;
  return m - Matrix3::diagonal(t, t, t);
}

int closure_dimension(const std::vector<Matrix3>& generators) {
  detail::EchelonBasis<9> basis;
  std::vector<Matrix3> span;
  for (const auto& g : generators) {
    if (basis.add(flatten(g))) span.push_back(g);
  }
  // brackets of new elements against everything seen so far
  std::size_t done = 0;
  while (done < span.size() && span.size() < 8) {
    const std::size_t end = span.size();
    for (std::size_t a = done; a < end && span.size() < 8; ++a) {
      for (std::size_t b = 0; b < a && span.size() < 8; ++b) {
        Matrix3 c = commutator(span[a], span[b]);
        if (basis.add(flatten(c))) span.push_back(std::move(c));
      }
    }
    done = end;
  }
  return static_cast<int>(span.size());
}

}  // namespace

int lie_algebra_dimension(const std::vector<Matrix3>& generators) {
  std::vector<Matrix3> projected;
  projected.reserve(generators.size());
  for (const auto& g : generators) projected.push_back(traceless_part(g));
  return closure_dimension(projected);
}

int lie_algebra_dimension_strict(const std::vector<Matrix3>& generators) {
  for (const auto& g : generators) {
    if (g.trace() != 0) throw Error(Errc::not_traceless, "generator has trace " + to_string(g.trace()));
  }
  return closure_dimension(generators);
}

}  // namespace projdim
