#include "projdim/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_map>

#include "exact_linear.hpp"
#include "projdim/error.hpp"

namespace projdim {

SystemSpec SystemSpec::uniform(std::string label, std::vector<Matrix3> alphabet, std::optional<Matrix3> conjugator) {
  SystemSpec s;
  s.label = std::move(label);
  const auto k = static_cast<long long>(alphabet.size());
  s.alphabet = std::move(alphabet);
  s.probabilities.assign(s.alphabet.size(), k > 0 ? Rational(1, k) : Rational(0));
  s.conjugator = std::move(conjugator);
  return s;
}

void SystemSpec::validate() const {
  if (alphabet.empty()) throw Error(Errc::validation, "alphabet is empty");
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (!alphabet[i].is_unimodular()) {
      throw Error(Errc::validation, "letter " + std::to_string(i) + " is not unimodular");
    }
  }
  if (probabilities.size() != alphabet.size()) {
    throw Error(Errc::validation, "probability vector length does not match alphabet");
  }
  Rational total = 0;
  for (const auto& p : probabilities) {
    if (p <= 0) throw Error(Errc::validation, "probabilities must be positive");
    total += p;
  }
  if (total != 1) throw Error(Errc::validation, "probabilities must sum to 1, got " + to_string(total));
  if (conjugator && conjugator->determinant() == 0) throw Error(Errc::validation, "conjugator is singular");
}

Matrix3 SystemSpec::effective_letter(std::size_t i) const {
  if (!conjugator) return alphabet.at(i);
  return conjugator->inverse() * alphabet.at(i) * *conjugator;
}

std::vector<Matrix3> SystemSpec::effective_alphabet() const {
  std::vector<Matrix3> out;
  out.reserve(alphabet.size());
  if (!conjugator) return alphabet;
  const Matrix3 inv = conjugator->inverse();
  for (const auto& a : alphabet) out.push_back(inv * a * *conjugator);
  return out;
}

std::vector<double> SystemSpec::probability_values() const {
  std::vector<double> out;
  out.reserve(probabilities.size());
  for (const auto& p : probabilities) out.push_back(p.convert_to<double>());
  return out;
}

Matrix3 SystemSpec::effective_product(std::span<const Letter> letters) const {
  Matrix3 prod = Matrix3::identity();
  for (Letter l : letters) prod = prod * alphabet.at(l);
  if (!conjugator) return prod;
  return conjugator->inverse() * prod * *conjugator;
}

// ---------------------------------------------------------------------------

ProductEvaluator::ProductEvaluator(const SystemSpec& sys) {
  letters_.reserve(sys.alphabet.size());
  for (const auto& a : sys.alphabet) letters_.push_back(ScaledMatrix::from(a));
  if (sys.conjugator) {
    left_ = ScaledMatrix::from(sys.conjugator->inverse());
    right_ = ScaledMatrix::from(*sys.conjugator);
    left_view_ = left_->canonical().float_view();
    right_view_ = right_->canonical().float_view();
    left_wedge_ = exterior_square(left_->canonical()).float_view();
    right_wedge_ = exterior_square(right_->canonical()).float_view();
  }
}

ScaledMatrix ProductEvaluator::effective(const ScaledMatrix& raw) const {
  if (!left_) return raw;
  return *left_ * raw * *right_;
}

Mat3d ProductEvaluator::effective_view(const ScaledMatrix& raw) const {
  if (!left_) return float_view(raw);
  return left_view_ * float_view(raw) * right_view_;
}

SvTriple ProductEvaluator::spectrum(const ScaledMatrix& raw) const {
  // det(M^{-1} A M) = det(A); minors conjugate through the exterior square
  const double abs_det = std::abs(determinant_value(raw));
  if (abs_det == 0.0) throw Error(Errc::singular_input, "singular word product");
  if (!left_) return singular_values(float_view(raw), exterior_square_view(raw), abs_det);
  return singular_values(left_view_ * float_view(raw) * right_view_,
                         left_wedge_ * exterior_square_view(raw) * right_wedge_, abs_det);
}

Mat3d ProductEvaluator::wedge_view(const ScaledMatrix& raw) const {
  if (!left_) return exterior_square_view(raw);
  return left_wedge_ * exterior_square_view(raw) * right_wedge_;
}

Mat3d ProductEvaluator::adjugate_view(const ScaledMatrix& raw) const {
  // adj(M^{-1} A M) = M^{-1} adj(A) M
  if (!left_) return adjugate_view_of(raw);
  return left_view_ * adjugate_view_of(raw) * right_view_;
}

// ---------------------------------------------------------------------------

std::uint64_t node_cap() {
  if (const char* env = std::getenv("PROJDIM_NODE_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) return v;
  }
  return kDefaultNodeCap;
}

std::uint64_t word_count(std::size_t alphabet_size, int depth) {
  std::uint64_t total = 1;
  for (int i = 0; i < depth; ++i) {
    if (alphabet_size != 0 && total > std::numeric_limits<std::uint64_t>::max() / alphabet_size) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= alphabet_size;
  }
  return total;
}

void check_budget(std::size_t alphabet_size, int depth, std::uint64_t cap) {
  const std::uint64_t count = word_count(alphabet_size, depth);
  if (count > cap) {
    throw Error(Errc::budget_exceeded, std::to_string(alphabet_size) + "^" + std::to_string(depth) +
                                           " words exceed the node cap " + std::to_string(cap));
  }
}

void walk_words(const ProductEvaluator& eval, int max_depth, const WordVisitor& visit, std::optional<Letter> only_first) {
  const auto k = static_cast<Letter>(eval.size());
  if (max_depth < 1 || k == 0) return;
  std::vector<Letter> letters;
  std::vector<ScaledMatrix> prefix(static_cast<std::size_t>(max_depth));
  letters.reserve(static_cast<std::size_t>(max_depth));

  const Letter first_lo = only_first.value_or(0);
  const Letter first_hi = only_first ? *only_first + 1 : k;
  letters.push_back(first_lo);
  while (!letters.empty()) {
    const std::size_t d = letters.size() - 1;
    if (d == 0) {
      prefix[0] = eval.raw_letter(letters[0]);
    } else {
      multiply_into(prefix[d - 1], eval.raw_letter(letters[d]), prefix[d]);
    }
    const WalkAction act = visit(std::span<const Letter>(letters.data(), letters.size()), prefix[d]);
    if (act == WalkAction::stop) return;
    if (act == WalkAction::descend && static_cast<int>(letters.size()) < max_depth) {
      letters.push_back(0);
      continue;
    }
    // advance to the next sibling, popping exhausted levels
    while (!letters.empty()) {
      const Letter hi = letters.size() == 1 ? first_hi : k;
      if (++letters.back() < hi) break;
      letters.pop_back();
    }
  }
}

WordStream::WordStream(const SystemSpec& sys, int n, std::uint64_t cap) : sys_(&sys), eval_(sys), depth_(n) {
  if (n < 1) throw Error(Errc::validation, "word length must be at least 1");
  check_budget(sys.size(), n, cap);
}

std::optional<Word> WordStream::next() {
  if (done_) return std::nullopt;
  const auto n = static_cast<std::size_t>(depth_);
  const auto k = static_cast<Letter>(eval_.size());
  std::size_t from = 0;
  if (!started_) {
    started_ = true;
    letters_.assign(n, 0);
    prefix_.resize(n);
  } else {
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (++letters_[pos] < k) break;
      letters_[pos] = 0;
      if (pos == 0) {
        done_ = true;
        return std::nullopt;
      }
    }
    from = pos;
  }
  for (std::size_t d = from; d < n; ++d) {
    if (d == 0) {
      prefix_[0] = eval_.raw_letter(letters_[0]);
    } else {
      multiply_into(prefix_[d - 1], eval_.raw_letter(letters_[d]), prefix_[d]);
    }
  }
  Word w;
  w.letters = letters_;
  w.product = eval_.effective(prefix_[n - 1]).canonical();
  return w;
}

std::vector<Word> enumerate_words(const SystemSpec& sys, int n, std::uint64_t cap) {
  WordStream stream(sys, n, cap);
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(word_count(sys.size(), n)));
  while (auto w = stream.next()) out.push_back(std::move(*w));
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<Letter>> stopping_words_below(const SystemSpec& sys, double threshold,
                                                      const std::function<double(const SvTriple&)>& ratio,
                                                      int depth_cap) {
  if (!(threshold > 0.0)) throw Error(Errc::validation, "stopping threshold must be positive");
  if (depth_cap < 1) throw Error(Errc::validation, "depth cap must be positive");
  const ProductEvaluator eval(sys);
  const std::uint64_t cap = node_cap();
  std::uint64_t nodes = 0;
  std::vector<std::vector<Letter>> out;
  walk_words(eval, depth_cap, [&](std::span<const Letter> w, const ScaledMatrix& raw) {
    if (++nodes > cap) throw Error(Errc::budget_exceeded, "stopping partition exceeded the node cap");
    // a threshold of 1 accepts every letter; the ratios never exceed one
    if (threshold >= 1.0 || ratio(eval.spectrum(raw)) <= threshold) {
      out.emplace_back(w.begin(), w.end());
      return WalkAction::prune;
    }
    if (static_cast<int>(w.size()) >= depth_cap) {
      throw Error(Errc::not_contracting,
                  "stopping partition undecided at depth cap " + std::to_string(depth_cap));
    }
    return WalkAction::descend;
  });
  return out;
}

std::vector<std::vector<Letter>> stopping_words(const SystemSpec& sys, int n,
                                                const std::function<double(const SvTriple&)>& ratio, int depth_cap) {
  if (n < 0) throw Error(Errc::validation, "resolution must be nonnegative");
  return stopping_words_below(sys, std::ldexp(1.0, -n), ratio, depth_cap);
}

std::vector<Word> stopping_partition_psi(const SystemSpec& sys, int n, int depth_cap) {
  const auto words = stopping_words(sys, n, [](const SvTriple& sv) { return sv.a2 / sv.a1; }, depth_cap);
  std::vector<Word> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(Word{w, sys.effective_product(w)});
  return out;
}

// ---------------------------------------------------------------------------

PositivityReport positivity_report(const SystemSpec& sys) {
  PositivityReport rep;
  rep.positive = !sys.alphabet.empty();
  bool first = true;
  for (const auto& a : sys.effective_alphabet()) {
    Rational lo = a.entry(0, 0);
    Rational hi = lo;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Rational e = a.entry(i, j);
        lo = std::min(lo, e);
        hi = std::max(hi, e);
      }
    if (lo <= 0) rep.positive = false;
    const Rational r = hi > 0 ? Rational(lo / hi) : Rational(0);
    if (first || r < rep.entry_ratio) rep.entry_ratio = r;
    first = false;
  }
  return rep;
}

bool is_nonnegative(const SystemSpec& sys) {
  for (const auto& a : sys.effective_alphabet())
    for (const auto& x : a.numerators())
      if (x < 0) return false;
  return true;
}

namespace {

constexpr std::size_t kPairwiseGapLimit = 1024;

struct MatrixHash {
  std::size_t operator()(const Matrix3& m) const { return m.hash(); }
};

}  // namespace

DiophantineReport diophantine_check(const SystemSpec& sys, int n_max, std::uint64_t cap) {
  if (n_max < 1) throw Error(Errc::validation, "n_max must be at least 1");
  check_budget(sys.size(), n_max, cap);
  DiophantineReport rep;
  rep.min_gap = std::numeric_limits<double>::infinity();
  const ProductEvaluator eval(sys);
  // conjugation is a bijection, so distinctness is decided on raw products
  double conj_factor = 1.0;
  if (sys.conjugator) {
    conj_factor = operator_norm(sys.conjugator->float_view()) *
                  operator_norm(sys.conjugator->inverse().float_view());
  }
  for (int n = 1; n <= n_max; ++n) {
    std::unordered_map<Matrix3, int, MatrixHash> seen;
    seen.reserve(static_cast<std::size_t>(word_count(sys.size(), n)));
    walk_words(eval, n, [&](std::span<const Letter> w, const ScaledMatrix& raw) {
      if (static_cast<int>(w.size()) < n) return WalkAction::descend;
      ++seen[raw.canonical()];
      return WalkAction::prune;
    });
    rep.distinct_per_level.push_back(seen.size());
    const bool distinct = seen.size() == word_count(sys.size(), n);
    if (!distinct && rep.all_distinct) {
      rep.all_distinct = false;
      rep.first_collision_depth = n;
    }
    if (seen.size() < 2) continue;
    if (seen.size() <= kPairwiseGapLimit) {
      std::vector<Mat3d> views;
      views.reserve(seen.size());
      for (const auto& [m, count] : seen) views.push_back(eval.effective_view(ScaledMatrix::from(m)));
      for (std::size_t a = 0; a < views.size(); ++a)
        for (std::size_t b = a + 1; b < views.size(); ++b) {
          double d = 0.0;
          for (int k = 0; k < 9; ++k) d = std::max(d, std::abs(views[a].a[k] - views[b].a[k]));
          rep.min_gap = std::min(rep.min_gap, d);
        }
    } else {
      // distinct raw products with common denominator D differ by >= 1/D in
      // some entry; conjugation shrinks the operator-norm gap by at most
      // ||M|| ||M^{-1}||
      BigInt den = 1;
      for (const auto& [m, count] : seen) den = boost::multiprecision::lcm(den, m.denominator());
      rep.min_gap = std::min(rep.min_gap, 1.0 / (nearest_double(den, BigInt(1)) * conj_factor));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

namespace {

using detail::QVec3;

std::vector<QVec3> eigen_equations(const Matrix3& a, const Rational& lambda) {
  std::vector<QVec3> eq(3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) eq[i][j] = a.entry(i, j) - (i == j ? lambda : Rational(0));
  return eq;
}

bool is_common_eigenvector(const std::vector<Matrix3>& mats, const QVec3& v) {
  for (const auto& m : mats) {
    QVec3 mv;
    for (int i = 0; i < 3; ++i) mv[i] = m.entry(i, 0) * v[0] + m.entry(i, 1) * v[1] + m.entry(i, 2) * v[2];
    // mv parallel to v  <=>  mv x v = 0
    if (mv[1] * v[2] - mv[2] * v[1] != 0 || mv[2] * v[0] - mv[0] * v[2] != 0 || mv[0] * v[1] - mv[1] * v[0] != 0) {
      return false;
    }
  }
  return true;
}

// Depth-first choice of one rational eigenvalue per matrix; the accumulated
// equations cut out a common eigenspace.
std::optional<QVec3> common_eigenvector(const std::vector<Matrix3>& mats, std::size_t idx,
                                        const std::vector<QVec3>& equations) {
  const auto basis = detail::nullspace(equations);
  if (basis.empty()) return std::nullopt;
  if (idx == mats.size()) return basis.front();
  for (const Rational& lambda : detail::rational_eigenvalues(mats[idx])) {
    auto eq = equations;
    for (auto& row : eigen_equations(mats[idx], lambda)) eq.push_back(std::move(row));
    if (auto v = common_eigenvector(mats, idx + 1, eq)) return v;
  }
  return std::nullopt;
}

Vec3 to_unit(const QVec3& v) {
  Vec3 x = {v[0].convert_to<double>(), v[1].convert_to<double>(), v[2].convert_to<double>()};
  x = normalized(x);
  // sign convention: first nonzero coordinate positive
  for (double c : x) {
    if (c == 0.0) continue;
    if (c < 0.0) x = -1.0 * x;
    break;
  }
  return x;
}

constexpr std::uint64_t kProbeVerifyCap = 4096;

}  // namespace

IrreducibilityReport irreducibility_probe(const SystemSpec& sys, int depth) {
  if (depth < 1) throw Error(Errc::validation, "depth must be at least 1");
  IrreducibilityReport rep;
  const auto letters = sys.effective_alphabet();
  std::vector<Matrix3> transposes;
  for (const auto& a : letters) transposes.push_back(a.transpose());

  // products up to `depth` serve only as an extra exact check
  std::vector<Matrix3> products;
  std::vector<Matrix3> products_t;
  for (int n = 2; n <= depth && word_count(sys.size(), n) <= kProbeVerifyCap; ++n) {
    for (const auto& w : enumerate_words(sys, n)) {
      products.push_back(w.product);
      products_t.push_back(w.product.transpose());
    }
  }

  if (auto v = common_eigenvector(letters, 0, {})) {
    if (is_common_eigenvector(products, *v)) rep.invariant_line = to_unit(*v);
  }
  if (auto v = common_eigenvector(transposes, 0, {})) {
    if (is_common_eigenvector(products_t, *v)) rep.invariant_plane_normal = to_unit(*v);
  }
  return rep;
}

// ---------------------------------------------------------------------------

std::vector<Matrix3> rauzy_alphabet() {
  return {Matrix3::from_integers({{1, 1, 1}, {0, 1, 0}, {0, 0, 1}}),
          Matrix3::from_integers({{1, 0, 0}, {1, 1, 1}, {0, 0, 1}}),
          Matrix3::from_integers({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}})};
}

SystemSpec rauzy_system() {
  SystemSpec s = SystemSpec::uniform("rauzy", rauzy_alphabet());
  s.sosc_assumed = true;
  return s;
}

Matrix3 rauzy_power_product(int i, int j, const Rational& n) {
  if (i < 0 || i > 2 || j < 0 || j > 2 || i == j) throw Error(Errc::validation, "need distinct indices in {0,1,2}");
  const int k = 3 - i - j;
  std::array<Rational, 9> e;
  e.fill(0);
  e[3 * i + i] = n + 1;
  e[3 * i + j] = n;
  e[3 * i + k] = 2 * n;
  for (int c = 0; c < 3; ++c) e[3 * j + c] = 1;
  e[3 * k + k] = 1;
  return Matrix3::from_rationals(e);
}

std::vector<Matrix3> rauzy_curve_derivatives() {
  static constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {1, 2}, {1, 0}, {2, 1}, {2, 0}};
  std::vector<Matrix3> out;
  for (const auto& p : kPairs) {
    // the family is affine in n, so F(1) - F(0) is its derivative
    out.push_back(rauzy_power_product(p[0], p[1], 1) - rauzy_power_product(p[0], p[1], 0));
  }
  return out;
}

}  // namespace projdim
