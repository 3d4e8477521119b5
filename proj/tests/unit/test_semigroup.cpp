#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "projdim/error.hpp"
#include "projdim/pressure.hpp"
#include "projdim/semigroup.hpp"

using namespace projdim;

namespace {

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no Error thrown";
  return Errc::validation;
}

// Index of the unique partition word that prefixes `seq`, or -1 when the
// number of such words is not exactly one.
int unique_prefix(const std::vector<std::vector<Letter>>& words, const std::vector<Letter>& seq) {
  int hit = -1;
  for (std::size_t k = 0; k < words.size(); ++k) {
    const auto& w = words[k];
    if (w.size() <= seq.size() && std::equal(w.begin(), w.end(), seq.begin())) {
      if (hit >= 0) return -1;
      hit = static_cast<int>(k);
    }
  }
  return hit;
}

}  // namespace

TEST(SystemSpec, ValidationRejectsBrokenInvariants) {
  EXPECT_EQ(code_of([] { SystemSpec::uniform("empty", {}).validate(); }), Errc::validation);
  EXPECT_EQ(code_of([] { SystemSpec::uniform("det2", {Matrix3::diagonal(2, 1, 1)}).validate(); }), Errc::validation);
  auto sys = rauzy_system();
  sys.probabilities = {Rational(1, 2), Rational(1, 3), Rational(1, 3)};
  EXPECT_EQ(code_of([&] { sys.validate(); }), Errc::validation);
  sys.probabilities = {Rational(1, 2), Rational(1, 2), Rational(0)};
  EXPECT_EQ(code_of([&] { sys.validate(); }), Errc::validation);
  auto conj = rauzy_system();
  conj.conjugator = Matrix3::from_integers({{1, 1, 0}, {1, 1, 0}, {0, 0, 1}});
  EXPECT_EQ(code_of([&] { conj.validate(); }), Errc::validation);
  EXPECT_NO_THROW(rauzy_system().validate());
}

TEST(SystemSpec, EffectiveLettersAreConjugates) {
  const auto g = rauzy_gamma_system(2);
  const Matrix3 m = rauzy_conjugator(Rational(1, 5));
  ASSERT_EQ(g.size(), 12u);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(m * g.effective_letter(i), g.alphabet[i] * m);
  // n-major order, pairs (1,2),(1,3),(2,3),(2,1),(3,2),(3,1)
  EXPECT_EQ(g.alphabet[0], rauzy_power_product(0, 1, 1));
  EXPECT_EQ(g.alphabet[3], rauzy_power_product(1, 0, 1));
  EXPECT_EQ(g.alphabet[6], rauzy_power_product(0, 1, 2));
  EXPECT_EQ(g.alphabet[11], rauzy_power_product(2, 0, 2));
}

TEST(Enumeration, StreamIsLexicographicAndComplete) {
  const auto sys = rauzy_gamma_system(1);
  WordStream stream(sys, 3);
  std::vector<std::vector<Letter>> seen;
  while (auto w = stream.next()) {
    EXPECT_EQ(w->product, sys.effective_product(w->letters));
    seen.push_back(w->letters);
  }
  ASSERT_EQ(seen.size(), 216u);
  EXPECT_TRUE(std::is_sorted(seen.begin(), seen.end()));
  EXPECT_EQ(std::set<std::vector<Letter>>(seen.begin(), seen.end()).size(), 216u);
}

TEST(Enumeration, BudgetIsEnforced) {
  EXPECT_EQ(code_of([] { enumerate_words(rauzy_system(), 5, 100); }), Errc::budget_exceeded);
  EXPECT_EQ(word_count(3, 5), 243u);
  EXPECT_EQ(word_count(1000, 10), UINT64_MAX);
  EXPECT_NO_THROW(check_budget(3, 5, 243));
}

TEST(Enumeration, WalkVisitsPrefixesFirstAndHonoursPrune) {
  const ProductEvaluator eval(rauzy_system());
  std::vector<std::vector<Letter>> order;
  walk_words(eval, 3, [&](std::span<const Letter> w, const ScaledMatrix&) {
    order.emplace_back(w.begin(), w.end());
    return w.size() == 1 && w[0] == 1 ? WalkAction::prune : WalkAction::descend;
  });
  // 3 + 9 + 27 minus the 3 + 9 words below letter 1
  EXPECT_EQ(order.size(), 39u - 12u);
  EXPECT_EQ(order[0], std::vector<Letter>{0});
  EXPECT_EQ(order[1], (std::vector<Letter>{0, 0}));
}

TEST(StoppingPartition, PsiIsPrefixFreeAndCoversRandomSequences) {
  const auto sys = rauzy_gamma_system(1);
  const auto words = stopping_partition_psi(sys, 6);
  std::vector<std::vector<Letter>> letters;
  for (const auto& w : words) {
    const SvTriple sv = singular_values(w.product);
    EXPECT_LE(sv.a2 / sv.a1, std::ldexp(1.0, -6));
    letters.push_back(w.letters);
    if (w.letters.size() > 1) {
      const SvTriple parent = singular_values(
          sys.effective_product(std::span<const Letter>(w.letters.data(), w.letters.size() - 1)));
      EXPECT_GT(parent.a2 / parent.a1, std::ldexp(1.0, -6));
    }
  }
  std::mt19937_64 rng(1);
  for (int t = 0; t < 500; ++t) {
    std::vector<Letter> seq(64);
    for (auto& x : seq) x = static_cast<Letter>(rng() % sys.size());
    EXPECT_GE(unique_prefix(letters, seq), 0);
  }
}

TEST(StoppingPartition, NonContractingSystemHitsDepthCap) {
  const SystemSpec id = SystemSpec::uniform("identity", {Matrix3::identity()});
  EXPECT_EQ(code_of([&] { stopping_partition_psi(id, 1, 10); }), Errc::not_contracting);
}

TEST(Diagnostics, PositivityOfConjugatedSystems) {
  EXPECT_FALSE(positivity_report(rauzy_system()).positive);
  EXPECT_TRUE(is_nonnegative(rauzy_system()));
  // M_{1/5} leaves one zero entry in each n = 1 letter
  EXPECT_FALSE(positivity_report(rauzy_gamma_system(3)).positive);
  EXPECT_TRUE(is_nonnegative(rauzy_gamma_system(3)));
  EXPECT_TRUE(positivity_report(rauzy_gamma_system(3, Rational(1, 6))).positive);
}

TEST(Diagnostics, RauzyIsDiophantineToDepthEight) {
  const DiophantineReport r = diophantine_check(rauzy_system(), 8);
  EXPECT_TRUE(r.all_distinct);
  EXPECT_EQ(r.first_collision_depth, 0);
  EXPECT_GE(r.min_gap, 1.0);
  EXPECT_EQ(r.distinct_per_level.back(), 6561u);
}

TEST(Diagnostics, CommutingLettersCollide) {
  const auto sys = SystemSpec::uniform(
      "commuting", {Matrix3::diagonal(4, 1, Rational(1, 4)), Matrix3::diagonal(2, 1, Rational(1, 2))});
  const DiophantineReport r = diophantine_check(sys, 3);
  EXPECT_FALSE(r.all_distinct);
  EXPECT_EQ(r.first_collision_depth, 2);
  EXPECT_EQ(r.distinct_per_level[1], 3u);
}

TEST(Diagnostics, LieAlgebraDimensions) {
  EXPECT_EQ(lie_algebra_dimension(rauzy_curve_derivatives()), 8);
  EXPECT_EQ(lie_algebra_dimension(rauzy_alphabet()), 8);
  EXPECT_EQ(lie_algebra_dimension({Matrix3::from_integers({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}})}), 1);
  EXPECT_EQ(lie_algebra_dimension({Matrix3::diagonal(1, -1, 0), Matrix3::diagonal(0, 1, -1)}), 2);
  // Heisenberg algebra: [E12, E23] = E13
  EXPECT_EQ(lie_algebra_dimension({Matrix3::from_integers({{0, 1, 0}, {0, 0, 0}, {0, 0, 0}}),
                                   Matrix3::from_integers({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}})}),
            3);
  EXPECT_EQ(code_of([] { lie_algebra_dimension_strict({Matrix3::identity()}); }), Errc::not_traceless);
}

TEST(Diagnostics, IrreducibilityProbe) {
  EXPECT_FALSE(irreducibility_probe(rauzy_system(), 3).invariant_line.has_value());
  EXPECT_FALSE(irreducibility_probe(rauzy_system(), 3).invariant_plane_normal.has_value());
  const auto reducible = SystemSpec::uniform(
      "upper", {Matrix3::from_integers({{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}),
                Matrix3::diagonal(2, Rational(1, 2), 1)});
  const IrreducibilityReport r = irreducibility_probe(reducible, 3);
  ASSERT_TRUE(r.invariant_line.has_value());
  ASSERT_TRUE(r.invariant_plane_normal.has_value());
  for (const auto& a : reducible.alphabet) {
    const Vec3 v = *r.invariant_line;
    EXPECT_NEAR(norm(cross(a.float_view().apply(v), v)), 0.0, 1e-12);
    // A^T n is parallel to n for an invariant plane with normal n
    const Vec3 n = *r.invariant_plane_normal;
    EXPECT_NEAR(norm(cross(a.float_view().transpose().apply(n), n)), 0.0, 1e-12);
  }
}
