#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "projdim/linalg.hpp"
#include "projdim/matrix3.hpp"

namespace projdim {

using Letter = std::uint32_t;

/// A finite alphabet of unimodular matrices with a Bernoulli weight vector.
/// When `conjugator` M is present the system acts by M^{-1} A_i M.
struct SystemSpec {
  std::string label;
  std::vector<Matrix3> alphabet;
  std::vector<Rational> probabilities;
  std::optional<Matrix3> conjugator;
  // Strong open set condition is never checked, only carried as metadata.
  bool sosc_assumed = false;

  static SystemSpec uniform(std::string label, std::vector<Matrix3> alphabet,
                            std::optional<Matrix3> conjugator = std::nullopt);

  std::size_t size() const { return alphabet.size(); }
  /// Throws Error{validation} when an invariant is broken.
  void validate() const;
  Matrix3 effective_letter(std::size_t i) const;
  std::vector<Matrix3> effective_alphabet() const;
  std::vector<double> probability_values() const;
  /// Effective matrix of a word, M^{-1} A_w M.
  Matrix3 effective_product(std::span<const Letter> letters) const;
};

struct Word {
  std::vector<Letter> letters;
  Matrix3 product;  // effective product A_{i1} ... A_{in}
};

/// Cheap evaluation of effective word products. Raw (unconjugated) products
/// are kept as scaled integers; conjugation is applied only when a spectrum
/// or float view is requested.
class ProductEvaluator {
 public:
  explicit ProductEvaluator(const SystemSpec& sys);

  const ScaledMatrix& raw_letter(std::size_t i) const { return letters_[i]; }
  ScaledMatrix effective(const ScaledMatrix& raw) const;
  Mat3d effective_view(const ScaledMatrix& raw) const;
  SvTriple spectrum(const ScaledMatrix& raw) const;
  /// Exterior square of the effective product, from exact minors.
  Mat3d wedge_view(const ScaledMatrix& raw) const;
  /// det(A) A^{-1} of the effective product, from exact minors.
  Mat3d adjugate_view(const ScaledMatrix& raw) const;
  std::size_t size() const { return letters_.size(); }

 private:
  std::vector<ScaledMatrix> letters_;
  std::optional<ScaledMatrix> left_;   // M^{-1}
  std::optional<ScaledMatrix> right_;  // M
  Mat3d left_view_, right_view_;
  Mat3d left_wedge_, right_wedge_;  // exterior squares of M^{-1} and M
};

// ---------------------------------------------------------------------------
// Enumeration

inline constexpr std::uint64_t kDefaultNodeCap = 20'000'000;

/// Node cap for exhaustive enumeration; PROJDIM_NODE_CAP overrides the default.
std::uint64_t node_cap();
/// Throws Error{budget_exceeded} when alphabet_size^depth exceeds the cap.
void check_budget(std::size_t alphabet_size, int depth, std::uint64_t cap = node_cap());
/// alphabet_size^depth, saturating at UINT64_MAX.
std::uint64_t word_count(std::size_t alphabet_size, int depth);

enum class WalkAction { descend, prune, stop };

/// Depth-first walk over all words of length 1..max_depth in lexicographic
/// order. The visitor sees each word with its raw scaled product and decides
/// whether to descend below it. Memory is O(max_depth).
using WordVisitor = std::function<WalkAction(std::span<const Letter>, const ScaledMatrix&)>;
void walk_words(const ProductEvaluator& eval, int max_depth, const WordVisitor& visit,
                std::optional<Letter> only_first = std::nullopt);

/// Streams every word of length exactly n in lexicographic order.
class WordStream {
 public:
  WordStream(const SystemSpec& sys, int n, std::uint64_t cap = node_cap());
  std::optional<Word> next();

 private:
  const SystemSpec* sys_;
  ProductEvaluator eval_;
  int depth_;
  std::vector<Letter> letters_;
  std::vector<ScaledMatrix> prefix_;  // prefix_[k] = raw product of letters_[0..k]
  bool started_ = false;
  bool done_ = false;
};

std::vector<Word> enumerate_words(const SystemSpec& sys, int n, std::uint64_t cap = node_cap());

// ---------------------------------------------------------------------------
// Stopping-time partitions

inline constexpr int kDefaultStoppingDepthCap = 64;

/// Minimal words whose a2/a1 ratio is <= 2^-n. Throws Error{not_contracting}
/// if some branch is still undecided at `depth_cap`.
std::vector<Word> stopping_partition_psi(const SystemSpec& sys, int n, int depth_cap = kDefaultStoppingDepthCap);

/// Letter sequences only; same stopping rule, cheaper than building Words.
std::vector<std::vector<Letter>> stopping_words(const SystemSpec& sys, int n,
                                                const std::function<double(const SvTriple&)>& ratio,
                                                int depth_cap = kDefaultStoppingDepthCap);
/// Same walk with an arbitrary threshold in (0, 1].
std::vector<std::vector<Letter>> stopping_words_below(const SystemSpec& sys, double threshold,
                                                      const std::function<double(const SvTriple&)>& ratio,
                                                      int depth_cap = kDefaultStoppingDepthCap);

// ---------------------------------------------------------------------------
// Algebraic diagnostics

struct PositivityReport {
  bool positive = false;
  Rational entry_ratio;  // min over letters of (min entry / max entry)
};
PositivityReport positivity_report(const SystemSpec& sys);
/// All effective letters have nonnegative entries (the closed cone is invariant).
bool is_nonnegative(const SystemSpec& sys);

struct DiophantineReport {
  bool all_distinct = true;
  int first_collision_depth = 0;  // 0 when all distinct
  /// Smallest max-entry difference between distinct products, a lower bound
  /// for the operator-norm gap; +inf when every level has a single product.
  double min_gap = 0.0;
  std::vector<std::size_t> distinct_per_level;
};
DiophantineReport diophantine_check(const SystemSpec& sys, int n_max, std::uint64_t cap = node_cap());

/// Dimension of the Lie algebra generated by `generators` modulo scalars:
/// each generator is replaced by its traceless part X - tr(X)/3 I and the
/// span is closed under [X, Y] = XY - YX. Result is at most 8.
int lie_algebra_dimension(const std::vector<Matrix3>& generators);
/// Same closure, but rejects generators with nonzero trace (Error{not_traceless}).
int lie_algebra_dimension_strict(const std::vector<Matrix3>& generators);

struct IrreducibilityReport {
  std::optional<Vec3> invariant_line;
  std::optional<Vec3> invariant_plane_normal;
};
IrreducibilityReport irreducibility_probe(const SystemSpec& sys, int depth);

// ---------------------------------------------------------------------------
// Rauzy gasket helpers

std::vector<Matrix3> rauzy_alphabet();
SystemSpec rauzy_system();
/// Closed form of A_i^n A_j (0-based i != j): row i = (n+1 at i, n at j, 2n
/// at k), row j = (1,1,1), row k = e_k.
Matrix3 rauzy_power_product(int i, int j, const Rational& n);
/// d/dx of the curve x -> rauzy_power_product(i, j, x), in the order
/// (1,2), (1,3), (2,3), (2,1), (3,2), (3,1) (1-based pairs).
std::vector<Matrix3> rauzy_curve_derivatives();

}  // namespace projdim
