#pragma once

// Verbal sets w[G]: bounded enumeration, membership with exact negative certificates, w-length,
// abelianized data and the support dichotomy for positive starred sets.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "verbalrat/free_product.hpp"
#include "verbalrat/gaps.hpp"
#include "verbalrat/word.hpp"

namespace verbalrat {

/// Values of w with substitutions from F2 (letter length <= cap).
struct VerbalQuery {
  Word w;
  /// Number of variables of w; 0 means w.max_generator().
  int rank = 0;
  std::size_t cap = 2;
  /// Maximal number of factors tried by w_length.
  std::size_t product_cap = 3;
  /// Hard limit on the number of substitution tuples.
  std::size_t max_tuples = 2'000'000;

  int variables() const;
};

/// All w(g_1, ..., g_n) with |g_i| <= cap in F2. Throws CapExceeded past max_tuples.
std::set<Word> enumerate_values(const VerbalQuery& q);

/// Same over a free product of cyclic groups: substitutions of syllable length <= cap with Z exponents in
/// [-exponent_bound, exponent_bound].
std::set<FPElement> enumerate_values(const VerbalQuery& q, const FreeProduct& g, std::int64_t exponent_bound);

enum class Answer { yes, no, unknown };
std::string_view to_string(Answer a);

struct ValueVerdict {
  Answer answer = Answer::unknown;
  /// Substitution tuple when answer is yes.
  std::vector<Word> witness;
  /// "search", "root", "abelianization" or empty.
  std::string method;
};

/// If w is x_j^k for a single generator (k != 0), returns (j, |k|).
std::optional<std::pair<int, std::int64_t>> power_word(const Word& w);

/// True when the exponent-sum vector of g over F2 lies in e(w) * Z^2 (e = 0: the zero vector).
bool abelian_image_admissible(const Word& w, int rank, const Word& g);

/// yes from a bounded search or an exact root; no only from an exact root failure or the abelian obstruction.
ValueVerdict is_value(const VerbalQuery& q, const Word& g);

struct WLength {
  /// Length found by BFS within the caps.
  std::optional<std::size_t> length;
  std::size_t lower_bound = 0;
  /// g is outside the verbal subgroup (abelian obstruction), so no length exists.
  bool outside_subgroup = false;
  bool exact() const { return length && *length == lower_bound; }
  /// Factors (values or inverses of values) whose product is g.
  std::vector<Word> factors;
};

/// The identity has length 0.
WLength w_length(const VerbalQuery& q, const Word& g);

struct AbelianizedVerbal {
  std::int64_t e = 0;
  /// e^rank, absent when e = 0 (infinite index).
  std::optional<std::uint64_t> index;
};

AbelianizedVerbal abelianized_verbal(const Word& w, int rank);

enum class Dichotomy { case_1, case_2, refuted };
std::string_view to_string(Dichotomy d);

struct DichotomyResult {
  Dichotomy kind = Dichotomy::case_1;
  std::set<Syllable> k;
  Factor axis = Factor::A;
  /// Refuted: an element of p E* q outside w[F2].
  std::optional<FPElement> witness;
  /// "root", "abelianization", or "none" when the refutation rests on the gap family alone.
  std::string certificate;
  Family family;
  FPElement u, v;
  /// Number of E* factors over which the support claim was re-checked.
  std::size_t budget_checked = 0;
};

/// Classifies E* for positive E, p, q over Z*Z. Throws PreconditionError on non-positive input.
DichotomyResult support_dichotomy_check(const std::vector<FPElement>& e, const FPElement& p, const FPElement& q, const Word& w,
                                        std::size_t budget = 3);

}  // namespace verbalrat
