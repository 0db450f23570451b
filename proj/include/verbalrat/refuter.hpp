#pragma once

// Per-candidate refutation of rational descriptions of w[F2] restricted to positive words.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "verbalrat/automaton.hpp"
#include "verbalrat/rat_expr.hpp"
#include "verbalrat/verbal.hpp"
#include "verbalrat/word.hpp"

namespace verbalrat {

/// K_L as positive syllables (factor A is x1, B is x2) and the block bound n.
struct DecompositionScheme {
  std::set<Syllable> k;
  std::size_t n = 1;
  friend bool operator==(const DecompositionScheme&, const DecompositionScheme&) = default;
};

/// Classification of one starred factor E_j of a standard-form summand.
struct BranchReport {
  std::size_t summand = 0;
  std::size_t factor = 0;
  /// Sampled positive members of E_j fed to the dichotomy check.
  std::vector<Word> sample;
  DichotomyResult dichotomy;
  std::string id() const { return "s" + std::to_string(summand) + ".f" + std::to_string(factor); }
};

/// Throws PreconditionError if some branch was refuted.
DecompositionScheme extract_scheme(const StandardForm& sf, const std::vector<BranchReport>& branches);

/// w(g^{r_1}, ..., g^{r_n}) = g^e written out.
struct BezoutTranscript {
  Word w;
  int rank = 1;
  std::vector<std::int64_t> exponents;
  std::int64_t e = 0;
  std::vector<std::int64_t> bezout;
  Word g;
  std::vector<Word> images;
  Word value;
};

/// Recomputes the substitution and compares with g^e.
bool check_transcript(const BezoutTranscript& t);

struct WitnessWord {
  std::int64_t t = 1;
  std::int64_t l = 2;
  Word u;
  BezoutTranscript transcript;
};

/// Throws PreconditionError unless w is proper with e(w) >= 2.
WitnessWord witness_word(const Word& w, const DecompositionScheme& scheme);

struct DecompositionTrace {
  bool decomposable = false;
  /// reachable[k]: letter positions reachable after k (s,t) pairs.
  std::vector<std::vector<std::size_t>> reachable;
  /// s_1, t_1, ..., s_m, t_m when decomposable.
  std::vector<Word> blocks;
};

/// Letter-level split u = s_1 t_1 ... s_m t_m with m <= n, supp(s_i) in K, t_i in x1* or x2*.
DecompositionTrace decomposition(const Word& u, const DecompositionScheme& scheme);
bool decomposable(const Word& u, const DecompositionScheme& scheme);

enum class Outcome { missing_value, foreign_element, inconsistent_branch, inconclusive };
std::string_view to_string(Outcome o);

struct RefuteOptions {
  /// Members of each starred factor up to this letter length feed the dichotomy check.
  std::size_t sample_len = 6;
  std::size_t sample_limit = 16;
  std::size_t budget = 3;
  /// Replace a foreign witness by the shortlex-least certified one of at most its length.
  bool shorten = true;
};

struct RefutationReport {
  RatExpr expr;
  Word w;
  int rank = 1;
  std::int64_t e = 0;
  std::string positive_fingerprint;
  int positive_states = 0;
  std::string standard_form;
  std::vector<BranchReport> branches;
  std::optional<DecompositionScheme> scheme;
  Outcome outcome = Outcome::inconclusive;
  bool heuristic = false;

  /// missing-value and inconsistent-branch
  std::optional<WitnessWord> witness;
  bool witness_accepted = false;
  std::optional<DecompositionTrace> trace;
  std::string branch_id;

  /// foreign-element
  std::optional<Word> foreign;
  /// "root" or "abelianization"
  std::string certificate;
  std::string refuting_branch;
};

/// Throws PreconditionError for improper or commutator words and for expressions over more than two generators.
RefutationReport refute(const RatExpr& expr, const Word& w, const RefuteOptions& opts = {});

struct ReplayResult {
  bool ok = true;
  std::vector<std::string> checks;
  std::vector<std::string> failures;
};

/// Re-derives every certificate of the report from word-core and rational-set primitives.
ReplayResult replay(const RefutationReport& r);

}  // namespace verbalrat
