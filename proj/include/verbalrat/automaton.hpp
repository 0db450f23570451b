#pragma once

// Group automata over free groups and finite acceptors of reduced words.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "verbalrat/rat_expr.hpp"
#include "verbalrat/word.hpp"

namespace verbalrat {

/// A finite automaton with transitions labelled by group elements (Words).
struct GAutomaton {
  struct Transition {
    int from = 0;
    Word label;
    int to = 0;
  };

  int num_states = 1;
  int initial = 0;
  std::vector<int> terminals;
  std::vector<Transition> transitions;

  int add_state() { return num_states++; }
  void add(int from, Word label, int to) { transitions.push_back({from, std::move(label), to}); }
  /// Throws PreconditionError when an index is out of range.
  void validate() const;
  int max_generator() const;
};

/// Thompson-style construction; identity-labelled transitions play the role of silent moves.
GAutomaton expr_to_automaton(const RatExpr& e);

/// State elimination. The result denotes L(A).
RatExpr automaton_to_expr(const GAutomaton& a);

/// A complete deterministic automaton over the 2*rank letters x1, x1^-1, x2, ... that accepts
/// only freely reduced strings. Read as a set of group elements it is a rational subset of F(rank).
class Acceptor {
 public:
  /// The empty set over `rank` generators.
  explicit Acceptor(int rank = 1);

  static Acceptor reduced_words(int rank);
  static Acceptor positive_words(int rank);
  /// Builds an acceptor from raw complete tables. The caller guarantees that only reduced strings are
  /// accepted; use restricted_to_reduced() otherwise.
  static Acceptor from_table(int rank, int initial, std::vector<std::vector<int>> delta, std::vector<bool> accepting);
  Acceptor restricted_to_reduced() const;

  int rank() const { return rank_; }
  int alphabet_size() const { return 2 * rank_; }
  int num_states() const { return static_cast<int>(accepting_.size()); }
  int initial() const { return initial_; }
  int next(int state, int letter_index) const { return delta_[static_cast<std::size_t>(state)][static_cast<std::size_t>(letter_index)]; }
  bool accepting(int state) const { return accepting_[static_cast<std::size_t>(state)]; }

  bool accepts(const Word& w) const;
  bool is_empty() const;
  /// Shortlex-least member, if any.
  std::optional<Word> shortest_member() const;
  /// Members of length <= max_len in shortlex order, at most `limit` of them.
  std::vector<Word> members_up_to(std::size_t max_len, std::size_t limit = SIZE_MAX) const;
  /// Number of members of each length 0..max_len.
  std::vector<std::uint64_t> count_by_length(std::size_t max_len) const;
  /// True if the accepted language is finite.
  bool is_finite() const;

  /// Same language over a larger alphabet; new letters lead to the sink.
  Acceptor with_rank(int rank) const;

  Acceptor minimized() const;
  /// Minimal-DFA encoding with BFS-canonical state numbering; equal iff the languages are equal.
  std::string fingerprint() const;

  /// Drops the sink and unproductive states; transitions are single-letter words.
  GAutomaton to_gautomaton() const;

 private:
  int rank_ = 1;
  int initial_ = 0;
  std::vector<std::vector<int>> delta_;
  std::vector<bool> accepting_;
};

Acceptor intersect(const Acceptor& a, const Acceptor& b);
Acceptor unite(const Acceptor& a, const Acceptor& b);
/// Reduced words not accepted by `a`.
Acceptor complement_reduced(const Acceptor& a);
Acceptor difference(const Acceptor& a, const Acceptor& b);
bool equivalent(const Acceptor& a, const Acceptor& b);
/// A reduced word accepted by exactly one of the two, shortlex-least; none if equivalent.
std::optional<Word> distinguishing_word(const Acceptor& a, const Acceptor& b);

/// Cancellation saturation: the acceptor of the reduced forms of the elements of L(A).
/// `rank` must be at least the largest generator used (0 picks it automatically, minimum 1).
Acceptor saturate(const GAutomaton& a, int rank = 0);

/// saturate(expr_to_automaton(e)).
Acceptor acceptor_of(const RatExpr& e, int rank = 0);

/// Exact membership g in L(e).
bool member(const RatExpr& e, const Word& g);

/// Positive members of an F2 expression, as an acceptor over {x1, x2}.
Acceptor intersect_positive(const RatExpr& e);

}  // namespace verbalrat
