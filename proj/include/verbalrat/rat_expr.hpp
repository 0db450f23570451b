#pragma once

// Rational expressions over a free group: finite sets closed under union, product and star.

#include <cstddef>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "verbalrat/word.hpp"

namespace verbalrat {

/// Immutable expression tree with shared nodes. Each node caches its structural complexity:
/// 0 when the denoted set is finite, otherwise 1 + max over children.
class RatExpr {
 public:
  enum class Kind { finite, union_of, product, star };

  /// The empty set.
  RatExpr();

  static RatExpr finite(std::vector<Word> elements);
  static RatExpr single(const Word& g) { return finite({g}); }
  static RatExpr unite(const RatExpr& l, const RatExpr& r);
  static RatExpr product(const RatExpr& l, const RatExpr& r);
  static RatExpr star(const RatExpr& inner);

  Kind kind() const;
  /// Sorted, duplicate-free elements of a `finite` node.
  const std::vector<Word>& elements() const;
  const RatExpr& left() const;
  const RatExpr& right() const;
  const RatExpr& inner() const;

  int complexity() const;
  /// True when the denoted set is finite (decided structurally, exactly).
  bool denotes_finite_set() const;
  bool denotes_empty_set() const;
  /// The denoted set; only valid when denotes_finite_set().
  const std::vector<Word>& finite_elements() const;

  int max_generator() const;
  std::size_t node_count() const;

  /// S-expression text: (fin w1 w2 ...), (union e1 e2), (prod e1 e2), (star e).
  std::string str() const;

  /// Structural equality (same tree shape and leaves).
  friend bool operator==(const RatExpr& a, const RatExpr& b);

 private:
  struct Node;
  explicit RatExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Union/product builders that fold trivial cases (empty set, {1}, finite-finite products).
RatExpr simplify_union(const RatExpr& l, const RatExpr& r);
RatExpr simplify_product(const RatExpr& l, const RatExpr& r);

/// Parses the s-expression grammar. Inside `fin`, each whitespace-separated token is one word written
/// without spaces (e.g. x1x2^-1) or a bracketed word `[x1 x2^-1]`.
RatExpr parse_rat_expr(std::string_view text);

/// Word text with atoms juxtaposed (no spaces), usable as a `fin` token.
std::string compact(const Word& w);

struct EnumerateOptions {
  /// Operands of a product or star that can cancel are enumerated up to max_len + slack.
  std::size_t slack = 4;
  /// Hard cap on max_len.
  std::size_t max_len_cap = 24;
  /// Hard cap on any intermediate set size.
  std::size_t max_elements = 3'000'000;
};

/// Denoted elements of reduced length <= max_len. Exact when no operand pair can cancel; otherwise
/// complete for derivations whose partial products stay within the slack at every level.
std::set<Word> enumerate_bounded(const RatExpr& e, std::size_t max_len, const EnumerateOptions& opts = {});

/// Expression for g^-1 L g with the same shape (and so the same complexity).
RatExpr conjugate_expr(const RatExpr& e, const Word& g);

/// Image under x_i -> images[i-1].
RatExpr hom_image(const RatExpr& e, std::span<const Word> images);

/// One summand a_1 E_1* a_2 ... E_t* a_{t+1}.
struct Summand {
  std::vector<Word> coefficients;  // t + 1 entries
  std::vector<RatExpr> starred;    // t entries, each E_j (the star is implicit)
};

struct StandardForm {
  std::vector<Summand> summands;

  RatExpr to_expr() const;
  std::string str() const;
};

StandardForm standard_form(const RatExpr& e);

}  // namespace verbalrat
