#pragma once

// Independent brute-force references used by the tests.

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "verbalrat/word.hpp"

namespace oracle {

using verbalrat::Letter;
using verbalrat::Word;

/// Repeatedly scans for an adjacent cancelling pair and deletes it.
inline std::vector<Letter> naive_reduce(std::vector<Letter> s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
      if (s[i].generator() == s[i + 1].generator() && s[i].sign() != s[i + 1].sign()) {
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i), s.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
    }
  }
  return s;
}

inline std::vector<Letter> random_letters(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), gen(1, rank), sign(0, 1);
  std::vector<Letter> s(static_cast<std::size_t>(len(rng)));
  for (auto& l : s) l = Letter(gen(rng), sign(rng) ? 1 : -1);
  return s;
}

inline Word random_word(std::mt19937_64& rng, int rank, int max_len) { return Word(random_letters(rng, rank, max_len)); }

/// All reduced words of length <= len over `rank` generators.
inline std::vector<Word> ball(int rank, std::size_t len) {
  std::vector<std::vector<Letter>> layer{{}};
  std::vector<Word> out{Word{}};
  for (std::size_t n = 1; n <= len; ++n) {
    std::vector<std::vector<Letter>> next;
    for (const auto& s : layer) {
      for (int g = 1; g <= rank; ++g) {
        for (int sg : {1, -1}) {
          const Letter l(g, sg);
          if (!s.empty() && s.back().generator() == g && s.back().sign() != sg) continue;
          auto t = s;
          t.push_back(l);
          next.push_back(t);
        }
      }
    }
    for (const auto& s : next) out.emplace_back(s);
    layer = std::move(next);
  }
  return out;
}

/// Exhaustive root search over all candidates of length <= |u|.
inline std::optional<Word> brute_force_root(const Word& u, int e, int rank) {
  for (const Word& h : ball(rank, u.size()))
    if (verbalrat::pow(h, e) == u) return h;
  return std::nullopt;
}

}  // namespace oracle

#include "verbalrat/rat_expr.hpp"

namespace oracle {

/// Random expression with at most `depth` nested operators (so complexity <= depth).
inline verbalrat::RatExpr random_expr(std::mt19937_64& rng, int depth, int rank, int leaf_len, int max_leaf_size = 3) {
  using verbalrat::RatExpr;
  std::uniform_int_distribution<int> op(0, depth > 0 ? 3 : 0);
  const int kind = op(rng);
  if (kind == 0) {
    std::uniform_int_distribution<int> count(1, max_leaf_size);
    std::vector<Word> ws;
    for (int i = count(rng); i > 0; --i) ws.push_back(random_word(rng, rank, leaf_len));
    return RatExpr::finite(std::move(ws));
  }
  if (kind == 1) return RatExpr::unite(random_expr(rng, depth - 1, rank, leaf_len), random_expr(rng, depth - 1, rank, leaf_len));
  if (kind == 2) return RatExpr::product(random_expr(rng, depth - 1, rank, leaf_len), random_expr(rng, depth - 1, rank, leaf_len));
  return RatExpr::star(random_expr(rng, depth - 1, rank, leaf_len));
}

/// Random positive-leaf expression over F2, rewritten with cancelling conjugators so that its leaves are
/// no longer positive while the denoted set stays inside the positive words.
inline verbalrat::RatExpr disguised_positive_expr(std::mt19937_64& rng, int depth) {
  using verbalrat::RatExpr;
  std::uniform_int_distribution<int> op(0, depth > 0 ? 3 : 0), coin(0, 1);
  const int kind = op(rng);
  auto positive_word = [&](int len) {
    std::uniform_int_distribution<int> n(0, len), gen(1, 2);
    std::vector<Letter> ls(static_cast<std::size_t>(n(rng)));
    for (auto& l : ls) l = Letter(gen(rng), 1);
    return Word(ls);
  };
  if (kind == 0) {
    std::vector<Word> ws{positive_word(3)};
    if (coin(rng)) ws.push_back(positive_word(3));
    return RatExpr::finite(std::move(ws));
  }
  const Word g = random_word(rng, 2, 2);
  const auto gin = RatExpr::single(g), gout = RatExpr::single(verbalrat::inv(g));
  if (kind == 1) return RatExpr::unite(disguised_positive_expr(rng, depth - 1), disguised_positive_expr(rng, depth - 1));
  if (kind == 2) {
    const auto a = disguised_positive_expr(rng, depth - 1), b = disguised_positive_expr(rng, depth - 1);
    return RatExpr::product(RatExpr::product(a, gin), RatExpr::product(gout, b));
  }
  const auto e = disguised_positive_expr(rng, depth - 1);
  if (coin(rng)) {
    // p E* h = p h (h^-1 E h)* with h positive
    const Word p = positive_word(2), h = Word::generator(coin(rng) + 1) * positive_word(1);
    return RatExpr::product(RatExpr::single(p * h), RatExpr::star(verbalrat::conjugate_expr(e, h)));
  }
  // E* = g (g^-1 E g)* g^-1
  return RatExpr::product(gin, RatExpr::product(RatExpr::star(verbalrat::conjugate_expr(e, g)), gout));
}

/// Candidate descriptions of the positive x1^2-values: fixed shapes followed by random standard forms
/// a_1 E_1* a_2 ... with positive words, plus random expressions with negative letters.
inline std::vector<verbalrat::RatExpr> candidate_corpus(std::mt19937_64& rng, std::size_t n) {
  using verbalrat::RatExpr;
  std::vector<RatExpr> out{
      verbalrat::parse_rat_expr("(star (fin x1 x2))"),
      verbalrat::parse_rat_expr("(star (fin x1^2))"),
      verbalrat::parse_rat_expr("(union (star (fin x1^2)) (star (fin x2^2)))"),
      verbalrat::parse_rat_expr("(star (fin x1^2 x2^2))"),
      verbalrat::parse_rat_expr("(star (fin x1x2x1x2 x2x1x2x1))"),
      verbalrat::parse_rat_expr("(prod (star (fin x1^2)) (star (fin x2^2)))"),
  };
  std::uniform_int_distribution<int> coin(0, 1), stars(0, 2), summands(1, 2), count(1, 3), len(0, 3), gen(1, 2);
  auto positive_word = [&](int max_len) {
    std::vector<Letter> ls(static_cast<std::size_t>(std::uniform_int_distribution<int>(0, max_len)(rng)));
    for (auto& l : ls) l = Letter(gen(rng), 1);
    return Word(ls);
  };
  while (out.size() < n) {
    if (out.size() % 4 == 3) {
      out.push_back(random_expr(rng, 2, 2, 3));
      continue;
    }
    RatExpr sum;
    for (int s = summands(rng); s > 0; --s) {
      RatExpr term = RatExpr::single(positive_word(2));
      for (int j = stars(rng); j > 0; --j) {
        std::vector<Word> ws;
        for (int k = count(rng); k > 0; --k) {
          Word w = positive_word(3);
          if (w.is_identity()) w = Word::generator(gen(rng), 2);
          ws.push_back(coin(rng) ? w * w : w);
        }
        term = RatExpr::product(term, RatExpr::star(RatExpr::finite(ws)));
        term = RatExpr::product(term, RatExpr::single(positive_word(2)));
      }
      sum = RatExpr::unite(sum, term);
    }
    out.push_back(sum);
  }
  out.resize(n);
  return out;
}

}  // namespace oracle
