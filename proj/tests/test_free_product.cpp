#include <gtest/gtest.h>

#include <random>

#include "verbalrat/error.hpp"
#include "verbalrat/free_product.hpp"
#include "oracles.hpp"

using namespace verbalrat;

namespace {

const FreeProduct ZZ = FreeProduct::integers();

/// Pairwise merger: repeatedly merges the first same-factor neighbours or drops the first identity syllable.
std::vector<Syllable> naive_normalize(const FreeProduct& g, std::vector<Syllable> s) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (g.canonical(s[i].factor, s[i].exponent) == 0) {
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (i + 1 < s.size() && s[i].factor == s[i + 1].factor) {
        s[i].exponent += s[i + 1].exponent;
        s.erase(s.begin() + static_cast<std::ptrdiff_t>(i + 1));
        changed = true;
        break;
      }
    }
  }
  for (auto& x : s) x.exponent = g.canonical(x.factor, x.exponent);
  return s;
}

std::vector<Syllable> random_syllables(std::mt19937_64& rng, int max_len, int max_exp) {
  std::uniform_int_distribution<int> len(0, max_len), fac(0, 1), ex(-max_exp, max_exp);
  std::vector<Syllable> s(static_cast<std::size_t>(len(rng)));
  for (auto& x : s) x = {fac(rng) ? Factor::B : Factor::A, ex(rng)};
  return s;
}

FPElement P(const FreeProduct& g, const char* s) { return g.parse(s); }

}  // namespace

TEST(FreeProduct, NormalizeExamples) {
  const std::vector<Syllable> a{{Factor::A, 2}, {Factor::A, 3}};
  EXPECT_EQ(ZZ.normalize(a), P(ZZ, "a^5"));
  const std::vector<Syllable> b{{Factor::A, 1}, {Factor::B, 1}, {Factor::B, -1}, {Factor::A, -1}};
  EXPECT_TRUE(ZZ.normalize(b).is_identity());
}

TEST(FreeProduct, FiniteFactorExample) {
  const FreeProduct G(FactorModel::finite(2), FactorModel::infinite());
  const FPElement x = P(G, "a b^3 a"), y = P(G, "a b^-3 a");
  EXPECT_TRUE(G.mul(x, y).is_identity());
  std::vector<Syllable> all(x.syllables());
  all.insert(all.end(), y.syllables().begin(), y.syllables().end());
  EXPECT_TRUE(naive_normalize(G, all).empty());
  EXPECT_EQ(P(G, "a^3").syllables(), (std::vector<Syllable>{Syllable{Factor::A, 1}}));
}

TEST(FreeProduct, NormalizeMatchesNaiveMerger) {
  std::mt19937_64 rng(41);
  for (const FreeProduct& g : {ZZ, FreeProduct(FactorModel::finite(3), FactorModel::infinite()),
                               FreeProduct(FactorModel::finite(2), FactorModel::finite(5))}) {
    for (int i = 0; i < 2000; ++i) {
      const auto s = random_syllables(rng, 10, 3);
      const FPElement u = g.normalize(s);
      EXPECT_EQ(u.syllables(), naive_normalize(g, s));
      EXPECT_EQ(g.normalize(u.syllables()), u);
    }
  }
}

TEST(FreeProduct, GroupLaws) {
  std::mt19937_64 rng(43);
  const FreeProduct G(FactorModel::finite(4), FactorModel::infinite());
  for (int i = 0; i < 2000; ++i) {
    const auto u = G.normalize(random_syllables(rng, 8, 5));
    const auto v = G.normalize(random_syllables(rng, 8, 5));
    const auto w = G.normalize(random_syllables(rng, 8, 5));
    EXPECT_EQ(G.mul(G.mul(u, v), w), G.mul(u, G.mul(v, w)));
    EXPECT_TRUE(G.mul(u, G.inv(u)).is_identity());
    EXPECT_LE(G.mul(u, v).syllable_length(), u.syllable_length() + v.syllable_length());
    EXPECT_EQ(G.pow(u, -3), G.inv(G.pow(u, 3)));
  }
}

TEST(FreeProduct, LengthAndSupport) {
  const auto u = P(ZZ, "a b^2 a");
  EXPECT_EQ(u.syllable_length(), 3u);
  EXPECT_EQ(support(u), (std::set<Syllable>{{Factor::A, 1}, {Factor::B, 2}}));
  EXPECT_TRUE(support(FPElement{}).empty());
  const auto v = P(ZZ, "b a^3 b a^3");
  EXPECT_EQ(v.syllable_length(), 4u);
  EXPECT_EQ(support(v), (std::set<Syllable>{{Factor::B, 1}, {Factor::A, 3}}));
}

TEST(FreeProduct, CoreDecompose) {
  const auto d = ZZ.core_decompose(P(ZZ, "b^-1 a b"));
  EXPECT_EQ(d.conjugator_syllables, (std::vector<Syllable>{Syllable{Factor::B, 1}}));
  EXPECT_EQ(d.core, P(ZZ, "a"));
  const auto e = ZZ.core_decompose(P(ZZ, "a b"));
  EXPECT_TRUE(e.conjugator_syllables.empty());
  EXPECT_EQ(e.core, P(ZZ, "a b"));
  const auto u = P(ZZ, "b^-2 a^-1 b a b^2");
  EXPECT_EQ(ZZ.reassemble(ZZ.core_decompose(u)), u);
  EXPECT_THROW(ZZ.core_decompose(FPElement{}), PreconditionError);
}

TEST(FreeProduct, CoreReassemblyRandom) {
  std::mt19937_64 rng(47);
  const FreeProduct G(FactorModel::finite(3), FactorModel::infinite());
  for (const FreeProduct& g : {ZZ, G}) {
    for (int i = 0; i < 2000; ++i) {
      const auto u = g.normalize(random_syllables(rng, 10, 3));
      if (u.is_identity()) continue;
      const auto d = g.core_decompose(u);
      EXPECT_EQ(g.reassemble(d), u);
      const auto& c = d.core.syllables();
      if (c.size() > 1 && c.front().factor == c.back().factor) {
        EXPECT_NE(g.canonical(c.front().factor, c.front().exponent + c.back().exponent), 0);
      }
    }
  }
}

TEST(FreeProduct, CyclicForm) {
  EXPECT_EQ(ZZ.cyclic_form(P(ZZ, "a b")), P(ZZ, "a b"));
  EXPECT_EQ(ZZ.cyclic_form(P(ZZ, "a b a^2")), P(ZZ, "b a^3"));
  EXPECT_EQ(ZZ.cyclic_form(P(ZZ, "a^5")), P(ZZ, "a^5"));
  EXPECT_THROW(ZZ.cyclic_form(FPElement{}), PreconditionError);
}

namespace {

bool is_rotation(const FPElement& x, const FPElement& y) {
  const auto& a = x.syllables();
  const auto& b = y.syllables();
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t r = 0; r < a.size(); ++r) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[(i + r) % a.size()] == b[i];
    if (ok) return true;
  }
  return false;
}

}  // namespace

// Conjugates have cyclic forms that agree up to rotation, so supports agree exactly.
TEST(FreeProduct, CyclicFormConjugationInvariance) {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 2000; ++i) {
    const auto u = ZZ.normalize(random_syllables(rng, 9, 3));
    const auto h = ZZ.normalize(random_syllables(rng, 5, 3));
    if (u.is_identity()) continue;
    const auto c = ZZ.mul(ZZ.inv(h), ZZ.mul(u, h));
    const auto fu = ZZ.cyclic_form(u), fc = ZZ.cyclic_form(c);
    EXPECT_TRUE(is_rotation(fu, fc)) << u.str() << " / " << c.str();
    EXPECT_EQ(support(fu), support(fc));
  }
}

TEST(FreeProduct, F2Identification) {
  EXPECT_EQ(from_f2(ZZ, parse_word("x1^2 x2^-1")), P(ZZ, "a^2 b^-1"));
  EXPECT_TRUE(from_f2(ZZ, Word{}).is_identity());
  EXPECT_TRUE(to_f2(ZZ, FPElement{}).is_identity());
  const FreeProduct G(FactorModel::finite(2), FactorModel::infinite());
  EXPECT_THROW(from_f2(G, parse_word("x1")), PreconditionError);
  EXPECT_THROW(from_f2(ZZ, parse_word("x3")), PreconditionError);
  std::mt19937_64 rng(59);
  for (int i = 0; i < 10000; ++i) {
    const Word u = oracle::random_word(rng, 2, 12), v = oracle::random_word(rng, 2, 12);
    EXPECT_EQ(to_f2(ZZ, from_f2(ZZ, u)), u);
    EXPECT_EQ(from_f2(ZZ, mul(u, v)), ZZ.mul(from_f2(ZZ, u), from_f2(ZZ, v)));
  }
}

TEST(FreeProduct, ParseErrors) {
  EXPECT_THROW(ZZ.parse(""), ParseError);
  EXPECT_THROW(ZZ.parse("a c"), ParseError);
  EXPECT_THROW(ZZ.parse("a^"), ParseError);
  EXPECT_TRUE(ZZ.parse("1").is_identity());
}
