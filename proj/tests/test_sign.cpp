#include <gtest/gtest.h>

#include <map>
#include <random>

#include "verbalrat/automaton.hpp"
#include "verbalrat/sign.hpp"
#include "oracles.hpp"

using namespace verbalrat;

namespace {

Word W(const char* s) { return parse_word(s); }
RatExpr E(std::string_view s) { return parse_rat_expr(s); }

const FreeProduct kZZ = FreeProduct::integers();

FPElement random_fp(std::mt19937_64& rng, const FreeProduct& g, int max_len, bool positive) {
  std::uniform_int_distribution<int> len(0, max_len), f(0, 1), ex(positive ? 1 : -3, 3);
  std::vector<Syllable> s;
  for (int i = len(rng); i > 0; --i) s.push_back({f(rng) ? Factor::A : Factor::B, ex(rng)});
  return g.normalize(s);
}

void expect_same_set(const RatExpr& a, const RatExpr& b) {
  const auto x = acceptor_of(a, 2), y = acceptor_of(b, 2);
  EXPECT_TRUE(equivalent(x, y)) << a.str() << " vs " << b.str() << " differ at "
                                << distinguishing_word(x, y).value_or(Word{}).str();
}

}  // namespace

TEST(Sign, IsPositiveExamples) {
  const auto sigma = SignModel::free_group();
  EXPECT_TRUE(is_positive(FPElement{}, sigma));
  EXPECT_TRUE(is_positive(kZZ.parse("a^2 b"), sigma));
  EXPECT_FALSE(is_positive(kZZ.parse("a^2 b^-1"), sigma));
}

TEST(Sign, IntegerSignIsStronglyReduced) {
  const auto z = FactorSign::integers();
  for (int x = -50; x <= 50; ++x) {
    for (int y = -50; y <= 50; ++y) {
      if (!z.positive(x) && !z.positive(y)) EXPECT_FALSE(z.positive(x + y));
      if (z.positive(x) && z.positive(y)) EXPECT_TRUE(z.positive(x + y));
    }
  }
}

TEST(Sign, CyclicFactorSign) {
  const auto s = FactorSign::cyclic(6, {2, 4});
  EXPECT_TRUE(s.positive(4));
  EXPECT_TRUE(s.positive(-2));
  EXPECT_FALSE(s.positive(3));
  EXPECT_THROW(FactorSign::cyclic(6, {2, 3, 5}), PreconditionError);
  EXPECT_NO_THROW(FactorSign::cyclic(6, {3}));
}

TEST(Sign, PositiveProductsArePositive) {
  const auto sigma = SignModel::free_group();
  std::mt19937_64 rng(3);
  for (int i = 0; i < 10000; ++i) {
    const auto a = random_fp(rng, kZZ, 6, true), b = random_fp(rng, kZZ, 6, true);
    ASSERT_TRUE(is_positive(kZZ.mul(a, b), sigma));
  }
}

TEST(Sign, SplitProductExamples) {
  const auto sigma = SignModel::free_group();
  const auto both = split_product({kZZ.parse("a")}, {kZZ.parse("b")}, sigma);
  EXPECT_EQ(both.split_case, SplitCase::both_positive);
  EXPECT_TRUE(both.u.is_identity());

  const std::vector<FPElement> s{kZZ.parse("a b^-2")}, t{kZZ.parse("b^2 a")};
  const auto tr = split_product(s, t, sigma);
  EXPECT_TRUE(is_positive(kZZ.mul(s[0], kZZ.inv(tr.u)), sigma));
  EXPECT_TRUE(is_positive(kZZ.mul(tr.u, t[0]), sigma));

  EXPECT_THROW(split_product({kZZ.parse("a^-1")}, {kZZ.parse("b")}, sigma), PreconditionError);
}

// S in P1 x^-1, T in x P2 with P1, P2 positive, so ST is positive by construction.
TEST(Sign, SplitProductContract) {
  std::mt19937_64 rng(7);
  const std::vector<SignModel> models{SignModel::free_group(),
                                      SignModel(FactorSign::integers(), FactorSign::cyclic(4, {2})),
                                      SignModel(FactorSign::cyclic(3, {1, 2}), FactorSign::integers())};
  std::uniform_int_distribution<int> count(1, 4);
  int seen_mirrored = 0, seen_split = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto& sigma = models[static_cast<std::size_t>(i) % models.size()];
    const auto& g = sigma.group();
    auto pos = [&] {
      // Positive in sigma: only factor-positive syllables.
      FPElement u;
      do u = random_fp(rng, g, 4, true);
      while (!is_positive(u, sigma));
      return u;
    };
    const auto x = random_fp(rng, g, 4, false);
    std::vector<FPElement> s, t;
    for (int k = count(rng); k > 0; --k) s.push_back(g.mul(pos(), g.inv(x)));
    for (int k = count(rng); k > 0; --k) t.push_back(g.mul(x, pos()));
    const auto tr = split_product(s, t, sigma);
    for (const auto& a : s) ASSERT_TRUE(is_positive(g.mul(a, g.inv(tr.u)), sigma));
    for (const auto& b : t) ASSERT_TRUE(is_positive(g.mul(tr.u, b), sigma));
    seen_mirrored += tr.split_case == SplitCase::mirrored_case_1 || tr.split_case == SplitCase::mirrored_case_2;
    seen_split += tr.split_case != SplitCase::both_positive;
  }
  EXPECT_GT(seen_mirrored, 0);
  EXPECT_GT(seen_split, 300);
}

TEST(Sign, PositivizeExamples) {
  auto r = positivize(E("(fin x1^-1x2)"), W("x1"), Word{});
  EXPECT_EQ(r.expr, E("(fin x2)"));

  const auto star = E("(star (fin x1^-1x2x1))");
  r = positivize(star, W("x1"), W("x1^-1"));
  EXPECT_TRUE(has_positive_leaves(r.expr)) << r.expr.str();
  expect_same_set(r.expr, E("(star (fin x2))"));

  const auto prod = E("(prod (fin x1x2^-1) (fin x2x1))");
  r = positivize_total(prod);
  EXPECT_TRUE(has_positive_leaves(r.expr));
  expect_same_set(r.expr, prod);
}

TEST(Sign, PositivizeTotalExamples) {
  EXPECT_EQ(positivize_total(E("(fin x1x2)")).expr, E("(fin x1x2)"));
  const auto p = E("(prod (fin x1x2^-1) (fin x2))");
  const auto r = positivize_total(p);
  EXPECT_TRUE(has_positive_leaves(r.expr));
  expect_same_set(r.expr, E("(fin x1)"));
  try {
    positivize_total(E("(star (fin x2^-1x1x2))"));
    FAIL();
  } catch (const NegativeMemberError& e) {
    EXPECT_EQ(e.witness(), W("x2^-1 x1 x2"));
  }
}

namespace {

void tally(const PositivizeTrace& t, std::map<std::string, int>& out) {
  ++out[t.step_case];
  for (const auto& c : t.children) tally(c, out);
}

}  // namespace

TEST(Sign, PositivizeConjugatedStar) {
  // x1x2 (x2^-1 x1 x2)* = x1 (x1)* x2
  const auto l = E("(prod (fin x1x2) (star (fin x2^-1x1x2)))");
  const auto r = positivize_total(l);
  EXPECT_TRUE(has_positive_leaves(r.expr)) << r.expr.str();
  expect_same_set(r.expr, l);
  ASSERT_EQ(r.trace.node, "product");
  std::map<std::string, int> cases;
  tally(r.trace, cases);
  EXPECT_EQ(cases["conjugated-star"], 1);
}

TEST(Sign, PositivizeDisguisedCorpus) {
  std::mt19937_64 rng(17);
  int done = 0;
  std::map<std::string, int> cases;
  for (int i = 0; i < 60; ++i) {
    const auto l = oracle::disguised_positive_expr(rng, 3);
    const auto r = positivize_total(l);
    EXPECT_TRUE(has_positive_leaves(r.expr)) << l.str() << " -> " << r.expr.str();
    expect_same_set(r.expr, l);
    EXPECT_LE(r.expr.complexity(), 3 * std::max(1, l.complexity())) << l.str();
    tally(r.trace, cases);
    ++done;
  }
  EXPECT_EQ(done, 60);
  EXPECT_GT(cases["split"], 0);
  EXPECT_GT(cases["conjugated-star"], 0);
}

TEST(Sign, PositivizeRejectsNegativeSets) {
  EXPECT_THROW(positivize(E("(fin x1)"), W("x2^-1"), Word{}), NegativeMemberError);
  EXPECT_THROW(positivize(E("(fin x3)"), Word{}, Word{}), PreconditionError);
}
