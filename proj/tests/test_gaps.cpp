#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "verbalrat/error.hpp"
#include "verbalrat/gaps.hpp"

using namespace verbalrat;

namespace {

const FreeProduct kZZ = FreeProduct::integers();
const Syllable kB{Factor::B, 1};

// Naive gap counter: for each pair of occurrences with no occurrence strictly between.
std::map<std::int64_t, std::uint64_t> naive_gaps(const FPElement& u, const Syllable& b) {
  std::map<std::int64_t, std::uint64_t> out;
  const auto& s = u.syllables();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != b) continue;
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (s[j] != b) continue;
      ++out[static_cast<std::int64_t>((j - i) / 2)];
      break;
    }
  }
  return out;
}

std::uint64_t naive_gamma(const FPElement& u, const Syllable& b, std::uint64_t e) {
  const auto p = naive_gaps(u, b), q = naive_gaps(u, kZZ.inverse(b));
  std::set<std::int64_t> ks;
  for (const auto& [k, n] : p) ks.insert(k);
  for (const auto& [k, n] : q) ks.insert(k);
  std::uint64_t g = 0;
  for (auto k : ks) {
    const auto a = p.count(k) ? p.at(k) : 0, c = q.count(k) ? q.at(k) : 0;
    if (a % e != c % e) ++g;
  }
  return g;
}

// All h with exponents +-1 and at most `len` syllables.
std::vector<FPElement> unit_ball(std::size_t len) {
  std::vector<FPElement> out{FPElement{}};
  std::vector<std::vector<Syllable>> layer{{}};
  for (std::size_t n = 1; n <= len; ++n) {
    std::vector<std::vector<Syllable>> next;
    for (const auto& s : layer) {
      for (Factor f : {Factor::A, Factor::B}) {
        if (!s.empty() && s.back().factor == f) continue;
        for (int x : {-1, 1}) {
          auto t = s;
          t.push_back({f, x});
          out.push_back(kZZ.normalize(t));
          next.push_back(std::move(t));
        }
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace

TEST(Gaps, ProfileExamples) {
  const auto p = gap_profile(kZZ, kZZ.parse("b a b"), kB);
  ASSERT_EQ(p.table.size(), 1u);
  EXPECT_EQ(p.table.at(1), std::make_pair(std::uint64_t{1}, std::uint64_t{0}));
  EXPECT_EQ(gap_profile(kZZ, kZZ.parse("b a b a b"), kB).table.at(1).first, 2u);
  EXPECT_TRUE(gap_profile(kZZ, kZZ.parse("a b^2 a b"), kB).table.empty());
  EXPECT_THROW(gap_profile(kZZ, kZZ.parse("a"), Syllable{Factor::A, 0}), PreconditionError);
}

TEST(Gaps, GammaExamples) {
  EXPECT_EQ(gamma(kZZ, kZZ.parse("b a b"), kB, 2), 1u);
  EXPECT_EQ(gamma(kZZ, kZZ.parse("b a b a b"), kB, 2), 0u);
  EXPECT_EQ(gamma(kZZ, FPElement{}, kB, 3), 0u);
  EXPECT_THROW(gamma(kZZ, FPElement{}, kB, 1), PreconditionError);
  const FreeProduct z2(FactorModel::infinite(), FactorModel::finite(2));
  EXPECT_THROW(gamma(z2, FPElement{}, kB, 2), PreconditionError);
}

TEST(Gaps, ProfileProperties) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const auto u = random_element(rng, 16, 2);
    for (const Syllable b : {kB, Syllable{Factor::A, -1}, Syllable{Factor::B, 2}}) {
      const auto p = gap_profile(kZZ, u, b);
      std::uint64_t total = 0;
      for (const auto& [k, d] : p.table) total += d.first;
      const auto occurrences = static_cast<std::uint64_t>(std::count(u.syllables().begin(), u.syllables().end(), b));
      EXPECT_EQ(total, occurrences == 0 ? 0 : occurrences - 1);
      EXPECT_EQ(gap_profile(kZZ, kZZ.inv(u), b).table, gap_profile(kZZ, u, kZZ.inverse(b)).table);
      EXPECT_EQ(p.gamma(2), naive_gamma(u, b, 2));
      EXPECT_EQ(p.gamma(3), naive_gamma(u, b, 3));
    }
  }
}

TEST(Gaps, PositiveElementsHaveNoInverseGaps) {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 1000; ++i) {
    auto u = random_element(rng, 12, 3);
    std::vector<Syllable> s(u.syllables());
    for (auto& x : s) x.exponent = std::abs(x.exponent);
    u = kZZ.normalize(s);
    for (const auto& [k, d] : gap_profile(kZZ, kZZ.mul(u, u), kB).table) EXPECT_EQ(d.second, 0u);
  }
}

TEST(Gaps, ExhaustiveMaximumMatchesBruteForce) {
  // Squares of syllable length <= 12 with unit exponents; roots are at most 11 syllables long.
  std::uint64_t best = 0;
  for (const auto& h : unit_ball(11)) {
    const auto s = kZZ.mul(h, h);
    if (s.syllable_length() <= 12) best = std::max(best, naive_gamma(s, kB, 2));
  }
  EXPECT_EQ(exhaustive_power_gamma_max(2, kB, 12, 1), best);
}

TEST(Gaps, ScanAtReferenceScale) {
  const auto reference = exhaustive_power_gamma_max(2, kB, 12, 2);
  ScanConfig c;
  c.seed = 31;
  c.samples = 1000;
  c.max_arg_syllables = 7;
  c.exponent_bound = 2;
  c.max_value_syllables = 12;
  const auto r = criterion_scan(parse_word("x1^2"), 1, kB, c);
  EXPECT_EQ(r.e, 2);
  EXPECT_EQ(r.samples.size(), 1000u);
  EXPECT_EQ(r.max_gamma, reference);
  std::uint64_t total = 0;
  for (const auto& [g, n] : r.histogram) total += n;
  EXPECT_EQ(total, 1000u);
  EXPECT_EQ(criterion_scan(parse_word("x1^2"), 1, kB, c).samples.back().gamma, r.samples.back().gamma);
  EXPECT_THROW(criterion_scan(parse_word("x1 x2"), 2, kB, c), PreconditionError);
}

TEST(Gaps, UnboundedFamily) {
  const auto u = kZZ.parse("a b"), v = kZZ.parse("a b^2");
  const auto fam = unbounded_family(FPElement{}, u, v, FPElement{}, 20);
  EXPECT_EQ(fam.b, kB);
  ASSERT_EQ(fam.members.size(), 20u);
  int strict = 0;
  for (std::size_t i = 1; i < fam.members.size(); ++i) {
    EXPECT_GE(fam.members[i].gamma, fam.members[i - 1].gamma);
    strict += fam.members[i].gamma > fam.members[i - 1].gamma;
  }
  EXPECT_GE(strict, 10);
  EXPECT_GT(fam.members.back().gamma, fam.members.front().gamma);
  for (const auto& m : fam.members) EXPECT_EQ(m.gamma, naive_gamma(m.element, kB, 2));

  const auto reference = exhaustive_power_gamma_max(2, kB, 12, 2);
  for (const auto& m : fam.members)
    if (m.gamma > reference) EXPECT_FALSE(root_extract(to_f2(kZZ, m.element), 2).has_value());

  EXPECT_THROW(unbounded_family(FPElement{}, u, u, FPElement{}, 3), PreconditionError);
  EXPECT_THROW(unbounded_family(FPElement{}, kZZ.parse("a^-1 b"), v, FPElement{}, 3), PreconditionError);
}

TEST(Gaps, PowerFamilyIsConstant) {
  const auto fam = power_family(FPElement{}, kZZ.parse("a b"), kZZ.parse("a b^2"), FPElement{}, 10);
  for (const auto& m : fam.members) EXPECT_EQ(m.gamma, fam.members.front().gamma);
}
