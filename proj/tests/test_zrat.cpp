#include <gtest/gtest.h>

#include <random>
#include <set>

#include "verbalrat/zrat.hpp"

using namespace verbalrat;

namespace {

constexpr std::int64_t kWide = 600;
constexpr std::int64_t kCheck = 200;

// Brute-force model: membership bitmap on [-kWide, kWide].
struct Window {
  std::vector<bool> bits = std::vector<bool>(2 * kWide + 1, false);
  bool at(std::int64_t x) const { return bits[static_cast<std::size_t>(x + kWide)]; }
  void set(std::int64_t x) {
    if (x >= -kWide && x <= kWide) bits[static_cast<std::size_t>(x + kWide)] = true;
  }
};

Window window_of(const std::vector<Progression>& ps) {
  Window w;
  for (const auto& p : ps) {
    if (p.period == 0) {
      w.set(p.base);
      continue;
    }
    for (std::int64_t x = p.base; x >= -kWide && x <= kWide; x += p.period) w.set(x);
  }
  return w;
}

std::vector<Progression> random_progressions(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> count(0, 3), base(-12, 12), period(-5, 5);
  std::vector<Progression> ps(static_cast<std::size_t>(count(rng)));
  for (auto& p : ps) p = {base(rng), period(rng)};
  return ps;
}

void expect_matches(const ZRatSet& s, const Window& w, const std::string& what) {
  for (std::int64_t x = -kCheck; x <= kCheck; ++x) ASSERT_EQ(s.contains(x), w.at(x)) << what << " at " << x << ": " << s.str();
}

}  // namespace

TEST(ZRat, StarExamples) {
  const auto s = star(ZRatSet::finite({2, 3}));
  EXPECT_EQ(s, unite(ZRatSet::singleton(0), ZRatSet::progression({2, 1})));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.str(), "0 | 2+1N");
  EXPECT_EQ(star(ZRatSet::finite({2, -2})), ZRatSet::multiples(2));
  const auto evens = ZRatSet::multiples(2);
  const auto odds = ZRatSet::from_progressions({{1, 2}, {-1, -2}});
  EXPECT_EQ(intersect(complement(evens), odds), odds);
  EXPECT_EQ(star(ZRatSet{}), ZRatSet::singleton(0));
  EXPECT_EQ(star(ZRatSet::finite({-4, -6})), negate(star(ZRatSet::finite({4, 6}))));
}

TEST(ZRat, CanonicalFormIsUnique) {
  EXPECT_EQ(ZRatSet::from_progressions({{0, 1}, {-1, -1}}), ZRatSet::integers());
  EXPECT_EQ(ZRatSet::from_progressions({{0, 2}, {1, 2}}), ZRatSet::progression({0, 1}));
  EXPECT_EQ(ZRatSet::from_progressions({{4, 2}, {0, 0}, {2, 0}}), ZRatSet::progression({0, 2}));
  EXPECT_EQ(ZRatSet::from_progressions({{3, 0}, {3, 0}}), ZRatSet::singleton(3));
  EXPECT_TRUE(ZRatSet{}.is_empty());
  EXPECT_TRUE(difference(ZRatSet::integers(), ZRatSet::integers()).is_empty());
  EXPECT_EQ(ZRatSet::integers().str(), "-1-1N | 0+1N");
}

TEST(ZRat, ProgressionsRoundTrip) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const auto s = ZRatSet::from_progressions(random_progressions(rng));
    const auto ps = s.progressions();
    EXPECT_EQ(ZRatSet::from_progressions(ps), s);
    // Non-redundant: no two progressions share a point in the checked window.
    std::set<std::int64_t> seen;
    for (const auto& p : ps) {
      for (std::int64_t x = -kCheck; x <= kCheck; ++x) {
        if (p.contains(x)) EXPECT_TRUE(seen.insert(x).second) << s.str();
      }
    }
  }
}

TEST(ZRat, BooleanOpsMatchBruteForce) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    const auto pa = random_progressions(rng), pb = random_progressions(rng);
    const auto a = ZRatSet::from_progressions(pa), b = ZRatSet::from_progressions(pb);
    const auto wa = window_of(pa), wb = window_of(pb);
    Window u, n, d, c;
    for (std::int64_t x = -kWide; x <= kWide; ++x) {
      if (wa.at(x) || wb.at(x)) u.set(x);
      if (wa.at(x) && wb.at(x)) n.set(x);
      if (wa.at(x) && !wb.at(x)) d.set(x);
      if (!wa.at(x)) c.set(x);
    }
    expect_matches(a, wa, "set");
    expect_matches(unite(a, b), u, "union");
    expect_matches(intersect(a, b), n, "intersect");
    expect_matches(difference(a, b), d, "difference");
    expect_matches(complement(a), c, "complement");
    EXPECT_EQ(complement(complement(a)), a);
  }
}

TEST(ZRat, SumsetMatchesBruteForce) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto pa = random_progressions(rng), pb = random_progressions(rng);
    const auto wa = window_of(pa), wb = window_of(pb);
    Window s;
    for (std::int64_t x = -kWide; x <= kWide; ++x) {
      if (!wa.at(x)) continue;
      for (std::int64_t y = -kWide; y <= kWide; ++y)
        if (wb.at(y)) s.set(x + y);
    }
    expect_matches(sumset(ZRatSet::from_progressions(pa), ZRatSet::from_progressions(pb)), s, "sumset");
  }
}

TEST(ZRat, StarMatchesBruteForce) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const auto pa = random_progressions(rng);
    const auto wa = window_of(pa);
    std::vector<std::int64_t> gens;
    for (std::int64_t g = -kWide; g <= kWide; ++g)
      if (wa.at(g)) gens.push_back(g);
    Window s;
    s.set(0);
    std::vector<std::int64_t> queue{0};
    while (!queue.empty()) {
      const auto x = queue.back();
      queue.pop_back();
      for (auto g : gens) {
        const auto y = x + g;
        if (y >= -kWide && y <= kWide && !s.at(y)) {
          s.set(y);
          queue.push_back(y);
        }
      }
    }
    expect_matches(star(ZRatSet::from_progressions(pa)), s, "star");
  }
}
