#include "verbalrat/gaps.hpp"

#include <algorithm>
#include <functional>

#include "verbalrat/error.hpp"

namespace verbalrat {

std::uint64_t GapProfile::gamma(std::int64_t e) const {
  std::uint64_t n = 0;
  const auto m = static_cast<std::uint64_t>(e);
  for (const auto& [k, d] : table)
    if (d.first % m != d.second % m) ++n;
  return n;
}

std::int64_t GapProfile::max_k() const { return table.empty() ? 0 : table.rbegin()->first; }

GapProfile gap_profile(const FreeProduct& g, const FPElement& u, const Syllable& b) {
  if (g.canonical(b.factor, b.exponent) == 0) throw PreconditionError("gap_profile: b is the identity");
  GapProfile p;
  p.b = {b.factor, g.canonical(b.factor, b.exponent)};
  p.b_inverse = g.inverse(p.b);
  auto scan = [&](const Syllable& target, bool second) {
    std::optional<std::size_t> last;
    for (std::size_t i = 0; i < u.syllable_length(); ++i) {
      if (u[i] != target) continue;
      if (last) {
        const auto d = i - *last;
        if (d % 2 != 0) throw std::logic_error("gap_profile: same-factor syllables at odd distance");
        auto& cell = p.table[static_cast<std::int64_t>(d / 2)];
        ++(second ? cell.second : cell.first);
      }
      last = i;
    }
  };
  scan(p.b, false);
  if (p.b_inverse != p.b) scan(p.b_inverse, true);
  return p;
}

std::uint64_t gamma(const FreeProduct& g, const FPElement& u, const Syllable& b, std::int64_t e) {
  if (e < 2) throw PreconditionError("gamma: e must be at least 2");
  const auto p = gap_profile(g, u, b);
  if (p.b == p.b_inverse) throw PreconditionError("gamma: b equals its inverse");
  return p.gamma(e);
}

FPElement random_element(std::mt19937_64& rng, std::size_t max_syllables, std::int64_t exponent_bound) {
  std::uniform_int_distribution<std::size_t> len(0, max_syllables);
  std::uniform_int_distribution<int> first(0, 1);
  std::uniform_int_distribution<std::int64_t> mag(1, exponent_bound), sign(0, 1);
  const auto g = FreeProduct::integers();
  std::vector<Syllable> s;
  Factor f = first(rng) ? Factor::B : Factor::A;
  for (std::size_t i = len(rng); i > 0; --i) {
    const auto m = mag(rng);
    s.push_back({f, sign(rng) ? -m : m});
    f = other(f);
  }
  return g.normalize(s);
}

ScanReport criterion_scan(const Word& w, int rank, const Syllable& b, const ScanConfig& config) {
  const auto prof = exponent_profile(w, rank);
  if (prof.e < 2) throw PreconditionError("criterion_scan: w must have e(w) >= 2, got " + std::to_string(prof.e));
  const auto g = FreeProduct::integers();
  if (g.inverse(b) == b) throw PreconditionError("criterion_scan: b equals its inverse");
  ScanReport rep;
  rep.e = prof.e;
  std::mt19937_64 rng(config.seed);
  std::vector<Word> args(static_cast<std::size_t>(rank));
  for (std::size_t id = 0; id < config.samples; ++id) {
    FPElement value;
    for (int attempt = 0;; ++attempt) {
      for (auto& a : args) a = to_f2(g, random_element(rng, config.max_arg_syllables, config.exponent_bound));
      value = from_f2(g, substitute(w, args));
      if (config.max_value_syllables == 0 || value.syllable_length() <= config.max_value_syllables) break;
      if (attempt > 1000) throw CapExceeded("criterion_scan: cannot draw values within the syllable bound");
    }
    const auto p = gap_profile(g, value, b);
    ScanSample s{id, value.syllable_length(), p.gamma(prof.e), p.max_k()};
    rep.max_gamma = std::max(rep.max_gamma, s.gamma);
    ++rep.histogram[s.gamma];
    rep.samples.push_back(s);
  }
  return rep;
}

namespace {

Syllable distinguishing_syllable(const FreeProduct& g, const FPElement& u, const FPElement& v) {
  const auto su = support(g.cyclic_form(u)), sv = support(g.cyclic_form(v));
  for (const auto& s : su)
    if (!sv.count(s)) return s;
  throw PreconditionError("unbounded_family: supp(u^0) is contained in supp(v^0)");
}

Family build_family(const FPElement& p, const FPElement& u, const FPElement& v, const FPElement& q, std::int64_t n_max,
                    std::int64_t e, bool staircase) {
  const auto g = FreeProduct::integers();
  for (const auto* x : {&p, &u, &v, &q}) {
    for (const auto& s : x->syllables())
      if (s.exponent < 0) throw PreconditionError("unbounded_family: inputs must be positive");
  }
  if (v.is_identity() || g.cyclic_form(v).syllable_length() < 2)
    throw PreconditionError("unbounded_family: v^0 must have at least two syllables");
  if (u.is_identity()) throw PreconditionError("unbounded_family: u must not be the identity");
  Family fam;
  fam.b = distinguishing_syllable(g, u, v);
  const FPElement uu = g.mul(u, u);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    FPElement x = g.mul(p, uu);
    if (staircase) {
      for (std::int64_t j = 1; j <= n; ++j) x = g.mul(g.mul(x, g.pow(v, j)), uu);
    } else {
      x = g.mul(g.mul(x, g.pow(v, n)), uu);
    }
    x = g.mul(x, q);
    fam.members.push_back({n, x, gamma(g, x, fam.b, e)});
  }
  return fam;
}

}  // namespace

Family unbounded_family(const FPElement& p, const FPElement& u, const FPElement& v, const FPElement& q, std::int64_t n_max,
                        std::int64_t e) {
  return build_family(p, u, v, q, n_max, e, true);
}

Family power_family(const FPElement& p, const FPElement& u, const FPElement& v, const FPElement& q, std::int64_t n_max,
                    std::int64_t e) {
  return build_family(p, u, v, q, n_max, e, false);
}

std::uint64_t exhaustive_power_gamma_max(std::int64_t e, const Syllable& b, std::size_t max_syllables, std::int64_t exponent_bound) {
  if (e < 2) throw PreconditionError("exhaustive_power_gamma_max: e must be at least 2");
  const auto g = FreeProduct::integers();
  // Every h is c^-1 k c with k its core, and |h^e| >= 2|c| + e(|k| - 1) + 1, which bounds both parts.
  const std::size_t longest = max_syllables;
  std::vector<std::vector<FPElement>> by_len(longest + 1);
  by_len[0].push_back(FPElement{});
  std::vector<Syllable> cur;
  std::function<void(std::size_t)> grow = [&](std::size_t limit) {
    for (Factor f : {Factor::A, Factor::B}) {
      if (!cur.empty() && cur.back().factor == f) continue;
      for (std::int64_t x = -exponent_bound; x <= exponent_bound; ++x) {
        if (x == 0) continue;
        cur.push_back({f, x});
        by_len[cur.size()].push_back(g.normalize(cur));
        if (cur.size() < limit) grow(limit);
        cur.pop_back();
      }
    }
  };
  auto fits = [&](std::size_t c, std::size_t k) { return 2 * c + static_cast<std::size_t>(e) * (k - 1) + 1 <= max_syllables; };
  std::size_t max_core = 1;
  while (fits(0, max_core + 1)) ++max_core;
  const std::size_t max_conj = max_syllables >= 1 ? (max_syllables - 1) / 2 : 0;
  grow(std::max(max_core, max_conj));
  std::uint64_t best = 0;
  for (std::size_t kc = 1; kc <= max_core; ++kc) {
    for (std::size_t cc = 0; fits(cc, kc); ++cc) {
      for (const auto& k : by_len[kc]) {
        const auto ke = g.pow(k, e);
        for (const auto& c : by_len[cc]) {
          const auto he = g.mul(g.inv(c), g.mul(ke, c));
          if (he.syllable_length() > max_syllables) continue;
          best = std::max(best, gap_profile(g, he, b).gamma(e));
        }
      }
    }
  }
  return best;
}

}  // namespace verbalrat
