#include "verbalrat/zrat.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "verbalrat/error.hpp"

namespace verbalrat {

namespace {

constexpr std::int64_t kNoHi = std::numeric_limits<std::int64_t>::min();
constexpr std::int64_t kNoLo = std::numeric_limits<std::int64_t>::max();
constexpr std::int64_t kMaxPeriod = 1'000'000;
constexpr std::int64_t kMaxScan = 4'000'000;

std::int64_t mod(std::int64_t x, std::int64_t p) {
  const auto r = x % p;
  return r < 0 ? r + p : r;
}

std::int64_t minimal_period(const std::vector<bool>& mask) {
  const auto p = static_cast<std::int64_t>(mask.size());
  for (std::int64_t d = 1; d < p; ++d) {
    if (p % d != 0) continue;
    bool ok = true;
    for (std::int64_t i = d; i < p && ok; ++i) ok = mask[static_cast<std::size_t>(i)] == mask[static_cast<std::size_t>(i - d)];
    if (ok) return d;
  }
  return p;
}

std::int64_t checked_lcm(std::int64_t a, std::int64_t b) {
  const auto l = std::lcm(a, b);
  if (l > kMaxPeriod) throw CapExceeded("period of a rational subset of Z exceeds " + std::to_string(kMaxPeriod));
  return l;
}

}  // namespace

bool Progression::contains(std::int64_t x) const {
  if (period == 0) return x == base;
  if (period > 0) return x >= base && (x - base) % period == 0;
  return x <= base && (base - x) % (-period) == 0;
}

struct ZRatSet::Raw {
  std::int64_t lo = 0;
  std::int64_t hi = -1;
  std::int64_t period = 1;
  std::vector<bool> pos{false};
  std::vector<bool> neg{false};
  std::vector<bool> window;

  bool contains(std::int64_t x) const {
    if (x > hi) return pos[static_cast<std::size_t>(mod(x, period))];
    if (x < lo) return neg[static_cast<std::size_t>(mod(x, period))];
    return window[static_cast<std::size_t>(x - lo)];
  }
};

ZRatSet::ZRatSet() : lo_(kNoLo), hi_(kNoHi) {}

ZRatSet ZRatSet::canonical(const Raw& r) {
  const std::int64_t p = std::lcm(minimal_period(r.pos), minimal_period(r.neg));
  ZRatSet s;
  s.period_ = p;
  s.pos_.assign(r.pos.begin(), r.pos.begin() + p);
  s.neg_.assign(r.neg.begin(), r.neg.begin() + p);
  if (r.hi - r.lo > kMaxScan) throw CapExceeded("window of a rational subset of Z is too wide");
  s.hi_ = kNoHi;
  const std::int64_t hi_end = std::min(r.lo, r.hi + 1) - p;
  for (std::int64_t x = r.hi; x >= hi_end; --x) {
    if (r.contains(x) != s.upper(x)) {
      s.hi_ = x;
      break;
    }
  }
  s.lo_ = kNoLo;
  const std::int64_t lo_end = std::max(r.hi, r.lo - 1) + p;
  for (std::int64_t x = r.lo; x <= lo_end; ++x) {
    if (r.contains(x) != s.lower(x)) {
      s.lo_ = x;
      break;
    }
  }
  if (s.hi_ != kNoHi && s.lo_ != kNoLo && s.lo_ <= s.hi_) {
    for (std::int64_t x = s.lo_; x <= s.hi_; ++x) s.window_.push_back(r.contains(x));
  }
  return s;
}

bool ZRatSet::upper(std::int64_t x) const { return pos_[static_cast<std::size_t>(mod(x, period_))]; }
bool ZRatSet::lower(std::int64_t x) const { return neg_[static_cast<std::size_t>(mod(x, period_))]; }

std::int64_t ZRatSet::hi_eff() const {
  if (hi_ != kNoHi) return hi_;
  return lo_ != kNoLo ? lo_ - 1 : -1;
}

std::int64_t ZRatSet::lo_eff() const { return lo_ != kNoLo ? lo_ : hi_eff() + 1; }

bool ZRatSet::contains(std::int64_t x) const {
  if (x > hi_) return upper(x);
  if (x < lo_) return lower(x);
  return window_[static_cast<std::size_t>(x - lo_)];
}

bool ZRatSet::is_finite() const {
  return std::none_of(pos_.begin(), pos_.end(), [](bool b) { return b; }) &&
         std::none_of(neg_.begin(), neg_.end(), [](bool b) { return b; });
}

bool ZRatSet::is_empty() const {
  return is_finite() && std::none_of(window_.begin(), window_.end(), [](bool b) { return b; });
}

ZRatSet ZRatSet::singleton(std::int64_t x) { return finite({x}); }

ZRatSet ZRatSet::finite(const std::vector<std::int64_t>& xs) {
  if (xs.empty()) return {};
  Raw r;
  r.lo = *std::min_element(xs.begin(), xs.end());
  r.hi = *std::max_element(xs.begin(), xs.end());
  if (r.hi - r.lo > kMaxScan) throw CapExceeded("finite subset of Z is too spread out");
  r.window.assign(static_cast<std::size_t>(r.hi - r.lo + 1), false);
  for (auto x : xs) r.window[static_cast<std::size_t>(x - r.lo)] = true;
  return canonical(r);
}

ZRatSet ZRatSet::progression(Progression p) {
  if (p.period == 0) return singleton(p.base);
  const std::int64_t q = p.period > 0 ? p.period : -p.period;
  if (q > kMaxPeriod) throw CapExceeded("progression period too large");
  Raw r;
  r.period = q;
  r.pos.assign(static_cast<std::size_t>(q), false);
  r.neg.assign(static_cast<std::size_t>(q), false);
  if (p.period > 0) {
    r.lo = p.base;
    r.hi = p.base - 1;
    r.pos[static_cast<std::size_t>(mod(p.base, q))] = true;
  } else {
    r.lo = p.base + 1;
    r.hi = p.base;
    r.neg[static_cast<std::size_t>(mod(p.base, q))] = true;
  }
  return canonical(r);
}

ZRatSet ZRatSet::from_progressions(const std::vector<Progression>& ps) {
  ZRatSet out;
  for (const auto& p : ps) out = unite(out, progression(p));
  return out;
}

ZRatSet ZRatSet::multiples(std::int64_t d) {
  if (d < 0) d = -d;
  if (d == 0) return singleton(0);
  if (d > kMaxPeriod) throw CapExceeded("period too large");
  Raw r;
  r.period = d;
  r.pos.assign(static_cast<std::size_t>(d), false);
  r.pos[0] = true;
  r.neg = r.pos;
  return canonical(r);
}

template <class Op>
ZRatSet ZRatSet::combine(const ZRatSet& a, const ZRatSet& b, Op op) {
  Raw r;
  r.period = checked_lcm(a.period_, b.period_);
  r.lo = std::min(a.lo_eff(), b.lo_eff());
  r.hi = std::max(a.hi_eff(), b.hi_eff());
  if (r.hi - r.lo > kMaxScan) throw CapExceeded("window of a rational subset of Z is too wide");
  r.pos.resize(static_cast<std::size_t>(r.period));
  r.neg.resize(static_cast<std::size_t>(r.period));
  for (std::int64_t j = 0; j < r.period; ++j) {
    r.pos[static_cast<std::size_t>(j)] = op(a.upper(j), b.upper(j));
    r.neg[static_cast<std::size_t>(j)] = op(a.lower(j), b.lower(j));
  }
  for (std::int64_t x = r.lo; x <= r.hi; ++x) r.window.push_back(op(a.contains(x), b.contains(x)));
  return canonical(r);
}

ZRatSet unite(const ZRatSet& a, const ZRatSet& b) {
  return ZRatSet::combine(a, b, [](bool x, bool y) { return x || y; });
}
ZRatSet intersect(const ZRatSet& a, const ZRatSet& b) {
  return ZRatSet::combine(a, b, [](bool x, bool y) { return x && y; });
}
ZRatSet difference(const ZRatSet& a, const ZRatSet& b) {
  return ZRatSet::combine(a, b, [](bool x, bool y) { return x && !y; });
}
ZRatSet complement(const ZRatSet& a) {
  return ZRatSet::combine(a, a, [](bool x, bool) { return !x; });
}

std::vector<Progression> ZRatSet::progressions() const {
  std::vector<Progression> out;
  const std::int64_t top = hi_eff();
  const std::int64_t bottom = std::min(lo_eff(), top + 1) - 1;
  for (std::int64_t x = lo_eff(); x <= top; ++x)
    if (contains(x)) out.push_back({x, 0});
  for (std::int64_t j = 0; j < period_; ++j) {
    if (pos_[static_cast<std::size_t>(j)]) {
      const std::int64_t first = top + 1 + mod(j - (top + 1), period_);
      out.push_back({first, period_});
    }
    if (neg_[static_cast<std::size_t>(j)]) {
      const std::int64_t last = bottom - mod(bottom - j, period_);
      out.push_back({last, -period_});
    }
  }
  std::sort(out.begin(), out.end(), [](const Progression& a, const Progression& b) {
    return std::pair(a.period, a.base) < std::pair(b.period, b.base);
  });
  return out;
}

std::string ZRatSet::str() const {
  const auto ps = progressions();
  if (ps.empty()) return "{}";
  std::string s;
  for (const auto& p : ps) {
    if (!s.empty()) s += " | ";
    s += std::to_string(p.base);
    if (p.period > 0) s += "+" + std::to_string(p.period) + "N";
    if (p.period < 0) s += std::to_string(p.period) + "N";
  }
  return s;
}

ZRatSet negate(const ZRatSet& a) {
  std::vector<Progression> ps = a.progressions();
  for (auto& p : ps) p = {-p.base, -p.period};
  return ZRatSet::from_progressions(ps);
}

namespace {

ZRatSet shifted_multiples(std::int64_t shift, std::int64_t g) {
  std::vector<Progression> ps{{mod(shift, g), g}, {mod(shift, g) - g, -g}};
  return ZRatSet::from_progressions(ps);
}

ZRatSet sum_progressions(const Progression& a, const Progression& b) {
  const std::int64_t s = a.base + b.base;
  if (a.period == 0) return ZRatSet::progression({s, b.period});
  if (b.period == 0) return ZRatSet::progression({s, a.period});
  if ((a.period > 0) != (b.period > 0)) {
    return shifted_multiples(s, std::gcd(a.period, b.period));
  }
  if (a.period < 0) return negate(sum_progressions({-a.base, -a.period}, {-b.base, -b.period}));
  // s + g * <p, q> with gcd(p, q) = 1: everything past the Frobenius number is reached.
  const std::int64_t g = std::gcd(a.period, b.period);
  const std::int64_t p = a.period / g, q = b.period / g;
  if (p == 1 || q == 1) return ZRatSet::progression({s, g});
  const std::int64_t frob = p * q - p - q;
  if (frob > kMaxScan) throw CapExceeded("numerical semigroup too large");
  std::vector<bool> reach(static_cast<std::size_t>(frob + 1), false);
  std::vector<std::int64_t> pts;
  for (std::int64_t x = 0; x <= frob; ++x) {
    const bool r = x == 0 || (x >= p && reach[static_cast<std::size_t>(x - p)]) || (x >= q && reach[static_cast<std::size_t>(x - q)]);
    reach[static_cast<std::size_t>(x)] = r;
    if (r) pts.push_back(s + g * x);
  }
  return unite(ZRatSet::finite(pts), ZRatSet::progression({s + g * (frob + 1), g}));
}

}  // namespace

ZRatSet sumset(const ZRatSet& a, const ZRatSet& b) {
  ZRatSet out;
  const auto pa = a.progressions(), pb = b.progressions();
  for (const auto& x : pa)
    for (const auto& y : pb) out = unite(out, sum_progressions(x, y));
  return out;
}

ZRatSet star(const ZRatSet& a) {
  const auto ps = a.progressions();
  bool has_pos = false, has_neg = false;
  std::int64_t d = 0;
  for (const auto& p : ps) {
    has_pos |= p.base > 0 || p.period > 0;
    has_neg |= p.base < 0 || p.period < 0;
    d = std::gcd(d, std::gcd(p.base, p.period));
  }
  if (has_pos && has_neg) return ZRatSet::multiples(d);
  if (!has_pos && !has_neg) return ZRatSet::singleton(0);
  if (has_neg) return negate(star(negate(a)));
  // Positive generators only. Every multiple of d beyond (a1/d - 1)(an/d - 1) d is a sum of the
  // generators a1 <= ... <= an, which are the window points and the first two terms of each tail.
  std::int64_t a1 = std::numeric_limits<std::int64_t>::max(), an = 0;
  for (const auto& p : ps) {
    for (std::int64_t x : {p.base, p.base + p.period}) {
      if (x > 0 && p.contains(x)) {
        a1 = std::min(a1, x);
        an = std::max(an, x);
      }
    }
  }
  const std::int64_t limit = (a1 / d) * (an / d) * d + an;
  if (limit > kMaxScan) throw CapExceeded("submonoid of Z too large to saturate");
  std::vector<std::int64_t> gens;
  for (std::int64_t x = 1; x <= limit; ++x)
    if (a.contains(x)) gens.push_back(x);
  std::vector<bool> reach(static_cast<std::size_t>(limit + 1), false);
  reach[0] = true;
  std::vector<std::int64_t> pts;
  for (std::int64_t x = 0; x <= limit; ++x) {
    if (!reach[static_cast<std::size_t>(x)]) {
      for (auto g : gens) {
        if (g > x) break;
        if (reach[static_cast<std::size_t>(x - g)]) {
          reach[static_cast<std::size_t>(x)] = true;
          break;
        }
      }
    }
    if (reach[static_cast<std::size_t>(x)]) pts.push_back(x);
  }
  const std::int64_t next = (limit / d + 1) * d;
  return unite(ZRatSet::finite(pts), ZRatSet::progression({next, d}));
}

}  // namespace verbalrat
