#pragma once

// Rational subsets of Z: finite unions of arithmetic progressions, kept in a canonical
// eventually-periodic form.

#include <cstdint>
#include <string>
#include <vector>

namespace verbalrat {

/// {base + period * n : n >= 0}. A negative period runs towards minus infinity; period 0 is {base}.
struct Progression {
  std::int64_t base = 0;
  std::int64_t period = 0;

  bool contains(std::int64_t x) const;
  friend bool operator==(const Progression&, const Progression&) = default;
};

/// A set S of integers with S(x) = pos(x mod P) for x > hi, S(x) = neg(x mod P) for x < lo and an
/// explicit window [lo, hi] in between. The representation is canonical: P is minimal, hi is the
/// largest point disagreeing with the upper tail and lo the smallest disagreeing with the lower tail,
/// so structural equality is set equality.
class ZRatSet {
 public:
  /// The empty set.
  ZRatSet();

  static ZRatSet singleton(std::int64_t x);
  static ZRatSet finite(const std::vector<std::int64_t>& xs);
  static ZRatSet progression(Progression p);
  static ZRatSet from_progressions(const std::vector<Progression>& ps);
  /// d*Z (d >= 0; d = 0 gives {0}).
  static ZRatSet multiples(std::int64_t d);
  static ZRatSet integers() { return multiples(1); }

  bool contains(std::int64_t x) const;
  bool is_empty() const;
  bool is_finite() const;
  std::int64_t period() const { return period_; }

  /// Non-redundant progressions: window points plus one tail progression per residue.
  std::vector<Progression> progressions() const;
  std::string str() const;

  friend bool operator==(const ZRatSet&, const ZRatSet&) = default;

  friend ZRatSet unite(const ZRatSet& a, const ZRatSet& b);
  friend ZRatSet intersect(const ZRatSet& a, const ZRatSet& b);
  friend ZRatSet difference(const ZRatSet& a, const ZRatSet& b);
  friend ZRatSet complement(const ZRatSet& a);

 private:
  struct Raw;
  static ZRatSet canonical(const Raw& r);
  template <class Op>
  static ZRatSet combine(const ZRatSet& a, const ZRatSet& b, Op op);

  bool upper(std::int64_t x) const;
  bool lower(std::int64_t x) const;
  /// Finite window bounds usable for scanning even when a tail covers everything.
  std::int64_t lo_eff() const;
  std::int64_t hi_eff() const;

  std::int64_t period_ = 1;
  std::vector<bool> pos_{false};
  std::vector<bool> neg_{false};
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<bool> window_;
};

ZRatSet unite(const ZRatSet& a, const ZRatSet& b);
ZRatSet intersect(const ZRatSet& a, const ZRatSet& b);
ZRatSet difference(const ZRatSet& a, const ZRatSet& b);
ZRatSet complement(const ZRatSet& a);
ZRatSet negate(const ZRatSet& a);
/// {a + b : a in A, b in B}.
ZRatSet sumset(const ZRatSet& a, const ZRatSet& b);
/// The submonoid of (Z, +) generated by the set.
ZRatSet star(const ZRatSet& a);

}  // namespace verbalrat
