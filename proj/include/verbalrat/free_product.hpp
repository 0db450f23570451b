#pragma once

// Normal forms in a free product A*B of two cyclic groups (Z or Z/m).

#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "verbalrat/word.hpp"

namespace verbalrat {

enum class Factor : std::uint8_t { A, B };

constexpr Factor other(Factor f) { return f == Factor::A ? Factor::B : Factor::A; }
std::string_view to_string(Factor f);

/// A cyclic factor group: infinite cyclic when `order == 0`, otherwise Z/order with order >= 2.
struct FactorModel {
  std::int64_t order = 0;

  static FactorModel infinite() { return {0}; }
  static FactorModel finite(std::int64_t m);
  bool is_infinite() const { return order == 0; }
  friend bool operator==(FactorModel, FactorModel) = default;
};

/// A non-identity element a^k or b^k of one factor. Exponents of a Z/m factor lie in {1, ..., m-1}.
struct Syllable {
  Factor factor = Factor::A;
  std::int64_t exponent = 1;

  friend bool operator==(const Syllable&, const Syllable&) = default;
  friend auto operator<=>(const Syllable&, const Syllable&) = default;
};

std::string to_string(const Syllable& s);

/// Alternating syllable sequence; only FreeProduct builds these, so the invariant always holds.
class FPElement {
 public:
  FPElement() = default;

  const std::vector<Syllable>& syllables() const { return syllables_; }
  std::size_t syllable_length() const { return syllables_.size(); }
  bool is_identity() const { return syllables_.empty(); }
  const Syllable& operator[](std::size_t i) const { return syllables_[i]; }
  const Syllable& front() const { return syllables_.front(); }
  const Syllable& back() const { return syllables_.back(); }

  std::string str() const;

  friend bool operator==(const FPElement&, const FPElement&) = default;
  friend auto operator<=>(const FPElement&, const FPElement&) = default;

 private:
  friend class FreeProduct;
  std::vector<Syllable> syllables_;
};

/// supp(u): the distinct syllables of the normal form.
std::set<Syllable> support(const FPElement& u);

struct CoreDecomposition {
  /// (r_1, ..., r_t) with u = r_t^-1 ... r_1^-1 * core * r_1 ... r_t.
  std::vector<Syllable> conjugator_syllables;
  FPElement core;
};

class FreeProduct {
 public:
  FreeProduct(FactorModel a, FactorModel b) : a_(a), b_(b) {}
  /// Z * Z, the model of F2 = <x1> * <x2>.
  static FreeProduct integers() { return {FactorModel::infinite(), FactorModel::infinite()}; }

  const FactorModel& model(Factor f) const { return f == Factor::A ? a_ : b_; }
  bool both_infinite() const { return a_.is_infinite() && b_.is_infinite(); }

  /// Exponent in canonical range for factor f (unchanged for Z, reduced into [0, m) for Z/m).
  std::int64_t canonical(Factor f, std::int64_t exponent) const;
  Syllable inverse(const Syllable& s) const;

  /// Builds the normal form: merges same-factor neighbours and drops identity syllables.
  FPElement normalize(std::span<const Syllable> syllables) const;
  FPElement syllable(Factor f, std::int64_t exponent) const;

  FPElement mul(const FPElement& u, const FPElement& v) const;
  FPElement inv(const FPElement& u) const;
  FPElement pow(const FPElement& u, std::int64_t k) const;

  /// Throws PreconditionError on the identity.
  CoreDecomposition core_decompose(const FPElement& u) const;
  /// u^0 computed on the core of u. Throws PreconditionError on the identity.
  FPElement cyclic_form(const FPElement& u) const;

  /// Element reassembled from a core decomposition.
  FPElement reassemble(const CoreDecomposition& d) const;

  /// Parses `a^k` / `b^k` atoms (bare `a`, `b` mean exponent 1) or `1`.
  FPElement parse(std::string_view text) const;

  friend bool operator==(const FreeProduct&, const FreeProduct&) = default;

 private:
  FactorModel a_;
  FactorModel b_;
};

/// F2 = <x1> * <x2>: x1^k -> (A,k), x2^k -> (B,k). Both require Z * Z.
FPElement from_f2(const FreeProduct& g, const Word& w);
Word to_f2(const FreeProduct& g, const FPElement& u);

}  // namespace verbalrat
