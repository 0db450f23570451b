#pragma once

// Gap functions of free-product elements and the empirical boundedness scan.

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "verbalrat/free_product.hpp"
#include "verbalrat/word.hpp"

namespace verbalrat {

/// delta_{b,k} and delta_{b^-1,k}: numbers of b-gaps and b^-1-gaps of length 2k-1.
struct GapProfile {
  Syllable b;
  Syllable b_inverse;
  /// k -> (delta_{b,k}, delta_{b^-1,k}); only keys with a nonzero entry.
  std::map<std::int64_t, std::pair<std::uint64_t, std::uint64_t>> table;

  /// gamma_{b,e}: number of k with delta_{b,k} != delta_{b^-1,k} mod e.
  std::uint64_t gamma(std::int64_t e) const;
  /// Largest k in the table, 0 when empty.
  std::int64_t max_k() const;
};

/// Throws PreconditionError if b is the identity.
GapProfile gap_profile(const FreeProduct& g, const FPElement& u, const Syllable& b);

/// Throws PreconditionError unless e >= 2 and b != b^-1.
std::uint64_t gamma(const FreeProduct& g, const FPElement& u, const Syllable& b, std::int64_t e);

struct ScanConfig {
  std::uint64_t seed = 1;
  std::size_t samples = 1000;
  /// Syllable length bound of each substituted element.
  std::size_t max_arg_syllables = 10;
  /// Exponents are drawn from [-bound, bound] \ {0}.
  std::int64_t exponent_bound = 3;
  /// Values longer than this are redrawn (0 = no bound).
  std::size_t max_value_syllables = 0;
};

struct ScanSample {
  std::size_t id = 0;
  std::size_t syllable_length = 0;
  std::uint64_t gamma = 0;
  std::int64_t max_k = 0;
};

struct ScanReport {
  std::int64_t e = 0;
  std::uint64_t max_gamma = 0;
  std::map<std::uint64_t, std::uint64_t> histogram;
  std::vector<ScanSample> samples;
};

/// Random values of w over Z*Z (x_i -> x1, x2 syllables) profiled against b with e = e(w).
/// Throws PreconditionError when e(w) < 2.
ScanReport criterion_scan(const Word& w, int rank, const Syllable& b, const ScanConfig& config);

/// Random element of Z*Z: syllable count uniform in [0, max_syllables], alternating factors.
FPElement random_element(std::mt19937_64& rng, std::size_t max_syllables, std::int64_t exponent_bound);

struct FamilyMember {
  std::int64_t n = 0;
  FPElement element;
  std::uint64_t gamma = 0;
};

struct Family {
  Syllable b;
  std::vector<FamilyMember> members;
};

/// p uu v^1 uu v^2 uu ... v^n uu q for n = 1..n_max, profiled with gamma_{b,e} where b is the least
/// syllable of supp(u^0) \ supp(v^0). Inputs must be positive and v^0 must have at least two syllables.
Family unbounded_family(const FPElement& p, const FPElement& u, const FPElement& v, const FPElement& q, std::int64_t n_max,
                        std::int64_t e = 2);

/// The plain family p uu v^n uu q with the same choice of b.
Family power_family(const FPElement& p, const FPElement& u, const FPElement& v, const FPElement& q, std::int64_t n_max,
                    std::int64_t e = 2);

/// Maximum of gamma_{b,e}(h^e) over all h in Z*Z with exponents in [-bound, bound] \ {0} and
/// syllable_length(h^e) <= max_syllables.
std::uint64_t exhaustive_power_gamma_max(std::int64_t e, const Syllable& b, std::size_t max_syllables, std::int64_t exponent_bound);

}  // namespace verbalrat
