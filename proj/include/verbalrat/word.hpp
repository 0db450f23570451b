#pragma once

// Reduced words in a free group F(x1, x2, ...).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace verbalrat {

/// A generator x_i or its inverse. Stored as a signed index: +i is x_i, -i is x_i^-1.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int generator, int sign) : code_(sign < 0 ? -generator : generator) {}

  static constexpr Letter from_code(int code) {
    Letter l;
    l.code_ = code;
    return l;
  }

  constexpr int generator() const { return code_ < 0 ? -code_ : code_; }
  constexpr int sign() const { return code_ < 0 ? -1 : 1; }
  constexpr int code() const { return code_; }
  constexpr Letter inverse() const { return from_code(-code_); }
  constexpr bool cancels(Letter other) const { return code_ == -other.code_; }

  /// Index into an alphabet of 2*rank letters: x_i -> 2(i-1), x_i^-1 -> 2(i-1)+1.
  constexpr int alphabet_index() const { return 2 * (generator() - 1) + (code_ < 0 ? 1 : 0); }
  static constexpr Letter from_alphabet_index(int idx) { return Letter(idx / 2 + 1, idx % 2 ? -1 : 1); }

  friend constexpr bool operator==(Letter, Letter) = default;
  friend constexpr auto operator<=>(Letter a, Letter b) {
    // x1 < x1^-1 < x2 < x2^-1 < ...
    return a.alphabet_index() <=> b.alphabet_index();
  }

 private:
  int code_ = 1;
};

/// An element of a free group, always kept freely reduced. The empty word is the identity.
class Word {
 public:
  Word() = default;
  /// Reduces `letters`.
  explicit Word(std::span<const Letter> letters);
  Word(std::initializer_list<Letter> letters);

  static Word generator(int index, int exponent = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  /// Largest generator index occurring in the word (0 for the identity).
  int max_generator() const;
  /// True if no inverse letter occurs.
  bool is_positive() const;

  /// Subword [pos, pos+len); the slice of a reduced word is reduced.
  Word slice(std::size_t pos, std::size_t len) const;

  /// Text form, e.g. "x1^2 x2^-1"; identity prints as "1".
  std::string str() const;

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

struct WordHash {
  std::size_t operator()(const Word& w) const noexcept;
};

/// Freely reduces a letter sequence with a single stack pass.
Word reduce(std::span<const Letter> letters);

Word mul(const Word& u, const Word& v);
Word inv(const Word& u);
Word pow(const Word& u, std::int64_t k);
inline Word operator*(const Word& u, const Word& v) { return mul(u, v); }

/// u = conjugator^-1 * core * conjugator with core cyclically reduced.
struct CyclicReduction {
  Word conjugator;
  Word core;
};
CyclicReduction cyclic_reduce(const Word& u);

/// True if `u` is cyclically reduced (first and last letters are not mutually inverse).
bool is_cyclically_reduced(const Word& u);

struct ExponentProfile {
  int rank = 0;
  std::vector<std::int64_t> exponents;
  /// gcd of |t_i|; 0 iff every exponent sum vanishes.
  std::int64_t e = 0;
  /// sum r_i t_i = e; present iff e > 0.
  std::optional<std::vector<std::int64_t>> bezout;
};

/// Signed exponent sums of each generator. Throws PreconditionError if a generator exceeds `rank`.
ExponentProfile exponent_profile(const Word& w, int rank);

enum class WordClass { trivial, commutator, improper, proper };
std::string_view to_string(WordClass c);

WordClass classify_word(const Word& w, int rank);

/// Extended gcd folded left over `values`; coefficients satisfy sum r_i v_i = gcd(|v_i|).
std::vector<std::int64_t> bezout_coefficients(std::span<const std::int64_t> values, std::int64_t* gcd_out = nullptr);

/// Replaces x_i by images[i-1] and reduces. Generators beyond images.size() throw PreconditionError.
Word substitute(const Word& w, std::span<const Word> images);

/// w(g^{r_1}, ..., g^{r_n}); the result is checked against g^{e(w)} and a std::logic_error is thrown on mismatch.
Word bezout_substitution(const Word& w, int rank, const Word& g);

/// The unique h with h^e = u, if any.
std::optional<Word> root_extract(const Word& u, std::int64_t e);

/// Exponent of the letter run structure: for F2 words, (generator, exponent) syllables.
struct Run {
  int generator;
  std::int64_t exponent;
};
std::vector<Run> runs(const Word& w);
Word from_runs(std::span<const Run> rs);

/// Parses the word grammar: whitespace-separated `x<k>` atoms with optional `^<int>`, or `1`.
Word parse_word(std::string_view text);

}  // namespace verbalrat
