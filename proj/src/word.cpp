#include "verbalrat/word.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

#include "verbalrat/error.hpp"

namespace verbalrat {

Word reduce(std::span<const Letter> letters) { return Word(letters); }

Word::Word(std::span<const Letter> letters) {
  letters_.reserve(letters.size());
  for (Letter l : letters) {
    if (l.generator() < 1) throw PreconditionError("generator index must be >= 1");
    if (!letters_.empty() && letters_.back().cancels(l)) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word::Word(std::initializer_list<Letter> letters) : Word(std::span<const Letter>(letters.begin(), letters.size())) {}

Word Word::generator(int index, int exponent) {
  std::vector<Letter> ls(static_cast<std::size_t>(std::abs(exponent)), Letter(index, exponent < 0 ? -1 : 1));
  return Word(ls);
}

int Word::max_generator() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l.generator());
  return m;
}

bool Word::is_positive() const {
  return std::all_of(letters_.begin(), letters_.end(), [](Letter l) { return l.sign() > 0; });
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  Word out;
  out.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                      letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return out;
}

std::string Word::str() const {
  if (letters_.empty()) return "1";
  std::string s;
  for (const Run& r : runs(*this)) {
    if (!s.empty()) s += ' ';
    s += 'x' + std::to_string(r.generator);
    if (r.exponent != 1) s += '^' + std::to_string(r.exponent);
  }
  return s;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
                                                b.letters_.end());
}

std::size_t WordHash::operator()(const Word& w) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (Letter l : w.letters()) {
    h ^= static_cast<std::size_t>(static_cast<unsigned>(l.code()));
    h *= 1099511628211ull;
  }
  return h;
}

Word mul(const Word& u, const Word& v) {
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[a.size() - 1 - k].cancels(b[k])) ++k;
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * k);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(k));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(k), b.end());
  return Word(out);
}

Word inv(const Word& u) {
  std::vector<Letter> out;
  out.reserve(u.size());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) out.push_back(it->inverse());
  return Word(out);
}

Word pow(const Word& u, std::int64_t k) {
  Word base = k < 0 ? inv(u) : u;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Word result;
  // Square-and-multiply; every product reduces.
  while (n > 0) {
    if (n & 1u) result = mul(result, base);
    n >>= 1u;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

bool is_cyclically_reduced(const Word& u) { return u.size() < 2 || !u.front().cancels(u.back()); }

CyclicReduction cyclic_reduce(const Word& u) {
  const auto& ls = u.letters();
  std::size_t k = 0;
  while (2 * k + 1 < ls.size() && ls[k].cancels(ls[ls.size() - 1 - k])) ++k;
  return {u.slice(ls.size() - k, k), u.slice(k, ls.size() - 2 * k)};
}

namespace {

struct ExtGcd {
  std::int64_t g, x, y;
};

ExtGcd ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  return {old_r, old_s, old_t};
}

}  // namespace

std::vector<std::int64_t> bezout_coefficients(std::span<const std::int64_t> values, std::int64_t* gcd_out) {
  std::vector<std::int64_t> r(values.size(), 0);
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::int64_t t = values[i];
    if (t == 0) continue;
    const std::int64_t sign = t < 0 ? -1 : 1;
    const std::int64_t b = t * sign;
    if (acc == 0) {
      acc = b;
      r[i] = sign;
      continue;
    }
    auto [g, x, y] = ext_gcd(acc, b);
    // All solutions: (x + k*b/g, y - k*acc/g). Pick the one with the smallest |y|, then |x|.
    const std::int64_t step_x = b / g, step_y = acc / g;
    std::int64_t best_x = x, best_y = y;
    const std::int64_t k0 = y / step_y;
    for (std::int64_t k = k0 - 1; k <= k0 + 1; ++k) {
      std::int64_t cx = x + k * step_x, cy = y - k * step_y;
      if (std::llabs(cy) < std::llabs(best_y) || (std::llabs(cy) == std::llabs(best_y) && std::llabs(cx) < std::llabs(best_x))) {
        best_x = cx;
        best_y = cy;
      }
    }
    for (std::size_t j = 0; j < i; ++j) r[j] *= best_x;
    r[i] = best_y * sign;
    acc = g;
  }
  if (gcd_out) *gcd_out = acc;
  return r;
}

ExponentProfile exponent_profile(const Word& w, int rank) {
  if (rank < 0) throw PreconditionError("rank must be non-negative");
  ExponentProfile p;
  p.rank = rank;
  p.exponents.assign(static_cast<std::size_t>(rank), 0);
  for (Letter l : w.letters()) {
    if (l.generator() > rank) {
      throw PreconditionError("generator x" + std::to_string(l.generator()) + " exceeds rank " + std::to_string(rank));
    }
    p.exponents[static_cast<std::size_t>(l.generator() - 1)] += l.sign();
  }
  std::int64_t g = 0;
  auto coeffs = bezout_coefficients(p.exponents, &g);
  p.e = g;
  if (g > 0) p.bezout = std::move(coeffs);
  return p;
}

std::string_view to_string(WordClass c) {
  switch (c) {
    case WordClass::trivial: return "trivial";
    case WordClass::commutator: return "commutator";
    case WordClass::improper: return "improper";
    case WordClass::proper: return "proper";
  }
  return "?";
}

WordClass classify_word(const Word& w, int rank) {
  const auto p = exponent_profile(w, rank);
  if (w.is_identity()) return WordClass::trivial;
  if (p.e == 0) return WordClass::commutator;
  if (p.e == 1) return WordClass::improper;
  return WordClass::proper;
}

Word substitute(const Word& w, std::span<const Word> images) {
  Word out;
  std::vector<Word> inverses(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) inverses[i] = inv(images[i]);
  for (Letter l : w.letters()) {
    const auto idx = static_cast<std::size_t>(l.generator() - 1);
    if (idx >= images.size()) {
      throw PreconditionError("no image given for generator x" + std::to_string(l.generator()));
    }
    out = mul(out, l.sign() > 0 ? images[idx] : inverses[idx]);
  }
  return out;
}

Word bezout_substitution(const Word& w, int rank, const Word& g) {
  const auto p = exponent_profile(w, rank);
  if (p.e == 0) throw PreconditionError("bezout substitution needs e(w) >= 1; " + w.str() + " is a commutator word");
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (std::int64_t r : *p.bezout) images.push_back(pow(g, r));
  Word result = substitute(w, images);
  if (result != pow(g, p.e)) throw std::logic_error("bezout identity failed for " + w.str());
  return result;
}

std::optional<Word> root_extract(const Word& u, std::int64_t e) {
  if (e < 1) throw PreconditionError("root exponent must be >= 1");
  auto [conj, core] = cyclic_reduce(u);
  if (core.is_identity()) return Word{};
  const auto n = static_cast<std::int64_t>(core.size());
  if (n % e != 0) return std::nullopt;
  Word prefix = core.slice(0, static_cast<std::size_t>(n / e));
  if (pow(prefix, e) != core) return std::nullopt;
  return mul(inv(conj), mul(prefix, conj));
}

std::vector<Run> runs(const Word& w) {
  std::vector<Run> out;
  for (Letter l : w.letters()) {
    if (!out.empty() && out.back().generator == l.generator()) {
      out.back().exponent += l.sign();
    } else {
      out.push_back({l.generator(), l.sign()});
    }
  }
  return out;
}

Word from_runs(std::span<const Run> rs) {
  std::vector<Letter> ls;
  for (const Run& r : rs) {
    for (std::int64_t i = 0; i < std::llabs(r.exponent); ++i) ls.emplace_back(r.generator, r.exponent < 0 ? -1 : 1);
  }
  return Word(ls);
}

Word parse_word(std::string_view text) {
  std::vector<Letter> letters;
  std::size_t i = 0;
  bool saw_atom = false;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&](bool allow_sign) -> std::int64_t {
    const std::size_t start = i;
    bool neg = false;
    if (allow_sign && i < text.size() && (text[i] == '-' || text[i] == '+')) {
      neg = text[i] == '-';
      ++i;
    }
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected integer", start);
    std::int64_t v = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      v = v * 10 + (text[i] - '0');
      if (v > 1'000'000) throw ParseError("integer too large", start);
      ++i;
    }
    return neg ? -v : v;
  };
  skip_ws();
  while (i < text.size()) {
    const std::size_t start = i;
    if (text[i] == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;  // explicit identity atom
    } else if (text[i] == 'x') {
      ++i;
      const auto gen = read_int(false);
      if (gen < 1) throw ParseError("generator index must be >= 1", start);
      std::int64_t exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        exp = read_int(true);
      }
      for (std::int64_t k = 0; k < std::llabs(exp); ++k) letters.emplace_back(static_cast<int>(gen), exp < 0 ? -1 : 1);
    } else {
      throw ParseError(std::string("unexpected character '") + text[i] + "'", start);
    }
    saw_atom = true;
    skip_ws();
  }
  if (!saw_atom) throw ParseError("empty word (use 1 for the identity)", 0);
  return reduce(letters);
}

}  // namespace verbalrat
