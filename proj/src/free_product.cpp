#include "verbalrat/free_product.hpp"

#include <algorithm>
#include <cctype>

#include "verbalrat/error.hpp"

namespace verbalrat {

std::string_view to_string(Factor f) { return f == Factor::A ? "a" : "b"; }

FactorModel FactorModel::finite(std::int64_t m) {
  if (m < 2) throw PreconditionError("finite cyclic factor needs order >= 2");
  return {m};
}

std::string to_string(const Syllable& s) {
  std::string out(to_string(s.factor));
  if (s.exponent != 1) out += '^' + std::to_string(s.exponent);
  return out;
}

std::string FPElement::str() const {
  if (syllables_.empty()) return "1";
  std::string s;
  for (const auto& syl : syllables_) {
    if (!s.empty()) s += ' ';
    s += to_string(syl);
  }
  return s;
}

std::set<Syllable> support(const FPElement& u) { return {u.syllables().begin(), u.syllables().end()}; }

std::int64_t FreeProduct::canonical(Factor f, std::int64_t exponent) const {
  const auto m = model(f).order;
  if (m == 0) return exponent;
  auto r = exponent % m;
  return r < 0 ? r + m : r;
}

Syllable FreeProduct::inverse(const Syllable& s) const { return {s.factor, canonical(s.factor, -s.exponent)}; }

FPElement FreeProduct::normalize(std::span<const Syllable> syllables) const {
  FPElement out;
  auto& st = out.syllables_;
  st.reserve(syllables.size());
  for (Syllable s : syllables) {
    s.exponent = canonical(s.factor, s.exponent);
    if (s.exponent == 0) continue;
    if (!st.empty() && st.back().factor == s.factor) {
      const auto merged = canonical(s.factor, st.back().exponent + s.exponent);
      if (merged == 0) {
        st.pop_back();
      } else {
        st.back().exponent = merged;
      }
    } else {
      st.push_back(s);
    }
  }
  return out;
}

FPElement FreeProduct::syllable(Factor f, std::int64_t exponent) const {
  const Syllable s{f, exponent};
  return normalize(std::span<const Syllable>(&s, 1));
}

FPElement FreeProduct::mul(const FPElement& u, const FPElement& v) const {
  std::vector<Syllable> all(u.syllables());
  all.insert(all.end(), v.syllables().begin(), v.syllables().end());
  return normalize(all);
}

FPElement FreeProduct::inv(const FPElement& u) const {
  std::vector<Syllable> out;
  out.reserve(u.syllable_length());
  for (auto it = u.syllables().rbegin(); it != u.syllables().rend(); ++it) out.push_back(inverse(*it));
  return normalize(out);
}

FPElement FreeProduct::pow(const FPElement& u, std::int64_t k) const {
  FPElement base = k < 0 ? inv(u) : u;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  FPElement result;
  while (n > 0) {
    if (n & 1u) result = mul(result, base);
    n >>= 1u;
    if (n > 0) base = mul(base, base);
  }
  return result;
}

CoreDecomposition FreeProduct::core_decompose(const FPElement& u) const {
  if (u.is_identity()) throw PreconditionError("core of the identity is undefined");
  const auto& s = u.syllables();
  std::size_t lo = 0, hi = s.size();  // current core is s[lo, hi)
  std::vector<Syllable> peeled;        // r_t, r_{t-1}, ... in peeling order
  while (hi - lo > 1 && s[lo].factor == s[hi - 1].factor &&
         canonical(s[lo].factor, s[lo].exponent + s[hi - 1].exponent) == 0) {
    peeled.push_back(s[hi - 1]);
    ++lo;
    --hi;
  }
  CoreDecomposition d;
  d.conjugator_syllables.assign(peeled.rbegin(), peeled.rend());
  d.core.syllables_.assign(s.begin() + static_cast<std::ptrdiff_t>(lo), s.begin() + static_cast<std::ptrdiff_t>(hi));
  return d;
}

FPElement FreeProduct::reassemble(const CoreDecomposition& d) const {
  const FPElement c = normalize(d.conjugator_syllables);
  return mul(inv(c), mul(d.core, c));
}

FPElement FreeProduct::cyclic_form(const FPElement& u) const {
  const FPElement core = core_decompose(u).core;
  const auto& s = core.syllables();
  if (s.size() == 1 || s.front().factor != s.back().factor) return core;
  std::vector<Syllable> out(s.begin() + 1, s.end() - 1);
  out.push_back({s.back().factor, s.back().exponent + s.front().exponent});
  return normalize(out);
}

FPElement FreeProduct::parse(std::string_view text) const {
  std::vector<Syllable> syl;
  std::size_t i = 0;
  bool saw_atom = false;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    const std::size_t start = i;
    const char c = text[i];
    if (c == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
    } else if (c == 'a' || c == 'b') {
      ++i;
      std::int64_t exp = 1;
      if (i < text.size() && text[i] == '^') {
        ++i;
        const std::size_t num = i;
        bool neg = false;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
        if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) throw ParseError("expected integer", num);
        exp = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          exp = exp * 10 + (text[i++] - '0');
          if (exp > 1'000'000'000) throw ParseError("integer too large", num);
        }
        if (neg) exp = -exp;
      }
      syl.push_back({c == 'a' ? Factor::A : Factor::B, exp});
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
    saw_atom = true;
    skip_ws();
  }
  if (!saw_atom) throw ParseError("empty element (use 1 for the identity)", 0);
  return normalize(syl);
}

FPElement from_f2(const FreeProduct& g, const Word& w) {
  if (!g.both_infinite()) throw PreconditionError("F2 identification needs both factors infinite cyclic");
  std::vector<Syllable> syl;
  for (const Run& r : runs(w)) {
    if (r.generator > 2) throw PreconditionError("word is not in F2: uses x" + std::to_string(r.generator));
    syl.push_back({r.generator == 1 ? Factor::A : Factor::B, r.exponent});
  }
  return g.normalize(syl);
}

Word to_f2(const FreeProduct& g, const FPElement& u) {
  if (!g.both_infinite()) throw PreconditionError("F2 identification needs both factors infinite cyclic");
  std::vector<Run> rs;
  for (const auto& s : u.syllables()) rs.push_back({s.factor == Factor::A ? 1 : 2, s.exponent});
  return from_runs(rs);
}

}  // namespace verbalrat
