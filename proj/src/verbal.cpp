#include "verbalrat/verbal.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "verbalrat/error.hpp"

namespace verbalrat {

namespace {

const FreeProduct kZZ = FreeProduct::integers();

// Reduced words over x1, x2 of length <= cap, shortlex.
std::vector<Word> f2_ball(std::size_t cap) {
  std::vector<Word> out{Word{}};
  std::vector<Word> layer{Word{}};
  for (std::size_t n = 1; n <= cap; ++n) {
    std::vector<Word> next;
    for (const auto& w : layer)
      for (int code : {1, -1, 2, -2}) {
        const Letter l = Letter::from_code(code);
        if (!w.is_identity() && w.back().cancels(l)) continue;
        auto letters = w.letters();
        letters.push_back(l);
        next.emplace_back(letters);
      }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

std::size_t checked_tuples(std::size_t base, int vars, std::size_t limit) {
  std::size_t n = 1;
  for (int i = 0; i < vars; ++i) {
    if (n > limit / std::max<std::size_t>(base, 1)) throw CapExceeded("verbal: more than " + std::to_string(limit) + " substitution tuples");
    n *= base;
  }
  return n;
}

// Calls f on each tuple of `pool`^vars until it returns true.
template <class T, class F>
bool for_each_tuple(const std::vector<T>& pool, int vars, F&& f) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(vars), 0);
  std::vector<T> args(static_cast<std::size_t>(vars), pool.front());
  for (;;) {
    for (std::size_t i = 0; i < idx.size(); ++i) args[i] = pool[idx[i]];
    if (f(args)) return true;
    std::size_t i = 0;
    while (i < idx.size() && ++idx[i] == pool.size()) idx[i++] = 0;
    if (i == idx.size()) return false;
  }
}

std::vector<std::int64_t> exponent_sums(const Word& g, int rank) {
  std::vector<std::int64_t> s(static_cast<std::size_t>(std::max(rank, g.max_generator())), 0);
  for (const auto l : g.letters()) s[static_cast<std::size_t>(l.generator() - 1)] += l.sign();
  return s;
}

bool is_positive_fp(const FPElement& u) {
  return std::all_of(u.syllables().begin(), u.syllables().end(), [](const Syllable& s) { return s.exponent > 0; });
}

std::set<Syllable> cyclic_support(const FPElement& u) { return support(kZZ.cyclic_form(u)); }

void add_merge(std::set<Syllable>& k, const FPElement& x, const FPElement& y) {
  if (x.is_identity() || y.is_identity()) return;
  if (x.back().factor == y.front().factor) k.insert({x.back().factor, x.back().exponent + y.front().exponent});
}

}  // namespace

int VerbalQuery::variables() const { return rank > 0 ? rank : std::max(1, w.max_generator()); }

std::set<Word> enumerate_values(const VerbalQuery& q) {
  if (q.cap == 0) throw PreconditionError("enumerate_values: cap must be positive");
  const auto pool = f2_ball(q.cap);
  const int vars = q.variables();
  checked_tuples(pool.size(), vars, q.max_tuples);
  std::set<Word> out;
  for_each_tuple(pool, vars, [&](const std::vector<Word>& args) {
    out.insert(substitute(q.w, args));
    return false;
  });
  return out;
}

std::set<FPElement> enumerate_values(const VerbalQuery& q, const FreeProduct& g, std::int64_t exponent_bound) {
  if (q.cap == 0) throw PreconditionError("enumerate_values: cap must be positive");
  if (exponent_bound < 1) throw PreconditionError("enumerate_values: exponent bound must be positive");
  auto exps = [&](Factor f) {
    std::vector<std::int64_t> e;
    const auto m = g.model(f);
    if (m.is_infinite()) {
      for (std::int64_t x = -exponent_bound; x <= exponent_bound; ++x)
        if (x != 0) e.push_back(x);
    } else {
      for (std::int64_t x = 1; x < m.order; ++x) e.push_back(x);
    }
    return e;
  };
  std::vector<FPElement> pool{FPElement{}};
  std::vector<FPElement> layer{FPElement{}};
  for (std::size_t n = 1; n <= q.cap; ++n) {
    std::vector<FPElement> next;
    for (const auto& u : layer)
      for (Factor f : {Factor::A, Factor::B}) {
        if (!u.is_identity() && u.back().factor == f) continue;
        for (auto x : exps(f)) {
          auto s = u.syllables();
          s.push_back({f, x});
          next.push_back(g.normalize(s));
        }
      }
    pool.insert(pool.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  const int vars = q.variables();
  checked_tuples(pool.size(), vars, q.max_tuples);
  std::set<FPElement> out;
  for_each_tuple(pool, vars, [&](const std::vector<FPElement>& args) {
    FPElement acc;
    for (const auto l : q.w.letters()) {
      const auto& a = args[static_cast<std::size_t>(l.generator() - 1)];
      acc = g.mul(acc, l.sign() > 0 ? a : g.inv(a));
    }
    out.insert(acc);
    return false;
  });
  return out;
}

std::string_view to_string(Answer a) {
  switch (a) {
    case Answer::yes: return "yes";
    case Answer::no: return "no";
    case Answer::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<std::pair<int, std::int64_t>> power_word(const Word& w) {
  if (w.is_identity()) return std::nullopt;
  const int g = w.front().generator();
  for (const auto l : w.letters())
    if (l.generator() != g) return std::nullopt;
  return std::make_pair(g, static_cast<std::int64_t>(w.size()));
}

bool abelian_image_admissible(const Word& w, int rank, const Word& g) {
  const auto e = exponent_profile(w, std::max(rank, std::max(1, w.max_generator()))).e;
  for (auto s : exponent_sums(g, 2)) {
    if (e == 0 ? s != 0 : s % e != 0) return false;
  }
  return true;
}

ValueVerdict is_value(const VerbalQuery& q, const Word& g) {
  const int vars = q.variables();
  ValueVerdict v;
  if (g.is_identity()) {
    v.answer = Answer::yes;
    v.witness.assign(static_cast<std::size_t>(vars), Word{});
    v.method = "search";
    return v;
  }
  if (const auto pw = power_word(q.w)) {
    const auto root = root_extract(g, pw->second);
    if (!root) {
      v.answer = Answer::no;
      v.method = "root";
      return v;
    }
    v.answer = Answer::yes;
    v.witness.assign(static_cast<std::size_t>(vars), Word{});
    v.witness[static_cast<std::size_t>(pw->first - 1)] = q.w.front().sign() > 0 ? *root : inv(*root);
    v.method = "root";
    return v;
  }
  if (!abelian_image_admissible(q.w, vars, g)) {
    v.answer = Answer::no;
    v.method = "abelianization";
    return v;
  }
  const auto pool = f2_ball(q.cap);
  checked_tuples(pool.size(), vars, q.max_tuples);
  for_each_tuple(pool, vars, [&](const std::vector<Word>& args) {
    if (substitute(q.w, args) != g) return false;
    v.answer = Answer::yes;
    v.witness = args;
    v.method = "search";
    return true;
  });
  return v;
}

WLength w_length(const VerbalQuery& q, const Word& g) {
  WLength r;
  if (g.is_identity()) {
    r.length = 0;
    return r;
  }
  const int vars = q.variables();
  if (!abelian_image_admissible(q.w, vars, g)) {
    r.outside_subgroup = true;
    r.lower_bound = 1;
    return r;
  }
  const auto verdict = is_value(q, g);
  if (verdict.answer == Answer::yes) {
    r.length = r.lower_bound = 1;
    r.factors = {g};
    return r;
  }
  r.lower_bound = verdict.answer == Answer::no ? 2 : 1;
  std::set<Word> values;
  for (const auto& x : enumerate_values(q)) {
    if (x.is_identity()) continue;
    values.insert(x);
    values.insert(inv(x));
  }
  // element -> factor list reaching it, one BFS layer at a time
  std::map<Word, std::vector<Word>> seen;
  std::map<Word, std::vector<Word>> frontier;
  for (const auto& x : values) frontier.emplace(x, std::vector<Word>{x});
  seen = frontier;
  constexpr std::size_t kMaxLayer = 400'000;
  for (std::size_t k = 2; k <= q.product_cap; ++k) {
    std::map<Word, std::vector<Word>> next;
    for (const auto& [x, fs] : frontier) {
      for (const auto& y : values) {
        auto z = x * y;
        if (seen.count(z)) continue;
        auto f = fs;
        f.push_back(y);
        if (z == g) {
          r.length = k;
          r.factors = std::move(f);
          return r;
        }
        next.emplace(std::move(z), std::move(f));
      }
      if (next.size() > kMaxLayer) return r;
    }
    for (const auto& [z, f] : next) seen.emplace(z, f);
    frontier = std::move(next);
  }
  return r;
}

AbelianizedVerbal abelianized_verbal(const Word& w, int rank) {
  AbelianizedVerbal a;
  a.e = exponent_profile(w, rank).e;
  if (a.e == 0) return a;
  std::uint64_t idx = 1;
  for (int i = 0; i < rank; ++i) {
    if (idx > UINT64_MAX / static_cast<std::uint64_t>(a.e)) throw CapExceeded("abelianized_verbal: index overflows 64 bits");
    idx *= static_cast<std::uint64_t>(a.e);
  }
  a.index = idx;
  return a;
}

std::string_view to_string(Dichotomy d) {
  switch (d) {
    case Dichotomy::case_1: return "case-1";
    case Dichotomy::case_2: return "case-2";
    case Dichotomy::refuted: return "refuted";
  }
  return "case-1";
}

DichotomyResult support_dichotomy_check(const std::vector<FPElement>& e, const FPElement& p, const FPElement& q, const Word& w,
                                        std::size_t budget) {
  for (const auto* x : {&p, &q})
    if (!is_positive_fp(*x)) throw PreconditionError("support_dichotomy_check: p and q must be positive");
  std::vector<FPElement> gens;
  for (const auto& u : e) {
    if (!is_positive_fp(u)) throw PreconditionError("support_dichotomy_check: E must be positive, got " + u.str());
    if (!u.is_identity()) gens.push_back(u);
  }
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());

  DichotomyResult r;
  auto base_support = [&] {
    std::set<Syllable> k = support(p);
    for (const auto& s : support(q)) k.insert(s);
    add_merge(k, p, q);
    return k;
  };

  if (!gens.empty() && std::all_of(gens.begin(), gens.end(), [&](const FPElement& u) {
        return u.syllable_length() == 1 && u.front().factor == gens.front().front().factor;
      })) {
    r.kind = Dichotomy::case_2;
    r.axis = gens.front().front().factor;
    r.k = base_support();
    return r;
  }

  const bool long_cores = std::all_of(gens.begin(), gens.end(), [](const FPElement& u) { return kZZ.cyclic_form(u).syllable_length() >= 2; });
  const bool same_support = std::all_of(gens.begin(), gens.end(), [&](const FPElement& u) { return cyclic_support(u) == cyclic_support(gens.front()); });
  if (long_cores && same_support) {
    r.kind = Dichotomy::case_1;
    r.k = base_support();
    for (const auto& u : gens) {
      for (const auto& s : support(u)) r.k.insert(s);
      for (const auto& s : cyclic_support(u)) {
        r.k.insert(s);
        for (std::int64_t i = 1; i < s.exponent; ++i) r.k.insert({s.factor, i});
      }
      add_merge(r.k, p, u);
      add_merge(r.k, u, q);
      for (const auto& v : gens) add_merge(r.k, u, v);
    }
    // Re-check the support claim on p E^j q for j <= budget.
    std::vector<FPElement> layer{p};
    constexpr std::size_t kMaxLayer = 20'000;
    for (std::size_t j = 0; j <= budget && !layer.empty(); ++j) {
      for (const auto& x : layer)
        for (const auto& s : support(kZZ.mul(x, q)))
          if (!r.k.count(s)) throw std::logic_error("support_dichotomy_check: syllable " + to_string(s) + " escapes K");
      r.budget_checked = j;
      if (j == budget) break;
      std::vector<FPElement> next;
      for (const auto& x : layer)
        for (const auto& u : gens) {
          if (next.size() >= kMaxLayer) break;
          next.push_back(kZZ.mul(x, u));
        }
      layer = std::move(next);
    }
    return r;
  }

  // Mixed supports: find u, v in E* with |v^0| >= 2 and supp(u^0) not inside supp(v^0).
  std::vector<FPElement> cands = gens;
  for (const auto& a : gens)
    for (const auto& b : gens) cands.push_back(kZZ.mul(a, b));
  for (const auto& a : gens)
    for (const auto& b : gens)
      for (const auto& c : gens) cands.push_back(kZZ.mul(kZZ.mul(a, b), c));
  std::optional<std::pair<FPElement, FPElement>> pick;
  for (const auto& v : cands) {
    if (kZZ.cyclic_form(v).syllable_length() < 2) continue;
    const auto sv = cyclic_support(v);
    for (const auto& u : cands) {
      const auto su = cyclic_support(u);
      if (std::any_of(su.begin(), su.end(), [&](const Syllable& s) { return !sv.count(s); })) {
        pick.emplace(u, v);
        break;
      }
    }
    if (pick) break;
  }
  if (!pick) throw CapExceeded("support_dichotomy_check: no refuting pair among products of at most three generators");
  r.kind = Dichotomy::refuted;
  r.u = pick->first;
  r.v = pick->second;
  const auto ew = exponent_profile(w, std::max(1, w.max_generator())).e;
  r.family = unbounded_family(p, r.u, r.v, q, 12, std::max<std::int64_t>(ew, 2));
  const auto pw = power_word(w);
  r.certificate = "none";
  for (const auto& m : r.family.members) {
    const auto x = to_f2(kZZ, m.element);
    if (pw && !root_extract(x, pw->second)) {
      r.witness = m.element;
      r.certificate = "root";
      break;
    }
    if (!abelian_image_admissible(w, std::max(1, w.max_generator()), x)) {
      r.witness = m.element;
      r.certificate = "abelianization";
      break;
    }
  }
  if (!r.witness) {
    const auto best = std::max_element(r.family.members.begin(), r.family.members.end(),
                                       [](const FamilyMember& a, const FamilyMember& b) { return a.gamma < b.gamma; });
    r.witness = best->element;
  }
  return r;
}

}  // namespace verbalrat
