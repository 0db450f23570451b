#include "verbalrat/refuter.hpp"

#include <algorithm>
#include <map>

#include "verbalrat/error.hpp"

namespace verbalrat {

namespace {

const FreeProduct kZZ = FreeProduct::integers();

Syllable syllable_of(const Run& r) { return {r.generator == 1 ? Factor::A : Factor::B, r.exponent}; }

int word_rank(const Word& w) { return std::max(1, w.max_generator()); }

// Positive members of a starred factor, without the identity.
std::vector<Word> sample_factor(const RatExpr& e, const RefuteOptions& opts) {
  std::vector<Word> out;
  if (e.denotes_finite_set()) {
    out = e.finite_elements();
  } else {
    out = acceptor_of(e, 2).members_up_to(opts.sample_len, opts.sample_limit + 1);
  }
  std::erase_if(out, [](const Word& x) { return x.is_identity(); });
  if (out.size() > opts.sample_limit) out.resize(opts.sample_limit);
  return out;
}

Word product(const std::vector<Word>& ws, std::size_t from, std::size_t to) {
  Word x;
  for (std::size_t i = from; i < to; ++i) x = x * ws[i];
  return x;
}

// Exact non-membership in w[F2]; returns the method or empty.
std::string non_value_certificate(const Word& w, const Word& x) {
  if (const auto pw = power_word(w); pw && !root_extract(x, pw->second)) return "root";
  if (!abelian_image_admissible(w, word_rank(w), x)) return "abelianization";
  return "";
}

}  // namespace

DecompositionScheme extract_scheme(const StandardForm& sf, const std::vector<BranchReport>& branches) {
  DecompositionScheme s;
  s.n = 1;
  for (const auto& b : branches) {
    if (b.dichotomy.kind == Dichotomy::refuted) throw PreconditionError("extract_scheme: branch " + b.id() + " is refuted");
    if (b.dichotomy.kind == Dichotomy::case_1) s.k.insert(b.dichotomy.k.begin(), b.dichotomy.k.end());
  }
  for (const auto& m : sf.summands) {
    for (const auto& a : m.coefficients)
      for (const auto& r : runs(a)) s.k.insert(syllable_of(r));
    s.n = std::max(s.n, m.starred.size() + m.coefficients.size());
  }
  return s;
}

bool check_transcript(const BezoutTranscript& t) {
  const auto prof = exponent_profile(t.w, t.rank);
  if (prof.exponents != t.exponents || prof.e != t.e || !prof.bezout || *prof.bezout != t.bezout) return false;
  if (t.images.size() != static_cast<std::size_t>(t.rank)) return false;
  for (std::size_t i = 0; i < t.images.size(); ++i)
    if (t.images[i] != pow(t.g, t.bezout[i])) return false;
  return substitute(t.w, t.images) == t.value && pow(t.g, t.e) == t.value;
}

WitnessWord witness_word(const Word& w, const DecompositionScheme& scheme) {
  const int rank = word_rank(w);
  const auto prof = exponent_profile(w, rank);
  if (classify_word(w, rank) != WordClass::proper || prof.e < 2)
    throw PreconditionError("witness_word: w must be proper with e(w) >= 2, got " + std::string(to_string(classify_word(w, rank))));
  WitnessWord ww;
  std::int64_t max_x1 = 0;
  for (const auto& s : scheme.k)
    if (s.factor == Factor::A) max_x1 = std::max(max_x1, s.exponent);
  ww.t = max_x1 + 1;
  ww.l = static_cast<std::int64_t>(scheme.n) + 1;
  const Word g = pow(Word::generator(1, static_cast<int>(ww.t)) * Word::generator(2), ww.l);
  auto& tr = ww.transcript;
  tr.w = w;
  tr.rank = rank;
  tr.exponents = prof.exponents;
  tr.e = prof.e;
  tr.bezout = *prof.bezout;
  tr.g = g;
  for (auto r : tr.bezout) tr.images.push_back(pow(g, r));
  tr.value = bezout_substitution(w, rank, g);
  ww.u = tr.value;
  if (ww.u != pow(g, prof.e)) throw std::logic_error("witness_word: Bezout value differs from g^e");
  return ww;
}

DecompositionTrace decomposition(const Word& u, const DecompositionScheme& scheme) {
  if (!u.is_positive()) throw PreconditionError("decomposable: u must be positive, got " + u.str());
  const std::size_t len = u.size();
  // s_ok[i][j]: u[i, j) has every syllable in K.
  std::vector<std::vector<char>> s_ok(len + 1, std::vector<char>(len + 1, 0));
  for (std::size_t i = 0; i <= len; ++i) {
    s_ok[i][i] = 1;
    bool closed_ok = true;
    std::int64_t run = 0;
    for (std::size_t j = i + 1; j <= len; ++j) {
      const auto g = u[j - 1].generator();
      if (j > i + 1 && u[j - 2].generator() != g) {
        closed_ok = closed_ok && scheme.k.count({u[j - 2].generator() == 1 ? Factor::A : Factor::B, run});
        run = 0;
      }
      ++run;
      if (!closed_ok) break;
      s_ok[i][j] = scheme.k.count({g == 1 ? Factor::A : Factor::B, run}) ? 1 : 0;
    }
  }
  // t-block from j ends at any m with u[j, m) single-axis.
  std::vector<std::size_t> t_end(len + 1);
  for (std::size_t j = 0; j <= len; ++j) {
    std::size_t m = j;
    while (m < len && u[m].generator() == u[j].generator()) ++m;
    t_end[j] = m;
  }

  DecompositionTrace tr;
  tr.reachable.push_back({0});
  // parent[k][m] = (i, j): pair k ends at m with s = [i, j), t = [j, m)
  std::vector<std::map<std::size_t, std::pair<std::size_t, std::size_t>>> parent(1);
  std::vector<char> seen(len + 1, 0);
  seen[0] = 1;
  auto finish = [&](std::size_t k) {
    tr.decomposable = true;
    std::size_t m = len;
    std::vector<Word> rev;
    for (std::size_t r = k; r > 0; --r) {
      const auto [i, j] = parent[r].at(m);
      rev.push_back(u.slice(j, m - j));
      rev.push_back(u.slice(i, j - i));
      m = i;
    }
    tr.blocks.assign(rev.rbegin(), rev.rend());
  };
  if (len == 0) {
    finish(0);
    return tr;
  }
  for (std::size_t k = 1; k <= scheme.n; ++k) {
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> par;
    for (auto i : tr.reachable.back())
      for (std::size_t j = i; j <= len; ++j) {
        if (!s_ok[i][j]) continue;
        for (std::size_t m = j; m <= t_end[j]; ++m) par.emplace(m, std::make_pair(i, j));
      }
    std::vector<std::size_t> layer;
    for (const auto& [m, ij] : par) layer.push_back(m);
    parent.push_back(std::move(par));
    tr.reachable.push_back(layer);
    if (parent.back().count(len)) {
      finish(k);
      return tr;
    }
  }
  return tr;
}

bool decomposable(const Word& u, const DecompositionScheme& scheme) { return decomposition(u, scheme).decomposable; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::missing_value: return "missing-value";
    case Outcome::foreign_element: return "foreign-element";
    case Outcome::inconsistent_branch: return "inconsistent-branch";
    case Outcome::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

RefutationReport refute(const RatExpr& expr, const Word& w, const RefuteOptions& opts) {
  RefutationReport rep;
  rep.expr = expr;
  rep.w = w;
  rep.rank = word_rank(w);
  const auto cls = classify_word(w, rep.rank);
  rep.e = exponent_profile(w, rep.rank).e;
  if (cls == WordClass::commutator)
    throw PreconditionError("refute: commutator words (e = 0) are not handled; use `verbal member` with the abelianization check on specific elements");
  if (cls != WordClass::proper || rep.e < 2) throw PreconditionError("refute: w must be proper with e(w) >= 2");
  if (expr.max_generator() > 2) throw PreconditionError("refute: expression must be over x1, x2");

  const auto lpos = intersect_positive(expr).minimized();
  rep.positive_fingerprint = lpos.fingerprint();
  rep.positive_states = lpos.num_states();
  const auto sf = standard_form(automaton_to_expr(lpos.to_gautomaton()));
  rep.standard_form = sf.str();

  // (a) starred branches
  std::optional<Word> foreign;
  for (std::size_t si = 0; si < sf.summands.size(); ++si) {
    const auto& m = sf.summands[si];
    for (std::size_t fi = 0; fi < m.starred.size(); ++fi) {
      BranchReport b;
      b.summand = si;
      b.factor = fi;
      b.sample = sample_factor(m.starred[fi], opts);
      std::vector<FPElement> e;
      for (const auto& x : b.sample) e.push_back(from_f2(kZZ, x));
      const auto p = product(m.coefficients, 0, fi + 1), q = product(m.coefficients, fi + 1, m.coefficients.size());
      b.dichotomy = support_dichotomy_check(e, from_f2(kZZ, p), from_f2(kZZ, q), w, opts.budget);
      if (!foreign && b.dichotomy.kind == Dichotomy::refuted && b.dichotomy.certificate != "none") {
        const auto x = to_f2(kZZ, *b.dichotomy.witness);
        if (lpos.accepts(x)) {
          foreign = x;
          rep.refuting_branch = b.id();
        }
      }
      rep.branches.push_back(std::move(b));
    }
  }
  if (foreign) {
    if (opts.shorten) {
      for (const auto& x : lpos.members_up_to(foreign->size(), 20'000)) {
        if (!non_value_certificate(w, x).empty()) {
          foreign = x;
          break;
        }
      }
    }
    rep.outcome = Outcome::foreign_element;
    rep.foreign = foreign;
    rep.certificate = non_value_certificate(w, *foreign);
    return rep;
  }

  // (b) scheme and witness; uncertified refuted branches do not contribute to the scheme.
  std::vector<BranchReport> classified;
  std::string uncertified;
  for (const auto& b : rep.branches) {
    if (b.dichotomy.kind == Dichotomy::refuted) {
      if (uncertified.empty()) uncertified = b.id();
    } else {
      classified.push_back(b);
    }
  }
  rep.scheme = extract_scheme(sf, classified);
  rep.witness = witness_word(w, *rep.scheme);
  rep.witness_accepted = lpos.accepts(rep.witness->u);
  if (!rep.witness_accepted) {
    rep.outcome = Outcome::missing_value;
    return rep;
  }
  rep.trace = decomposition(rep.witness->u, *rep.scheme);
  rep.heuristic = true;
  if (rep.trace->decomposable) {
    rep.outcome = Outcome::inconclusive;
    return rep;
  }
  rep.outcome = Outcome::inconsistent_branch;
  rep.branch_id = uncertified;
  if (rep.branch_id.empty()) {
    for (std::size_t si = 0; si < sf.summands.size(); ++si) {
      StandardForm one;
      one.summands.push_back(sf.summands[si]);
      if (member(one.to_expr(), rep.witness->u)) {
        rep.branch_id = "s" + std::to_string(si);
        break;
      }
    }
  }
  return rep;
}

ReplayResult replay(const RefutationReport& r) {
  ReplayResult res;
  auto check = [&](bool ok, const std::string& what) {
    (ok ? res.checks : res.failures).push_back(what);
    res.ok = res.ok && ok;
  };
  const auto lpos = intersect_positive(r.expr).minimized();
  check(lpos.fingerprint() == r.positive_fingerprint, "positive acceptor recomputes identically");
  switch (r.outcome) {
    case Outcome::missing_value:
    case Outcome::inconsistent_branch: {
      if (!r.witness || !r.scheme) {
        check(false, "witness and scheme present");
        break;
      }
      const auto& ww = *r.witness;
      check(check_transcript(ww.transcript), "Bezout transcript reduces to g^e");
      check(ww.transcript.value == ww.u, "transcript value is the witness");
      check(!r.scheme->k.count({Factor::A, ww.t}), "x1^t is not in K_L");
      check(ww.l > static_cast<std::int64_t>(r.scheme->n), "l > n");
      check(ww.transcript.g == pow(Word::generator(1, static_cast<int>(ww.t)) * Word::generator(2), ww.l), "g = (x1^t x2)^l");
      if (r.outcome == Outcome::missing_value) {
        check(!lpos.accepts(ww.u), "acceptor rejects the witness");
      } else {
        check(lpos.accepts(ww.u), "acceptor accepts the witness");
        check(!decomposable(ww.u, *r.scheme), "witness has no bounded block decomposition");
      }
      break;
    }
    case Outcome::foreign_element: {
      if (!r.foreign) {
        check(false, "foreign element present");
        break;
      }
      check(lpos.accepts(*r.foreign), "acceptor accepts the foreign element");
      if (r.certificate == "root") {
        const auto pw = power_word(r.w);
        check(pw && !root_extract(*r.foreign, pw->second), "root extraction fails");
      } else if (r.certificate == "abelianization") {
        check(!abelian_image_admissible(r.w, r.rank, *r.foreign), "abelian image outside e(w) Z^2");
      } else {
        check(false, "known certificate kind");
      }
      break;
    }
    case Outcome::inconclusive:
      check(false, "outcome carries a certificate");
      break;
  }
  return res;
}

}  // namespace verbalrat
