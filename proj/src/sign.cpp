#include "verbalrat/sign.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>

#include "verbalrat/automaton.hpp"

namespace verbalrat {

FactorSign FactorSign::cyclic(std::int64_t m, std::vector<std::int64_t> positive) {
  const auto model = FactorModel::finite(m);
  std::vector<bool> r(static_cast<std::size_t>(m), false);
  r[0] = true;
  for (auto x : positive) r[static_cast<std::size_t>(((x % m) + m) % m)] = true;
  for (std::int64_t x = 0; x < m; ++x)
    for (std::int64_t y = 0; y < m; ++y)
      if (r[static_cast<std::size_t>(x)] && r[static_cast<std::size_t>(y)] && !r[static_cast<std::size_t>((x + y) % m)])
        throw PreconditionError("positive residues of Z/" + std::to_string(m) + " are not closed under addition");
  return FactorSign(model, std::move(r));
}

bool FactorSign::positive(std::int64_t exponent) const {
  if (model_.is_infinite()) return exponent >= 0;
  const auto m = model_.order;
  return residues_[static_cast<std::size_t>(((exponent % m) + m) % m)];
}

SignModel::SignModel(FactorSign a, FactorSign b) : a_(std::move(a)), b_(std::move(b)), group_(a_.model(), b_.model()) {}

bool is_positive(const FPElement& u, const SignModel& sigma) {
  return std::all_of(u.syllables().begin(), u.syllables().end(), [&](const Syllable& s) { return sigma.positive(s); });
}

std::string_view to_string(SplitCase c) {
  switch (c) {
    case SplitCase::both_positive: return "both-positive";
    case SplitCase::case_1: return "case-1";
    case SplitCase::case_2: return "case-2";
    case SplitCase::mirrored_case_1: return "mirrored-case-1";
    case SplitCase::mirrored_case_2: return "mirrored-case-2";
  }
  return "?";
}

namespace {

FPElement reversed(const FreeProduct& g, const FPElement& u) {
  std::vector<Syllable> s(u.syllables().rbegin(), u.syllables().rend());
  return g.normalize(s);
}

// 1-based index of the first negative syllable, 0 if positive.
std::size_t first_negative(const FPElement& u, const SignModel& sigma) {
  for (std::size_t k = 0; k < u.syllable_length(); ++k)
    if (!sigma.positive(u[k])) return k + 1;
  return 0;
}

std::size_t last_negative(const FPElement& u, const SignModel& sigma) {
  for (std::size_t k = u.syllable_length(); k > 0; --k)
    if (!sigma.positive(u[k - 1])) return k;
  return 0;
}

// An element b of factor f with s - b and b + t positive for every s in ss, t in ts.
std::optional<std::int64_t> factor_split(const FactorSign& fs, const std::vector<std::int64_t>& ss, const std::vector<std::int64_t>& ts) {
  if (fs.model().is_infinite()) {
    std::int64_t lo = std::numeric_limits<std::int64_t>::min(), hi = std::numeric_limits<std::int64_t>::max();
    for (auto t : ts) lo = std::max(lo, -t);
    for (auto s : ss) hi = std::min(hi, s);
    if (lo > hi) return std::nullopt;
    return std::clamp<std::int64_t>(0, lo, hi);
  }
  for (std::int64_t b = 0; b < fs.model().order; ++b) {
    const bool ok = std::all_of(ss.begin(), ss.end(), [&](auto s) { return fs.positive(s - b); }) &&
                    std::all_of(ts.begin(), ts.end(), [&](auto t) { return fs.positive(b + t); });
    if (ok) return b;
  }
  return std::nullopt;
}

// The i0 <= j0 branch.
SplitTrace split_right_heavy(const std::vector<FPElement>& s, const std::vector<FPElement>& t, const SignModel& sigma,
                             std::size_t i0, std::size_t j0) {
  const auto& g = sigma.group();
  const FPElement* vt = nullptr;
  for (const auto& v : t)
    if (last_negative(v, sigma) == j0) {
      vt = &v;
      break;
    }
  SplitTrace tr;
  tr.i0 = i0;
  tr.j0 = j0;
  tr.split_case = i0 == j0 ? SplitCase::case_1 : SplitCase::case_2;
  tr.c = g.normalize(std::vector<Syllable>(vt->syllables().begin(), vt->syllables().begin() + static_cast<std::ptrdiff_t>(j0 - 1)));
  const Factor f = (*vt)[j0 - 1].factor;
  tr.b_factor = f;
  const FPElement cinv = g.inv(tr.c);
  std::vector<std::int64_t> ss, ts;
  for (const auto& u : s) {
    const auto x = g.mul(u, tr.c);
    ss.push_back(!x.is_identity() && x.back().factor == f ? x.back().exponent : 0);
  }
  for (const auto& v : t) {
    const auto y = g.mul(cinv, v);
    ts.push_back(!y.is_identity() && y.front().factor == f ? y.front().exponent : 0);
  }
  const auto b = factor_split(sigma.factor(f), ss, ts);
  if (!b) throw std::logic_error("split_product: factor " + std::string(to_string(f)) + " admits no splitting element");
  tr.b0 = *b;
  tr.u = g.mul(g.syllable(f, *b), cinv);
  return tr;
}

}  // namespace

SplitTrace split_product(const std::vector<FPElement>& s, const std::vector<FPElement>& t, const SignModel& sigma) {
  const auto& g = sigma.group();
  for (const auto& x : s)
    for (const auto& y : t)
      if (!is_positive(g.mul(x, y), sigma))
        throw PreconditionError("split_product: " + x.str() + " * " + y.str() + " is not positive");
  std::size_t i0 = 0, j0 = 0;
  for (const auto& u : s)
    if (auto i = first_negative(u, sigma)) i0 = std::max(i0, u.syllable_length() - i + 1);
  for (const auto& v : t) j0 = std::max(j0, last_negative(v, sigma));

  SplitTrace tr;
  if (i0 == 0 && j0 == 0) {
    tr.split_case = SplitCase::both_positive;
  } else if (i0 <= j0) {
    tr = split_right_heavy(s, t, sigma, i0, j0);
  } else {
    // Reversal is an anti-automorphism preserving positivity: rev(T) rev(S) is positive.
    std::vector<FPElement> rs, rt;
    for (const auto& v : t) rs.push_back(reversed(g, v));
    for (const auto& u : s) rt.push_back(reversed(g, u));
    tr = split_right_heavy(rs, rt, sigma, j0, i0);
    tr.split_case = tr.split_case == SplitCase::case_1 ? SplitCase::mirrored_case_1 : SplitCase::mirrored_case_2;
    tr.i0 = i0;
    tr.j0 = j0;
    tr.c = reversed(g, tr.c);
    tr.u = g.inv(reversed(g, tr.u));
  }
  const FPElement uinv = g.inv(tr.u);
  for (const auto& x : s)
    if (!is_positive(g.mul(x, uinv), sigma)) throw std::logic_error("split_product: S u^-1 not positive at " + x.str());
  for (const auto& y : t)
    if (!is_positive(g.mul(tr.u, y), sigma)) throw std::logic_error("split_product: u T not positive at " + y.str());
  return tr;
}

namespace {

RatExpr sandwich(const Word& u, const RatExpr& l, const Word& v) {
  return RatExpr::product(RatExpr::single(u), RatExpr::product(l, RatExpr::single(v)));
}

std::optional<Word> negative_member(const Acceptor& a) {
  return difference(a, Acceptor::positive_words(2)).shortest_member();
}

std::vector<FPElement> sample(const Acceptor& a, std::size_t len, const FreeProduct& g) {
  std::vector<FPElement> out;
  for (const auto& w : a.members_up_to(len, 4000)) out.push_back(from_f2(g, w));
  return out;
}

class Positivizer {
 public:
  explicit Positivizer(const PositivizeOptions& o) : opts_(o) {}

  PositivizeResult run(const RatExpr& l, const Word& u, const Word& v, std::size_t depth) {
    if (depth > opts_.max_depth) throw CapExceeded("positivize: recursion depth exceeded");
    PositivizeResult res;
    auto& tr = res.trace;
    tr.u = u;
    tr.v = v;
    const Acceptor whole = acceptor_of(sandwich(u, l, v), 2);
    tr.acceptor_states = whole.num_states();
    if (auto bad = negative_member(whole))
      throw NegativeMemberError("u L v has the negative member " + bad->str() + " (u = " + u.str() + ", v = " + v.str() + ")", *bad);

    if (l.denotes_finite_set() || whole.is_empty()) {
      tr.node = "finite";
      tr.step_case = whole.is_empty() ? "empty" : "leaf";
      std::vector<Word> leaves;
      if (!whole.is_empty())
        for (const auto& x : l.finite_elements()) leaves.push_back(u * x * v);
      res.expr = RatExpr::finite(leaves);
      return res;
    }
    switch (l.kind()) {
      case RatExpr::Kind::union_of: {
        tr.node = "union";
        tr.step_case = "split";
        auto a = run(l.left(), u, v, depth + 1);
        auto b = run(l.right(), u, v, depth + 1);
        res.expr = simplify_union(a.expr, b.expr);
        tr.children = {std::move(a.trace), std::move(b.trace)};
        return res;
      }
      case RatExpr::Kind::product:
        return product(l, u, v, depth, std::move(res));
      case RatExpr::Kind::star:
        return star(l, u, v, depth, std::move(res));
      case RatExpr::Kind::finite:
        break;
    }
    throw std::logic_error("positivize: unexpected node");
  }

 private:
  PositivizeResult product(const RatExpr& l, const Word& u, const Word& v, std::size_t depth, PositivizeResult res) {
    auto& tr = res.trace;
    tr.node = "product";
    tr.step_case = "split";
    const auto g = FreeProduct::integers();
    const auto sigma = SignModel::free_group();
    const Acceptor left = acceptor_of(RatExpr::product(RatExpr::single(u), l.left()), 2);
    const Acceptor right = acceptor_of(RatExpr::product(l.right(), RatExpr::single(v)), 2);
    for (std::size_t len = 8;; len *= 2) {
      len = std::min(len, opts_.max_sample_len);
      const auto st = split_product(sample(left, len, g), sample(right, len, g), sigma);
      const Word w = to_f2(g, st.u);
      const bool left_ok = !negative_member(acceptor_of(sandwich(u, l.left(), inv(w)), 2));
      const bool right_ok = !negative_member(acceptor_of(sandwich(w, l.right(), v), 2));
      if (left_ok && right_ok) {
        tr.w = w;
        tr.search_window = len;
        auto a = run(l.left(), u, inv(w), depth + 1);
        auto b = run(l.right(), w, v, depth + 1);
        res.expr = simplify_product(a.expr, b.expr);
        tr.children = {std::move(a.trace), std::move(b.trace)};
        return res;
      }
      if (len >= opts_.max_sample_len) throw CapExceeded("positivize: no middle element found from samples up to length " + std::to_string(len));
    }
  }

  PositivizeResult star(const RatExpr& l, const Word& u, const Word& v, std::size_t depth, PositivizeResult res) {
    auto& tr = res.trace;
    tr.node = "star";
    const Word w = u * v;
    tr.w = w;
    const RatExpr& l1 = l.inner();
    const Acceptor l2 = acceptor_of(sandwich(inv(v), l1, v), 2);
    const Acceptor neg = difference(l2, Acceptor::positive_words(2));
    if (neg.is_empty()) {
      tr.step_case = "positive-star";
      auto a = run(l1, inv(v), v, depth + 1);
      res.expr = simplify_product(RatExpr::single(w), RatExpr::star(a.expr));
      tr.children = {std::move(a.trace)};
      return res;
    }
    tr.step_case = "conjugated-star";
    const auto g = FreeProduct::integers();
    const auto sigma = SignModel::free_group();
    const std::size_t window = 2 * static_cast<std::size_t>(neg.num_states());
    tr.search_window = window;
    std::size_t best_i = 0;
    FPElement best;
    for (const auto& m : neg.members_up_to(window, 20000)) {
      const auto fm = from_f2(g, m);
      const auto i = last_negative(fm, sigma);
      if (i > best_i) {
        best_i = i;
        best = fm;
      }
    }
    const Syllable b = best[best_i - 1];
    const FPElement prefix_inv = g.inv(g.normalize(std::vector<Syllable>(best.syllables().begin(), best.syllables().begin() + static_cast<std::ptrdiff_t>(best_i - 1))));
    // w = w' b(w) l_{i-1}^-1 ... l_1^-1, and b0 ranges over [-b, b(w)].
    const FPElement wp = g.mul(from_f2(g, w), g.inv(prefix_inv));
    const std::int64_t cap = !wp.is_identity() && wp.back().factor == b.factor ? wp.back().exponent : 0;
    std::optional<Word> r_found;
    for (std::int64_t b0 = -b.exponent; b0 <= cap; ++b0) {
      const Word r = to_f2(g, g.mul(g.syllable(b.factor, b0), prefix_inv));
      if (!(w * inv(r)).is_positive() || !r.is_positive()) continue;
      if (negative_member(acceptor_of(sandwich(r * inv(v), l1, v * inv(r)), 2))) continue;
      tr.b0 = b0;
      r_found = r;
      break;
    }
    if (!r_found)
      throw Error("positivize: no conjugator b0 in [" + std::to_string(-b.exponent) + ", " + std::to_string(cap) + "] makes r L r^-1 positive");
    const Word r = *r_found;
    tr.r = r;
    const Word w_prime = w * inv(r);
    auto a = run(l1, r * inv(v), v * inv(r), depth + 1);
    res.expr = simplify_product(RatExpr::single(w_prime), simplify_product(RatExpr::star(a.expr), RatExpr::single(r)));
    tr.children = {std::move(a.trace)};
    return res;
  }

  PositivizeOptions opts_;
};

}  // namespace

PositivizeResult positivize(const RatExpr& l, const Word& u, const Word& v, const PositivizeOptions& opts) {
  if (std::max({l.max_generator(), u.max_generator(), v.max_generator()}) > 2)
    throw PreconditionError("positivize works over F2 (generators x1, x2)");
  return Positivizer(opts).run(l, u, v, 0);
}

PositivizeResult positivize_total(const RatExpr& l, const PositivizeOptions& opts) { return positivize(l, Word{}, Word{}, opts); }

bool has_positive_leaves(const RatExpr& e) {
  switch (e.kind()) {
    case RatExpr::Kind::finite:
      return std::all_of(e.elements().begin(), e.elements().end(), [](const Word& w) { return w.is_positive(); });
    case RatExpr::Kind::union_of:
    case RatExpr::Kind::product:
      return has_positive_leaves(e.left()) && has_positive_leaves(e.right());
    case RatExpr::Kind::star:
      return has_positive_leaves(e.inner());
  }
  return false;
}

}  // namespace verbalrat
