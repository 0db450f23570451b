#include "verbalrat/automaton.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>

#include "verbalrat/error.hpp"

namespace verbalrat {

void GAutomaton::validate() const {
  if (num_states < 1) throw PreconditionError("automaton needs at least one state");
  auto in_range = [&](int q) { return q >= 0 && q < num_states; };
  if (!in_range(initial)) throw PreconditionError("initial state out of range");
  for (int t : terminals)
    if (!in_range(t)) throw PreconditionError("terminal state out of range");
  for (const auto& tr : transitions)
    if (!in_range(tr.from) || !in_range(tr.to)) throw PreconditionError("transition endpoint out of range");
}

int GAutomaton::max_generator() const {
  int m = 0;
  for (const auto& tr : transitions) m = std::max(m, tr.label.max_generator());
  return m;
}

// ---------------------------------------------------------------- Thompson

namespace {

struct Fragment {
  int start;
  int end;
};

Fragment build(GAutomaton& a, const RatExpr& e) {
  switch (e.kind()) {
    case RatExpr::Kind::finite: {
      const int s = a.add_state(), t = a.add_state();
      for (const auto& w : e.elements()) a.add(s, w, t);
      return {s, t};
    }
    case RatExpr::Kind::union_of: {
      const Fragment l = build(a, e.left()), r = build(a, e.right());
      const int s = a.add_state(), t = a.add_state();
      a.add(s, Word{}, l.start);
      a.add(s, Word{}, r.start);
      a.add(l.end, Word{}, t);
      a.add(r.end, Word{}, t);
      return {s, t};
    }
    case RatExpr::Kind::product: {
      const Fragment l = build(a, e.left()), r = build(a, e.right());
      a.add(l.end, Word{}, r.start);
      return {l.start, r.end};
    }
    case RatExpr::Kind::star: {
      const Fragment in = build(a, e.inner());
      const int s = a.add_state();
      a.add(s, Word{}, in.start);
      a.add(in.end, Word{}, s);
      return {s, s};
    }
  }
  return {0, 0};
}

}  // namespace

GAutomaton expr_to_automaton(const RatExpr& e) {
  GAutomaton a;
  a.num_states = 0;
  const Fragment f = build(a, e);
  a.initial = f.start;
  a.terminals = {f.end};
  return a;
}

// ---------------------------------------------------------------- state elimination

RatExpr automaton_to_expr(const GAutomaton& a) {
  a.validate();
  const int n = a.num_states + 2;
  const int src = a.num_states, dst = a.num_states + 1;
  std::vector<std::vector<std::optional<RatExpr>>> r(static_cast<std::size_t>(n),
                                                     std::vector<std::optional<RatExpr>>(static_cast<std::size_t>(n)));
  auto add = [&](int i, int j, const RatExpr& e) {
    auto& cell = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    cell = cell ? simplify_union(*cell, e) : e;
  };
  {
    std::map<std::pair<int, int>, std::vector<Word>> labels;
    for (const auto& tr : a.transitions) labels[{tr.from, tr.to}].push_back(tr.label);
    for (auto& [key, ws] : labels) add(key.first, key.second, RatExpr::finite(std::move(ws)));
  }
  const RatExpr one = RatExpr::single(Word{});
  add(src, a.initial, one);
  for (int t : a.terminals) add(t, dst, one);

  std::vector<bool> alive(static_cast<std::size_t>(n), true);
  for (int round = 0; round < a.num_states; ++round) {
    int best = -1;
    std::size_t best_cost = SIZE_MAX;
    for (int k = 0; k < a.num_states; ++k) {
      if (!alive[static_cast<std::size_t>(k)]) continue;
      std::size_t in = 0, out = 0;
      for (int i = 0; i < n; ++i) {
        if (i == k || !alive[static_cast<std::size_t>(i)]) continue;
        in += r[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)].has_value();
        out += r[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)].has_value();
      }
      if (in * out < best_cost) {
        best_cost = in * out;
        best = k;
      }
    }
    const auto k = static_cast<std::size_t>(best);
    std::optional<RatExpr> loop;
    if (const auto& l = r[k][k]; l && !l->denotes_finite_set()) {
      loop = RatExpr::star(*l);
    } else if (l) {
      // A star of a finite set is still infinite unless the set is within {1}.
      const auto& fs = l->finite_elements();
      if (std::any_of(fs.begin(), fs.end(), [](const Word& w) { return !w.is_identity(); })) loop = RatExpr::star(*l);
    }
    for (int i = 0; i < n; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      if (ii == k || !alive[ii] || !r[ii][k]) continue;
      RatExpr head = loop ? simplify_product(*r[ii][k], *loop) : *r[ii][k];
      for (int j = 0; j < n; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        if (jj == k || !alive[jj] || !r[k][jj]) continue;
        add(i, j, simplify_product(head, *r[k][jj]));
      }
    }
    alive[k] = false;
    for (int i = 0; i < n; ++i) {
      r[static_cast<std::size_t>(i)][k].reset();
      r[k][static_cast<std::size_t>(i)].reset();
    }
  }
  const auto& res = r[static_cast<std::size_t>(src)][static_cast<std::size_t>(dst)];
  return res ? *res : RatExpr();
}

// ---------------------------------------------------------------- Acceptor basics

Acceptor::Acceptor(int rank) : rank_(rank) {
  if (rank < 1) throw PreconditionError("acceptor rank must be >= 1");
  delta_.assign(1, std::vector<int>(static_cast<std::size_t>(2 * rank), 0));
  accepting_.assign(1, false);
}

Acceptor Acceptor::from_table(int rank, int initial, std::vector<std::vector<int>> delta, std::vector<bool> accepting) {
  Acceptor a(rank);
  if (delta.empty() || delta.size() != accepting.size()) throw PreconditionError("acceptor table size mismatch");
  const int n = static_cast<int>(delta.size());
  if (initial < 0 || initial >= n) throw PreconditionError("acceptor initial state out of range");
  for (const auto& row : delta) {
    if (static_cast<int>(row.size()) != 2 * rank) throw PreconditionError("acceptor row has wrong alphabet size");
    for (int q : row)
      if (q < 0 || q >= n) throw PreconditionError("acceptor transition out of range");
  }
  a.initial_ = initial;
  a.delta_ = std::move(delta);
  a.accepting_ = std::move(accepting);
  return a;
}

Acceptor Acceptor::reduced_words(int rank) {
  // State 0: start, states 1..2r: last letter, state 2r+1: sink.
  const int k = 2 * rank;
  std::vector<std::vector<int>> d(static_cast<std::size_t>(k + 2), std::vector<int>(static_cast<std::size_t>(k)));
  std::vector<bool> acc(static_cast<std::size_t>(k + 2), true);
  acc[static_cast<std::size_t>(k + 1)] = false;
  for (int s = 0; s < k + 2; ++s) {
    for (int a = 0; a < k; ++a) {
      int t = a + 1;
      if (s == k + 1 || (s >= 1 && ((s - 1) ^ 1) == a)) t = k + 1;
      d[static_cast<std::size_t>(s)][static_cast<std::size_t>(a)] = t;
    }
  }
  return from_table(rank, 0, std::move(d), std::move(acc));
}

Acceptor Acceptor::positive_words(int rank) {
  const int k = 2 * rank;
  std::vector<std::vector<int>> d(2, std::vector<int>(static_cast<std::size_t>(k), 1));
  for (int a = 0; a < k; a += 2) d[0][static_cast<std::size_t>(a)] = 0;
  return from_table(rank, 0, std::move(d), {true, false});
}

Acceptor Acceptor::restricted_to_reduced() const { return intersect(*this, reduced_words(rank_)); }

bool Acceptor::accepts(const Word& w) const {
  if (w.max_generator() > rank_) return false;
  int q = initial_;
  for (Letter l : w.letters()) q = next(q, l.alphabet_index());
  return accepting(q);
}

namespace {

std::vector<bool> reachable_states(const Acceptor& a) {
  std::vector<bool> seen(static_cast<std::size_t>(a.num_states()), false);
  std::vector<int> stack{a.initial()};
  seen[static_cast<std::size_t>(a.initial())] = true;
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (int c = 0; c < a.alphabet_size(); ++c) {
      const int t = a.next(q, c);
      if (!seen[static_cast<std::size_t>(t)]) {
        seen[static_cast<std::size_t>(t)] = true;
        stack.push_back(t);
      }
    }
  }
  return seen;
}

/// States from which an accepting state is reachable.
std::vector<bool> live_states(const Acceptor& a) {
  const auto n = static_cast<std::size_t>(a.num_states());
  std::vector<std::vector<int>> rev(n);
  for (int q = 0; q < a.num_states(); ++q)
    for (int c = 0; c < a.alphabet_size(); ++c) rev[static_cast<std::size_t>(a.next(q, c))].push_back(q);
  std::vector<bool> live(n, false);
  std::vector<int> stack;
  for (int q = 0; q < a.num_states(); ++q) {
    if (a.accepting(q)) {
      live[static_cast<std::size_t>(q)] = true;
      stack.push_back(q);
    }
  }
  while (!stack.empty()) {
    const int q = stack.back();
    stack.pop_back();
    for (int p : rev[static_cast<std::size_t>(q)]) {
      if (!live[static_cast<std::size_t>(p)]) {
        live[static_cast<std::size_t>(p)] = true;
        stack.push_back(p);
      }
    }
  }
  return live;
}

Word word_of(const std::vector<int>& letter_indices) {
  std::vector<Letter> ls;
  ls.reserve(letter_indices.size());
  for (int c : letter_indices) ls.push_back(Letter::from_alphabet_index(c));
  return Word(ls);
}

}  // namespace

bool Acceptor::is_empty() const {
  const auto r = reachable_states(*this);
  for (int q = 0; q < num_states(); ++q)
    if (r[static_cast<std::size_t>(q)] && accepting(q)) return false;
  return true;
}

std::optional<Word> Acceptor::shortest_member() const {
  const auto n = static_cast<std::size_t>(num_states());
  std::vector<int> parent(n, -2), via(n, -1);
  std::deque<int> queue{initial_};
  parent[static_cast<std::size_t>(initial_)] = -1;
  while (!queue.empty()) {
    const int q = queue.front();
    queue.pop_front();
    if (accepting(q)) {
      std::vector<int> path;
      for (int s = q; parent[static_cast<std::size_t>(s)] != -1; s = parent[static_cast<std::size_t>(s)])
        path.push_back(via[static_cast<std::size_t>(s)]);
      std::reverse(path.begin(), path.end());
      return word_of(path);
    }
    for (int c = 0; c < alphabet_size(); ++c) {
      const int t = next(q, c);
      if (parent[static_cast<std::size_t>(t)] == -2) {
        parent[static_cast<std::size_t>(t)] = q;
        via[static_cast<std::size_t>(t)] = c;
        queue.push_back(t);
      }
    }
  }
  return std::nullopt;
}

std::vector<Word> Acceptor::members_up_to(std::size_t max_len, std::size_t limit) const {
  const auto live = live_states(*this);
  std::vector<Word> out;
  if (!live[static_cast<std::size_t>(initial_)] || limit == 0) return out;
  struct Item {
    int state;
    std::vector<int> letters;
  };
  std::vector<Item> layer{{initial_, {}}};
  for (std::size_t len = 0;; ++len) {
    for (const auto& it : layer) {
      if (accepting(it.state)) {
        out.push_back(word_of(it.letters));
        if (out.size() >= limit) return out;
      }
    }
    if (len == max_len) break;
    std::vector<Item> next_layer;
    for (const auto& it : layer) {
      for (int c = 0; c < alphabet_size(); ++c) {
        const int t = next(it.state, c);
        if (!live[static_cast<std::size_t>(t)]) continue;
        auto ls = it.letters;
        ls.push_back(c);
        next_layer.push_back({t, std::move(ls)});
      }
    }
    if (next_layer.empty()) break;
    layer = std::move(next_layer);
  }
  return out;
}

std::vector<std::uint64_t> Acceptor::count_by_length(std::size_t max_len) const {
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> cur(static_cast<std::size_t>(num_states()), 0);
  cur[static_cast<std::size_t>(initial_)] = 1;
  for (std::size_t len = 0; len <= max_len; ++len) {
    std::uint64_t total = 0;
    for (int q = 0; q < num_states(); ++q)
      if (accepting(q)) total += cur[static_cast<std::size_t>(q)];
    out.push_back(total);
    std::vector<std::uint64_t> nxt(cur.size(), 0);
    for (int q = 0; q < num_states(); ++q) {
      if (cur[static_cast<std::size_t>(q)] == 0) continue;
      for (int c = 0; c < alphabet_size(); ++c) nxt[static_cast<std::size_t>(next(q, c))] += cur[static_cast<std::size_t>(q)];
    }
    cur = std::move(nxt);
  }
  return out;
}

bool Acceptor::is_finite() const {
  const auto reach = reachable_states(*this);
  const auto live = live_states(*this);
  const auto n = static_cast<std::size_t>(num_states());
  auto useful = [&](int q) { return reach[static_cast<std::size_t>(q)] && live[static_cast<std::size_t>(q)]; };
  // Iterative DFS cycle detection on the trimmed graph.
  std::vector<int> color(n, 0);
  for (int root = 0; root < num_states(); ++root) {
    if (!useful(root) || color[static_cast<std::size_t>(root)] != 0) continue;
    std::vector<std::pair<int, int>> stack{{root, 0}};
    color[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      auto& [q, c] = stack.back();
      if (c == alphabet_size()) {
        color[static_cast<std::size_t>(q)] = 2;
        stack.pop_back();
        continue;
      }
      const int t = next(q, c++);
      if (!useful(t)) continue;
      if (color[static_cast<std::size_t>(t)] == 1) return false;
      if (color[static_cast<std::size_t>(t)] == 0) {
        color[static_cast<std::size_t>(t)] = 1;
        stack.emplace_back(t, 0);
      }
    }
  }
  return true;
}

Acceptor Acceptor::with_rank(int rank) const {
  if (rank < rank_) throw PreconditionError("with_rank cannot shrink the alphabet");
  if (rank == rank_) return *this;
  const int n = num_states();
  std::vector<std::vector<int>> d(static_cast<std::size_t>(n + 1), std::vector<int>(static_cast<std::size_t>(2 * rank), n));
  for (int q = 0; q < n; ++q)
    for (int c = 0; c < alphabet_size(); ++c) d[static_cast<std::size_t>(q)][static_cast<std::size_t>(c)] = next(q, c);
  auto acc = accepting_;
  acc.push_back(false);
  return from_table(rank, initial_, std::move(d), std::move(acc)).minimized();
}

Acceptor Acceptor::minimized() const {
  const auto reach = reachable_states(*this);
  const int k = alphabet_size();
  std::vector<int> cls(static_cast<std::size_t>(num_states()), -1);
  for (int q = 0; q < num_states(); ++q)
    if (reach[static_cast<std::size_t>(q)]) cls[static_cast<std::size_t>(q)] = accepting(q) ? 1 : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next_cls(cls.size(), -1);
    for (int q = 0; q < num_states(); ++q) {
      if (!reach[static_cast<std::size_t>(q)]) continue;
      std::vector<int> sig{cls[static_cast<std::size_t>(q)]};
      for (int c = 0; c < k; ++c) sig.push_back(cls[static_cast<std::size_t>(next(q, c))]);
      auto [it, inserted] = ids.emplace(std::move(sig), static_cast<int>(ids.size()));
      next_cls[static_cast<std::size_t>(q)] = it->second;
    }
    cls = std::move(next_cls);
    if (ids.size() == classes) break;
    classes = ids.size();
  }
  // Canonical numbering: BFS from the initial class, letters in alphabet order.
  std::vector<int> rep(classes, -1);
  for (int q = 0; q < num_states(); ++q)
    if (cls[static_cast<std::size_t>(q)] >= 0 && rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(q)])] < 0)
      rep[static_cast<std::size_t>(cls[static_cast<std::size_t>(q)])] = q;
  std::vector<int> order(classes, -1);
  std::vector<int> queue{cls[static_cast<std::size_t>(initial_)]};
  order[static_cast<std::size_t>(queue[0])] = 0;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    const int q = rep[static_cast<std::size_t>(queue[h])];
    for (int c = 0; c < k; ++c) {
      const int t = cls[static_cast<std::size_t>(next(q, c))];
      if (order[static_cast<std::size_t>(t)] < 0) {
        order[static_cast<std::size_t>(t)] = static_cast<int>(queue.size());
        queue.push_back(t);
      }
    }
  }
  std::vector<std::vector<int>> d(queue.size(), std::vector<int>(static_cast<std::size_t>(k)));
  std::vector<bool> acc(queue.size());
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int q = rep[static_cast<std::size_t>(queue[i])];
    acc[i] = accepting(q);
    for (int c = 0; c < k; ++c) d[i][static_cast<std::size_t>(c)] = order[static_cast<std::size_t>(cls[static_cast<std::size_t>(next(q, c))])];
  }
  return from_table(rank_, 0, std::move(d), std::move(acc));
}

std::string Acceptor::fingerprint() const {
  const Acceptor m = minimized();
  std::string s = "r" + std::to_string(m.rank_) + ";n" + std::to_string(m.num_states()) + ";";
  for (int q = 0; q < m.num_states(); ++q) {
    s += m.accepting(q) ? 'F' : 'q';
    for (int c = 0; c < m.alphabet_size(); ++c) s += ',' + std::to_string(m.next(q, c));
    s += ';';
  }
  return s;
}

GAutomaton Acceptor::to_gautomaton() const {
  const auto reach = reachable_states(*this);
  const auto live = live_states(*this);
  GAutomaton g;
  if (!live[static_cast<std::size_t>(initial_)]) return g;
  std::vector<int> id(static_cast<std::size_t>(num_states()), -1);
  g.num_states = 0;
  for (int q = 0; q < num_states(); ++q)
    if (reach[static_cast<std::size_t>(q)] && live[static_cast<std::size_t>(q)]) id[static_cast<std::size_t>(q)] = g.num_states++;
  g.initial = id[static_cast<std::size_t>(initial_)];
  for (int q = 0; q < num_states(); ++q) {
    const int from = id[static_cast<std::size_t>(q)];
    if (from < 0) continue;
    if (accepting(q)) g.terminals.push_back(from);
    for (int c = 0; c < alphabet_size(); ++c) {
      const int to = id[static_cast<std::size_t>(next(q, c))];
      if (to >= 0) g.add(from, Word{Letter::from_alphabet_index(c)}, to);
    }
  }
  return g;
}

// ---------------------------------------------------------------- Boolean operations

namespace {

enum class Op { both, either, left_only, xor_ };

Acceptor product(const Acceptor& a0, const Acceptor& b0, Op op) {
  const int rank = std::max(a0.rank(), b0.rank());
  const Acceptor a = a0.with_rank(rank), b = b0.with_rank(rank);
  const auto nb = static_cast<std::size_t>(b.num_states());
  std::vector<int> id(static_cast<std::size_t>(a.num_states()) * nb, -1);
  std::vector<std::pair<int, int>> states;
  auto get = [&](int p, int q) {
    auto& slot = id[static_cast<std::size_t>(p) * nb + static_cast<std::size_t>(q)];
    if (slot < 0) {
      slot = static_cast<int>(states.size());
      states.emplace_back(p, q);
    }
    return slot;
  };
  get(a.initial(), b.initial());
  std::vector<std::vector<int>> d;
  std::vector<bool> acc;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto [p, q] = states[i];
    const bool x = a.accepting(p), y = b.accepting(q);
    bool f = false;
    switch (op) {
      case Op::both: f = x && y; break;
      case Op::either: f = x || y; break;
      case Op::left_only: f = x && !y; break;
      case Op::xor_: f = x != y; break;
    }
    acc.push_back(f);
    std::vector<int> row(static_cast<std::size_t>(a.alphabet_size()));
    for (int c = 0; c < a.alphabet_size(); ++c) row[static_cast<std::size_t>(c)] = get(a.next(p, c), b.next(q, c));
    d.push_back(std::move(row));
  }
  return Acceptor::from_table(rank, 0, std::move(d), std::move(acc)).minimized();
}

}  // namespace

Acceptor intersect(const Acceptor& a, const Acceptor& b) { return product(a, b, Op::both); }
Acceptor unite(const Acceptor& a, const Acceptor& b) { return product(a, b, Op::either); }
Acceptor difference(const Acceptor& a, const Acceptor& b) { return product(a, b, Op::left_only); }
Acceptor complement_reduced(const Acceptor& a) { return difference(Acceptor::reduced_words(a.rank()), a); }
bool equivalent(const Acceptor& a, const Acceptor& b) { return product(a, b, Op::xor_).is_empty(); }
std::optional<Word> distinguishing_word(const Acceptor& a, const Acceptor& b) {
  return product(a, b, Op::xor_).shortest_member();
}

// ---------------------------------------------------------------- saturation

namespace {

constexpr std::size_t kMaxDfaStates = 500'000;

class Bits {
 public:
  explicit Bits(std::size_t n = 0) : w_((n + 63) / 64, 0) {}
  bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1u; }
  void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool merge(const Bits& o) {
    bool changed = false;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      const auto v = w_[i] | o.w_[i];
      changed |= v != w_[i];
      w_[i] = v;
    }
    return changed;
  }
  bool intersects(const Bits& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }
  bool none() const {
    return std::all_of(w_.begin(), w_.end(), [](std::uint64_t v) { return v == 0; });
  }
  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::vector<std::uint64_t> w_;
};

}  // namespace

Acceptor saturate(const GAutomaton& a, int rank) {
  a.validate();
  if (rank == 0) rank = std::max(1, a.max_generator());
  if (a.max_generator() > rank) throw PreconditionError("automaton uses generators beyond the requested rank");
  const int k = 2 * rank;

  // (i) split labels into single letters.
  int n = a.num_states;
  struct Edge {
    int from, letter, to;
  };
  std::vector<Edge> edges;
  std::vector<std::pair<int, int>> eps;
  for (const auto& tr : a.transitions) {
    const auto& ls = tr.label.letters();
    if (ls.empty()) {
      eps.emplace_back(tr.from, tr.to);
      continue;
    }
    int cur = tr.from;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      const int nxt = i + 1 == ls.size() ? tr.to : n++;
      edges.push_back({cur, ls[i].alphabet_index(), nxt});
      cur = nxt;
    }
  }
  const auto N = static_cast<std::size_t>(n);
  std::vector<std::vector<std::vector<int>>> out(N, std::vector<std::vector<int>>(static_cast<std::size_t>(k)));
  for (const auto& e : edges) out[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.letter)].push_back(e.to);

  // (ii) epsilon closure, saturated under cancelling letter pairs.
  std::vector<Bits> closure(N, Bits(N));
  for (std::size_t q = 0; q < N; ++q) closure[q].set(q);
  auto add_eps = [&](int p, int q) {
    if (closure[static_cast<std::size_t>(p)].test(static_cast<std::size_t>(q))) return false;
    const Bits target = closure[static_cast<std::size_t>(q)];
    for (std::size_t x = 0; x < N; ++x)
      if (closure[x].test(static_cast<std::size_t>(p))) closure[x].merge(target);
    return true;
  };
  for (auto [p, q] : eps) add_eps(p, q);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& e : edges) {
      const int back = e.letter ^ 1;
      for (std::size_t r2 = 0; r2 < N; ++r2) {
        if (!closure[static_cast<std::size_t>(e.to)].test(r2)) continue;
        for (int q : out[r2][static_cast<std::size_t>(back)]) changed |= add_eps(e.from, q);
      }
    }
  }

  // (iii) epsilon removal: step[s][c] = union of closures of c-successors of s.
  std::vector<std::vector<Bits>> step(N, std::vector<Bits>(static_cast<std::size_t>(k), Bits(N)));
  for (const auto& e : edges) step[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.letter)].merge(closure[static_cast<std::size_t>(e.to)]);
  Bits terminal(N);
  for (int t : a.terminals) terminal.set(static_cast<std::size_t>(t));

  // (iv) subsets paired with the last letter read, so that only reduced strings are accepted.
  struct Key {
    std::vector<std::uint64_t> bits;
    int last;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept {
      std::size_t h = static_cast<std::size_t>(key.last + 7);
      for (auto v : key.bits) h = h * 1000003u ^ std::hash<std::uint64_t>{}(v);
      return h;
    }
  };
  std::unordered_map<Key, int, KeyHash> ids;
  std::vector<Bits> sets;
  std::vector<int> lasts;
  std::vector<std::vector<int>> d;
  std::vector<bool> acc;
  // State 0 is the sink.
  d.emplace_back(static_cast<std::size_t>(k), 0);
  acc.push_back(false);
  sets.emplace_back(N);
  lasts.push_back(-1);
  auto get = [&](const Bits& s, int last) {
    if (s.none()) return 0;
    Key key{s.words(), last};
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    const int id = static_cast<int>(sets.size());
    if (sets.size() >= kMaxDfaStates) throw CapExceeded("saturated acceptor exceeds state cap");
    ids.emplace(std::move(key), id);
    sets.push_back(s);
    lasts.push_back(last);
    d.emplace_back(static_cast<std::size_t>(k), 0);
    acc.push_back(s.intersects(terminal));
    return id;
  };
  const int start = get(closure[static_cast<std::size_t>(a.initial)], -1);
  for (std::size_t i = 1; i < sets.size(); ++i) {
    for (int c = 0; c < k; ++c) {
      if (lasts[i] >= 0 && (lasts[i] ^ 1) == c) continue;
      Bits nxt(N);
      for (std::size_t s = 0; s < N; ++s)
        if (sets[i].test(s)) nxt.merge(step[s][static_cast<std::size_t>(c)]);
      const int t = get(nxt, c);
      d[i][static_cast<std::size_t>(c)] = t;
    }
  }
  if (start == 0) return Acceptor(rank);
  return Acceptor::from_table(rank, start, std::move(d), std::move(acc)).minimized();
}

Acceptor acceptor_of(const RatExpr& e, int rank) { return saturate(expr_to_automaton(e), rank); }

bool member(const RatExpr& e, const Word& g) {
  const int rank = std::max({1, e.max_generator(), g.max_generator()});
  return acceptor_of(e, rank).accepts(g);
}

Acceptor intersect_positive(const RatExpr& e) {
  if (e.max_generator() > 2) throw PreconditionError("intersect_positive needs an expression over F2");
  return intersect(acceptor_of(e, 2), Acceptor::positive_words(2));
}

}  // namespace verbalrat
