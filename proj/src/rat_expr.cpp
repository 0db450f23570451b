#include "verbalrat/rat_expr.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "verbalrat/error.hpp"

namespace verbalrat {

struct RatExpr::Node {
  Kind kind = Kind::finite;
  std::vector<Word> elements;
  std::vector<RatExpr> children;
  int complexity = 0;
  bool finite = true;
  bool empty = true;
  std::vector<Word> finite_set;
  int max_gen = 0;
  std::size_t node_count = 1;
};

namespace {

constexpr std::size_t kFiniteSetCap = 1'000'000;

void sort_unique(std::vector<Word>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

}  // namespace

RatExpr::RatExpr() : RatExpr(finite({})) {}

RatExpr RatExpr::finite(std::vector<Word> elements) {
  auto n = std::make_shared<Node>();
  sort_unique(elements);
  n->kind = Kind::finite;
  n->elements = std::move(elements);
  n->finite_set = n->elements;
  n->empty = n->elements.empty();
  for (const auto& w : n->elements) n->max_gen = std::max(n->max_gen, w.max_generator());
  return RatExpr(std::move(n));
}

RatExpr RatExpr::unite(const RatExpr& l, const RatExpr& r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::union_of;
  n->children = {l, r};
  n->empty = l.node_->empty && r.node_->empty;
  n->finite = l.node_->finite && r.node_->finite;
  if (n->finite) {
    n->finite_set = l.node_->finite_set;
    n->finite_set.insert(n->finite_set.end(), r.node_->finite_set.begin(), r.node_->finite_set.end());
    sort_unique(n->finite_set);
  }
  n->complexity = n->finite ? 0 : 1 + std::max(l.complexity(), r.complexity());
  n->max_gen = std::max(l.node_->max_gen, r.node_->max_gen);
  n->node_count = 1 + l.node_->node_count + r.node_->node_count;
  return RatExpr(std::move(n));
}

RatExpr RatExpr::product(const RatExpr& l, const RatExpr& r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::product;
  n->children = {l, r};
  n->empty = l.node_->empty || r.node_->empty;
  n->finite = n->empty || (l.node_->finite && r.node_->finite);
  if (n->finite && !n->empty) {
    const auto& a = l.node_->finite_set;
    const auto& b = r.node_->finite_set;
    if (a.size() * b.size() > kFiniteSetCap) throw CapExceeded("finite product too large to materialize");
    n->finite_set.reserve(a.size() * b.size());
    for (const auto& x : a)
      for (const auto& y : b) n->finite_set.push_back(mul(x, y));
    sort_unique(n->finite_set);
  }
  n->complexity = n->finite ? 0 : 1 + std::max(l.complexity(), r.complexity());
  n->max_gen = std::max(l.node_->max_gen, r.node_->max_gen);
  n->node_count = 1 + l.node_->node_count + r.node_->node_count;
  return RatExpr(std::move(n));
}

RatExpr RatExpr::star(const RatExpr& inner) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::star;
  n->children = {inner};
  n->empty = false;
  const auto& fs = inner.node_->finite_set;
  n->finite = inner.node_->finite && std::all_of(fs.begin(), fs.end(), [](const Word& w) { return w.is_identity(); });
  if (n->finite) n->finite_set = {Word{}};
  n->complexity = n->finite ? 0 : 1 + inner.complexity();
  n->max_gen = inner.node_->max_gen;
  n->node_count = 1 + inner.node_->node_count;
  return RatExpr(std::move(n));
}

RatExpr::Kind RatExpr::kind() const { return node_->kind; }
const std::vector<Word>& RatExpr::elements() const { return node_->elements; }
const RatExpr& RatExpr::left() const { return node_->children.at(0); }
const RatExpr& RatExpr::right() const { return node_->children.at(1); }
const RatExpr& RatExpr::inner() const { return node_->children.at(0); }
int RatExpr::complexity() const { return node_->complexity; }
bool RatExpr::denotes_finite_set() const { return node_->finite; }
bool RatExpr::denotes_empty_set() const { return node_->empty; }
int RatExpr::max_generator() const { return node_->max_gen; }
std::size_t RatExpr::node_count() const { return node_->node_count; }

const std::vector<Word>& RatExpr::finite_elements() const {
  if (!node_->finite) throw PreconditionError("expression denotes an infinite set");
  return node_->finite_set;
}

bool operator==(const RatExpr& a, const RatExpr& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind) return false;
  if (a.node_->kind == RatExpr::Kind::finite) return a.node_->elements == b.node_->elements;
  return a.node_->children == b.node_->children;
}

std::string compact(const Word& w) {
  std::string s = w.str();
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  return s;
}

std::string RatExpr::str() const {
  switch (node_->kind) {
    case Kind::finite: {
      std::string s = "(fin";
      for (const auto& w : node_->elements) s += ' ' + compact(w);
      return s + ')';
    }
    case Kind::union_of: return "(union " + left().str() + ' ' + right().str() + ')';
    case Kind::product: return "(prod " + left().str() + ' ' + right().str() + ')';
    case Kind::star: return "(star " + inner().str() + ')';
  }
  return {};
}

RatExpr simplify_union(const RatExpr& l, const RatExpr& r) {
  if (l.denotes_empty_set()) return r;
  if (r.denotes_empty_set()) return l;
  if (l == r) return l;
  if (l.kind() == RatExpr::Kind::finite && r.kind() == RatExpr::Kind::finite) {
    auto all = l.elements();
    all.insert(all.end(), r.elements().begin(), r.elements().end());
    return RatExpr::finite(std::move(all));
  }
  return RatExpr::unite(l, r);
}

RatExpr simplify_product(const RatExpr& l, const RatExpr& r) {
  if (l.denotes_empty_set() || r.denotes_empty_set()) return RatExpr();
  auto is_one = [](const RatExpr& e) {
    return e.kind() == RatExpr::Kind::finite && e.elements().size() == 1 && e.elements()[0].is_identity();
  };
  if (is_one(l)) return r;
  if (is_one(r)) return l;
  if (l.kind() == RatExpr::Kind::finite && r.kind() == RatExpr::Kind::finite &&
      l.elements().size() * r.elements().size() <= 64) {
    std::vector<Word> out;
    for (const auto& a : l.elements())
      for (const auto& b : r.elements()) out.push_back(mul(a, b));
    return RatExpr::finite(std::move(out));
  }
  return RatExpr::product(l, r);
}

// ---------------------------------------------------------------- parsing

namespace {

class SexpParser {
 public:
  explicit SexpParser(std::string_view t) : text_(t) {}

  RatExpr parse() {
    RatExpr e = expr();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::string_view ident() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected operator name", start);
    return text_.substr(start, pos_ - start);
  }

  Word word_token() {
    skip_ws();
    const std::size_t start = pos_;
    std::string_view tok;
    if (text_[pos_] == '[') {
      const auto close = text_.find(']', pos_);
      if (close == std::string_view::npos) throw ParseError("unterminated '['", start);
      tok = text_.substr(pos_ + 1, close - pos_ - 1);
      pos_ = close + 1;
    } else {
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != ')' &&
             text_[pos_] != '(')
        ++pos_;
      tok = text_.substr(start, pos_ - start);
    }
    try {
      return parse_word(tok);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad word '") + std::string(tok) + "'", start + (text_[start] == '[' ? 1 : 0) + e.position());
    }
  }

  RatExpr expr() {
    expect('(');
    const std::size_t op_pos = pos_;
    const auto op = ident();
    if (op == "fin") {
      std::vector<Word> ws;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unterminated (fin ...)", op_pos);
        if (text_[pos_] == ')') break;
        ws.push_back(word_token());
      }
      expect(')');
      return RatExpr::finite(std::move(ws));
    }
    std::vector<RatExpr> args;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) throw ParseError("unterminated expression", op_pos);
      if (text_[pos_] == ')') break;
      args.push_back(expr());
    }
    expect(')');
    if (op == "star") {
      if (args.size() != 1) throw ParseError("star takes exactly one argument", op_pos);
      return RatExpr::star(args[0]);
    }
    if (op == "union" || op == "prod") {
      if (args.empty()) throw ParseError(std::string(op) + " needs at least one argument", op_pos);
      RatExpr acc = args[0];
      for (std::size_t i = 1; i < args.size(); ++i)
        acc = op == "union" ? RatExpr::unite(acc, args[i]) : RatExpr::product(acc, args[i]);
      return acc;
    }
    throw ParseError("unknown operator '" + std::string(op) + "'", op_pos);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RatExpr parse_rat_expr(std::string_view text) { return SexpParser(text).parse(); }

// ---------------------------------------------------------------- enumeration

namespace {

using WordSet = std::unordered_set<Word, WordHash>;

std::size_t product_length(const Word& a, const Word& b) {
  const auto& x = a.letters();
  const auto& y = b.letters();
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[x.size() - 1 - k].cancels(y[k])) ++k;
  return x.size() + y.size() - 2 * k;
}

std::set<int> letters_of(const RatExpr& e) {
  std::set<int> out;
  switch (e.kind()) {
    case RatExpr::Kind::finite:
      for (const auto& w : e.elements())
        for (Letter l : w.letters()) out.insert(l.code());
      break;
    case RatExpr::Kind::union_of:
    case RatExpr::Kind::product: {
      out = letters_of(e.left());
      const auto r = letters_of(e.right());
      out.insert(r.begin(), r.end());
      break;
    }
    case RatExpr::Kind::star: out = letters_of(e.inner()); break;
  }
  return out;
}

/// True if no letter of `a` has its inverse in `b`, so concatenations never cancel.
bool cancellation_free(const std::set<int>& a, const std::set<int>& b) {
  return std::none_of(a.begin(), a.end(), [&](int c) { return b.count(-c) > 0; });
}

// Elements up to `bound`; operands that may cancel are enumerated up to the global ceiling instead.
class Enumerator {
 public:
  Enumerator(std::size_t ceiling, const EnumerateOptions& o) : ceiling_(ceiling), opts_(o) {}

  std::vector<Word> run(const RatExpr& e, std::size_t bound) {
    switch (e.kind()) {
      case RatExpr::Kind::finite: {
        std::vector<Word> out;
        for (const auto& w : e.elements())
          if (w.size() <= bound) out.push_back(w);
        return out;
      }
      case RatExpr::Kind::union_of: {
        auto a = run(e.left(), bound);
        auto b = run(e.right(), bound);
        a.insert(a.end(), b.begin(), b.end());
        sort_unique(a);
        return a;
      }
      case RatExpr::Kind::product: {
        const std::size_t inner =
            cancellation_free(letters_of(e.left()), letters_of(e.right())) ? bound : ceiling_;
        const auto a = run(e.left(), inner);
        if (a.empty()) return {};
        const auto b = run(e.right(), inner);
        return join(a, b, bound);
      }
      case RatExpr::Kind::star: {
        const auto alpha = letters_of(e.inner());
        const std::size_t inner = cancellation_free(alpha, alpha) ? bound : ceiling_;
        auto gens = run(e.inner(), inner);
        std::erase_if(gens, [](const Word& w) { return w.is_identity(); });
        const RightIndex idx(std::move(gens));
        WordSet seen{Word{}};
        std::vector<Word> frontier{Word{}};
        while (!frontier.empty()) {
          std::vector<Word> next;
          for (const auto& x : frontier) {
            idx.products(x, inner, [&](const Word& g) {
              Word y = mul(x, g);
              if (seen.insert(y).second) next.push_back(std::move(y));
            });
          }
          guard(seen.size());
          frontier = std::move(next);
        }
        std::vector<Word> out;
        for (const auto& w : seen)
          if (w.size() <= bound) out.push_back(w);
        return out;
      }
    }
    return {};
  }

 private:
  // Right operands sorted shortlex and indexed by prefix, so that for a left operand x the
  // partners y with |xy| <= bound are found without scanning every pair.
  class RightIndex {
   public:
    explicit RightIndex(std::vector<Word> b) : b_(std::move(b)) {
      std::sort(b_.begin(), b_.end());
      max_b_ = b_.empty() ? 0 : b_.back().size();
      index_.resize(max_b_ + 1);
      for (const auto& y : b_)
        for (std::size_t k = 1; k <= y.size(); ++k) index_[k][y.slice(0, k)].push_back(&y);
    }

    template <class Emit>
    void products(const Word& x, std::size_t bound, Emit&& emit) const {
      const std::size_t la = x.size();
      const std::size_t free_len = bound >= la ? bound - la : 0;
      if (bound >= la) {
        const auto end = std::upper_bound(b_.begin(), b_.end(), free_len,
                                          [](std::size_t l, const Word& w) { return l < w.size(); });
        for (auto it = b_.begin(); it != end; ++it) emit(*it);
      }
      std::vector<Letter> key;
      for (std::size_t k = 1; k <= la && k <= max_b_; ++k) {
        key.push_back(x[la - k].inverse());
        const auto found = index_[k].find(Word(key));
        if (found == index_[k].end()) break;
        for (const Word* y : found->second) {
          if (y->size() <= free_len) continue;
          if (y->size() + la > bound + 2 * k) break;
          if (product_length(x, *y) == la + y->size() - 2 * k) emit(*y);
        }
      }
    }

   private:
    std::vector<Word> b_;
    std::size_t max_b_ = 0;
    std::vector<std::unordered_map<Word, std::vector<const Word*>, WordHash>> index_;
  };

  std::vector<Word> join(const std::vector<Word>& a, std::vector<Word> b, std::size_t bound) {
    const RightIndex idx(std::move(b));
    WordSet out;
    for (const auto& x : a) {
      idx.products(x, bound, [&](const Word& y) { out.insert(mul(x, y)); });
      guard(out.size());
    }
    return {out.begin(), out.end()};
  }

  void guard(std::size_t n) const {
    if (n > opts_.max_elements) throw CapExceeded("bounded enumeration exceeded " + std::to_string(opts_.max_elements) + " elements");
  }

  std::size_t ceiling_;
  const EnumerateOptions& opts_;
};

}  // namespace

std::set<Word> enumerate_bounded(const RatExpr& e, std::size_t max_len, const EnumerateOptions& opts) {
  if (max_len > opts.max_len_cap) {
    throw CapExceeded("enumeration length " + std::to_string(max_len) + " exceeds cap " + std::to_string(opts.max_len_cap));
  }
  Enumerator en(max_len + opts.slack, opts);
  auto ws = en.run(e, max_len);
  return {std::make_move_iterator(ws.begin()), std::make_move_iterator(ws.end())};
}

// ---------------------------------------------------------------- transforms

RatExpr conjugate_expr(const RatExpr& e, const Word& g) {
  switch (e.kind()) {
    case RatExpr::Kind::finite: {
      const Word gi = inv(g);
      std::vector<Word> out;
      for (const auto& w : e.elements()) out.push_back(mul(gi, mul(w, g)));
      return RatExpr::finite(std::move(out));
    }
    case RatExpr::Kind::union_of: return RatExpr::unite(conjugate_expr(e.left(), g), conjugate_expr(e.right(), g));
    case RatExpr::Kind::product: return RatExpr::product(conjugate_expr(e.left(), g), conjugate_expr(e.right(), g));
    case RatExpr::Kind::star: return RatExpr::star(conjugate_expr(e.inner(), g));
  }
  return {};
}

RatExpr hom_image(const RatExpr& e, std::span<const Word> images) {
  switch (e.kind()) {
    case RatExpr::Kind::finite: {
      std::vector<Word> out;
      for (const auto& w : e.elements()) out.push_back(substitute(w, images));
      return RatExpr::finite(std::move(out));
    }
    case RatExpr::Kind::union_of: return RatExpr::unite(hom_image(e.left(), images), hom_image(e.right(), images));
    case RatExpr::Kind::product: return RatExpr::product(hom_image(e.left(), images), hom_image(e.right(), images));
    case RatExpr::Kind::star: return RatExpr::star(hom_image(e.inner(), images));
  }
  return {};
}

// ---------------------------------------------------------------- standard form

namespace {

constexpr std::size_t kSummandCap = 200'000;

std::vector<Summand> summands_of(const RatExpr& e) {
  switch (e.kind()) {
    case RatExpr::Kind::finite: {
      std::vector<Summand> out;
      for (const auto& w : e.elements()) out.push_back({{w}, {}});
      return out;
    }
    case RatExpr::Kind::union_of: {
      auto a = summands_of(e.left());
      auto b = summands_of(e.right());
      a.insert(a.end(), b.begin(), b.end());
      return a;
    }
    case RatExpr::Kind::product: {
      const auto a = summands_of(e.left());
      const auto b = summands_of(e.right());
      if (a.size() * b.size() > kSummandCap) throw CapExceeded("standard form has too many summands");
      std::vector<Summand> out;
      out.reserve(a.size() * b.size());
      for (const auto& x : a) {
        for (const auto& y : b) {
          Summand s;
          s.coefficients.assign(x.coefficients.begin(), x.coefficients.end() - 1);
          s.coefficients.push_back(mul(x.coefficients.back(), y.coefficients.front()));
          s.coefficients.insert(s.coefficients.end(), y.coefficients.begin() + 1, y.coefficients.end());
          s.starred = x.starred;
          s.starred.insert(s.starred.end(), y.starred.begin(), y.starred.end());
          out.push_back(std::move(s));
        }
      }
      return out;
    }
    case RatExpr::Kind::star: return {Summand{{Word{}, Word{}}, {e.inner()}}};
  }
  return {};
}

}  // namespace

StandardForm standard_form(const RatExpr& e) { return {summands_of(e)}; }

RatExpr StandardForm::to_expr() const {
  RatExpr acc;
  bool first = true;
  for (const auto& s : summands) {
    RatExpr term = RatExpr::single(s.coefficients.back());
    for (std::size_t j = s.starred.size(); j-- > 0;) {
      term = RatExpr::product(RatExpr::star(s.starred[j]), term);
      term = RatExpr::product(RatExpr::single(s.coefficients[j]), term);
    }
    acc = first ? term : RatExpr::unite(acc, term);
    first = false;
  }
  return acc;
}

std::string StandardForm::str() const {
  if (summands.empty()) return "(empty)";
  std::string out;
  for (const auto& s : summands) {
    if (!out.empty()) out += " | ";
    for (std::size_t j = 0; j < s.starred.size(); ++j) {
      out += compact(s.coefficients[j]) + ' ' + s.starred[j].str() + "* ";
    }
    out += compact(s.coefficients.back());
  }
  return out;
}

}  // namespace verbalrat
