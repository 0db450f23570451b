// verbalrat command line front end. Every JSON report is wrapped as
// {schema, command, seed, cap_len, samples, result}.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "verbalrat/error.hpp"
#include "verbalrat/json_io.hpp"

using namespace verbalrat;

namespace {

struct Global {
  std::uint64_t seed = 1;
  std::size_t cap_len = 0;
  std::size_t samples = 0;
  std::string out;
  bool json = false;
};

Global g;

std::size_t cap_or(std::size_t fallback) { return g.cap_len ? g.cap_len : fallback; }
std::size_t samples_or(std::size_t fallback) { return g.samples ? g.samples : fallback; }

void write(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

void emit(const std::string& command, Json result) {
  Json j{{"schema", "verbalrat.cli/1"},
         {"command", command},
         {"seed", g.seed},
         {"cap_len", g.cap_len},
         {"samples", g.samples},
         {"result", std::move(result)}};
  write(j.dump(2) + "\n", g.out);
}

void emit_text(const std::string& command, const std::string& text, Json result) {
  if (g.json) {
    emit(command, std::move(result));
  } else {
    write(text + "\n", g.out);
  }
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

RatExpr load_expr(const std::string& file, const std::string& sexp) {
  if (!file.empty()) return parse_rat_expr(slurp(file));
  if (!sexp.empty()) return parse_rat_expr(sexp);
  throw PreconditionError("give --expr FILE or --sexp TEXT");
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ';'))
    if (item.find_first_not_of(" \t") != std::string::npos) out.push_back(item);
  return out;
}

Syllable parse_syllable(const FreeProduct& grp, const std::string& s) {
  const auto u = grp.parse(s);
  if (u.syllable_length() != 1) throw PreconditionError("expected a single syllable, got '" + s + "'");
  return u.front();
}

FactorModel model_of(std::int64_t order) { return order == 0 ? FactorModel::infinite() : FactorModel::finite(order); }

Json fp_json(const FPElement& u) {
  Json s = Json::array();
  for (const auto& x : u.syllables()) s.push_back({{"factor", std::string(to_string(x.factor))}, {"exponent", x.exponent}});
  return {{"element", u.str()}, {"syllables", s}, {"syllable_length", u.syllable_length()}};
}

void add_expr_options(CLI::App* c, std::string& file, std::string& sexp) {
  c->add_option("--expr", file, "Expression file (s-expression)");
  c->add_option("--sexp", sexp, "Expression text");
}

int run(int argc, char** argv) {
  CLI::App app{"Rational subsets, sign functions, gap criteria and verbal-set refutations over free groups"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "Random seed");
  app.add_option("--cap-len", g.cap_len, "Length cap (meaning depends on the command)");
  app.add_option("--samples", g.samples, "Sample count");
  app.add_option("--out", g.out, "Write the report here instead of stdout");
  app.add_flag("--json", g.json, "JSON output for text-valued commands");

  int status = 0;
  std::string a1, a2, file, sexp, word_text, b_text = "b", p_text, q_text, u_text, v_text, list_s, list_t, csv, report;
  std::int64_t k = 2, e = 2, bound = 3, a_order = 0, b_order = 0, n_max = 20;
  int rank = 0;
  std::size_t max_value = 0, budget = 3, products = 3;
  bool literal = false;
  std::vector<std::int64_t> a_pos, b_pos;

  // word
  auto* word = app.add_subcommand("word", "Free-group words");
  word->require_subcommand(1);
  auto* w_reduce = word->add_subcommand("reduce", "Free reduction");
  w_reduce->add_option("word", a1)->required();
  w_reduce->callback([&] {
    const auto w = parse_word(a1);
    emit_text("word reduce", w.str(), {{"input", a1}, {"result", w.str()}, {"length", w.size()}});
  });
  auto* w_inv = word->add_subcommand("inv", "Inverse");
  w_inv->add_option("word", a1)->required();
  w_inv->callback([&] {
    const auto w = inv(parse_word(a1));
    emit_text("word inv", w.str(), {{"input", a1}, {"result", w.str()}, {"length", w.size()}});
  });
  auto* w_mul = word->add_subcommand("mul", "Product");
  w_mul->add_option("u", a1)->required();
  w_mul->add_option("v", a2)->required();
  w_mul->callback([&] {
    const auto w = parse_word(a1) * parse_word(a2);
    emit_text("word mul", w.str(), {{"input", {a1, a2}}, {"result", w.str()}, {"length", w.size()}});
  });
  auto* w_pow = word->add_subcommand("pow", "Power");
  w_pow->add_option("word", a1)->required();
  w_pow->add_option("k", k)->required();
  w_pow->callback([&] {
    const auto w = pow(parse_word(a1), k);
    emit_text("word pow", w.str(), {{"input", a1}, {"k", k}, {"result", w.str()}, {"length", w.size()}});
  });
  auto* w_class = word->add_subcommand("classify", "Exponent sums, e(w), Bezout coefficients and class");
  w_class->add_option("word", a1)->required();
  w_class->add_option("--rank", rank);
  w_class->callback([&] {
    const auto w = parse_word(a1);
    const int r = rank > 0 ? rank : std::max(1, w.max_generator());
    const auto prof = exponent_profile(w, r);
    const auto c = std::string(to_string(classify_word(w, r)));
    emit_text("word classify", c + " e=" + std::to_string(prof.e),
              {{"input", a1}, {"rank", r}, {"exponents", prof.exponents}, {"e", prof.e},
               {"bezout", prof.bezout ? Json(*prof.bezout) : Json(nullptr)}, {"class", c}});
  });
  auto* w_root = word->add_subcommand("root", "The e-th root, if any");
  w_root->add_option("word", a1)->required();
  w_root->add_option("--e", e)->required();
  w_root->callback([&] {
    const auto r = root_extract(parse_word(a1), e);
    emit_text("word root", r ? r->str() : "none", {{"input", a1}, {"e", e}, {"root", r ? Json(r->str()) : Json(nullptr)}});
  });
  auto* w_bez = word->add_subcommand("bezout", "w(g^r1, ..., g^rn) = g^e");
  w_bez->add_option("word", a1)->required();
  w_bez->add_option("--g", a2)->required();
  w_bez->add_option("--rank", rank);
  w_bez->callback([&] {
    const auto w = parse_word(a1);
    const int r = rank > 0 ? rank : std::max(1, w.max_generator());
    const auto v = bezout_substitution(w, r, parse_word(a2));
    emit_text("word bezout", v.str(), {{"input", a1}, {"g", a2}, {"rank", r}, {"result", v.str()}});
  });
  auto* w_cyc = word->add_subcommand("cyclic", "Cyclic reduction u = c^-1 k c");
  w_cyc->add_option("word", a1)->required();
  w_cyc->callback([&] {
    const auto cr = cyclic_reduce(parse_word(a1));
    emit_text("word cyclic", cr.core.str(), {{"input", a1}, {"conjugator", cr.conjugator.str()}, {"core", cr.core.str()}});
  });

  // fp
  auto* fp = app.add_subcommand("fp", "Free products of two cyclic groups (a, b)");
  fp->require_subcommand(1);
  fp->add_option("--a-order", a_order, "Order of factor A (0 = infinite)");
  fp->add_option("--b-order", b_order, "Order of factor B (0 = infinite)");
  auto group = [&] { return FreeProduct(model_of(a_order), model_of(b_order)); };
  auto* fp_norm = fp->add_subcommand("normal", "Normal form");
  fp_norm->add_option("element", a1)->required();
  fp_norm->callback([&] { emit("fp normal", fp_json(group().parse(a1))); });
  auto* fp_mul = fp->add_subcommand("mul", "Product");
  fp_mul->add_option("u", a1)->required();
  fp_mul->add_option("v", a2)->required();
  fp_mul->callback([&] {
    const auto grp = group();
    emit("fp mul", fp_json(grp.mul(grp.parse(a1), grp.parse(a2))));
  });
  auto* fp_inv = fp->add_subcommand("inv", "Inverse");
  fp_inv->add_option("element", a1)->required();
  fp_inv->callback([&] {
    const auto grp = group();
    emit("fp inv", fp_json(grp.inv(grp.parse(a1))));
  });
  auto* fp_core = fp->add_subcommand("core", "Core, conjugator and cyclic form");
  fp_core->add_option("element", a1)->required();
  fp_core->callback([&] {
    const auto grp = group();
    const auto u = grp.parse(a1);
    const auto d = grp.core_decompose(u);
    Json conj = Json::array();
    for (const auto& s : d.conjugator_syllables) conj.push_back(to_string(s));
    auto j = fp_json(u);
    j["core"] = d.core.str();
    j["conjugator"] = conj;
    j["cyclic_form"] = grp.cyclic_form(u).str();
    emit("fp core", j);
  });

  // rat
  auto* rat = app.add_subcommand("rat", "Rational subsets of F2");
  rat->require_subcommand(1);
  add_expr_options(rat, file, sexp);
  auto* r_mem = rat->add_subcommand("member", "Exact membership");
  r_mem->add_option("word", a1)->required();
  r_mem->callback([&] {
    const auto ex = load_expr(file, sexp);
    emit("rat member", {{"expr", ex.str()}, {"word", parse_word(a1).str()}, {"member", member(ex, parse_word(a1))}});
  });
  auto* r_enum = rat->add_subcommand("enum", "Members up to --cap-len (default 6), from the acceptor");
  r_enum->callback([&] {
    const auto ex = load_expr(file, sexp);
    const auto a = acceptor_of(ex, std::max(2, ex.max_generator()));
    Json ms = Json::array();
    for (const auto& w : a.members_up_to(cap_or(6), samples_or(10000))) ms.push_back(w.str());
    emit("rat enum", {{"expr", ex.str()}, {"complexity", ex.complexity()}, {"members", ms}});
  });
  auto* r_sf = rat->add_subcommand("standard-form", "Standard form");
  r_sf->callback([&] {
    const auto ex = load_expr(file, sexp);
    const auto sf = standard_form(ex);
    Json sums = Json::array();
    for (const auto& m : sf.summands) {
      Json st = Json::array();
      for (const auto& x : m.starred) st.push_back(x.str());
      Json co = Json::array();
      for (const auto& x : m.coefficients) co.push_back(x.str());
      sums.push_back({{"coefficients", co}, {"starred", st}});
    }
    emit("rat standard-form", {{"expr", ex.str()}, {"text", sf.str()}, {"summands", sums}});
  });
  auto* r_acc = rat->add_subcommand("acceptor", "Saturated minimal acceptor");
  r_acc->callback([&] {
    const auto ex = load_expr(file, sexp);
    const auto a = acceptor_of(ex, std::max(2, ex.max_generator())).minimized();
    emit("rat acceptor", {{"expr", ex.str()}, {"acceptor", encode(a)}});
  });
  auto* r_pos = rat->add_subcommand("positive", "Positive members (acceptor and members up to --cap-len)");
  r_pos->callback([&] {
    const auto ex = load_expr(file, sexp);
    const auto a = intersect_positive(ex).minimized();
    Json ms = Json::array();
    for (const auto& w : a.members_up_to(cap_or(6), samples_or(10000))) ms.push_back(w.str());
    emit("rat positive", {{"expr", ex.str()}, {"acceptor", encode(a)}, {"finite", a.is_finite()}, {"members", ms}});
  });

  // sign
  auto* sign = app.add_subcommand("sign", "Sign functions and positivization");
  sign->require_subcommand(1);
  auto* s_split = sign->add_subcommand("split", "Middle element for S T inside Pos");
  s_split->add_option("--s", list_s, "Elements of S separated by ';'")->required();
  s_split->add_option("--t", list_t, "Elements of T separated by ';'")->required();
  s_split->add_option("--a-order", a_order);
  s_split->add_option("--b-order", b_order);
  s_split->add_option("--a-positive", a_pos, "Positive residues of a cyclic factor A");
  s_split->add_option("--b-positive", b_pos, "Positive residues of a cyclic factor B");
  s_split->callback([&] {
    auto fs = [](std::int64_t m, const std::vector<std::int64_t>& pos) { return m == 0 ? FactorSign::integers() : FactorSign::cyclic(m, pos); };
    const SignModel sigma(fs(a_order, a_pos), fs(b_order, b_pos));
    std::vector<FPElement> s, t;
    for (const auto& x : split_list(list_s)) s.push_back(sigma.group().parse(x));
    for (const auto& x : split_list(list_t)) t.push_back(sigma.group().parse(x));
    emit("sign split", encode(split_product(s, t, sigma)));
  });
  auto* s_pos = sign->add_subcommand("positivize", "Positive-leaf expression for u L v");
  add_expr_options(s_pos, file, sexp);
  s_pos->add_option("--u", u_text);
  s_pos->add_option("--v", v_text);
  s_pos->callback([&] {
    const auto ex = load_expr(file, sexp);
    const auto u = u_text.empty() ? Word{} : parse_word(u_text), v = v_text.empty() ? Word{} : parse_word(v_text);
    try {
      const auto r = positivize(ex, u, v);
      emit("sign positivize", {{"expr", ex.str()}, {"u", u.str()}, {"v", v.str()}, {"positive", true}, {"result", r.expr.str()},
                               {"complexity", {{"input", ex.complexity()}, {"output", r.expr.complexity()}}}, {"trace", encode(r.trace)}});
    } catch (const NegativeMemberError& err) {
      emit("sign positivize", {{"expr", ex.str()}, {"u", u.str()}, {"v", v.str()}, {"positive", false}, {"negative_member", err.witness().str()}});
    }
  });

  // gaps
  auto* gaps = app.add_subcommand("gaps", "Gap functions over Z*Z");
  gaps->require_subcommand(1);
  gaps->add_option("--b", b_text, "The syllable b");
  gaps->add_option("--e", e, "Modulus e");
  const auto zz = FreeProduct::integers();
  auto* g_prof = gaps->add_subcommand("profile", "delta tables and gamma");
  g_prof->add_option("--u", u_text)->required();
  g_prof->callback([&] {
    const auto p = gap_profile(zz, zz.parse(u_text), parse_syllable(zz, b_text));
    auto j = encode(p, e);
    j["u"] = zz.parse(u_text).str();
    emit("gaps profile", j);
  });
  auto* g_scan = gaps->add_subcommand("scan", "Random values of w profiled against b");
  g_scan->add_option("--word", word_text)->required();
  g_scan->add_option("--rank", rank);
  g_scan->add_option("--bound", bound, "Exponent bound of substituted elements");
  g_scan->add_option("--max-value", max_value, "Syllable bound on values (0 = none)");
  g_scan->add_option("--csv", csv, "Also write per-sample CSV here");
  g_scan->callback([&] {
    const auto w = parse_word(word_text);
    ScanConfig c;
    c.seed = g.seed;
    c.samples = samples_or(1000);
    c.max_arg_syllables = cap_or(10);
    c.exponent_bound = bound;
    c.max_value_syllables = max_value;
    const auto r = criterion_scan(w, rank > 0 ? rank : std::max(1, w.max_generator()), parse_syllable(zz, b_text), c);
    if (!csv.empty()) write(scan_csv(r), csv);
    auto j = encode(r);
    j["word"] = w.str();
    j["b"] = b_text;
    j["exponent_bound"] = bound;
    j["max_value_syllables"] = max_value;
    emit("gaps scan", j);
  });
  auto* g_fam = gaps->add_subcommand("family", "p uu v^1 uu ... v^n uu q");
  g_fam->add_option("--p", p_text);
  g_fam->add_option("--u", u_text)->required();
  g_fam->add_option("--v", v_text)->required();
  g_fam->add_option("--q", q_text);
  g_fam->add_option("--n", n_max);
  g_fam->add_flag("--literal", literal, "Use p uu v^n uu q instead");
  g_fam->add_option("--csv", csv);
  g_fam->callback([&] {
    auto el = [&](const std::string& s) { return s.empty() ? FPElement{} : zz.parse(s); };
    const auto f = literal ? power_family(el(p_text), el(u_text), el(v_text), el(q_text), n_max, e)
                           : unbounded_family(el(p_text), el(u_text), el(v_text), el(q_text), n_max, e);
    if (!csv.empty()) write(family_csv(f), csv);
    auto j = encode(f);
    j["form"] = literal ? "literal" : "staircase";
    j["e"] = e;
    emit("gaps family", j);
  });
  auto* g_exh = gaps->add_subcommand("exhaustive", "Max gamma over all e-th powers up to --cap-len syllables");
  g_exh->add_option("--bound", bound);
  g_exh->callback([&] {
    const auto m = exhaustive_power_gamma_max(e, parse_syllable(zz, b_text), cap_or(12), bound);
    emit("gaps exhaustive", {{"e", e}, {"b", b_text}, {"max_syllables", cap_or(12)}, {"exponent_bound", bound}, {"max_gamma", m}});
  });

  // verbal
  auto* verbal = app.add_subcommand("verbal", "Verbal sets w[F2]");
  verbal->require_subcommand(1);
  verbal->add_option("--word", word_text, "The word w")->required();
  verbal->add_option("--rank", rank, "Variables of w");
  auto query = [&] {
    VerbalQuery q;
    q.w = parse_word(word_text);
    q.rank = rank;
    q.cap = cap_or(2);
    q.product_cap = products;
    return q;
  };
  auto* v_enum = verbal->add_subcommand("enum", "Values with substitutions of length <= --cap-len");
  v_enum->callback([&] {
    const auto q = query();
    Json vs = Json::array();
    for (const auto& x : enumerate_values(q)) vs.push_back(x.str());
    emit("verbal enum", {{"word", q.w.str()}, {"cap", q.cap}, {"count", vs.size()}, {"values", vs}});
  });
  auto* v_mem = verbal->add_subcommand("member", "Is g a value of w");
  v_mem->add_option("g", a1)->required();
  v_mem->callback([&] {
    const auto q = query();
    auto j = encode(is_value(q, parse_word(a1)));
    j["word"] = q.w.str();
    j["g"] = parse_word(a1).str();
    emit("verbal member", j);
  });
  auto* v_len = verbal->add_subcommand("length", "w-length by BFS");
  v_len->add_option("g", a1)->required();
  v_len->add_option("--products", products, "Maximal number of factors");
  v_len->callback([&] {
    const auto q = query();
    auto j = encode(w_length(q, parse_word(a1)));
    j["word"] = q.w.str();
    j["g"] = parse_word(a1).str();
    emit("verbal length", j);
  });
  auto* v_abel = verbal->add_subcommand("abelian", "Abelianized verbal subgroup");
  v_abel->callback([&] {
    const auto w = parse_word(word_text);
    const int r = rank > 0 ? rank : 2;
    auto j = encode(abelianized_verbal(w, r));
    j["word"] = w.str();
    j["rank"] = r;
    emit("verbal abelian", j);
  });
  auto* v_dich = verbal->add_subcommand("dichotomy", "Support dichotomy for p E* q");
  v_dich->add_option("--elements", list_s, "Elements of E (a/b grammar) separated by ';'")->required();
  v_dich->add_option("--p", p_text);
  v_dich->add_option("--q", q_text);
  v_dich->add_option("--budget", budget);
  v_dich->callback([&] {
    std::vector<FPElement> es;
    for (const auto& x : split_list(list_s)) es.push_back(zz.parse(x));
    auto el = [&](const std::string& s) { return s.empty() ? FPElement{} : zz.parse(s); };
    auto j = encode(support_dichotomy_check(es, el(p_text), el(q_text), parse_word(word_text), budget));
    j["word"] = parse_word(word_text).str();
    emit("verbal dichotomy", j);
  });

  // refute
  auto* ref = app.add_subcommand("refute", "Refute a candidate description of the positive w-values");
  ref->add_option("--word", word_text);
  add_expr_options(ref, file, sexp);
  ref->add_option("--replay", report, "Replay a saved report instead");
  ref->callback([&] {
    if (!report.empty()) {
      auto j = Json::parse(slurp(report));
      if (j.is_object() && j.value("schema", "") == "verbalrat.cli/1") j = j.at("result");
      const auto r = decode_report(j);
      const auto res = replay(r);
      emit("refute replay", {{"report", report}, {"outcome", std::string(to_string(r.outcome))}, {"replay", encode(res)}});
      if (!res.ok) status = 3;
      return;
    }
    if (word_text.empty()) throw PreconditionError("refute needs --word");
    const auto r = refute(load_expr(file, sexp), parse_word(word_text));
    const auto res = replay(r);
    auto j = encode(r);
    j["replay"] = encode(res);
    emit("refute", j);
    if (!res.ok) status = 3;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
