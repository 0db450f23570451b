#include "verbalrat/json_io.hpp"

#include <sstream>

#include "verbalrat/error.hpp"

namespace verbalrat {

namespace {

const FreeProduct kZZ = FreeProduct::integers();

Json words(const std::vector<Word>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(w.str());
  return a;
}

Json syllables(const std::set<Syllable>& k) {
  Json a = Json::array();
  for (const auto& s : k) a.push_back(to_string(s));
  return a;
}

Syllable decode_syllable(const std::string& s) {
  const auto u = kZZ.parse(s);
  if (u.syllable_length() != 1) throw ParseError("expected a single syllable, got '" + s + "'", 0);
  return u.front();
}

template <class T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("report: missing field '") + key + "'", 0);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: bad field '") + key + "': " + e.what(), 0);
  }
}

Word word_field(const Json& j, const char* key) { return parse_word(field<std::string>(j, key)); }

}  // namespace

Json encode(const Acceptor& a) {
  Json alphabet = Json::array();
  for (int i = 0; i < a.alphabet_size(); ++i) alphabet.push_back(Word{Letter::from_alphabet_index(i)}.str());
  Json trans = Json::array(), terminals = Json::array();
  for (int s = 0; s < a.num_states(); ++s) {
    Json row = Json::array();
    for (int i = 0; i < a.alphabet_size(); ++i) row.push_back(a.next(s, i));
    trans.push_back(row);
    if (a.accepting(s)) terminals.push_back(s);
  }
  return {{"rank", a.rank()}, {"states", a.num_states()}, {"initial", a.initial()}, {"alphabet", alphabet},
          {"transitions", trans}, {"terminals", terminals}};
}

Json encode(const ZRatSet& s) {
  Json ps = Json::array();
  for (const auto& p : s.progressions()) ps.push_back({{"base", p.base}, {"period", p.period}});
  return {{"text", s.str()}, {"progressions", ps}, {"finite", s.is_finite()}};
}

Json encode(const SplitTrace& t) {
  return {{"case", std::string(to_string(t.split_case))},
          {"i0", t.i0},
          {"j0", t.j0},
          {"c", t.c.str()},
          {"b_factor", std::string(to_string(t.b_factor))},
          {"b0", t.b0},
          {"u", t.u.str()}};
}

Json encode(const PositivizeTrace& t) {
  Json children = Json::array();
  for (const auto& c : t.children) children.push_back(encode(c));
  return {{"node", t.node},
          {"case", t.step_case},
          {"u", t.u.str()},
          {"v", t.v.str()},
          {"w", t.w.str()},
          {"r", t.r.str()},
          {"b0", t.b0},
          {"search_window", t.search_window},
          {"acceptor_states", t.acceptor_states},
          {"children", children}};
}

Json encode(const GapProfile& p, std::int64_t e) {
  Json table = Json::array();
  for (const auto& [k, d] : p.table) table.push_back({{"k", k}, {"delta_b", d.first}, {"delta_b_inverse", d.second}});
  Json j{{"b", to_string(p.b)}, {"b_inverse", to_string(p.b_inverse)}, {"table", table}, {"max_k", p.max_k()}, {"e", e}};
  j["gamma"] = p.b == p.b_inverse ? Json(nullptr) : Json(p.gamma(e));
  return j;
}

Json encode(const ScanReport& r) {
  Json hist = Json::array(), samples = Json::array();
  for (const auto& [g, n] : r.histogram) hist.push_back({{"gamma", g}, {"count", n}});
  for (const auto& s : r.samples)
    samples.push_back({{"sample_id", s.id}, {"syllable_length", s.syllable_length}, {"gamma", s.gamma}, {"max_k", s.max_k}});
  return {{"e", r.e}, {"max_gamma", r.max_gamma}, {"histogram", hist}, {"samples", samples}};
}

Json encode(const Family& f) {
  Json ms = Json::array();
  for (const auto& m : f.members)
    ms.push_back({{"n", m.n}, {"syllable_length", m.element.syllable_length()}, {"gamma", m.gamma}, {"element", m.element.str()}});
  return {{"b", to_string(f.b)}, {"members", ms}};
}

Json encode(const ValueVerdict& v) {
  return {{"answer", std::string(to_string(v.answer))}, {"method", v.method}, {"witness", words(v.witness)}};
}

Json encode(const WLength& l) {
  return {{"length", l.length ? Json(*l.length) : Json(nullptr)},
          {"lower_bound", l.lower_bound},
          {"exact", l.exact()},
          {"outside_subgroup", l.outside_subgroup},
          {"factors", words(l.factors)}};
}

Json encode(const AbelianizedVerbal& a) {
  return {{"e", a.e}, {"index", a.index ? Json(*a.index) : Json("infinite")}};
}

Json encode(const DichotomyResult& d) {
  Json j{{"kind", std::string(to_string(d.kind))}, {"budget_checked", d.budget_checked}};
  switch (d.kind) {
    case Dichotomy::case_1: j["k"] = syllables(d.k); break;
    case Dichotomy::case_2: j["axis"] = std::string(to_string(d.axis)); break;
    case Dichotomy::refuted:
      j["u"] = d.u.str();
      j["v"] = d.v.str();
      j["witness"] = d.witness ? d.witness->str() : "";
      j["certificate"] = d.certificate;
      j["family"] = encode(d.family);
      break;
  }
  return j;
}

Json encode(const DecompositionScheme& s) { return {{"k", syllables(s.k)}, {"n", s.n}}; }

Json encode(const BezoutTranscript& t) {
  Json images = Json::array();
  for (std::size_t i = 0; i < t.images.size(); ++i) images.push_back({{"variable", "x" + std::to_string(i + 1)}, {"image", t.images[i].str()}});
  return {{"w", t.w.str()}, {"rank", t.rank}, {"exponents", t.exponents}, {"e", t.e}, {"bezout", t.bezout},
          {"g", t.g.str()}, {"images", images}, {"value", t.value.str()}};
}

Json encode(const DecompositionTrace& t) {
  return {{"decomposable", t.decomposable}, {"reachable", t.reachable}, {"blocks", words(t.blocks)}};
}

Json encode(const RefutationReport& r) {
  Json branches = Json::array();
  for (const auto& b : r.branches)
    branches.push_back({{"id", b.id()}, {"sample", words(b.sample)}, {"dichotomy", encode(b.dichotomy)}});
  Json j{{"schema", kReportSchema},
         {"expr", r.expr.str()},
         {"w", r.w.str()},
         {"rank", r.rank},
         {"e", r.e},
         {"positive_acceptor", {{"fingerprint", r.positive_fingerprint}, {"states", r.positive_states}}},
         {"standard_form", r.standard_form},
         {"branches", branches},
         {"scheme", r.scheme ? encode(*r.scheme) : Json(nullptr)},
         {"outcome", std::string(to_string(r.outcome))},
         {"heuristic", r.heuristic}};
  Json cert;
  switch (r.outcome) {
    case Outcome::missing_value:
    case Outcome::inconsistent_branch:
    case Outcome::inconclusive:
      if (r.witness) {
        cert["t"] = r.witness->t;
        cert["l"] = r.witness->l;
        cert["u"] = r.witness->u.str();
        cert["transcript"] = encode(r.witness->transcript);
        cert["accepted"] = r.witness_accepted;
      }
      if (r.trace) cert["trace"] = encode(*r.trace);
      if (!r.branch_id.empty()) cert["branch"] = r.branch_id;
      break;
    case Outcome::foreign_element:
      cert["element"] = r.foreign ? r.foreign->str() : "";
      cert["method"] = r.certificate;
      cert["branch"] = r.refuting_branch;
      break;
  }
  j["certificate"] = cert;
  return j;
}

Json encode(const ReplayResult& r) { return {{"ok", r.ok}, {"checks", r.checks}, {"failures", r.failures}}; }

RefutationReport decode_report(const Json& j) {
  if (!j.is_object()) throw ParseError("report: expected an object", 0);
  if (field<std::string>(j, "schema") != kReportSchema) throw ParseError("report: unsupported schema", 0);
  RefutationReport r;
  r.expr = parse_rat_expr(field<std::string>(j, "expr"));
  r.w = word_field(j, "w");
  r.rank = field<int>(j, "rank");
  r.e = field<std::int64_t>(j, "e");
  const auto& pa = j.at("positive_acceptor");
  r.positive_fingerprint = field<std::string>(pa, "fingerprint");
  r.positive_states = field<int>(pa, "states");
  r.standard_form = field<std::string>(j, "standard_form");
  r.heuristic = field<bool>(j, "heuristic");
  if (j.contains("scheme") && !j.at("scheme").is_null()) {
    DecompositionScheme s;
    s.n = field<std::size_t>(j.at("scheme"), "n");
    for (const auto& x : field<std::vector<std::string>>(j.at("scheme"), "k")) s.k.insert(decode_syllable(x));
    r.scheme = s;
  }
  const auto outcome = field<std::string>(j, "outcome");
  const Json& c = j.at("certificate");
  if (outcome == "foreign-element") {
    r.outcome = Outcome::foreign_element;
    r.foreign = word_field(c, "element");
    r.certificate = field<std::string>(c, "method");
    r.refuting_branch = field<std::string>(c, "branch");
    return r;
  }
  if (outcome == "missing-value") {
    r.outcome = Outcome::missing_value;
  } else if (outcome == "inconsistent-branch") {
    r.outcome = Outcome::inconsistent_branch;
  } else if (outcome == "inconclusive") {
    r.outcome = Outcome::inconclusive;
  } else {
    throw ParseError("report: unknown outcome '" + outcome + "'", 0);
  }
  if (c.contains("u")) {
    WitnessWord ww;
    ww.t = field<std::int64_t>(c, "t");
    ww.l = field<std::int64_t>(c, "l");
    ww.u = word_field(c, "u");
    const Json& t = c.at("transcript");
    auto& tr = ww.transcript;
    tr.w = word_field(t, "w");
    tr.rank = field<int>(t, "rank");
    tr.exponents = field<std::vector<std::int64_t>>(t, "exponents");
    tr.e = field<std::int64_t>(t, "e");
    tr.bezout = field<std::vector<std::int64_t>>(t, "bezout");
    tr.g = word_field(t, "g");
    for (const auto& im : t.at("images")) tr.images.push_back(word_field(im, "image"));
    tr.value = word_field(t, "value");
    r.witness = ww;
    r.witness_accepted = field<bool>(c, "accepted");
  }
  if (c.contains("branch")) r.branch_id = field<std::string>(c, "branch");
  return r;
}

std::string scan_csv(const ScanReport& r) {
  std::ostringstream out;
  out << "sample_id,syllable_length,gamma,max_k\n";
  for (const auto& s : r.samples) out << s.id << ',' << s.syllable_length << ',' << s.gamma << ',' << s.max_k << '\n';
  return out.str();
}

std::string family_csv(const Family& f) {
  std::ostringstream out;
  out << "n,syllable_length,gamma,max_k\n";
  for (const auto& m : f.members)
    out << m.n << ',' << m.element.syllable_length() << ',' << m.gamma << ',' << gap_profile(FreeProduct::integers(), m.element, f.b).max_k()
        << '\n';
  return out.str();
}

}  // namespace verbalrat
