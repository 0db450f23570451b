#include <gtest/gtest.h>

#include <random>

#include "verbalrat/error.hpp"
#include "verbalrat/json_io.hpp"
#include "oracles.hpp"

using namespace verbalrat;

namespace {

RatExpr E(std::string_view s) { return parse_rat_expr(s); }
const FreeProduct kZZ = FreeProduct::integers();

}  // namespace

TEST(JsonIo, AcceptorExport) {
  const auto a = acceptor_of(E("(star (fin x1x2))"), 2).minimized();
  const auto j = encode(a);
  EXPECT_EQ(j["alphabet"], Json::array({"x1", "x1^-1", "x2", "x2^-1"}));
  EXPECT_EQ(j["states"].get<int>(), a.num_states());
  ASSERT_EQ(j["transitions"].size(), static_cast<std::size_t>(a.num_states()));
  // Re-run the table by hand on x1 x2 x1 x2.
  int s = j["initial"].get<int>();
  for (int idx : {0, 2, 0, 2}) s = j["transitions"][static_cast<std::size_t>(s)][static_cast<std::size_t>(idx)].get<int>();
  const auto& t = j["terminals"];
  EXPECT_NE(std::find(t.begin(), t.end(), Json(s)), t.end());
}

TEST(JsonIo, GapProfileExample) {
  const auto p = gap_profile(kZZ, kZZ.parse("b a b"), Syllable{Factor::B, 1});
  const auto j = encode(p, 2);
  ASSERT_EQ(j["table"].size(), 1u);
  EXPECT_EQ(j["table"][0]["k"], 1);
  EXPECT_EQ(j["table"][0]["delta_b"], 1);
  EXPECT_EQ(j["table"][0]["delta_b_inverse"], 0);
  EXPECT_EQ(j["gamma"], 1);
}

TEST(JsonIo, CsvColumns) {
  ScanConfig c;
  c.samples = 3;
  const auto r = criterion_scan(parse_word("x1^2"), 1, Syllable{Factor::B, 1}, c);
  const auto csv = scan_csv(r);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "sample_id,syllable_length,gamma,max_k");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  const auto fam = unbounded_family(FPElement{}, kZZ.parse("a b"), kZZ.parse("a b^2"), FPElement{}, 5);
  const auto f = family_csv(fam);
  EXPECT_EQ(f.substr(0, f.find('\n')), "n,syllable_length,gamma,max_k");
  EXPECT_EQ(std::count(f.begin(), f.end(), '\n'), 6);
}

TEST(JsonIo, ReportRoundTripReplays) {
  std::mt19937_64 rng(71);
  for (const auto& e : oracle::candidate_corpus(rng, 12)) {
    const auto r = refute(e, parse_word("x1^2"));
    const auto text = encode(r).dump(2);
    EXPECT_EQ(text, encode(refute(e, parse_word("x1^2"))).dump(2));
    const auto back = decode_report(Json::parse(text));
    EXPECT_TRUE(replay(back).ok) << text;
    EXPECT_EQ(encode(back)["certificate"], encode(r)["certificate"]);
    EXPECT_EQ(back.outcome, r.outcome);
  }
}

TEST(JsonIo, DecodeRejectsMalformedReports) {
  EXPECT_THROW(decode_report(Json::array()), ParseError);
  auto j = encode(refute(E("(star (fin x1^2))"), parse_word("x1^2")));
  j["schema"] = "other/9";
  EXPECT_THROW(decode_report(j), ParseError);
  j = encode(refute(E("(star (fin x1^2))"), parse_word("x1^2")));
  j.erase("w");
  EXPECT_THROW(decode_report(j), ParseError);
  j = encode(refute(E("(star (fin x1^2))"), parse_word("x1^2")));
  j["outcome"] = "maybe";
  EXPECT_THROW(decode_report(j), ParseError);
}

TEST(JsonIo, VerbalEncodings) {
  VerbalQuery q;
  q.w = parse_word("x1^2");
  const auto v = encode(is_value(q, parse_word("x1 x2 x1 x2")));
  EXPECT_EQ(v["answer"], "yes");
  EXPECT_EQ(v["witness"][0], "x1 x2");
  EXPECT_EQ(encode(abelianized_verbal(parse_word("x1 x2 x1^-1 x2^-1"), 2))["index"], "infinite");
  EXPECT_EQ(encode(w_length(q, Word{}))["length"], 0);
  const auto d = encode(support_dichotomy_check({kZZ.parse("a")}, FPElement{}, FPElement{}, q.w));
  EXPECT_EQ(d["kind"], "case-2");
  EXPECT_EQ(d["axis"], "a");
}
