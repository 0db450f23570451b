#pragma once

// JSON and CSV encodings of reports and traces. Words use the word grammar, free-product elements the
// a/b grammar, expressions the s-expression grammar.

#include <string>

#include "json.hpp"
#include "verbalrat/automaton.hpp"
#include "verbalrat/gaps.hpp"
#include "verbalrat/refuter.hpp"
#include "verbalrat/sign.hpp"
#include "verbalrat/verbal.hpp"
#include "verbalrat/zrat.hpp"

namespace verbalrat {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "verbalrat.refutation/1";

Json encode(const Acceptor& a);
Json encode(const ZRatSet& s);
Json encode(const SplitTrace& t);
Json encode(const PositivizeTrace& t);
Json encode(const GapProfile& p, std::int64_t e);
Json encode(const ScanReport& r);
Json encode(const Family& f);
Json encode(const ValueVerdict& v);
Json encode(const WLength& l);
Json encode(const AbelianizedVerbal& a);
Json encode(const DichotomyResult& d);
Json encode(const DecompositionScheme& s);
Json encode(const BezoutTranscript& t);
Json encode(const DecompositionTrace& t);
Json encode(const RefutationReport& r);
Json encode(const ReplayResult& r);

/// Inverse of encode(RefutationReport) for the fields replay needs. Throws ParseError on malformed input.
RefutationReport decode_report(const Json& j);

/// Columns sample_id, syllable_length, gamma, max_k.
std::string scan_csv(const ScanReport& r);
/// Columns n, syllable_length, gamma, max_k.
std::string family_csv(const Family& f);

}  // namespace verbalrat
