#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "verbalrat/error.hpp"
#include "verbalrat/json_io.hpp"

namespace py = pybind11;
using namespace verbalrat;

PYBIND11_MODULE(_verbalrat, m) {
  m.doc() = "Free-group words, rational subsets, gap functions and verbal-set refutation";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Word>(m, "Word")
      .def(py::init([](const std::string& s) { return parse_word(s); }), py::arg("text") = "1")
      .def("__str__", &Word::str)
      .def("__repr__", [](const Word& w) { return "Word('" + w.str() + "')"; })
      .def("__len__", &Word::size)
      .def("__mul__", [](const Word& a, const Word& b) { return a * b; })
      .def("__pow__", [](const Word& a, std::int64_t k) { return pow(a, k); })
      .def("__eq__", [](const Word& a, const Word& b) { return a == b; })
      .def("__hash__", [](const Word& a) { return WordHash{}(a); })
      .def("inverse", [](const Word& a) { return inv(a); })
      .def("is_positive", &Word::is_positive);

  m.def("reduce", [](const std::string& s) { return parse_word(s).str(); }, "Reduced form of a word.");
  m.def("root", [](const Word& u, std::int64_t e) { return root_extract(u, e); }, py::arg("u"), py::arg("e"));
  m.def("classify", [](const Word& w, int rank) { return std::string(to_string(classify_word(w, rank))); }, py::arg("w"), py::arg("rank"));
  m.def("bezout_substitution", &bezout_substitution, py::arg("w"), py::arg("rank"), py::arg("g"));

  m.def("member", [](const std::string& expr, const Word& g) { return member(parse_rat_expr(expr), g); }, py::arg("expr"), py::arg("g"));
  m.def(
      "positive_members",
      [](const std::string& expr, std::size_t max_len) {
        std::vector<std::string> out;
        for (const auto& w : intersect_positive(parse_rat_expr(expr)).members_up_to(max_len)) out.push_back(w.str());
        return out;
      },
      py::arg("expr"), py::arg("max_len"));

  m.def(
      "gamma",
      [](const std::string& u, const std::string& b, std::int64_t e) {
        const auto g = FreeProduct::integers();
        const auto bs = g.parse(b);
        if (bs.syllable_length() != 1) throw PreconditionError("b must be a single syllable");
        return gamma(g, g.parse(u), bs.front(), e);
      },
      py::arg("u"), py::arg("b") = "b", py::arg("e") = 2);

  m.def(
      "is_value",
      [](const Word& w, const Word& g, std::size_t cap) {
        VerbalQuery q;
        q.w = w;
        q.cap = cap;
        return encode(is_value(q, g)).dump();
      },
      py::arg("w"), py::arg("g"), py::arg("cap") = 2);

  m.def(
      "refute_json",
      [](const std::string& expr, const Word& w) {
        const auto r = refute(parse_rat_expr(expr), w);
        auto j = encode(r);
        j["replay"] = encode(replay(r));
        return j.dump();
      },
      py::arg("expr"), py::arg("w"));
}
