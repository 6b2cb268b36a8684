#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "sdcat/classify.hpp"
#include "sdcat/errors.hpp"
#include "sdcat/io.hpp"

namespace py = pybind11;
using namespace sdcat;

namespace {

using PyShift = std::shared_ptr<Shift>;
PyShift mut(ShiftPtr p) { return std::const_pointer_cast<Shift>(p); }

Verdict check(const std::string& prop, const BlockMap& f, const std::string& category) {
  auto c = CategoryTag::parse(category);
  if (prop == "epic") return is_epic(f, c);
  if (prop == "monic") return is_monic(f, c);
  if (prop == "split-epic") return is_split_epic(f, c);
  if (prop == "split-monic") return is_split_monic(f, c);
  if (prop == "regular-epic") return is_regular_epic(f, c);
  if (prop == "regular-monic") return is_regular_monic(f, c);
  if (prop == "preinjective") return is_preinjective(f);
  throw ParseError("unknown property: " + prop);
}

}  // namespace

PYBIND11_MODULE(_sdcat, m) {
  m.doc() = "Subshifts, block maps and their categorical properties";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  py::class_<Shift, PyShift>(m, "Shift")
      .def_static("load", [](const std::string& p) { return mut(load_shift(p)); })
      .def_static("parse", [](const std::string& t) { return mut(parse_shift(t)); })
      .def_property_readonly("alphabet", [](const Shift& x) { return x.alphabet().tokens(); })
      .def("words", [](const Shift& x, int n) {
        std::vector<std::string> out;
        for (const auto& w : x.words(n)) out.push_back(compact(x.alphabet(), w));
        return out;
      })
      .def("contains_word", [](const Shift& x, const std::string& w) {
        return x.contains_word(x.alphabet().parse_word(w));
      })
      .def("is_empty", &Shift::is_empty)
      .def("to_text", [](const Shift& x) { return format_shift(x); });

  py::class_<BlockMap>(m, "BlockMap")
      .def_static("load", [](const std::string& p) { return load_bmap(p); })
      .def_property_readonly("radius", &BlockMap::radius)
      .def_property_readonly("source", [](const BlockMap& f) { return mut(f.source()); })
      .def_property_readonly("target", [](const BlockMap& f) { return mut(f.target()); })
      .def("apply", [](const BlockMap& f, const std::string& w) {
        return compact(f.target()->alphabet(), f.apply(f.source()->alphabet().parse_word(w)));
      });

  m.def("check", [](const std::string& prop, const BlockMap& f, const std::string& category) {
    return to_json(check(prop, f, category)).dump();
  }, py::arg("property"), py::arg("map"), py::arg("category"));
  m.def("classify", [](const BlockMap& f, const std::string& category) {
    return classify(f, CategoryTag::parse(category)).dump();
  }, py::arg("map"), py::arg("category"));
  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
