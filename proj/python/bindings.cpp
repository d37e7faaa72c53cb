#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cps/builtins.hpp"
#include "cps/complexity.hpp"
#include "cps/conditions.hpp"
#include "cps/io.hpp"

namespace py = pybind11;
using namespace cps;

namespace {

Rational to_rational(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

std::vector<Rational> to_radii(const py::iterable& xs) {
  std::vector<Rational> out;
  for (auto x : xs) out.push_back(to_rational(x));
  return out;
}

std::string count_json(const Scheme& s, const py::iterable& radii, double scan_multiplier) {
  auto rs = to_radii(radii);
  ComplexityReport cr;
  for (auto& r : rs) cr.series.push_back(count_row(s, r));
  if (scan_multiplier > 0) {
    auto brute = bruteforce_patch_counts(s, rs, Rational(std::ceil(scan_multiplier * tile_scale(s))));
    for (size_t i = 0; i < rs.size(); ++i) cr.series[i].bruteforce = brute[i];
  }
  if (rs.size() >= 3) {
    std::vector<std::pair<double, double>> pts;
    for (auto& row : cr.series) pts.push_back({row.r.get_d(), (double)row.p});
    cr.slope_fit = slope_fit(pts);
  }
  return series_to_json(cr).dump();
}

std::string conditions_json(const Scheme& s, const py::object& search_radius) {
  Rational R = to_rational(search_radius);
  Json j = {{"search_radius", rational_to_json(R)}};
  for (auto v : {almost_canonical_check(s, R), quasicanonical_check(s, R), boolean_check(s, R)})
    j[to_string(v.kind)] = verdict_to_json(s, v);
  return j.dump();
}

}  // namespace

PYBIND11_MODULE(_cps, m) {
  m.doc() = "Bindings for the cut and project complexity library";
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::class_<Scheme>(m, "Scheme")
      .def_static("builtin", &builtin_scheme, py::arg("name"), py::arg("shifted") = true)
      .def_static("from_json", &scheme_from_text, py::arg("text"))
      .def_property_readonly("name", &Scheme::name)
      .def_property_readonly("k", &Scheme::k)
      .def_property_readonly("d", &Scheme::d)
      .def_property_readonly("n", &Scheme::n)
      .def("to_json", [](const Scheme& s) { return scheme_to_json(s).dump(); })
      .def("tile_scale", &tile_scale);

  m.def("builtin_names", &builtin_names);
  m.def(
      "validate_json",
      [](const Scheme& s, const py::object& r) { return validation_to_json(validate(s, to_rational(r))).dump(); },
      py::arg("scheme"), py::arg("radius"));
  m.def(
      "exponents_json", [](const Scheme& s) { return exponents_to_json(s, exponent_report(s)).dump(); },
      py::arg("scheme"));
  m.def("count_json", &count_json, py::arg("scheme"), py::arg("radii"), py::arg("scan_multiplier") = 0.0);
  m.def("conditions_json", &conditions_json, py::arg("scheme"), py::arg("search_radius"));
  m.def(
      "refinement_demo_json",
      [](const Scheme& s, const py::iterable& radii) { return demo_to_json(s, refinement_demo(s, to_radii(radii))).dump(); },
      py::arg("scheme"), py::arg("radii"));
}
