#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "endoscopy/acceptance.hpp"
#include "endoscopy/field_spec.hpp"
#include "endoscopy/oracle.hpp"
#include "endoscopy/report.hpp"
#include "endoscopy/spectral.hpp"

namespace py = pybind11;
using namespace endo;

namespace {

ExtPtr make_ext(const std::string& field, const std::string& ext) {
  return parse_ext(parse_field(field), ext);
}

std::string dump(nlohmann::json j) { return j.dump(2); }

}  // namespace

PYBIND11_MODULE(sl2endoscopy, m) {
  m.doc() = "exact local orbital integrals and endoscopic transfer for SL(2)";

  m.def("describe_field",
        [](const std::string& spec) { return parse_field(spec)->describe(); },
        py::arg("field"));

  m.def("classify_ext",
        [](const std::string& field, const std::string& ext) {
          ExtPtr E = make_ext(field, ext);
          return py::make_tuple(kind_name(E->kind()), E->e(), E->resdeg());
        },
        py::arg("field"), py::arg("ext"));

  m.def("epsilon",
        [](const std::string& field, const std::string& ext,
           const std::string& x) {
          FieldPtr F = parse_field(field);
          return parse_ext(F, ext)->epsilon(parse_elem(F, x));
        },
        py::arg("field"), py::arg("ext"), py::arg("x"));

  m.def("lambda_constant",
        [](const std::string& field, const std::string& ext) {
          LambdaInfo lam = lambda_const(make_ext(field, ext));
          return py::make_tuple(lam.value.to_string(), lam.canonical);
        },
        py::arg("field"), py::arg("ext"));

  m.def("measure_constant",
        [](const std::string& field, const std::string& ext, int depth) {
          return to_string(measure_constant(make_ext(field, ext), depth));
        },
        py::arg("field"), py::arg("ext"), py::arg("depth"));

  m.def("oracle_unit_quotient",
        [](const std::string& field, const std::string& ext, int depth) {
          return oracle_unit_quotient(make_ext(field, ext), depth);
        },
        py::arg("field"), py::arg("ext"), py::arg("depth"));

  m.def("fl_check",
        [](const std::string& field, const std::string& ext, int depth) {
          return dump(fl_json(fl_check(make_ext(field, ext), depth)));
        },
        py::arg("field"), py::arg("ext"), py::arg("depth") = 4);

  m.def("transfer",
        [](const std::string& field, const std::string& ext, int level) {
          return dump(transfer_json(
              transfer(TestFunction::unit(), make_ext(field, ext), level)));
        },
        py::arg("field"), py::arg("ext"), py::arg("level") = 2);

  m.def("germ_profile",
        [](const std::string& field, const std::string& ext, int n_max) {
          return dump(germ_json(
              germ_profile(make_ext(field, ext), TestFunction::unit(), n_max)));
        },
        py::arg("field"), py::arg("ext"), py::arg("n_max") = 4);

  m.def("shalika_compare",
        [](const std::string& field) {
          return dump(shalika_json(
              shalika_compare(parse_field(field), TestFunction::unit())));
        },
        py::arg("field"));

  m.def("intertwining_scalar",
        [](long q, long s) {
          IntertwiningValue v = intertwining_scalar(q, s);
          if (v.pole) throw py::value_error("pole at x = 1");
          return to_string(v.value);
        },
        py::arg("q"), py::arg("s"));

  m.def("verify",
        [](bool quick, std::uint64_t seed) {
          py::list out;
          for (const CriterionResult& r : run_acceptance(quick, seed)) {
            py::dict row;
            row["index"] = r.index;
            row["name"] = r.name;
            row["pass"] = r.pass;
            if (!r.detail.empty()) row["detail"] = r.detail;
            out.append(std::move(row));
          }
          return out;
        },
        py::arg("quick") = true, py::arg("seed") = 0);
}
