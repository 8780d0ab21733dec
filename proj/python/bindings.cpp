#include "kplus/acceptance.hpp"
#include "kplus/bounds_audit.hpp"
#include "kplus/classical_forms.hpp"
#include "kplus/errors.hpp"
#include "kplus/plus_basis.hpp"
#include "kplus/residue_lab.hpp"
#include "kplus/zero_locator.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace kplus;

namespace {

HalfIntWeight W(const std::string& k) { return HalfIntWeight::parse(k); }

std::string basis_json(const std::string& k, long m, int prec) {
  HalfIntWeight w = W(k);
  if (!is_admissible(w, m)) throw std::invalid_argument("m is not admissible for this weight");
  BasisElement e = basis_element(w, m, prec);
  if (e.series.prec() > prec) e.series = e.series.truncated(prec);
  return to_json(e).dump();
}

py::dict arc_value(const std::string& k, long m, double theta) {
  ArcForm f(basis_element(W(k), m, arc_precision(m)));
  ArcValue v = f.weighted(theta);
  py::dict d;
  d["value"] = to_double(v.value);
  d["imag_part"] = to_double(v.imag_part);
  d["tail_bound"] = to_double(v.tail_bound);
  return d;
}

std::vector<double> zeros(const std::string& k, long m, long grid) {
  ArcForm f(basis_element(W(k), m, arc_precision(m)));
  return scan_zeros(f, grid).thetas;
}

py::dict oscillation(const std::string& k, long m) {
  OscillationReport r = oscillation_count(W(k), m);
  py::dict d;
  d["case"] = std::string(trig_case_name(r.case_tag));
  d["predicted_points"] = r.predicted_points;
  d["c_value"] = r.c_value;
  return d;
}

py::dict integral(const std::string& k, long m, double theta, double tol) {
  IntegralReport r = verify_integral_identity(W(k), m, theta, tol);
  py::dict d;
  d["sub_arc"] = r.sub_arc;
  d["residual"] = r.residual;
  d["panels"] = r.panels;
  d["ok"] = r.ok;
  return d;
}

py::dict duality(const std::string& k, long max) {
  DualityReport r = duality_check(W(k), max, max);
  py::dict d;
  d["ok"] = r.ok;
  d["pairs_checked"] = r.pairs_checked;
  return d;
}

py::dict criterion(int id, const std::string& profile) {
  CriterionResult r = run_criterion(id, profile == "full" ? Profile::Full : Profile::Quick);
  py::dict d;
  d["id"] = r.id;
  d["title"] = r.title;
  d["passed"] = r.passed;
  d["detail"] = r.detail;
  d["findings"] = r.findings;
  d["seconds"] = r.seconds;
  return d;
}

}  // namespace

PYBIND11_MODULE(_kplus, m) {
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception<ConstructionError>(m, "ConstructionError", PyExc_RuntimeError);
  py::register_exception<EvaluationError>(m, "EvaluationError", PyExc_ArithmeticError);

  m.def("basis_json", &basis_json, py::arg("k"), py::arg("m"), py::arg("prec"));
  m.def("N", [](const std::string& k) { return N_of(W(k)); });
  m.def("admissible_m", [](const std::string& k, size_t count) { return admissible_m(W(k), count); });
  m.def("gauss_h", &gauss_h);
  m.def("twelve_hurwitz", [](long n) { return hurwitz_brute(n).twelveH; });
  m.def("theta_cubed", [](int count) {
    QSeries c = pow(theta_series(count), 3);
    std::vector<long> out;
    for (int n = 0; n < count; ++n) out.push_back(c.coeff(n).re().get_num().get_si());
    return out;
  });
  m.def("arc_value", &arc_value, py::arg("k"), py::arg("m"), py::arg("theta"));
  m.def("scan_zeros", &zeros, py::arg("k"), py::arg("m"), py::arg("grid") = 0);
  m.def("oscillation_count", &oscillation, py::arg("k"), py::arg("m"));
  m.def("verify_residue_exact", [](const std::string& k, long r, int terms) { return verify_Ak_exact(r, W(k), terms).ok; },
        py::arg("k"), py::arg("r"), py::arg("terms") = 200);
  m.def("verify_integral", &integral, py::arg("k"), py::arg("m"), py::arg("theta"), py::arg("tol") = 1e-6);
  m.def("duality_check", &duality, py::arg("k"), py::arg("max") = 60);
  m.def("threshold_solve", &threshold_solve, py::arg("base"), py::arg("factor"), py::arg("target"));
  m.def("run_criterion", &criterion, py::arg("id"), py::arg("profile") = "quick");
}
