#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phgen/ctrl.hpp"
#include "phgen/experiment.hpp"
#include "phgen/io.hpp"
#include "phgen/pencil.hpp"
#include "phgen/phsys.hpp"
#include "phgen/poly.hpp"
#include "phgen/witness.hpp"

namespace py = pybind11;
using namespace phgen;

namespace {

py::dict report_dict(const ControlReport& r) {
  py::dict verdicts;
  for (Concept c : kAllConcepts) verdicts[py::str(std::string(concept_name(c)))] = std::string(to_string(r[c]));
  py::list locus;
  for (const DropPoint& p : r.locus.drop_points) locus.append(py::make_tuple(p.lambda, p.rank));
  py::dict out;
  out["verdicts"] = verdicts;
  out["rank_EB"] = r.rank_EB;
  out["rank_EAB"] = r.rank_EAB;
  out["rank_EAZB"] = r.rank_EAZB;
  out["generic_rank"] = r.generic_rank;
  out["locus"] = locus;
  out["imaginary_axis_drop"] = r.imaginary_axis_drop;
  out["any_borderline"] = r.any_borderline();
  out["certified"] = r.certificate.has_value();
  return out;
}

}  // namespace

PYBIND11_MODULE(_phgen, m) {
  m.doc() = "Controllability and stabilizability of port-Hamiltonian descriptor systems";

  py::class_<TolerancePolicy>(m, "TolerancePolicy")
      .def(py::init<>())
      .def_readwrite("rank_rel", &TolerancePolicy::rank_rel)
      .def_readwrite("psd_abs", &TolerancePolicy::psd_abs)
      .def_readwrite("boundary_re", &TolerancePolicy::boundary_re)
      .def_readwrite("match_rel", &TolerancePolicy::match_rel);

  py::class_<PHSystem>(m, "PHSystem")
      .def(py::init<>())
      .def_readwrite("E", &PHSystem::E)
      .def_readwrite("J", &PHSystem::J)
      .def_readwrite("R", &PHSystem::R)
      .def_readwrite("Q", &PHSystem::Q)
      .def_readwrite("B", &PHSystem::B)
      .def_property(
          "cls", [](const PHSystem& s) { return std::string(to_string(s.cls)); },
          [](PHSystem& s, const std::string& v) { s.cls = system_class_from_string(v); })
      .def_property(
          "field", [](const PHSystem& s) { return std::string(to_string(s.field)); },
          [](PHSystem& s, const std::string& v) { s.field = field_from_string(v); })
      .def_property_readonly("A", [](const PHSystem& s) { return to_dae(s).A; })
      .def("to_json", &system_to_json)
      .def_static("from_json", [](const std::string& text) {
        const SystemFile f = parse_system_file(text);
        if (f.is_dae) throw py::value_error("a dae file has no port-Hamiltonian structure");
        return f.system;
      });

  m.def(
      "sample_system",
      [](std::size_t l, std::size_t n, std::size_t mm, const std::string& cls, const std::string& field,
         std::uint64_t seed) {
        Rng rng(seed);
        return sample_system(l, n, mm, system_class_from_string(cls), field_from_string(field), rng);
      },
      py::arg("l"), py::arg("n"), py::arg("m"), py::arg("cls") = "H", py::arg("field") = "real",
      py::arg("seed") = 0);

  m.def(
      "witness",
      [](const std::string& name, std::size_t l, std::size_t n, std::size_t mm) {
        return make_witness(name, l, n, mm);
      },
      py::arg("name"), py::arg("l") = 0, py::arg("n") = 0, py::arg("m") = 0);

  m.def(
      "validate",
      [](const PHSystem& s, const TolerancePolicy& tol) {
        std::vector<std::pair<std::string, double>> out;
        for (const Violation& v : validate(s, tol).violations) out.emplace_back(v.constraint, v.residual);
        return out;
      },
      py::arg("system"), py::arg("tol") = TolerancePolicy{});

  m.def(
      "analyze",
      [](const PHSystem& s, const TolerancePolicy& tol, std::uint64_t seed) {
        Rng rng(seed);
        return report_dict(analyze(s, tol, rng));
      },
      py::arg("system"), py::arg("tol") = TolerancePolicy{}, py::arg("seed") = 0);

  m.def(
      "analyze_dae",
      [](const Matrix& E, const Matrix& A, const Matrix& B, const TolerancePolicy& tol, std::uint64_t seed) {
        Rng rng(seed);
        return report_dict(analyze_dae(E, A, B, tol, rng));
      },
      py::arg("E"), py::arg("A"), py::arg("B"), py::arg("tol") = TolerancePolicy{}, py::arg("seed") = 0);

  m.def(
      "numeric_rank", [](const Matrix& M, const TolerancePolicy& tol) { return numeric_rank(M, tol); },
      py::arg("M"), py::arg("tol") = TolerancePolicy{});

  m.def(
      "poly_roots", [](const std::vector<Complex>& coeffs) { return poly_roots(Polynomial(coeffs)); },
      py::arg("coeffs"), "Roots of sum coeffs[i] x^i.");

  m.def(
      "predicted_status",
      [](const std::string& concept_, std::size_t l, std::size_t n, std::size_t mm) {
        return std::string(to_string(predicted_status(concept_from_string(concept_), l, n, mm)));
      },
      py::arg("concept"), py::arg("l"), py::arg("n"), py::arg("m"));

  m.def(
      "run_experiment",
      [](const std::string& grid, const std::vector<std::string>& classes, std::size_t samples, std::uint64_t seed,
         std::size_t jobs, const std::string& field) {
        ExperimentConfig cfg;
        cfg.grid = parse_grid(grid);
        for (const std::string& c : classes) cfg.classes.push_back(experiment_class_from_string(c));
        cfg.samples_per_cell = samples;
        cfg.seed = seed;
        cfg.jobs = jobs;
        cfg.field = field_from_string(field);
        ExperimentResult res;
        {
          py::gil_scoped_release release;
          res = run_experiment(cfg);
        }
        return result_to_csv(res);
      },
      py::arg("grid"), py::arg("classes") = std::vector<std::string>{"sdH"}, py::arg("samples") = 1000,
      py::arg("seed") = 0, py::arg("jobs") = 1, py::arg("field") = "real",
      "Runs a Monte Carlo experiment and returns the CSV table.");

  m.def(
      "interior_probe",
      [](const PHSystem& base, double rho, std::size_t trials, std::uint64_t seed) {
        Rng rng(seed);
        const ProbeResult p = interior_probe(base, rho, trials, rng);
        return py::make_tuple(p.fraction(), p.still_failing, p.borderline, p.invalid);
      },
      py::arg("base"), py::arg("rho") = 1e-3, py::arg("trials") = 100, py::arg("seed") = 0,
      "Returns (fraction, still_failing, borderline, invalid).");

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);
}
