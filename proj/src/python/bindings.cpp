#include <sstream>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli/app.hpp"
#include "morrad/error.hpp"
#include "morrad/norms.hpp"
#include "morrad/rademacher.hpp"
#include "morrad/theorem3.hpp"
#include "morrad/weight.hpp"

namespace py = pybind11;
using namespace morrad;

namespace {

py::tuple enclosure(const NormEnclosure& e) {
  return py::make_tuple(e.lower, e.upper, to_string(e.method));
}

StepFunction step(std::vector<double> values) {
  return StepFunction::from_samples(std::move(values));
}

}  // namespace

PYBIND11_MODULE(_morrad, m) {
  m.doc() = "Morrey-type quasi-norms of dyadic step functions";

  py::register_exception<Error>(m, "MorradError", PyExc_ValueError);

  py::class_<Weight>(m, "Weight")
      .def_static("parse", &Weight::parse, py::arg("spec"))
      .def("__call__", &Weight::eval, py::arg("t"))
      .def("at_dyadic", &Weight::at_dyadic, py::arg("m"))
      .def_property_readonly("spec", &Weight::spec);

  m.def("dyadic_morrey",
        [](std::vector<double> v, double p, const Weight& w) { return enclosure(dyadic_morrey(step(std::move(v)), p, w)); },
        py::arg("values"), py::arg("p"), py::arg("weight"));
  m.def("morrey",
        [](std::vector<double> v, double p, const Weight& w, int refine) {
          return enclosure(morrey(step(std::move(v)), p, w, refine));
        },
        py::arg("values"), py::arg("p"), py::arg("weight"), py::arg("refine") = 0);
  m.def("kkl_norm",
        [](std::vector<double> v, double p, const Weight& w, int refine) {
          return enclosure(kkl_norm(step(std::move(v)), p, w, refine));
        },
        py::arg("values"), py::arg("p"), py::arg("weight"), py::arg("refine") = 0);
  m.def("rademacher_sum",
        [](std::vector<double> a, int resolution) {
          const StepFunction f = materialize(a, resolution);
          return std::vector<double>(f.values().begin(), f.values().end());
        },
        py::arg("coefficients"), py::arg("resolution"));
  m.def("exact_lp", [](std::vector<double> a, double p) { return exact_lp(a, p); },
        py::arg("coefficients"), py::arg("p"));
  m.def("phi", [](std::vector<double> a, const Weight& w) { return phi(a, w).total; },
        py::arg("coefficients"), py::arg("weight"));
  m.def("e_counts",
        [](std::int64_t mm) {
          const EmReport r = e_report(mm);
          return py::make_tuple(r.count_def, r.count_alt, r.sigma_def, r.sigma_paper);
        },
        py::arg("m"));

  // Runs the command-line tool in-process; returns (exit_code, stdout, stderr).
  m.def("run", [](std::vector<std::string> args) {
    args.insert(args.begin(), "morrad");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code;
    {
      py::gil_scoped_release release;
      code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    }
    return py::make_tuple(code, out.str(), err.str());
  });
}
