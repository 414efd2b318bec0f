#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trionsim/correlations.hpp"
#include "trionsim/errors.hpp"
#include "trionsim/lindblad.hpp"
#include "trionsim/rate_baseline.hpp"
#include "trionsim/sweeps.hpp"
#include "trionsim/trion_model.hpp"

namespace py = pybind11;
using namespace trionsim;

namespace {

std::vector<SweepAxis> to_axes(const std::vector<std::pair<std::string, std::vector<double>>>& axes) {
  std::vector<SweepAxis> out;
  for (const auto& [name, values] : axes) out.push_back({name, values});
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Lindblad model of a two-laser driven trion Lambda system (rates in rad/ns)";
  m.attr("__version__") = TRIONSIM_VERSION;
  m.attr("TWO_PI") = kTwoPi;

  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<SingularMatrixError>(m, "SingularMatrixError", numerical.ptr());
  py::register_exception<DegenerateSteadyStateError>(m, "DegenerateSteadyStateError", numerical.ptr());
  py::register_exception<IntegrationError>(m, "IntegrationError", numerical.ptr());
  py::register_exception<NormalizationError>(m, "NormalizationError", numerical.ptr());
  py::register_exception<NoSplittingError>(m, "NoSplittingError", numerical.ptr());
  py::register_exception<FitError>(m, "FitError", numerical.ptr());
  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);

  py::enum_<EmissionChannel>(m, "Channel")
      .value("fundamental", EmissionChannel::fundamental)
      .value("auger", EmissionChannel::auger);
  py::enum_<Observable>(m, "Observable")
      .value("fluorescence", Observable::fluorescence)
      .value("auger", Observable::auger)
      .value("rate_fluorescence", Observable::rate_fluorescence);

  py::class_<TrionParams>(m, "TrionParams")
      .def(py::init<>())
      .def(py::init([](py::kwargs kw) {
        TrionParams p;
        for (const auto& [k, v] : kw) set_field(p, py::cast<std::string>(k), py::cast<double>(v));
        return p;
      }))
      .def_readwrite("omega1_rabi", &TrionParams::omega1_rabi)
      .def_readwrite("omega2_rabi", &TrionParams::omega2_rabi)
      .def_readwrite("delta1", &TrionParams::delta1)
      .def_readwrite("delta2", &TrionParams::delta2)
      .def_readwrite("gamma_r", &TrionParams::gamma_r)
      .def_readwrite("branching_b", &TrionParams::branching_b)
      .def_readwrite("gamma_p_relax", &TrionParams::gamma_p_relax)
      .def_readwrite("gamma_p_deph", &TrionParams::gamma_p_deph)
      .def("validate", &TrionParams::validate)
      .def(py::self == py::self)
      .def("__repr__", [](const TrionParams& p) {
        std::string s = "TrionParams(";
        for (const auto name : trion_field_names()) s += std::string(name) + "=" + std::to_string(field(p, name)) + ", ";
        return s.substr(0, s.size() - 2) + ")";
      });

  m.def("hamiltonian", &hamiltonian, py::arg("params"));
  m.def(
      "liouvillian", [](const TrionParams& p) { return trion_liouvillian(p).matrix(); }, py::arg("params"),
      "Column-stacking superoperator acting on vec(rho).");
  m.def(
      "steady_state", [](const TrionParams& p) { return trion_steady_state(p).matrix(); }, py::arg("params"),
      "Steady-state density matrix in the basis (s, p, t).");
  m.def("fluorescence_intensity", &fluorescence_intensity, py::arg("params"));
  m.def("auger_intensity", &auger_intensity, py::arg("params"));
  m.def("dressed_splitting", &dressed_splitting, py::arg("params"));
  m.def(
      "rate_steady_state",
      [](const TrionParams& p) {
        const auto n = rate_steady_state(p);
        return py::make_tuple(n.n_s, n.n_p, n.n_t);
      },
      py::arg("params"));
  m.def("rate_fluorescence_intensity", &rate_fluorescence_intensity, py::arg("params"));

  m.def(
      "emission_spectrum",
      [](const TrionParams& p, EmissionChannel ch, const std::vector<double>& freqs) {
        return emission_spectrum(p, ch, freqs).values;
      },
      py::arg("params"), py::arg("channel"), py::arg("frequencies"));
  m.def(
      "extract_splitting",
      [](const std::vector<double>& freqs, const std::vector<double>& values) {
        Spectrum s;
        s.frequencies = freqs;
        s.values = values;
        return extract_splitting(s);
      },
      py::arg("frequencies"), py::arg("values"));
  m.def(
      "g2",
      [](const TrionParams& p, EmissionChannel a, EmissionChannel b, const std::vector<double>& delays) {
        return g2(p, a, b, delays).values;
      },
      py::arg("params"), py::arg("channel_a"), py::arg("channel_b"), py::arg("delays"));

  m.def("linspace", &linspace, py::arg("start"), py::arg("stop"), py::arg("n"));
  m.def(
      "sweep",
      [](const TrionParams& p, const std::vector<std::pair<std::string, std::vector<double>>>& axes, Observable o,
         unsigned threads) {
        const auto r = sweep(p, to_axes(axes), o, threads);
        return py::array_t<double>(std::vector<py::ssize_t>{static_cast<py::ssize_t>(r.rows()),
                                                            static_cast<py::ssize_t>(r.cols())},
                                   r.values.data());
      },
      py::arg("params"), py::arg("axes"), py::arg("observable") = Observable::fluorescence, py::arg("threads") = 1,
      "Grid of an observable over one or two (field, values) axes; returns a rows x cols array.");
  m.def(
      "dip_metrics",
      [](const std::vector<double>& x, const std::vector<double>& y) {
        SweepResult r;
        r.axis1 = {"delta2", x};
        r.values = y;
        const auto d = dip_metrics(r);
        return py::dict(py::arg("depth") = d.depth, py::arg("center") = d.center, py::arg("asymmetry") = d.asymmetry);
      },
      py::arg("x"), py::arg("values"));
  m.def(
      "fit_rabi_from_power",
      [](const std::vector<double>& powers, const std::vector<double>& intensities, double gamma_r) {
        const auto f = fit_rabi_from_power(powers, intensities, gamma_r);
        return py::dict(py::arg("omega_at_unit_power") = f.omega_at_unit_power, py::arg("scale") = f.scale,
                        py::arg("residual_norm") = f.residual_norm, py::arg("fixed_gamma_r") = f.fixed_gamma_r);
      },
      py::arg("powers"), py::arg("intensities"), py::arg("gamma_r"));
}
