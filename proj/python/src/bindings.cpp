#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <chordwalk/chebyshev.hpp>
#include <chordwalk/dynamics.hpp>
#include <chordwalk/errors.hpp>
#include <chordwalk/spectral.hpp>
#include <chordwalk/trapping.hpp>

#include <optional>

namespace py = pybind11;
using namespace chordwalk;

namespace {

GraphSpec make_graph(int n, std::optional<int> m) { return m ? build_graph(n, *m) : GraphSpec::cycle(n); }

py::array_t<double> to_numpy(const Matrix& a) {
  py::array_t<double> out({a.rows(), a.cols()});
  auto w = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) w(i, j) = a(i, j);
  return out;
}

py::array_t<double> to_numpy(const std::vector<double>& v) { return py::array_t<double>(v.size(), v.data()); }

Spectrum spectrum_of(const GraphSpec& g, const std::string& solver) {
  if (solver == "dense") return eig_symmetric(laplacian(g));
  if (solver == "chebyshev") return solve_spectrum_chebyshev(g).spectrum;
  throw DomainError("solver must be 'dense' or 'chebyshev'");
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Quantum walks on a cycle with one chord";

  py::register_exception<DomainError>(mod, "DomainError", PyExc_ValueError);
  py::register_exception<ConvergenceError>(mod, "ConvergenceError", PyExc_RuntimeError);
  py::register_exception<RootCountError>(mod, "RootCountError", PyExc_RuntimeError);
  py::register_exception<DegenerateBasisError>(mod, "DegenerateBasisError", PyExc_RuntimeError);

  py::class_<GraphSpec>(mod, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("m") = py::none())
      .def_property_readonly("n", &GraphSpec::size)
      .def_property_readonly("m", [](const GraphSpec& g) -> std::optional<int> {
        if (!g.has_chord()) return std::nullopt;
        return g.chord_end();
      })
      .def_property_readonly("parity_flag", &GraphSpec::parity_flag)
      .def("degree", &GraphSpec::degree)
      .def("laplacian", [](const GraphSpec& g) { return to_numpy(laplacian(g)); })
      .def("__repr__", [](const GraphSpec& g) {
        return g.has_chord() ? "Graph(" + std::to_string(g.size()) + ", " + std::to_string(g.chord_end()) + ")"
                             : "Graph(" + std::to_string(g.size()) + ")";
      });

  mod.def("cheb_t", &cheb_t, py::arg("n"), py::arg("x"));
  mod.def("cheb_u", &cheb_u, py::arg("n"), py::arg("x"));
  mod.def(
      "verify_identity",
      [](const std::string& tag, double x, int n, int m) {
        const auto r = verify_identity(parse_identity(tag), x, n, m);
        return py::make_tuple(r.residual, r.magnitude);
      },
      py::arg("tag"), py::arg("x"), py::arg("n"), py::arg("m") = 0,
      "Returns (residual, magnitude) for identity a6..a14.");

  mod.def(
      "eigenvalues", [](const GraphSpec& g, const std::string& solver) { return to_numpy(spectrum_of(g, solver).eigenvalues); },
      py::arg("graph"), py::arg("solver") = "dense");
  mod.def(
      "eigenvectors", [](const GraphSpec& g, const std::string& solver) { return to_numpy(spectrum_of(g, solver).eigenvectors); },
      py::arg("graph"), py::arg("solver") = "dense");
  mod.def("determinant_value", &determinant_value, py::arg("graph"), py::arg("x"));
  mod.def("largest_eigenvalue_asymptotic", &largest_eigenvalue_asymptotic);
  mod.def(
      "largest_eigenstate",
      [](const GraphSpec& g) {
        const auto st = largest_eigenstate(g);
        return py::make_tuple(st.energy, to_numpy(st.components));
      },
      py::arg("graph"), "Returns (energy, components).");
  mod.def(
      "perturbative_energies", [](const GraphSpec& g) { return to_numpy(perturbative_spectrum(g).sorted_energies()); },
      py::arg("graph"));

  mod.def(
      "return_probability",
      [](const GraphSpec& g, int start, const std::vector<double>& times) {
        const auto s = transition_probabilities(eig_symmetric(laplacian(g)), start, times);
        std::vector<double> out;
        for (std::size_t i = 0; i < times.size(); ++i) out.push_back(s.probability(i, start));
        return to_numpy(out);
      },
      py::arg("graph"), py::arg("start"), py::arg("times"));
  mod.def(
      "limiting_distribution",
      [](const GraphSpec& g, int start) { return to_numpy(limiting_distribution(eig_symmetric(laplacian(g)), start).chi); },
      py::arg("graph"), py::arg("start"));

  mod.def(
      "survival",
      [](const GraphSpec& g, double gamma, double t_max, double dt) {
        TrapOptions opts;
        opts.t_max = t_max;
        opts.dt = dt;
        TrapResult r;
        {
          py::gil_scoped_release release;
          r = survival_probability(TrapConfig{g, {1}, gamma}, opts);
        }
        py::dict d;
        d["times"] = to_numpy(r.times);
        d["survival"] = to_numpy(r.survival);
        d["mean_norm"] = to_numpy(r.mean_norm);
        d["plateau"] = r.plateau;
        d["asymptotic_plateau"] = r.asymptotic_plateau;
        d["predicted_plateau"] = r.predicted_plateau;
        d["dt"] = r.dt;
        d["sign_convention"] = r.sign_convention;
        return d;
      },
      py::arg("graph"), py::arg("gamma") = 1.0, py::arg("t_max") = 0.0, py::arg("dt") = 0.0,
      "Trap at node 1. t_max = 0 selects 10 N.");
  mod.def("dark_state_count", &dark_state_count, py::arg("graph"));
}
