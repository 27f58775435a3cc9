#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gaussent/core_types.hpp"
#include "gaussent/dynamics.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/experiments.hpp"
#include "gaussent/presets.hpp"

namespace py = pybind11;
using namespace gaussent;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Two-mode Gaussian entanglement dynamics in a common thermal environment";

  py::register_exception<PhysicalityError>(m, "PhysicalityError", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  py::class_<EnvironmentSpec>(m, "EnvironmentSpec")
      .def_property_readonly("mass", &EnvironmentSpec::mass)
      .def_property_readonly("omega", &EnvironmentSpec::omega)
      .def_property_readonly("lambda_", &EnvironmentSpec::lambda)
      .def_property_readonly("thermal_c", &EnvironmentSpec::thermal_c)
      .def_property_readonly("d_xx", [](const EnvironmentSpec& e) { return e.diffusion().xx; })
      .def_property_readonly("d_xpx", [](const EnvironmentSpec& e) { return e.diffusion().xpx; })
      .def_property_readonly("d_pxpx", [](const EnvironmentSpec& e) { return e.diffusion().pxpx; })
      .def_property_readonly("d_xy", [](const EnvironmentSpec& e) { return e.diffusion().xy; })
      .def_property_readonly("d_xpy", [](const EnvironmentSpec& e) { return e.diffusion().xpy; })
      .def_property_readonly("d_pxpy", [](const EnvironmentSpec& e) { return e.diffusion().pxpy; })
      .def("is_thermal", &EnvironmentSpec::is_thermal, py::arg("rel_tol") = 1e-12)
      .def_property_readonly("drift", [](const EnvironmentSpec& e) { return Matrix4(DriftMatrix(e).matrix()); })
      .def_property_readonly("diffusion_matrix",
                             [](const EnvironmentSpec& e) { return Matrix4(DiffusionMatrix(e).matrix()); });

  m.def(
      "environment",
      [](double mass, double omega, double lambda, double thermal_c, double d_xx, double d_xpx, double d_pxpx,
         double d_xy, double d_xpy, double d_pxpy) {
        return EnvironmentSpec::create(mass, omega, lambda, thermal_c,
                                       DiffusionCoefficients{d_xx, d_xpx, d_pxpx, d_xy, d_xpy, d_pxpy});
      },
      py::arg("mass"), py::arg("omega"), py::arg("lambda_"), py::arg("thermal_c"), py::arg("d_xx"),
      py::arg("d_xpx"), py::arg("d_pxpx"), py::arg("d_xy"), py::arg("d_xpy"), py::arg("d_pxpy"));
  m.def("thermal_environment", &thermal_environment, py::arg("lambda_"), py::arg("thermal_c"), py::arg("d_xy"),
        py::arg("d_xpy"), py::arg("mass") = 1.0, py::arg("omega") = 1.0);
  m.def("thermal_c_from_temperature", &thermal_c_from_temperature, py::arg("omega"), py::arg("temperature"));
  m.def("temperature_from_thermal_c", &temperature_from_thermal_c, py::arg("omega"), py::arg("thermal_c"));

  py::class_<CovarianceMatrix>(m, "CovarianceMatrix")
      .def(py::init<const Matrix4&>(), py::arg("entries"))
      .def_static("from_upper", &CovarianceMatrix::from_upper, py::arg("upper"))
      .def_property_readonly("matrix", [](const CovarianceMatrix& s) { return Matrix4(s.matrix()); })
      .def_property_readonly("a", &CovarianceMatrix::a)
      .def_property_readonly("b", &CovarianceMatrix::b)
      .def_property_readonly("c", &CovarianceMatrix::c)
      .def("upper", &CovarianceMatrix::upper)
      .def("__eq__", [](const CovarianceMatrix& a, const CovarianceMatrix& b) { return a == b; });
  py::implicitly_convertible<Matrix4, CovarianceMatrix>();

  py::class_<ValidationReport::Check>(m, "Check")
      .def_readonly("name", &ValidationReport::Check::name)
      .def_readonly("margin", &ValidationReport::Check::margin)
      .def_readonly("passed", &ValidationReport::Check::passed)
      .def_readonly("required", &ValidationReport::Check::required);
  py::class_<ValidationReport>(m, "ValidationReport")
      .def_readonly("checks", &ValidationReport::checks)
      .def("ok", &ValidationReport::ok)
      .def("failures", &ValidationReport::failures)
      .def("advisories", &ValidationReport::advisories);
  py::class_<PhysicalStateReport>(m, "PhysicalStateReport")
      .def_readonly("report", &PhysicalStateReport::report)
      .def_readonly("symmetry_residual", &PhysicalStateReport::symmetry_residual)
      .def_readonly("min_eigenvalue", &PhysicalStateReport::min_eigenvalue)
      .def_readonly("determinant", &PhysicalStateReport::determinant)
      .def_readonly("nu_minus_sq", &PhysicalStateReport::nu_minus_sq)
      .def_readonly("nu_plus_sq", &PhysicalStateReport::nu_plus_sq)
      .def_readonly("complex_spectrum", &PhysicalStateReport::complex_spectrum)
      .def("physical", &PhysicalStateReport::physical);

  m.def("validate_diffusion", &validate_diffusion, py::arg("env"));
  m.def("check_physical_state", py::overload_cast<const Matrix4&>(&check_physical_state), py::arg("sigma"));

  // dynamics
  m.def("propagator", [](const EnvironmentSpec& env, double t) { return Matrix4(propagator(env, t).matrix()); },
        py::arg("env"), py::arg("t"));
  m.def("steady_covariance", &steady_covariance, py::arg("env"));
  m.def("steady_covariance_closed_form", &steady_covariance_closed_form, py::arg("env"));
  m.def("lyapunov_residual", &lyapunov_residual, py::arg("env"), py::arg("sigma"));
  m.def("evolve", &evolve, py::arg("initial"), py::arg("env"), py::arg("t"));

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def_readonly("env", &Trajectory::env)
      .def_readonly("initial", &Trajectory::initial);
  m.def("sample_trajectory", &sample_trajectory, py::arg("initial"), py::arg("env"), py::arg("t_max"),
        py::arg("n_steps"));
  m.def("ode_residual", &ode_residual, py::arg("trajectory"));

  // entanglement
  m.attr("PPT_BAND") = kPptBand;
  m.def("simon_function", &simon_function, py::arg("sigma"));
  py::class_<PtSpectrum>(m, "PtSpectrum")
      .def_readonly("seralian", &PtSpectrum::seralian)
      .def_readonly("determinant", &PtSpectrum::determinant)
      .def_readonly("discriminant", &PtSpectrum::discriminant)
      .def_readonly("nu_minus_sq", &PtSpectrum::nu_minus_sq)
      .def_readonly("nu_plus_sq", &PtSpectrum::nu_plus_sq)
      .def_readonly("complex_pair", &PtSpectrum::complex_pair)
      .def_readonly("nonpositive_minus", &PtSpectrum::nonpositive_minus);
  m.def("symplectic_spectrum_pt", &symplectic_spectrum_pt, py::arg("sigma"));
  m.def("negativity_argument", &negativity_argument, py::arg("sigma"));
  m.def("log_negativity", &log_negativity, py::arg("sigma"));
  py::class_<EntanglementMetrics>(m, "EntanglementMetrics")
      .def_readonly("simon_s", &EntanglementMetrics::simon_s)
      .def_readonly("seralian_tilde", &EntanglementMetrics::seralian_tilde)
      .def_readonly("nu_tilde_minus_sq", &EntanglementMetrics::nu_tilde_minus_sq)
      .def_readonly("nu_tilde_plus_sq", &EntanglementMetrics::nu_tilde_plus_sq)
      .def_readonly("log_negativity", &EntanglementMetrics::log_negativity)
      .def_readonly("separable", &EntanglementMetrics::separable)
      .def_readonly("boundary", &EntanglementMetrics::boundary)
      .def_readonly("complex_pair", &EntanglementMetrics::complex_pair);
  m.def("metrics", &metrics, py::arg("sigma"));
  m.def("asymptotic_simon", &asymptotic_simon, py::arg("env"));
  py::class_<AsymptoticThreshold>(m, "AsymptoticThreshold")
      .def_readonly("mixed_ratio", &AsymptoticThreshold::mixed_ratio)
      .def_readonly("c_threshold", &AsymptoticThreshold::c_threshold)
      .def_readonly("lower_holds", &AsymptoticThreshold::lower_holds)
      .def_readonly("upper_holds", &AsymptoticThreshold::upper_holds)
      .def_readonly("entangled_range", &AsymptoticThreshold::entangled_range)
      .def_readonly("constraint_ok", &AsymptoticThreshold::constraint_ok);
  m.def("asymptotic_threshold", &asymptotic_threshold, py::arg("env"));
  m.def("asymptotic_log_negativity", &asymptotic_log_negativity, py::arg("env"));
  py::class_<AsymptoticEntanglement>(m, "AsymptoticEntanglement")
      .def_readonly("s_infinity", &AsymptoticEntanglement::s_infinity)
      .def_readonly("l_infinity", &AsymptoticEntanglement::l_infinity)
      .def_readonly("entangled_at_infinity", &AsymptoticEntanglement::entangled_at_infinity)
      .def_readonly("c_threshold", &AsymptoticEntanglement::c_threshold);
  m.def("asymptotic_entanglement", &asymptotic_entanglement, py::arg("env"));

  // experiments
  py::class_<PhaseClassification>(m, "PhaseClassification")
      .def_property_readonly("label", [](const PhaseClassification& p) { return std::string(to_string(p.label)); })
      .def_readonly("initially_entangled", &PhaseClassification::initially_entangled)
      .def_property_readonly("event_times", &PhaseClassification::event_times)
      .def_readonly("s_infinity", &PhaseClassification::s_infinity)
      .def_readonly("s_infinity_sign", &PhaseClassification::s_infinity_sign)
      .def_readonly("warnings", &PhaseClassification::warnings);
  m.def("classify_phase", &classify_phase, py::arg("initial"), py::arg("env"), py::arg("t_max"),
        py::arg("n_t"));

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("times", &SweepResult::times)
      .def_readonly("cs", &SweepResult::cs)
      .def_readonly("phases", &SweepResult::phases)
      .def_property_readonly("simon", [](const SweepResult& r) {
        Eigen::MatrixXd s(r.times.size(), r.cs.size());
        for (std::size_t it = 0; it < r.times.size(); ++it)
          for (std::size_t ic = 0; ic < r.cs.size(); ++ic) s(it, ic) = r.at(it, ic).simon_s;
        return s;
      })
      .def_property_readonly("log_negativity", [](const SweepResult& r) {
        // undefined points become NaN
        Eigen::MatrixXd l(r.times.size(), r.cs.size());
        for (std::size_t it = 0; it < r.times.size(); ++it)
          for (std::size_t ic = 0; ic < r.cs.size(); ++ic)
            l(it, ic) = r.at(it, ic).log_negativity.value_or(std::numeric_limits<double>::quiet_NaN());
        return l;
      });
  m.def(
      "sweep",
      [](const EnvironmentSpec& env_base, const CovarianceMatrix& initial, double t_max, int n_t, double c_min,
         double c_max, int n_c) { return sweep(SweepSpec{env_base, initial, t_max, n_t, c_min, c_max, n_c}); },
      py::arg("env_base"), py::arg("initial"), py::arg("t_max") = 50.0, py::arg("n_t") = 501,
      py::arg("c_min") = 1.0, py::arg("c_max") = 1.5, py::arg("n_c") = 11);
  m.def(
      "asymptotic_phase_diagram",
      [](double lambda, double omega, const std::vector<double>& ds, const std::vector<double>& cs, double mass) {
        const PhaseDiagram d = asymptotic_phase_diagram(lambda, omega, ds, cs, mass);
        std::vector<std::vector<std::string>> grid(ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i)
          for (std::size_t j = 0; j < cs.size(); ++j) grid[i].emplace_back(to_string(d.at(i, j)));
        return grid;
      },
      py::arg("lambda_"), py::arg("omega"), py::arg("d_xpy_grid"), py::arg("c_grid"), py::arg("mass") = 1.0);

  m.def("figure_initial_state", &figure_initial_state, py::arg("figure"));
  m.def("figure_environment", &figure_environment, py::arg("thermal_c"));
  m.def("preset_initial", &preset_initial, py::arg("name"));
}
