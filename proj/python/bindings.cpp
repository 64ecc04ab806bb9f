#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gouysim/beam_optics.hpp"
#include "gouysim/config.hpp"
#include "gouysim/lens_design.hpp"
#include "gouysim/ramsey.hpp"
#include "gouysim/scenario.hpp"

namespace py = pybind11;
using namespace gouysim;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Matter-wave Gouy phase Ramsey interferometer simulator";

  py::register_exception<GuardError>(m, "GuardError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<AtomParams>(m, "AtomParams")
      .def(py::init<>())
      .def_readwrite("mass", &AtomParams::mass)
      .def_readwrite("v_z", &AtomParams::v_z)
      .def_readwrite("omega_i", &AtomParams::omega_i)
      .def_readwrite("omega_g", &AtomParams::omega_g)
      .def_readwrite("omega_e", &AtomParams::omega_e)
      .def("longitudinal_wavenumber", &AtomParams::longitudinal_wavenumber);

  py::class_<GaussianBeamParams>(m, "GaussianBeam")
      .def_static("from_waist", &GaussianBeamParams::from_waist, py::arg("waist_radius"),
                  py::arg("waist_position"), py::arg("wavenumber"))
      .def_readonly("waist_radius", &GaussianBeamParams::waist_radius)
      .def_readonly("waist_position", &GaussianBeamParams::waist_position)
      .def_readonly("rayleigh_range", &GaussianBeamParams::rayleigh_range)
      .def_readonly("wavenumber", &GaussianBeamParams::wavenumber)
      .def("width", [](const GaussianBeamParams& b, double z) { return beam_width(b, z); })
      .def("gouy_phase", [](const GaussianBeamParams& b, double z) { return gouy_phase(b, z); })
      .def("curvature_radius",
           [](const GaussianBeamParams& b, double z) -> std::optional<double> {
             const auto r = curvature_radius(b, z);
             if (r.is_flat()) return std::nullopt;
             return r.value();
           })
      .def("thin_lens",
           [](const GaussianBeamParams& b, double f, double position) {
             return apply_thin_lens(b, LensSpec::thin(f, position));
           },
           py::arg("focal_length"), py::arg("position"));

  m.def("matter_rayleigh_range", &matter_rayleigh_range, py::arg("atom"), py::arg("w0"));

  py::class_<CavityLensParams>(m, "CavityLensParams")
      .def(py::init<>())
      .def_readwrite("wavelength", &CavityLensParams::wavelength)
      .def_readwrite("photon_number", &CavityLensParams::photon_number)
      .def_readwrite("rabi_per_photon", &CavityLensParams::rabi_per_photon)
      .def_readwrite("detuning_g", &CavityLensParams::detuning_g)
      .def_readwrite("detuning_i", &CavityLensParams::detuning_i)
      .def_readwrite("interaction_time", &CavityLensParams::interaction_time)
      .def_readwrite("quality_factor", &CavityLensParams::quality_factor);

  m.def("potential_curvature",
        [](const CavityLensParams& c, const std::string& state) {
          return potential_curvature(c, state == "i" ? InternalState::i : InternalState::g);
        },
        py::arg("cavity"), py::arg("state") = "g");
  m.def("focal_distance",
        [](const CavityLensParams& c, const AtomParams& a, const std::string& state) {
          return focal_distance(c, a, state == "i" ? InternalState::i : InternalState::g);
        },
        py::arg("cavity"), py::arg("atom"), py::arg("state") = "g");
  m.def("min_quality_factor", &min_quality_factor, py::arg("cavity"),
        py::arg("phase_bound"), py::arg("n_cavities") = 1);

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_readonly("atom", &ExperimentConfig::atom)
      .def_readonly("cavity", &ExperimentConfig::cavity)
      .def_readonly("slit_w0", &ExperimentConfig::slit_w0)
      .def_readonly("scan_points", &ExperimentConfig::scan_points)
      .def_readonly("exact_mode", &ExperimentConfig::exact_mode);
  m.def("parse_config", [](const std::string& text) { return parse_config(text); },
        py::arg("text") = "");

  m.def("design_report",
        [](const ExperimentConfig& c) {
          return design_report(c.atom, c.slit_w0, c.cavity, c.design_geometry()).render();
        },
        py::arg("config"));

  m.def("component_overlap",
        [](const ExperimentConfig& c, bool lenses_on) {
          InterferometerSetup s = c.interferometer();
          s.lenses_on = lenses_on;
          return run_interferometer(s).component_overlap;
        },
        py::arg("config"), py::arg("lenses_on") = true);

  m.def("run_scenario",
        [](const std::string& name, const ExperimentConfig& c, const std::string& out_dir) {
          ScenarioResult r;
          {
            py::gil_scoped_release release;
            r = run_scenario(name, c, out_dir);
          }
          py::dict summary;
          for (const auto& [key, value] : r.summary) summary[py::str(key)] = value;
          std::vector<std::string> outputs;
          for (const auto& p : r.outputs) outputs.push_back(p.string());
          return py::make_tuple(summary, outputs, r.all_checks_pass);
        },
        py::arg("name"), py::arg("config"), py::arg("out_dir"));
}
