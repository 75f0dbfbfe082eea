// Copyright 2026 The excitonq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the excitonq core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "excitonq/analysis.hpp"
#include "excitonq/device.hpp"
#include "excitonq/dynamics.hpp"
#include "excitonq/errors.hpp"
#include "excitonq/run.hpp"

namespace py = pybind11;
using namespace excitonq;

namespace {

std::vector<Conditioning> to_conditioning(const std::vector<std::pair<std::size_t, std::vector<int>>>& c) {
  std::vector<Conditioning> out;
  for (const auto& [dot, occ] : c) out.push_back({dot, occ});
  return out;
}

}  // namespace

PYBIND11_MODULE(_excitonq, m) {
  m.doc() = "Pulse-level simulator for exciton qubits in coupled quantum dots";
  m.attr("__version__") = kToolVersion;

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<InvalidParameter>(m, "InvalidParameter", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<CompileError>(m, "CompileError", base.ptr());
  py::register_exception<PropagationError>(m, "PropagationError", base.ptr());
  py::register_exception<NumericalConsistencyError>(m, "NumericalConsistencyError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  // model
  py::class_<ExcitonRegister>(m, "ExcitonRegister")
      .def(py::init<std::vector<double>, Eigen::MatrixXd, std::vector<double>>(), py::arg("energies_mev"),
           py::arg("shift_matrix_mev"), py::arg("dipoles"))
      .def_property_readonly("size", &ExcitonRegister::size)
      .def_property_readonly("dimension", &ExcitonRegister::dimension)
      .def_property_readonly("energies_mev", &ExcitonRegister::exciton_energies_mev)
      .def_property_readonly("shift_matrix_mev", &ExcitonRegister::shift_matrix_mev)
      .def_property_readonly("dipoles", &ExcitonRegister::transition_dipoles)
      .def("shift_mev", &ExcitonRegister::shift_mev);
  m.def("paper_register", &paper_register, py::arg("dipole") = kDefaultTransitionDipole);
  m.def("hamiltonian_diagonal_mev", [](const ExcitonRegister& r) { return build_hamiltonian(r).diagonal_mev; });
  m.def("renormalized_energy_mev", [](const ExcitonRegister& r, std::size_t l, const std::vector<int>& occ) {
    return renormalized_energy(r, l, occ);
  });
  m.def("basis_label", &basis::label, py::arg("index"), py::arg("n_qubits"));
  m.def("basis_index", &basis::index_of_label, py::arg("label"));
  m.def("occupation_operator", &occupation_number_operator);

  // device
  py::class_<MaterialParams>(m, "MaterialParams")
      .def(py::init<>())
      .def_readwrite("electron_mass", &MaterialParams::electron_mass)
      .def_readwrite("hole_mass", &MaterialParams::hole_mass)
      .def_readwrite("relative_permittivity", &MaterialParams::relative_permittivity)
      .def_readwrite("band_gap_ev", &MaterialParams::band_gap_ev);
  py::class_<DotGeometry>(m, "DotGeometry")
      .def(py::init<>())
      .def_readwrite("confinement_electron_mev", &DotGeometry::confinement_electron_mev)
      .def_readwrite("confinement_hole_mev", &DotGeometry::confinement_hole_mev)
      .def_readwrite("well_width_nm", &DotGeometry::well_width_nm)
      .def_readwrite("z_center_nm", &DotGeometry::z_center_nm);
  py::class_<DeviceStructure>(m, "DeviceStructure")
      .def_readonly("dots", &DeviceStructure::dots)
      .def_readonly("barrier_widths_nm", &DeviceStructure::barrier_widths_nm)
      .def_readonly("material", &DeviceStructure::material)
      .def_readonly("field_kv_cm", &DeviceStructure::field_kv_cm)
      .def("with_field", &DeviceStructure::with_field);
  m.def("stack_dots", &stack_dots, py::arg("dots"), py::arg("barrier_widths_nm"), py::arg("material"),
        py::arg("field_kv_cm"), py::arg("z_origin_nm") = 0.0);
  m.def("paper_two_dot_preset", &paper_two_dot_preset);
  m.def("exciton_energy_mev", [](const DeviceStructure& d, std::size_t l) { return exciton_energy(d, l); });
  m.def("biexcitonic_shift_mev",
        [](const DeviceStructure& d, std::size_t l, std::size_t lp) { return biexcitonic_shift(d, l, lp); });
  m.def("shift_vs_field", [](const DeviceStructure& d, std::size_t l, std::size_t lp, const std::vector<double>& g) {
    std::vector<std::pair<double, double>> out;
    for (const auto& p : shift_vs_field(d, l, lp, g)) out.emplace_back(p.field_kv_cm, p.shift_mev);
    return out;
  });
  m.def("make_register", [](const DeviceStructure& d, std::vector<double> dipoles) {
    return make_register(d, std::move(dipoles));
  });

  // pulses
  py::enum_<Addressing>(m, "Addressing").value("GLOBAL", Addressing::Global).value("LOCAL", Addressing::Local);
  py::enum_<Frame>(m, "Frame").value("LAB", Frame::Lab).value("ROTATING", Frame::Rotating);
  py::class_<Pulse>(m, "Pulse")
      .def(py::init([](double carrier_mev, double center_ps, double tau_ps, double area_rad, double phase_rad,
                       std::size_t dot, Addressing addressing) {
             return Pulse{carrier_mev, center_ps, tau_ps, area_rad, phase_rad, dot, addressing};
           }),
           py::arg("carrier_mev"), py::arg("center_ps"), py::arg("tau_ps"), py::arg("area_rad"),
           py::arg("phase_rad") = units::kPi / 2, py::arg("dot") = 0, py::arg("addressing") = Addressing::Global)
      .def_readwrite("carrier_mev", &Pulse::carrier_mev)
      .def_readwrite("center_ps", &Pulse::center_ps)
      .def_readwrite("tau_ps", &Pulse::tau_ps)
      .def_readwrite("area_rad", &Pulse::area_rad)
      .def_readwrite("phase_rad", &Pulse::phase_rad)
      .def_readwrite("dot", &Pulse::calibrated_dot);
  py::class_<PulseSequence>(m, "PulseSequence")
      .def(py::init<>())
      .def(py::init<std::vector<Pulse>>())
      .def_property_readonly("pulses", &PulseSequence::pulses)
      .def_property_readonly("start_ps", &PulseSequence::start_ps)
      .def_property_readonly("end_ps", &PulseSequence::end_ps)
      .def("__len__", &PulseSequence::size);
  py::class_<Condition>(m, "Condition")
      .def(py::init([](std::size_t dot, int occupation) { return Condition{dot, occupation}; }), py::arg("dot"),
           py::arg("occupation") = 1)
      .def_readwrite("dot", &Condition::dot)
      .def_readwrite("occupation", &Condition::occupation);
  py::class_<GateSpec>(m, "GateSpec")
      .def(py::init([](const std::string& kind, std::size_t target, double angle, std::vector<Condition> conditions,
                       std::optional<double> start_ps) {
             return GateSpec{gate_kind_from_string(kind), target, angle, std::move(conditions), start_ps};
           }),
           py::arg("kind"), py::arg("target"), py::arg("angle_rad") = units::kPi,
           py::arg("conditions") = std::vector<Condition>{}, py::arg("start_ps") = std::nullopt);
  py::class_<TimingPolicy>(m, "TimingPolicy")
      .def(py::init<>())
      .def_readwrite("tau_ps", &TimingPolicy::tau_ps)
      .def_readwrite("spacing_tau", &TimingPolicy::spacing_tau)
      .def_readwrite("selectivity_fraction", &TimingPolicy::selectivity_fraction)
      .def_readwrite("phase_rad", &TimingPolicy::phase_rad)
      .def_readwrite("addressing", &TimingPolicy::addressing);
  m.def("conditional_frequency_mev",
        [](const ExcitonRegister& r, std::size_t target, const std::vector<Condition>& c) {
          return conditional_frequency(r, target, c);
        });
  m.def("compile_program",
        [](const ExcitonRegister& r, const std::vector<GateSpec>& prog, const TimingPolicy& p) {
          return compile_program(r, prog, p);
        },
        py::arg("register"), py::arg("program"), py::arg("policy") = TimingPolicy{});
  m.def("pulse_amplitude_mev", &pulse_amplitude);

  // dynamics
  py::class_<DensityMatrix>(m, "DensityMatrix")
      .def(py::init<ComplexMatrix>())
      .def_static("pure", &DensityMatrix::pure)
      .def_static("basis_state", &DensityMatrix::basis_state)
      .def_static("maximally_mixed", &DensityMatrix::maximally_mixed)
      .def_property_readonly("matrix", &DensityMatrix::matrix)
      .def_property_readonly("purity", &DensityMatrix::purity)
      .def_property_readonly("populations", &DensityMatrix::populations);
  py::enum_<ChannelKind>(m, "ChannelKind")
      .value("DECAY", ChannelKind::Decay)
      .value("PURE_DEPHASING", ChannelKind::PureDephasing);
  py::class_<LindbladChannel>(m, "LindbladChannel")
      .def(py::init([](ChannelKind k, std::size_t dot, double rate) { return LindbladChannel{k, dot, rate}; }),
           py::arg("kind"), py::arg("dot"), py::arg("rate_per_ps"));
  py::class_<SimulationConfig>(m, "SimulationConfig")
      .def(py::init<>())
      .def_readwrite("step_ps", &SimulationConfig::step_ps)
      .def_readwrite("frame", &SimulationConfig::frame)
      .def_readwrite("sample_stride", &SimulationConfig::sample_stride)
      .def_readwrite("reference_mev", &SimulationConfig::reference_mev)
      .def_readwrite("t_start_ps", &SimulationConfig::t_start_ps)
      .def_readwrite("t_end_ps", &SimulationConfig::t_end_ps);
  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times_ps", &Trajectory::times_ps)
      .def_readonly("populations", &Trajectory::populations)
      .def_readonly("occupations", &Trajectory::occupations)
      .def_readonly("coherences", &Trajectory::coherences)
      .def_readonly("steps", &Trajectory::steps)
      .def_readonly("max_trace_drift", &Trajectory::max_trace_drift)
      .def_property_readonly("final_state", [](const Trajectory& t) { return *t.final_state; })
      .def_property_readonly("final_computational", [](const Trajectory& t) { return *t.final_computational; });
  m.def("propagate",
        [](const DensityMatrix& rho0, const PulseSequence& seq, const ExcitonRegister& r,
           const std::vector<LindbladChannel>& ch, const SimulationConfig& c) {
          py::gil_scoped_release release;
          return propagate(rho0, seq, r, ch, c);
        },
        py::arg("rho0"), py::arg("sequence"), py::arg("register"),
        py::arg("channels") = std::vector<LindbladChannel>{}, py::arg("config") = SimulationConfig{});

  // analysis
  m.def("fidelity", &fidelity, py::arg("rho"), py::arg("target"));
  m.def("concurrence", &concurrence, py::arg("rho"));
  m.def("spectrum_lines_mev",
        [](const ExcitonRegister& r, const std::string& kind,
           const std::vector<std::pair<std::size_t, std::vector<int>>>& conditioning) {
          if (kind != "excitonic" && kind != "biexcitonic") throw InvalidParameter("unknown spectrum kind " + kind);
          const auto c = to_conditioning(conditioning);
          std::vector<std::pair<std::size_t, double>> out;
          for (const auto& l : spectrum_lines(r, kind == "excitonic" ? SpectrumKind::Excitonic : SpectrumKind::Biexcitonic, c)) {
            out.emplace_back(l.dot, l.energy_mev);
          }
          return out;
        },
        py::arg("register"), py::arg("kind"),
        py::arg("conditioning") = std::vector<std::pair<std::size_t, std::vector<int>>>{});

  // command-line entry point
  m.def("run_command", [](const std::string& command, const std::string& config, const std::string& out_dir) {
    std::ostringstream out, err;
    const int code = run_command(command, config, out_dir, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("command"), py::arg("config"), py::arg("out_dir") = ".");
}
