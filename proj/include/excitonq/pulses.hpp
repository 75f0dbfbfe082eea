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

#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "excitonq/model.hpp"
#include "excitonq/units.hpp"

namespace excitonq {

/// Which dots a pulse's field couples to. Global is frequency-only addressing:
/// every dot sees the field and selectivity comes from the carrier alone.
enum class Addressing { Global, Local };

/// A Gaussian laser pulse, truncated at +-4 tau. `area_rad` is the rotation
/// angle it produces on resonance for `calibrated_dot`.
struct Pulse {
  double carrier_mev = 0.0;
  double center_ps = 0.0;
  double tau_ps = 0.1;
  double area_rad = 0.0;
  double phase_rad = 0.0;
  std::size_t calibrated_dot = 0;
  Addressing addressing = Addressing::Global;

  static constexpr double kTruncation = 4.0;

  void validate() const;
  double start_ps() const { return center_ps - kTruncation * tau_ps; }
  double end_ps() const { return center_ps + kTruncation * tau_ps; }
};

class PulseSequence {
 public:
  PulseSequence() = default;
  explicit PulseSequence(std::vector<Pulse> pulses);

  const std::vector<Pulse>& pulses() const noexcept { return pulses_; }
  bool empty() const noexcept { return pulses_.empty(); }
  std::size_t size() const noexcept { return pulses_.size(); }
  /// Interval covering every pulse out to +-4 tau; [0, 0] when empty.
  double start_ps() const noexcept { return start_; }
  double end_ps() const noexcept { return end_; }
  double total_span_ps() const noexcept { return end_ - start_; }
  double min_tau_ps() const;

  /// Concatenation; pulses keep their absolute times.
  PulseSequence then(const PulseSequence& other) const;

 private:
  std::vector<Pulse> pulses_;
  double start_ = 0.0;
  double end_ = 0.0;
};

enum class GateKind { Rotation, ConditionalRotation, Cnot, UnconditionalNot };

std::string to_string(GateKind kind);
GateKind gate_kind_from_string(const std::string& name);

struct Condition {
  std::size_t dot = 0;
  int occupation = 1;
};

struct GateSpec {
  GateKind kind = GateKind::Rotation;
  std::size_t target = 0;
  double angle_rad = units::kPi;
  std::vector<Condition> conditions;
  std::optional<double> start_ps;  // centre of the gate's first pulse; nullopt = auto

  void validate(std::size_t n_qubits) const;
};

struct TimingPolicy {
  double tau_ps = 0.6;
  double spacing_tau = 8.0;           // minimum centre-to-centre gap, in units of tau
  double selectivity_fraction = 0.25; // hbar/tau must stay below this share of the gap
  double phase_rad = units::kPi / 2;  // pi/2: rotations about y
  Addressing addressing = Addressing::Global;

  void validate() const;
  double spacing_ps() const { return spacing_tau * tau_ps; }
};

/// Unconditional rotations emit 2^k colours; k above this is rejected.
inline constexpr std::size_t kMaxCoupledNeighbours = 4;

/// Transition energy of `target` given the conditioned occupations (unlisted
/// dots empty), meV.
double conditional_frequency(const ExcitonRegister& reg, std::size_t target,
                             std::span<const Condition> conditions);

/// Pulses for one gate, the first centred at `first_center_ps`.
PulseSequence compile_gate(const ExcitonRegister& reg, const GateSpec& spec,
                           const TimingPolicy& policy, double first_center_ps);

/// Pulses for a gate program. Gates run in order; "auto" start times follow
/// the previous pulse by the policy spacing, and the first auto pulse is
/// centred at 4 tau. Compile errors name the offending gate index.
PulseSequence compile_program(const ExcitonRegister& reg, std::span<const GateSpec> program,
                              const TimingPolicy& policy);

/// Peak Rabi energy (meV) of a Gaussian envelope with the pulse's area:
/// Omega0 tau sqrt(2 pi) / hbar = area.
double pulse_amplitude(const Pulse& pulse, double dipole);

enum class Frame { Lab, Rotating };

/// Per-dot drive amplitude a_l(t), meV, entering H_drive = -sum_l (a_l s+_l + h.c.).
/// Lab frame: a_l = sum_p Omega_pl(t) cos(w_p t + phi_p) (real).
/// Rotating frame at `reference_mev`: a_l = 1/2 sum_p Omega_pl(t)
/// exp(-i ((hbar w_p - reference) t / hbar + phi_p)); only the 2x optical
/// counter-rotating terms are dropped.
std::vector<std::complex<double>> field_at(const PulseSequence& sequence, double t_ps, Frame frame,
                                           std::span<const double> dipoles,
                                           double reference_mev = 0.0);

/// The unitary the compiler intends for `spec` on the computational space,
/// using the rotation convention R(theta, phi) = exp(i theta/2 (cos phi X - sin phi Y)).
ComplexMatrix ideal_gate_unitary(const ExcitonRegister& reg, const GateSpec& spec,
                                 const TimingPolicy& policy);

}  // namespace excitonq
