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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "excitonq/model.hpp"
#include "excitonq/pulses.hpp"

namespace excitonq {

/// Trace-one Hermitian positive semidefinite matrix on the register space.
class DensityMatrix {
 public:
  /// Validates Hermiticity (1e-12), unit trace and positivity (smallest
  /// eigenvalue >= -positivity_tolerance).
  explicit DensityMatrix(ComplexMatrix rho, double trace_tolerance = 1e-9,
                         double positivity_tolerance = 1e-9);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix basis_state(std::size_t n_qubits, std::size_t index);
  static DensityMatrix maximally_mixed(std::size_t n_qubits);

  const ComplexMatrix& matrix() const noexcept { return rho_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(rho_.rows()); }
  std::size_t n_qubits() const noexcept;
  double purity() const;
  std::vector<double> populations() const;

 private:
  ComplexMatrix rho_;
};

enum class ChannelKind { Decay, PureDephasing };

/// Markovian channel on one dot. Decay: L = sqrt(rate) s-. Pure dephasing:
/// L = sqrt(rate / 2) Z, which damps coherences across the dot at `rate`.
struct LindbladChannel {
  ChannelKind kind = ChannelKind::Decay;
  std::size_t dot = 0;
  double rate_per_ps = 0.0;

  void validate(std::size_t n_qubits) const;
};

struct SimulationConfig {
  double step_ps = 5e-4;
  Frame frame = Frame::Rotating;
  int integrator_order = 4;
  std::size_t sample_stride = 10;
  /// Rotating-frame reference energy; default is the lowest exciton energy.
  std::optional<double> reference_mev;
  /// Integration window; defaults to the pulse sequence's span.
  std::optional<double> t_start_ps;
  std::optional<double> t_end_ps;
  double trace_tolerance = 1e-7;
  double positivity_tolerance = 1e-6;

  /// Checks step and window against the sequence (lab frame must resolve the
  /// optical carrier).
  void validate(const PulseSequence& sequence) const;
};

/// Lab-frame steps must resolve the optical carrier.
inline constexpr double kLabFrameMaxStepPs = 5e-5;

struct Trajectory {
  std::size_t n_qubits = 0;
  std::vector<double> times_ps;
  std::vector<std::vector<double>> populations;  // per sample, per basis state
  std::vector<std::vector<double>> occupations;  // per sample, <n_l>
  std::vector<std::complex<double>> coherences;  // per sample, computational frame
  std::size_t coherence_row = 0;
  std::size_t coherence_col = 0;
  std::size_t steps = 0;
  double max_trace_drift = 0.0;
  /// Final state in the Schroedinger picture.
  std::optional<DensityMatrix> final_state;
  /// Final state in the interaction picture of H0, where ideal gates act.
  std::optional<DensityMatrix> final_computational;
};

/// Per-dot complex drive amplitude at time t (see field_at).
using DriveFunction = std::function<std::vector<std::complex<double>>(double)>;

/// drho/dt = -(i/hbar)[H0 + H_drive(t), rho] + sum_k D[L_k] rho, with
/// H_drive = -sum_l (a_l(t) s+_l + conj(a_l(t)) s-_l). `h0_diagonal_mev` is the
/// Hamiltonian diagonal in the integration frame.
ComplexMatrix liouvillian_apply(const ComplexMatrix& rho, double t_ps,
                                const Eigen::VectorXd& h0_diagonal_mev, const DriveFunction& drive,
                                std::span<const LindbladChannel> channels);

/// Diagonal of H0 in the chosen frame: H0 itself in the lab frame, H0 - E_ref N
/// in the rotating frame.
Eigen::VectorXd frame_hamiltonian(const ExcitonRegister& reg, Frame frame, double reference_mev);

double default_reference_mev(const ExcitonRegister& reg);

/// Fixed-step RK4 propagation over the sequence span (or the configured window).
/// `rho0` is the computational-frame state at the window start, which is the
/// Schroedinger-picture state when the window starts at t = 0.
Trajectory propagate(const DensityMatrix& rho0, const PulseSequence& sequence,
                     const ExcitonRegister& reg, std::span<const LindbladChannel> channels,
                     const SimulationConfig& config);

/// Same integration for an arbitrary per-dot drive a_l(t), given in the
/// configured frame (rotating amplitudes are taken relative to the reference
/// energy). Needs an explicit [t_start, t_end] window.
Trajectory propagate(const DensityMatrix& rho0, const DriveFunction& drive,
                     const ExcitonRegister& reg, std::span<const LindbladChannel> channels,
                     const SimulationConfig& config);

/// Re tr(op rho); throws NumericalConsistencyError if the imaginary residue
/// exceeds 1e-8.
double expectation(const ComplexMatrix& op, const DensityMatrix& rho);

/// Maps a Schroedinger-picture state at time t into the interaction picture of H0.
DensityMatrix to_computational_frame(const DensityMatrix& rho, const ExcitonRegister& reg,
                                     double t_ps);

}  // namespace excitonq
