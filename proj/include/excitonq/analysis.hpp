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

#include <cstddef>
#include <span>
#include <vector>

#include "excitonq/dynamics.hpp"
#include "excitonq/model.hpp"
#include "excitonq/pulses.hpp"

namespace excitonq {

/// <target| rho |target>. The target must be normalized.
double fidelity(const DensityMatrix& rho, const ComplexVector& target);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

enum class SpectrumKind {
  Excitonic,    // 0 -> 1: one exciton created in the empty register
  Biexcitonic,  // 1 -> 2: a second exciton created next to an existing one
};

/// The emitting dot and the occupation of every dot before absorption.
struct Conditioning {
  std::size_t dot = 0;
  std::vector<int> occupations;
};

struct SpectrumLine {
  double energy_mev = 0.0;
  double weight = 1.0;
  SpectrumKind kind = SpectrumKind::Excitonic;
  std::size_t dot = 0;
  std::vector<int> conditioning;
};

struct AbsorptionSpectrum {
  std::vector<double> energy_grid_ev;
  std::vector<double> intensity;  // per eV
  double linewidth_mev = 0.5;     // Lorentzian FWHM
  std::vector<SpectrumLine> lines;
};

/// Stick positions. Excitonic: one line per dot at E_l. Biexcitonic: one line
/// per conditioning entry at the renormalized energy; with no conditioning,
/// every (dot, single pre-existing exciton elsewhere) pair.
std::vector<SpectrumLine> spectrum_lines(const ExcitonRegister& reg, SpectrumKind kind,
                                         std::span<const Conditioning> conditioning = {});

/// Lorentzian-broadened sum of the stick spectrum on an ascending grid (eV).
AbsorptionSpectrum absorption_spectrum(const ExcitonRegister& reg, SpectrumKind kind,
                                       std::span<const Conditioning> conditioning,
                                       std::span<const double> energy_grid_ev,
                                       double linewidth_mev = 0.5);

/// The fixed probe set used by gate_fidelity: every basis state, then
/// (|k> + |k+1 mod d>)/sqrt(2) for each k.
std::vector<ComplexVector> gate_probe_states(std::size_t n_qubits);

/// Mean state fidelity between the propagated and the ideal final state over
/// the probe set, compared in the computational frame.
double gate_fidelity(const PulseSequence& sequence, const ExcitonRegister& reg,
                     std::span<const LindbladChannel> channels, const SimulationConfig& config,
                     const ComplexMatrix& ideal_unitary);

}  // namespace excitonq
