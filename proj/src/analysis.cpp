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

#include "excitonq/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "excitonq/errors.hpp"
#include "excitonq/units.hpp"

namespace excitonq {

double fidelity(const DensityMatrix& rho, const ComplexVector& target) {
  if (static_cast<std::size_t>(target.size()) != rho.dimension()) {
    throw InvalidParameter("target and state dimensions differ");
  }
  if (std::abs(target.norm() - 1.0) > 1e-9) throw InvalidParameter("target state is not normalized");
  const double f = (target.adjoint() * rho.matrix() * target)(0, 0).real();
  return std::clamp(f, 0.0, 1.0);
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dimension() != 4) {
    throw InvalidParameter("concurrence is only defined here for two qubits (got dimension " +
                           std::to_string(rho.dimension()) + ")");
  }
  // Y (x) Y in the computational basis.
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const ComplexMatrix& r = rho.matrix();

  // The lambdas are the singular values of sqrt(rho) YY conj(sqrt(rho)).
  // Eigenvalues of rho below the round-off floor count as zero.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(r);
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, es.eigenvalues().maxCoeff());
  const Eigen::VectorXd ev =
      es.eigenvalues().unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
  const ComplexMatrix sqrt_rho = es.eigenvectors() * ev.cast<std::complex<double>>().asDiagonal() *
                                 es.eigenvectors().adjoint();
  const ComplexMatrix m = sqrt_rho * yy * sqrt_rho.conjugate();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  std::vector<double> lambda(svd.singularValues().data(), svd.singularValues().data() + 4);
  std::sort(lambda.begin(), lambda.end(), std::greater<>());
  return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

std::vector<SpectrumLine> spectrum_lines(const ExcitonRegister& reg, SpectrumKind kind,
                                         std::span<const Conditioning> conditioning) {
  const auto n = reg.size();
  std::vector<SpectrumLine> lines;
  if (kind == SpectrumKind::Excitonic) {
    if (!conditioning.empty()) {
      throw InvalidParameter("excitonic spectra are taken from the empty register");
    }
    for (std::size_t l = 0; l < n; ++l) {
      lines.push_back({reg.exciton_energy_mev(l), 1.0, kind, l, std::vector<int>(n, 0)});
    }
    return lines;
  }

  if (conditioning.empty()) {
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t lp = 0; lp < n; ++lp) {
        if (lp == l) continue;
        std::vector<int> occ(n, 0);
        occ[lp] = 1;
        lines.push_back({renormalized_energy(reg, l, occ), 1.0, kind, l, occ});
      }
    }
    return lines;
  }
  for (const auto& c : conditioning) {
    if (c.dot >= n) throw InvalidParameter("conditioning names dot " + std::to_string(c.dot) + " outside the register");
    if (c.occupations.size() != n) {
      throw InvalidParameter("conditioning for dot " + basis::dot_name(c.dot) + " must list every dot");
    }
    if (c.occupations[c.dot] != 0) {
      throw InvalidParameter("conditioning occupies the emitting dot " + basis::dot_name(c.dot));
    }
    lines.push_back({renormalized_energy(reg, c.dot, c.occupations), 1.0, kind, c.dot, c.occupations});
  }
  return lines;
}

AbsorptionSpectrum absorption_spectrum(const ExcitonRegister& reg, SpectrumKind kind,
                                       std::span<const Conditioning> conditioning,
                                       std::span<const double> energy_grid_ev,
                                       double linewidth_mev) {
  if (!(linewidth_mev > 0.0)) throw InvalidParameter("linewidth must be positive");
  if (energy_grid_ev.empty()) throw InvalidParameter("energy grid is empty");
  for (std::size_t i = 1; i < energy_grid_ev.size(); ++i) {
    if (!(energy_grid_ev[i] > energy_grid_ev[i - 1])) throw InvalidParameter("energy grid must be ascending");
  }
  AbsorptionSpectrum out;
  out.lines = spectrum_lines(reg, kind, conditioning);
  out.linewidth_mev = linewidth_mev;
  out.energy_grid_ev.assign(energy_grid_ev.begin(), energy_grid_ev.end());
  out.intensity.assign(energy_grid_ev.size(), 0.0);
  const double gamma_ev = units::mev_to_ev(0.5 * linewidth_mev);
  for (const auto& line : out.lines) {
    const double center = units::mev_to_ev(line.energy_mev);
    for (std::size_t i = 0; i < energy_grid_ev.size(); ++i) {
      const double x = energy_grid_ev[i] - center;
      out.intensity[i] += line.weight * gamma_ev / (units::kPi * (x * x + gamma_ev * gamma_ev));
    }
  }
  return out;
}

std::vector<ComplexVector> gate_probe_states(std::size_t n_qubits) {
  const auto dim = static_cast<Eigen::Index>(basis::dimension(n_qubits));
  std::vector<ComplexVector> probes;
  for (Eigen::Index k = 0; k < dim; ++k) {
    ComplexVector v = ComplexVector::Zero(dim);
    v(k) = 1.0;
    probes.push_back(v);
  }
  if (dim > 1) {
    for (Eigen::Index k = 0; k < dim; ++k) {
      ComplexVector v = ComplexVector::Zero(dim);
      v(k) = 1.0 / std::sqrt(2.0);
      v((k + 1) % dim) = 1.0 / std::sqrt(2.0);
      probes.push_back(v);
    }
  }
  return probes;
}

double gate_fidelity(const PulseSequence& sequence, const ExcitonRegister& reg,
                     std::span<const LindbladChannel> channels, const SimulationConfig& config,
                     const ComplexMatrix& ideal_unitary) {
  const auto dim = static_cast<Eigen::Index>(reg.dimension());
  if (ideal_unitary.rows() != dim || ideal_unitary.cols() != dim) {
    throw InvalidParameter("ideal unitary dimension does not match the register");
  }
  const auto probes = gate_probe_states(reg.size());
  double total = 0.0;
  for (const auto& psi : probes) {
    const auto traj = propagate(DensityMatrix::pure(psi), sequence, reg, channels, config);
    const ComplexVector expected = ideal_unitary * psi;
    total += fidelity(*traj.final_computational, expected.normalized());
  }
  return total / static_cast<double>(probes.size());
}

}  // namespace excitonq
