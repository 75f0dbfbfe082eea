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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "excitonq/analysis.hpp"
#include "excitonq/errors.hpp"

namespace excitonq {
namespace {

constexpr double kPi = units::kPi;
using cd = std::complex<double>;

ComplexVector bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v;
}

DensityMatrix werner(double p) {
  const ComplexVector b = bell();
  ComplexMatrix m = p * (b * b.adjoint()) + (1 - p) * ComplexMatrix::Identity(4, 4) / 4.0;
  return DensityMatrix(m);
}

ComplexMatrix random_su2(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  double q[4];
  double norm = 0;
  for (double& x : q) {
    x = g(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  const cd a(q[0] / norm, q[1] / norm), b(q[2] / norm, q[3] / norm);
  ComplexMatrix u(2, 2);
  u << a, -std::conj(b), b, std::conj(a);
  return u;
}

TEST(Fidelity, Examples) {
  const auto b = bell();
  EXPECT_NEAR(fidelity(DensityMatrix::pure(b), b), 1.0, 1e-15);
  ComplexVector other = ComplexVector::Zero(4);
  other(1) = 1.0;
  EXPECT_EQ(fidelity(DensityMatrix::pure(b), other), 0.0);
  EXPECT_NEAR(fidelity(DensityMatrix::maximally_mixed(2), b), 0.25, 1e-15);
  EXPECT_NEAR(fidelity(DensityMatrix::pure(b), b * std::polar(1.0, 0.7)), 1.0, 1e-15);
  EXPECT_THROW(fidelity(DensityMatrix::pure(b), 2.0 * b), InvalidParameter);
}

TEST(Concurrence, BellProductAndWerner) {
  EXPECT_NEAR(concurrence(DensityMatrix::pure(bell())), 1.0, 1e-10);
  ComplexVector qa(2), qb(2);
  qa << 0.6, cd(0, 0.8);
  qb << 0.8, 0.6;
  const ComplexVector prod = Eigen::kroneckerProduct(qb, qa).eval();
  EXPECT_NEAR(concurrence(DensityMatrix::pure(prod)), 0.0, 1e-10);
  for (double p : {0.0, 0.4, 0.8, 1.0}) {
    EXPECT_NEAR(concurrence(werner(p)), std::max(0.0, (3 * p - 1) / 2), 1e-8) << p;
  }
  EXPECT_THROW(concurrence(DensityMatrix::maximally_mixed(3)), InvalidParameter);
}

TEST(Concurrence, InvariantUnderLocalUnitaries) {
  std::mt19937_64 rng(42);
  for (double p : {0.5, 0.9}) {
    const auto rho = werner(p).matrix();
    ComplexVector tilt(4);
    tilt << 0.3, 0.5, cd(0, 0.2), 0.78;
    tilt.normalize();
    const ComplexMatrix mixed = 0.7 * rho + 0.3 * tilt * tilt.adjoint();
    const double c0 = concurrence(DensityMatrix(mixed));
    for (int k = 0; k < 5; ++k) {
      // qubit a is the least significant bit, so it is the right factor
      const ComplexMatrix u = Eigen::kroneckerProduct(random_su2(rng), random_su2(rng)).eval();
      ComplexMatrix r = u * mixed * u.adjoint();
      r = 0.5 * (r + r.adjoint()).eval();
      EXPECT_NEAR(concurrence(DensityMatrix(r)), c0, 1e-8);
    }
  }
}

TEST(Spectrum, DefaultRegisterLines) {
  const auto reg = paper_register();
  const auto ex = spectrum_lines(reg, SpectrumKind::Excitonic);
  ASSERT_EQ(ex.size(), 2U);
  EXPECT_EQ(units::mev_to_ev(ex[0].energy_mev), 1.70);
  EXPECT_EQ(units::mev_to_ev(ex[1].energy_mev), 1.71);
  const auto bi = spectrum_lines(reg, SpectrumKind::Biexcitonic);
  ASSERT_EQ(bi.size(), 2U);
  EXPECT_DOUBLE_EQ(units::mev_to_ev(bi[0].energy_mev), 1.7045);
  EXPECT_DOUBLE_EQ(units::mev_to_ev(bi[1].energy_mev), 1.7145);
  for (std::size_t i = 0; i < 2; ++i) EXPECT_EQ(bi[i].energy_mev - ex[i].energy_mev, reg.shift_mev(0, 1));
}

TEST(Spectrum, ZeroShiftMakesSpectraIdentical) {
  const ExcitonRegister reg({1700, 1710}, Eigen::MatrixXd::Zero(2, 2), {1, 1});
  std::vector<double> grid;
  for (int i = 0; i <= 400; ++i) grid.push_back(1.69 + i * 1e-4);
  const auto a = absorption_spectrum(reg, SpectrumKind::Excitonic, {}, grid);
  const auto b = absorption_spectrum(reg, SpectrumKind::Biexcitonic, {}, grid);
  EXPECT_EQ(a.intensity, b.intensity);
}

TEST(Spectrum, ConditioningValidation) {
  const auto reg = paper_register();
  const Conditioning bad{0, {1, 0}};
  EXPECT_THROW(spectrum_lines(reg, SpectrumKind::Biexcitonic, std::span(&bad, 1)), InvalidParameter);
  const Conditioning ok{1, {1, 0}};
  EXPECT_THROW(spectrum_lines(reg, SpectrumKind::Excitonic, std::span(&ok, 1)), InvalidParameter);
  const auto lines = spectrum_lines(reg, SpectrumKind::Biexcitonic, std::span(&ok, 1));
  ASSERT_EQ(lines.size(), 1U);
  EXPECT_EQ(lines[0].energy_mev, renormalized_energy(reg, 1, ok.occupations));
}

TEST(Spectrum, BroadeningKeepsPeaksAndWeight) {
  const auto reg = paper_register();
  const double step = 2e-6;
  std::vector<double> grid;
  for (double e = 1.60; e <= 1.80; e += step) grid.push_back(e);
  const auto s = absorption_spectrum(reg, SpectrumKind::Excitonic, {}, grid, 0.5);
  for (double v : s.intensity) EXPECT_GE(v, 0.0);
  // Lorentzian tails beyond the window hold 2/pi * gamma/distance of the weight.
  double area = 0;
  for (std::size_t i = 1; i < grid.size(); ++i) area += 0.5 * (s.intensity[i] + s.intensity[i - 1]) * (grid[i] - grid[i - 1]);
  EXPECT_NEAR(area / 2.0, 1.0, 0.01);
  for (const auto& line : s.lines) {
    const double c = units::mev_to_ev(line.energy_mev);
    std::size_t best = 0;
    double best_v = -1;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(grid[i] - c) < 2e-3 && s.intensity[i] > best_v) {
        best_v = s.intensity[i];
        best = i;
      }
    }
    EXPECT_LE(std::abs(grid[best] - c), step);
  }
  EXPECT_THROW(absorption_spectrum(reg, SpectrumKind::Excitonic, {}, std::vector<double>{1.7, 1.6}), InvalidParameter);
  EXPECT_THROW(absorption_spectrum(reg, SpectrumKind::Excitonic, {}, grid, 0.0), InvalidParameter);
}

TEST(GateFidelity, ProbeSet) {
  const auto probes = gate_probe_states(2);
  ASSERT_EQ(probes.size(), 8U);
  for (const auto& p : probes) EXPECT_NEAR(p.norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(probes[7](3)), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(std::abs(probes[7](0)), 1 / std::sqrt(2.0), 1e-15);
}

TEST(GateFidelity, IdentityAndCompiledCnot) {
  const auto reg = paper_register();
  SimulationConfig cfg;
  cfg.t_start_ps = 0.0;
  cfg.t_end_ps = 2.0;
  EXPECT_NEAR(gate_fidelity(PulseSequence{}, reg, {}, cfg, ComplexMatrix::Identity(4, 4)), 1.0, 1e-9);

  const TimingPolicy policy;
  const GateSpec cnot{GateKind::Cnot, 1, kPi, {{0, 1}}, std::nullopt};
  const auto seq = compile_program(reg, std::vector<GateSpec>{cnot}, policy);
  const auto u = ideal_gate_unitary(reg, cnot, policy);
  const double clean = gate_fidelity(seq, reg, {}, SimulationConfig{}, u);
  EXPECT_GE(clean, 0.95);
  const std::vector<LindbladChannel> noisy{{ChannelKind::PureDephasing, 0, 10.0},
                                           {ChannelKind::PureDephasing, 1, 10.0}};
  EXPECT_LT(gate_fidelity(seq, reg, noisy, SimulationConfig{}, u), clean);
  EXPECT_THROW(gate_fidelity(seq, reg, {}, SimulationConfig{}, ComplexMatrix::Identity(2, 2)), InvalidParameter);
}

}  // namespace
}  // namespace excitonq
