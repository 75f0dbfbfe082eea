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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace excitonq {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Computational basis encoding. A basis state |n_0 n_1 ... n_{N-1}> maps to
/// the integer sum_l n_l 2^l, i.e. qubit 0 is the least significant bit.
namespace basis {

inline constexpr std::size_t kMaxQubits = 10;

constexpr std::size_t dimension(std::size_t n_qubits) { return std::size_t{1} << n_qubits; }

constexpr int occupation(std::size_t index, std::size_t qubit) {
  return static_cast<int>((index >> qubit) & 1U);
}

constexpr std::size_t flip(std::size_t index, std::size_t qubit) {
  return index ^ (std::size_t{1} << qubit);
}

constexpr std::size_t with_occupation(std::size_t index, std::size_t qubit, int n) {
  return n != 0 ? (index | (std::size_t{1} << qubit)) : (index & ~(std::size_t{1} << qubit));
}

/// Integer encoding of an occupation pattern; every entry must be 0 or 1.
std::size_t index_of(std::span<const int> occupations);

/// Occupation pattern of `index`, qubit 0 first.
std::vector<int> occupations_of(std::size_t index, std::size_t n_qubits);

/// Bit string with qubit 0 leftmost, e.g. index 1 of two qubits -> "10".
std::string label(std::size_t index, std::size_t n_qubits);

/// Inverse of label: "10" -> 1.
std::size_t index_of_label(const std::string& bits);

/// Dot name used in reports: a, b, c, ...
std::string dot_name(std::size_t qubit);

}  // namespace basis

/// N coupled exciton qubits: single-exciton energies, the symmetric matrix of
/// biexcitonic shifts and the per-dot transition dipoles.
class ExcitonRegister {
 public:
  /// Energies and shifts in meV; dipoles in meV per kV/cm of field amplitude.
  ExcitonRegister(std::vector<double> exciton_energies_mev, Eigen::MatrixXd shift_matrix_mev,
                  std::vector<double> transition_dipoles);

  std::size_t size() const noexcept { return energies_.size(); }
  std::size_t dimension() const noexcept { return basis::dimension(size()); }

  double exciton_energy_mev(std::size_t l) const { return energies_.at(l); }
  double shift_mev(std::size_t l, std::size_t lp) const;
  double dipole(std::size_t l) const { return dipoles_.at(l); }

  const std::vector<double>& exciton_energies_mev() const noexcept { return energies_; }
  const Eigen::MatrixXd& shift_matrix_mev() const noexcept { return shifts_; }
  const std::vector<double>& transition_dipoles() const noexcept { return dipoles_; }

  /// Same register with qubits relabelled: new qubit k is old qubit perm[k].
  ExcitonRegister permuted(std::span<const std::size_t> perm) const;

 private:
  std::vector<double> energies_;
  Eigen::MatrixXd shifts_;
  std::vector<double> dipoles_;
};

/// Default transition dipole, meV of Rabi energy per kV/cm (about 25 Debye).
inline constexpr double kDefaultTransitionDipole = 5.2e-5;

/// Two-dot register with the published anchor values
/// (E_a = 1.70 eV, E_b = 1.71 eV, shift 4.5 meV).
ExcitonRegister paper_register(double dipole = kDefaultTransitionDipole);

/// Diagonal of the computational-space Hamiltonian, meV per basis state.
struct EffectiveHamiltonian {
  Eigen::VectorXd diagonal_mev;

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(diagonal_mev.size()); }
  double entry_ev(std::size_t index) const;
  ComplexMatrix matrix() const;
};

/// H = sum_l E_l n_l + 1/2 sum_{l != l'} dE_{ll'} n_l n_l'. Vacuum sits at zero.
EffectiveHamiltonian build_hamiltonian(const ExcitonRegister& reg);

ComplexMatrix occupation_number_operator(const ExcitonRegister& reg, std::size_t l);

/// Bit flip on qubit l: Hermitian and involutory.
ComplexMatrix transition_operator(const ExcitonRegister& reg, std::size_t l);

/// Creation operator |1><0| on qubit l (sigma+).
ComplexMatrix raising_operator(std::size_t n_qubits, std::size_t l);

/// Transition energy of dot l given every dot's occupation (entry l ignored),
/// E_l + sum_{l' != l} dE_{ll'} n_l'. meV.
double renormalized_energy(const ExcitonRegister& reg, std::size_t l,
                           std::span<const int> occupations);

}  // namespace excitonq
