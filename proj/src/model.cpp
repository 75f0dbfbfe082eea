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

#include "excitonq/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "excitonq/errors.hpp"
#include "excitonq/units.hpp"

namespace excitonq {

namespace basis {

std::size_t index_of(std::span<const int> occupations) {
  if (occupations.size() > kMaxQubits) throw InvalidParameter("occupation pattern too long");
  std::size_t index = 0;
  for (std::size_t l = 0; l < occupations.size(); ++l) {
    if (occupations[l] != 0 && occupations[l] != 1) {
      throw InvalidParameter("occupations must be 0 or 1");
    }
    index = with_occupation(index, l, occupations[l]);
  }
  return index;
}

std::vector<int> occupations_of(std::size_t index, std::size_t n_qubits) {
  std::vector<int> out(n_qubits);
  for (std::size_t l = 0; l < n_qubits; ++l) out[l] = occupation(index, l);
  return out;
}

std::string label(std::size_t index, std::size_t n_qubits) {
  std::string s(n_qubits, '0');
  for (std::size_t l = 0; l < n_qubits; ++l) s[l] = occupation(index, l) ? '1' : '0';
  return s;
}

std::size_t index_of_label(const std::string& bits) {
  if (bits.empty() || bits.size() > kMaxQubits) throw InvalidParameter("bad basis label '" + bits + "'");
  std::size_t index = 0;
  for (std::size_t l = 0; l < bits.size(); ++l) {
    if (bits[l] == '1') {
      index |= std::size_t{1} << l;
    } else if (bits[l] != '0') {
      throw InvalidParameter("bad basis label '" + bits + "'");
    }
  }
  return index;
}

std::string dot_name(std::size_t qubit) {
  if (qubit < 26) return std::string(1, static_cast<char>('a' + qubit));
  return "q" + std::to_string(qubit);
}

}  // namespace basis

ExcitonRegister::ExcitonRegister(std::vector<double> exciton_energies_mev,
                                 Eigen::MatrixXd shift_matrix_mev,
                                 std::vector<double> transition_dipoles)
    : energies_(std::move(exciton_energies_mev)),
      shifts_(std::move(shift_matrix_mev)),
      dipoles_(std::move(transition_dipoles)) {
  const auto n = energies_.size();
  if (n == 0) throw InvalidParameter("register needs at least one qubit");
  if (n > basis::kMaxQubits) {
    throw InvalidParameter("register limited to " + std::to_string(basis::kMaxQubits) + " qubits");
  }
  if (static_cast<std::size_t>(shifts_.rows()) != n ||
      static_cast<std::size_t>(shifts_.cols()) != n) {
    throw InvalidParameter("shift matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  }
  if (dipoles_.size() != n) throw InvalidParameter("one transition dipole per dot required");
  for (std::size_t l = 0; l < n; ++l) {
    if (!(energies_[l] > 0.0) || !std::isfinite(energies_[l])) {
      throw InvalidParameter("exciton energies must be positive");
    }
    if (!(dipoles_[l] >= 0.0) || !std::isfinite(dipoles_[l])) {
      throw InvalidParameter("transition dipoles must be non-negative");
    }
    if (shifts_(l, l) != 0.0) throw InvalidParameter("shift matrix diagonal must be zero");
    for (std::size_t lp = 0; lp < l; ++lp) {
      if (shifts_(l, lp) != shifts_(lp, l)) throw InvalidParameter("shift matrix must be symmetric");
      if (!std::isfinite(shifts_(l, lp))) throw InvalidParameter("shift matrix entries must be finite");
    }
  }
}

double ExcitonRegister::shift_mev(std::size_t l, std::size_t lp) const {
  if (l >= size() || lp >= size()) throw InvalidParameter("dot index out of range");
  return shifts_(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(lp));
}

ExcitonRegister ExcitonRegister::permuted(std::span<const std::size_t> perm) const {
  const auto n = size();
  std::vector<std::size_t> check(perm.begin(), perm.end());
  std::sort(check.begin(), check.end());
  std::vector<std::size_t> iota(n);
  std::iota(iota.begin(), iota.end(), std::size_t{0});
  if (check != iota) throw InvalidParameter("not a permutation of the register's qubits");

  std::vector<double> e(n), d(n);
  Eigen::MatrixXd s(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    e[k] = energies_[perm[k]];
    d[k] = dipoles_[perm[k]];
    for (std::size_t j = 0; j < n; ++j) {
      s(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) =
          shifts_(static_cast<Eigen::Index>(perm[k]), static_cast<Eigen::Index>(perm[j]));
    }
  }
  return {std::move(e), std::move(s), std::move(d)};
}

ExcitonRegister paper_register(double dipole) {
  Eigen::MatrixXd shifts(2, 2);
  shifts << 0.0, 4.5, 4.5, 0.0;
  return {{units::ev_to_mev(1.70), units::ev_to_mev(1.71)}, shifts, {dipole, dipole}};
}

double EffectiveHamiltonian::entry_ev(std::size_t index) const {
  return units::mev_to_ev(diagonal_mev(static_cast<Eigen::Index>(index)));
}

ComplexMatrix EffectiveHamiltonian::matrix() const {
  return diagonal_mev.cast<std::complex<double>>().asDiagonal();
}

EffectiveHamiltonian build_hamiltonian(const ExcitonRegister& reg) {
  const auto n = reg.size();
  const auto dim = reg.dimension();
  EffectiveHamiltonian h{Eigen::VectorXd::Zero(static_cast<Eigen::Index>(dim))};
  for (std::size_t idx = 0; idx < dim; ++idx) {
    double e = 0.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (basis::occupation(idx, l)) e += reg.exciton_energy_mev(l);
    }
    for (std::size_t l = 0; l < n; ++l) {
      for (std::size_t lp = l + 1; lp < n; ++lp) {
        if (basis::occupation(idx, l) && basis::occupation(idx, lp)) e += reg.shift_mev(l, lp);
      }
    }
    h.diagonal_mev(static_cast<Eigen::Index>(idx)) = e;
  }
  return h;
}

namespace {

void check_qubit(std::size_t n_qubits, std::size_t l) {
  if (l >= n_qubits) {
    throw InvalidParameter("qubit index " + std::to_string(l) + " out of range for " +
                           std::to_string(n_qubits) + " qubits");
  }
}

}  // namespace

ComplexMatrix occupation_number_operator(const ExcitonRegister& reg, std::size_t l) {
  check_qubit(reg.size(), l);
  const auto dim = static_cast<Eigen::Index>(reg.dimension());
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    op(i, i) = basis::occupation(static_cast<std::size_t>(i), l);
  }
  return op;
}

ComplexMatrix transition_operator(const ExcitonRegister& reg, std::size_t l) {
  check_qubit(reg.size(), l);
  const auto dim = static_cast<Eigen::Index>(reg.dimension());
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    op(static_cast<Eigen::Index>(basis::flip(static_cast<std::size_t>(i), l)), i) = 1.0;
  }
  return op;
}

ComplexMatrix raising_operator(std::size_t n_qubits, std::size_t l) {
  check_qubit(n_qubits, l);
  const auto dim = static_cast<Eigen::Index>(basis::dimension(n_qubits));
  ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    if (!basis::occupation(idx, l)) op(static_cast<Eigen::Index>(basis::flip(idx, l)), i) = 1.0;
  }
  return op;
}

double renormalized_energy(const ExcitonRegister& reg, std::size_t l,
                           std::span<const int> occupations) {
  check_qubit(reg.size(), l);
  if (occupations.size() != reg.size()) {
    throw InvalidParameter("occupation pattern must list every dot");
  }
  double e = reg.exciton_energy_mev(l);
  for (std::size_t lp = 0; lp < reg.size(); ++lp) {
    if (lp == l) continue;
    if (occupations[lp] != 0 && occupations[lp] != 1) {
      throw InvalidParameter("occupations must be 0 or 1");
    }
    if (occupations[lp]) e += reg.shift_mev(l, lp);
  }
  return e;
}

}  // namespace excitonq
