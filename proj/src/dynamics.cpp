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

#include "excitonq/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "excitonq/errors.hpp"
#include "excitonq/units.hpp"

namespace excitonq {

namespace {

using cd = std::complex<double>;
constexpr cd kI{0.0, 1.0};

double min_eigenvalue(const ComplexMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

double hermiticity_defect(const ComplexMatrix& rho) {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

void check_state(const ComplexMatrix& rho, double trace_tol, double positivity_tol) {
  const auto n = rho.rows();
  if (n == 0 || rho.cols() != n || (n & (n - 1)) != 0) {
    throw InvalidParameter("density matrix must be square with power-of-two dimension");
  }
  if (!rho.allFinite()) throw InvalidParameter("density matrix has non-finite entries");
  if (hermiticity_defect(rho) > 1e-12) throw InvalidParameter("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > trace_tol) throw InvalidParameter("density matrix trace is not 1");
  if (min_eigenvalue(rho) < -positivity_tol) throw InvalidParameter("density matrix is not positive");
}

int popcount(std::size_t x) { return std::popcount(x); }

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix rho, double trace_tolerance,
                             double positivity_tolerance)
    : rho_(std::move(rho)) {
  check_state(rho_, trace_tolerance, positivity_tolerance);
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-9) throw InvalidParameter("state vector is not normalized");
  return DensityMatrix(psi * psi.adjoint());
}

DensityMatrix DensityMatrix::basis_state(std::size_t n_qubits, std::size_t index) {
  const auto dim = basis::dimension(n_qubits);
  if (index >= dim) throw InvalidParameter("basis index out of range");
  ComplexMatrix rho = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  rho(static_cast<Eigen::Index>(index), static_cast<Eigen::Index>(index)) = 1.0;
  return DensityMatrix(std::move(rho));
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
  const auto dim = static_cast<Eigen::Index>(basis::dimension(n_qubits));
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

std::size_t DensityMatrix::n_qubits() const noexcept {
  return static_cast<std::size_t>(std::countr_zero(dimension()));
}

double DensityMatrix::purity() const { return (rho_ * rho_).trace().real(); }

std::vector<double> DensityMatrix::populations() const {
  std::vector<double> p(dimension());
  for (std::size_t i = 0; i < p.size(); ++i) {
    p[i] = rho_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real();
  }
  return p;
}

void LindbladChannel::validate(std::size_t n_qubits) const {
  if (dot >= n_qubits) throw InvalidParameter("channel dot out of range");
  if (!(rate_per_ps >= 0.0) || !std::isfinite(rate_per_ps)) {
    throw InvalidParameter("channel rate must be non-negative");
  }
}

void SimulationConfig::validate(const PulseSequence& sequence) const {
  if (!(step_ps > 0.0) || !std::isfinite(step_ps)) throw InvalidParameter("time step must be positive");
  if (integrator_order != 4) throw InvalidParameter("only the 4th-order integrator is available");
  if (sample_stride == 0) throw InvalidParameter("sample stride must be at least 1");
  if (!sequence.empty() && step_ps > sequence.min_tau_ps() / 20.0) {
    throw InvalidParameter("time step must not exceed tau_min / 20");
  }
  if (frame == Frame::Lab && step_ps > kLabFrameMaxStepPs) {
    throw InvalidParameter("lab frame needs a step <= 5e-5 ps to resolve the optical carrier");
  }
  if (!(trace_tolerance > 0.0) || !(positivity_tolerance > 0.0)) {
    throw InvalidParameter("tolerances must be positive");
  }
  if (t_start_ps && t_end_ps && *t_end_ps < *t_start_ps) {
    throw InvalidParameter("integration window ends before it starts");
  }
}

Eigen::VectorXd frame_hamiltonian(const ExcitonRegister& reg, Frame frame, double reference_mev) {
  Eigen::VectorXd h = build_hamiltonian(reg).diagonal_mev;
  if (frame == Frame::Rotating) {
    for (Eigen::Index i = 0; i < h.size(); ++i) {
      h(i) -= reference_mev * popcount(static_cast<std::size_t>(i));
    }
  }
  return h;
}

double default_reference_mev(const ExcitonRegister& reg) {
  const auto& e = reg.exciton_energies_mev();
  return *std::min_element(e.begin(), e.end());
}

ComplexMatrix liouvillian_apply(const ComplexMatrix& rho, double t_ps,
                                const Eigen::VectorXd& h0_diagonal_mev, const DriveFunction& drive,
                                std::span<const LindbladChannel> channels) {
  const auto dim = rho.rows();
  ComplexMatrix out(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      out(i, j) = (h0_diagonal_mev(i) - h0_diagonal_mev(j)) * rho(i, j);
    }
  }

  const auto amplitudes = drive ? drive(t_ps) : std::vector<cd>{};
  bool driven = false;
  for (const auto& a : amplitudes) driven = driven || a != 0.0;
  if (driven) {
    ComplexMatrix v = ComplexMatrix::Zero(dim, dim);
    for (std::size_t l = 0; l < amplitudes.size(); ++l) {
      const cd a = amplitudes[l];
      if (a == 0.0) continue;
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        if (basis::occupation(idx, l)) continue;
        const auto up = static_cast<Eigen::Index>(basis::flip(idx, l));
        v(up, i) -= a;
        v(i, up) -= std::conj(a);
      }
    }
    out.noalias() += v * rho;
    out.noalias() -= rho * v;
  }
  out *= -kI / units::kHbar;

  for (const auto& ch : channels) {
    const double g = ch.rate_per_ps;
    if (g == 0.0) continue;
    const auto l = ch.dot;
    for (Eigen::Index j = 0; j < dim; ++j) {
      const auto bj = basis::occupation(static_cast<std::size_t>(j), l);
      for (Eigen::Index i = 0; i < dim; ++i) {
        const auto bi = basis::occupation(static_cast<std::size_t>(i), l);
        if (ch.kind == ChannelKind::Decay) {
          cd term = -0.5 * g * (bi + bj) * rho(i, j);
          if (!bi && !bj) {
            term += g * rho(static_cast<Eigen::Index>(basis::flip(static_cast<std::size_t>(i), l)),
                            static_cast<Eigen::Index>(basis::flip(static_cast<std::size_t>(j), l)));
          }
          out(i, j) += term;
        } else if (bi != bj) {
          out(i, j) -= g * rho(i, j);
        }
      }
    }
  }
  return out;
}

double expectation(const ComplexMatrix& op, const DensityMatrix& rho) {
  if (op.rows() != op.cols() || static_cast<std::size_t>(op.rows()) != rho.dimension()) {
    throw InvalidParameter("operator and state dimensions differ");
  }
  const cd value = (op * rho.matrix()).trace();
  if (std::abs(value.imag()) > 1e-8) {
    throw NumericalConsistencyError("expectation value has imaginary residue " +
                                    std::to_string(value.imag()));
  }
  return value.real();
}

DensityMatrix to_computational_frame(const DensityMatrix& rho, const ExcitonRegister& reg,
                                     double t_ps) {
  const auto h = build_hamiltonian(reg).diagonal_mev;
  if (static_cast<std::size_t>(h.size()) != rho.dimension()) {
    throw InvalidParameter("state and register dimensions differ");
  }
  ComplexMatrix out = rho.matrix();
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      out(r, c) *= std::polar(1.0, (h(r) - h(c)) * t_ps / units::kHbar);
    }
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix(std::move(out));
}

namespace {

Trajectory propagate_impl(const DensityMatrix& rho0, const DriveFunction& drive_fn,
                          const ExcitonRegister& reg, std::span<const LindbladChannel> channels,
                          const SimulationConfig& config, double t0, double t1) {
  const auto n = reg.size();
  if (rho0.dimension() != reg.dimension()) {
    throw InvalidParameter("initial state dimension does not match the register");
  }
  for (const auto& ch : channels) ch.validate(n);
  const double reference = config.reference_mev.value_or(default_reference_mev(reg));
  const double ref_in_frame = config.frame == Frame::Rotating ? reference : 0.0;
  const Eigen::VectorXd h = frame_hamiltonian(reg, config.frame, ref_in_frame);

  // The state is carried in the interaction picture of the diagonal part,
  // which is the computational frame in either drive frame. Static phases are
  // then exact; drive and decay terms pick up e^{i w t} per transition.
  const auto dim = static_cast<Eigen::Index>(reg.dimension());
  struct Transition {
    std::size_t dot;
    Eigen::Index lower;
    Eigen::Index upper;
    double omega;  // (h_upper - h_lower) / hbar, rad/ps
  };
  std::vector<Transition> transitions;
  std::vector<std::vector<std::size_t>> by_dot(n);
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t i = 0; i < reg.dimension(); ++i) {
      if (basis::occupation(i, l)) continue;
      const auto lo = static_cast<Eigen::Index>(i);
      const auto up = static_cast<Eigen::Index>(basis::flip(i, l));
      by_dot[l].push_back(transitions.size());
      transitions.push_back({l, lo, up, (h(up) - h(lo)) / units::kHbar});
    }
  }
  std::vector<cd> phase(transitions.size());

  auto rhs = [&](double t, const ComplexMatrix& r) {
    for (std::size_t k = 0; k < transitions.size(); ++k) phase[k] = std::polar(1.0, transitions[k].omega * t);
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    if (drive_fn) {
      const auto a = drive_fn(t);
      if (a.size() != n) throw InvalidParameter("drive returned the wrong number of dots");
      ComplexMatrix v = ComplexMatrix::Zero(dim, dim);
      bool driven = false;
      for (std::size_t k = 0; k < transitions.size(); ++k) {
        const cd amp = a[transitions[k].dot];
        if (amp == 0.0) continue;
        driven = true;
        const cd x = -amp * phase[k];
        v(transitions[k].upper, transitions[k].lower) += x;
        v(transitions[k].lower, transitions[k].upper) += std::conj(x);
      }
      if (driven) {
        out.noalias() += v * r;
        out.noalias() -= r * v;
        out *= -kI / units::kHbar;
      }
    }
    for (const auto& ch : channels) {
      const double g = ch.rate_per_ps;
      if (g == 0.0) continue;
      const auto l = ch.dot;
      for (Eigen::Index j = 0; j < dim; ++j) {
        const auto bj = basis::occupation(static_cast<std::size_t>(j), l);
        for (Eigen::Index i = 0; i < dim; ++i) {
          const auto bi = basis::occupation(static_cast<std::size_t>(i), l);
          if (ch.kind == ChannelKind::Decay) {
            out(i, j) -= 0.5 * g * (bi + bj) * r(i, j);
          } else if (bi != bj) {
            out(i, j) -= g * r(i, j);
          }
        }
      }
      if (ch.kind == ChannelKind::Decay) {
        const auto& ks = by_dot[l];
        for (std::size_t a = 0; a < ks.size(); ++a) {
          const auto& ti = transitions[ks[a]];
          for (std::size_t b = 0; b < ks.size(); ++b) {
            const auto& tj = transitions[ks[b]];
            out(ti.lower, tj.lower) += g * r(ti.upper, tj.upper) * phase[ks[b]] * std::conj(phase[ks[a]]);
          }
        }
      }
    }
    return out;
  };

  if (t1 < t0) throw InvalidParameter("integration window ends before it starts");
  const auto steps = static_cast<std::size_t>(std::ceil((t1 - t0) / config.step_ps - 1e-9));
  const double dt = steps > 0 ? (t1 - t0) / static_cast<double>(steps) : 0.0;

  Trajectory traj;
  traj.n_qubits = n;
  traj.steps = steps;
  traj.coherence_row = 0;
  traj.coherence_col = reg.dimension() - 1;

  auto record = [&](double t, const ComplexMatrix& r) {
    traj.times_ps.push_back(t);
    std::vector<double> pops(static_cast<std::size_t>(dim));
    for (Eigen::Index i = 0; i < dim; ++i) pops[static_cast<std::size_t>(i)] = r(i, i).real();
    std::vector<double> occ(n, 0.0);
    for (std::size_t i = 0; i < pops.size(); ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        if (basis::occupation(i, l)) occ[l] += pops[i];
      }
    }
    traj.populations.push_back(std::move(pops));
    traj.occupations.push_back(std::move(occ));
    traj.coherences.push_back(r(static_cast<Eigen::Index>(traj.coherence_row),
                                static_cast<Eigen::Index>(traj.coherence_col)));
  };

  ComplexMatrix rho = rho0.matrix();
  record(t0, rho);
  for (std::size_t k = 0; k < steps; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    const ComplexMatrix k1 = rhs(t, rho);
    const ComplexMatrix k2 = rhs(t + 0.5 * dt, rho + (0.5 * dt) * k1);
    const ComplexMatrix k3 = rhs(t + 0.5 * dt, rho + (0.5 * dt) * k2);
    const ComplexMatrix k4 = rhs(t + dt, rho + dt * k3);
    rho += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    rho = 0.5 * (rho + rho.adjoint()).eval();

    const double drift = std::abs(rho.trace() - 1.0);
    traj.max_trace_drift = std::max(traj.max_trace_drift, drift);
    if (!rho.allFinite() || drift > config.trace_tolerance) {
      throw PropagationError("trace drift " + std::to_string(drift) + " at step " +
                                 std::to_string(k + 1),
                             k + 1);
    }
    const double lowest = min_eigenvalue(rho);
    if (lowest < -config.positivity_tolerance) {
      throw PropagationError("negative eigenvalue " + std::to_string(lowest) + " at step " +
                                 std::to_string(k + 1),
                             k + 1);
    }
    const bool last = k + 1 == steps;
    if ((k + 1) % config.sample_stride == 0 || last) {
      record(last ? t1 : t0 + static_cast<double>(k + 1) * dt, rho);
    }
  }

  traj.final_computational = DensityMatrix(rho, config.trace_tolerance, config.positivity_tolerance);
  const auto h0 = build_hamiltonian(reg).diagonal_mev;
  ComplexMatrix schroedinger = rho;
  for (Eigen::Index c = 0; c < dim; ++c) {
    for (Eigen::Index r = 0; r < dim; ++r) {
      schroedinger(r, c) *= std::polar(1.0, -(h0(r) - h0(c)) * t1 / units::kHbar);
    }
  }
  schroedinger = 0.5 * (schroedinger + schroedinger.adjoint()).eval();
  traj.final_state = DensityMatrix(schroedinger, config.trace_tolerance, config.positivity_tolerance);
  return traj;
}

}  // namespace

Trajectory propagate(const DensityMatrix& rho0, const PulseSequence& sequence,
                     const ExcitonRegister& reg, std::span<const LindbladChannel> channels,
                     const SimulationConfig& config) {
  config.validate(sequence);
  for (const auto& p : sequence.pulses()) {
    if (p.calibrated_dot >= reg.size()) throw InvalidParameter("pulse addresses a dot outside the register");
    if (!(reg.dipole(p.calibrated_dot) > 0.0)) {
      throw InvalidParameter("pulse calibrated on a dot with zero transition dipole");
    }
  }
  const double reference = config.reference_mev.value_or(default_reference_mev(reg));
  const double ref_in_frame = config.frame == Frame::Rotating ? reference : 0.0;
  const auto& dipoles = reg.transition_dipoles();
  DriveFunction drive;
  if (!sequence.empty()) {
    drive = [&](double t) { return field_at(sequence, t, config.frame, dipoles, ref_in_frame); };
  }
  return propagate_impl(rho0, drive, reg, channels, config,
                        config.t_start_ps.value_or(sequence.start_ps()),
                        config.t_end_ps.value_or(sequence.end_ps()));
}

Trajectory propagate(const DensityMatrix& rho0, const DriveFunction& drive,
                     const ExcitonRegister& reg, std::span<const LindbladChannel> channels,
                     const SimulationConfig& config) {
  config.validate(PulseSequence{});
  if (!config.t_start_ps || !config.t_end_ps) {
    throw InvalidParameter("a custom drive needs an explicit integration window");
  }
  return propagate_impl(rho0, drive, reg, channels, config, *config.t_start_ps, *config.t_end_ps);
}

}  // namespace excitonq
