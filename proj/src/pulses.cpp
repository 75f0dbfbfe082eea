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

#include "excitonq/pulses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "excitonq/errors.hpp"

namespace excitonq {

namespace {

constexpr double kDegenerateMeV = 1e-9;

bool finite(double x) { return std::isfinite(x); }

// Transition energies of `target` over every occupation pattern of the other
// dots, paired with the pattern's full basis index (target bit clear).
std::vector<std::pair<double, std::size_t>> branch_frequencies(const ExcitonRegister& reg,
                                                               std::size_t target) {
  std::vector<std::pair<double, std::size_t>> out;
  const auto n = reg.size();
  for (std::size_t idx = 0; idx < reg.dimension(); ++idx) {
    if (basis::occupation(idx, target)) continue;
    const auto occ = basis::occupations_of(idx, n);
    out.emplace_back(renormalized_energy(reg, target, occ), idx);
  }
  return out;
}

void check_selectivity(const ExcitonRegister& reg, std::size_t target, double frequency,
                       const TimingPolicy& policy) {
  double min_gap = std::numeric_limits<double>::infinity();
  for (const auto& [f, idx] : branch_frequencies(reg, target)) {
    const double gap = std::abs(f - frequency);
    if (gap > kDegenerateMeV) min_gap = std::min(min_gap, gap);
  }
  if (!std::isfinite(min_gap)) return;
  const double width = units::kHbar / policy.tau_ps;
  if (width > policy.selectivity_fraction * min_gap) {
    const double required = units::kHbar / (policy.selectivity_fraction * min_gap);
    throw CompileError("pulse duration " + std::to_string(policy.tau_ps) +
                           " ps too short to resolve a " + std::to_string(min_gap) +
                           " meV gap on dot " + basis::dot_name(target) + "; need tau >= " +
                           std::to_string(required) + " ps",
                       required);
  }
}

Pulse make_pulse(double carrier, double center, double area, std::size_t target,
                 const TimingPolicy& policy) {
  return {carrier, center, policy.tau_ps, area, policy.phase_rad, target, policy.addressing};
}

std::vector<std::size_t> coupled_neighbours(const ExcitonRegister& reg, std::size_t target) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < reg.size(); ++l) {
    if (l != target && reg.shift_mev(target, l) != 0.0) out.push_back(l);
  }
  return out;
}

// The colours a gate emits, with their areas.
std::vector<std::pair<double, double>> gate_colours(const ExcitonRegister& reg,
                                                    const GateSpec& spec) {
  switch (spec.kind) {
    case GateKind::Rotation:
    case GateKind::ConditionalRotation:
      return {{conditional_frequency(reg, spec.target, spec.conditions), spec.angle_rad}};
    case GateKind::Cnot:
      return {{conditional_frequency(reg, spec.target, spec.conditions), units::kPi}};
    case GateKind::UnconditionalNot: {
      const auto neighbours = coupled_neighbours(reg, spec.target);
      if (neighbours.size() > kMaxCoupledNeighbours) {
        throw CompileError("unconditional rotation on dot " + basis::dot_name(spec.target) +
                           " would need 2^" + std::to_string(neighbours.size()) +
                           " colours (limit 2^" + std::to_string(kMaxCoupledNeighbours) + ")");
      }
      std::vector<std::pair<double, double>> colours;
      for (std::size_t mask = 0; mask < (std::size_t{1} << neighbours.size()); ++mask) {
        std::vector<Condition> branch;
        for (std::size_t j = 0; j < neighbours.size(); ++j) {
          branch.push_back({neighbours[j], basis::occupation(mask, j)});
        }
        colours.emplace_back(conditional_frequency(reg, spec.target, branch), units::kPi);
      }
      std::sort(colours.begin(), colours.end());
      return colours;
    }
  }
  return {};
}

ComplexMatrix rotation_block(double theta, double phase) {
  const std::complex<double> i(0.0, 1.0);
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  ComplexMatrix r(2, 2);
  r << c, i * s * std::exp(i * phase), i * s * std::exp(-i * phase), c;
  return r;
}

}  // namespace

void Pulse::validate() const {
  if (!(tau_ps > 0.0) || !finite(tau_ps)) throw InvalidParameter("pulse duration must be positive");
  if (!(area_rad >= 0.0) || !finite(area_rad)) throw InvalidParameter("pulse area must be non-negative");
  if (!finite(carrier_mev) || !finite(center_ps) || !finite(phase_rad)) {
    throw InvalidParameter("pulse parameters must be finite");
  }
}

PulseSequence::PulseSequence(std::vector<Pulse> pulses) : pulses_(std::move(pulses)) {
  if (pulses_.empty()) return;
  start_ = std::numeric_limits<double>::infinity();
  end_ = -std::numeric_limits<double>::infinity();
  for (const auto& p : pulses_) {
    p.validate();
    start_ = std::min(start_, p.start_ps());
    end_ = std::max(end_, p.end_ps());
  }
}

double PulseSequence::min_tau_ps() const {
  double tau = std::numeric_limits<double>::infinity();
  for (const auto& p : pulses_) tau = std::min(tau, p.tau_ps);
  return tau;
}

PulseSequence PulseSequence::then(const PulseSequence& other) const {
  auto all = pulses_;
  all.insert(all.end(), other.pulses_.begin(), other.pulses_.end());
  return PulseSequence(std::move(all));
}

std::string to_string(GateKind kind) {
  switch (kind) {
    case GateKind::Rotation: return "rotation";
    case GateKind::ConditionalRotation: return "conditional-rotation";
    case GateKind::Cnot: return "cnot";
    case GateKind::UnconditionalNot: return "unconditional-not";
  }
  return "?";
}

GateKind gate_kind_from_string(const std::string& name) {
  if (name == "rotation") return GateKind::Rotation;
  if (name == "conditional-rotation") return GateKind::ConditionalRotation;
  if (name == "cnot") return GateKind::Cnot;
  if (name == "unconditional-not" || name == "not") return GateKind::UnconditionalNot;
  throw InvalidParameter("unknown gate kind '" + name + "'");
}

void GateSpec::validate(std::size_t n_qubits) const {
  if (target >= n_qubits) throw InvalidParameter("gate target out of range");
  if (!(angle_rad >= 0.0 && angle_rad <= 2.0 * units::kPi)) {
    throw InvalidParameter("rotation angle must lie in [0, 2 pi]");
  }
  std::set<std::size_t> seen;
  for (const auto& c : conditions) {
    if (c.dot >= n_qubits) throw InvalidParameter("condition dot out of range");
    if (c.dot == target) throw InvalidParameter("gate target cannot also be a condition");
    if (c.occupation != 0 && c.occupation != 1) throw InvalidParameter("condition occupation must be 0 or 1");
    if (!seen.insert(c.dot).second) throw InvalidParameter("dot conditioned twice");
  }
  switch (kind) {
    case GateKind::Rotation:
    case GateKind::UnconditionalNot:
      if (!conditions.empty()) throw InvalidParameter(to_string(kind) + " takes no conditions");
      break;
    case GateKind::ConditionalRotation:
    case GateKind::Cnot:
      if (conditions.empty()) throw InvalidParameter(to_string(kind) + " needs at least one condition");
      break;
  }
  if (start_ps && !finite(*start_ps)) throw InvalidParameter("gate start time must be finite");
}

void TimingPolicy::validate() const {
  if (!(tau_ps > 0.0) || !finite(tau_ps)) throw InvalidParameter("tau must be positive");
  if (!(spacing_tau >= 8.0)) throw InvalidParameter("pulse spacing must be at least 8 tau");
  if (!(selectivity_fraction > 0.0)) throw InvalidParameter("selectivity fraction must be positive");
  if (!finite(phase_rad)) throw InvalidParameter("phase must be finite");
}

double conditional_frequency(const ExcitonRegister& reg, std::size_t target,
                             std::span<const Condition> conditions) {
  if (target >= reg.size()) throw InvalidParameter("target dot out of range");
  std::vector<int> occ(reg.size(), 0);
  for (const auto& c : conditions) {
    if (c.dot >= reg.size()) throw InvalidParameter("condition dot out of range");
    if (c.dot == target) throw InvalidParameter("condition placed on the target dot");
    if (c.occupation != 0 && c.occupation != 1) throw InvalidParameter("condition occupation must be 0 or 1");
    occ[c.dot] = c.occupation;
  }
  return renormalized_energy(reg, target, occ);
}

PulseSequence compile_gate(const ExcitonRegister& reg, const GateSpec& spec,
                           const TimingPolicy& policy, double first_center_ps) {
  policy.validate();
  try {
    spec.validate(reg.size());
  } catch (const InvalidParameter& e) {
    throw CompileError(e.what());
  }
  if (reg.dipole(spec.target) <= 0.0) {
    throw CompileError("dot " + basis::dot_name(spec.target) + " has zero transition dipole");
  }
  std::vector<Pulse> pulses;
  double center = first_center_ps;
  for (const auto& [carrier, area] : gate_colours(reg, spec)) {
    check_selectivity(reg, spec.target, carrier, policy);
    pulses.push_back(make_pulse(carrier, center, area, spec.target, policy));
    center += policy.spacing_ps();
  }
  return PulseSequence(std::move(pulses));
}

PulseSequence compile_program(const ExcitonRegister& reg, std::span<const GateSpec> program,
                              const TimingPolicy& policy) {
  policy.validate();
  std::vector<Pulse> all;
  std::optional<double> last_center;
  for (std::size_t i = 0; i < program.size(); ++i) {
    const auto& spec = program[i];
    const double earliest = last_center ? *last_center + policy.spacing_ps()
                                        : Pulse::kTruncation * policy.tau_ps;
    double start = earliest;
    if (spec.start_ps) {
      start = *spec.start_ps;
      if (last_center && start < earliest - 1e-12) {
        throw CompileError("gate " + std::to_string(i) + ": start " + std::to_string(start) +
                           " ps is closer than " + std::to_string(policy.spacing_tau) +
                           " tau to the previous pulse (earliest " + std::to_string(earliest) +
                           " ps)");
      }
    }
    try {
      const auto seq = compile_gate(reg, spec, policy, start);
      for (const auto& p : seq.pulses()) {
        all.push_back(p);
        last_center = p.center_ps;
      }
    } catch (const CompileError& e) {
      throw CompileError("gate " + std::to_string(i) + ": " + e.what(), e.required_tau_ps());
    } catch (const InvalidParameter& e) {
      throw CompileError("gate " + std::to_string(i) + ": " + e.what());
    }
  }
  return PulseSequence(std::move(all));
}

double pulse_amplitude(const Pulse& pulse, double dipole) {
  if (!(dipole > 0.0)) throw InvalidParameter("transition dipole must be positive");
  pulse.validate();
  return pulse.area_rad * units::kHbar / (pulse.tau_ps * std::sqrt(2.0 * units::kPi));
}

std::vector<std::complex<double>> field_at(const PulseSequence& sequence, double t_ps, Frame frame,
                                           std::span<const double> dipoles,
                                           double reference_mev) {
  std::vector<std::complex<double>> drive(dipoles.size(), 0.0);
  for (const auto& p : sequence.pulses()) {
    if (t_ps < p.start_ps() || t_ps > p.end_ps()) continue;
    if (p.calibrated_dot >= dipoles.size()) throw InvalidParameter("pulse addresses a missing dot");
    const double mu_ref = dipoles[p.calibrated_dot];
    const double x = (t_ps - p.center_ps) / p.tau_ps;
    const double envelope = pulse_amplitude(p, mu_ref) * std::exp(-0.5 * x * x);
    std::complex<double> carrier;
    if (frame == Frame::Lab) {
      carrier = std::cos(p.carrier_mev * t_ps / units::kHbar + p.phase_rad);
    } else {
      const double angle = (p.carrier_mev - reference_mev) * t_ps / units::kHbar + p.phase_rad;
      carrier = 0.5 * std::polar(1.0, -angle);
    }
    for (std::size_t l = 0; l < dipoles.size(); ++l) {
      if (p.addressing == Addressing::Local && l != p.calibrated_dot) continue;
      drive[l] += envelope * (dipoles[l] / mu_ref) * carrier;
    }
  }
  return drive;
}

ComplexMatrix ideal_gate_unitary(const ExcitonRegister& reg, const GateSpec& spec,
                                 const TimingPolicy& policy) {
  spec.validate(reg.size());
  const auto dim = static_cast<Eigen::Index>(reg.dimension());
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  const auto colours = gate_colours(reg, spec);
  const auto block = [&](double area) { return rotation_block(area, policy.phase_rad); };
  for (const auto& [f, idx] : branch_frequencies(reg, spec.target)) {
    for (const auto& [carrier, area] : colours) {
      if (std::abs(f - carrier) > kDegenerateMeV) continue;
      const auto lo = static_cast<Eigen::Index>(idx);
      const auto hi = static_cast<Eigen::Index>(basis::flip(idx, spec.target));
      const ComplexMatrix r = block(area);
      ComplexMatrix sub(2, 2);
      sub << u(lo, lo), u(lo, hi), u(hi, lo), u(hi, hi);
      sub = r * sub;
      u(lo, lo) = sub(0, 0);
      u(lo, hi) = sub(0, 1);
      u(hi, lo) = sub(1, 0);
      u(hi, hi) = sub(1, 1);
    }
  }
  return u;
}

}  // namespace excitonq
