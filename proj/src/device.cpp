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

#include "excitonq/device.hpp"

#include <cmath>
#include <string>

#include "excitonq/errors.hpp"
#include "excitonq/units.hpp"

namespace excitonq {

namespace {

bool positive(double x) { return x > 0.0 && std::isfinite(x); }

// m omega^2 in meV / nm^2 for a trap of energy hbar*omega.
double spring_constant(double mass, double confinement_mev) {
  return mass * confinement_mev * confinement_mev / units::kHbar2OverM0;
}

double carrier_mass(const MaterialParams& material, int charge) {
  return charge < 0 ? material.electron_mass : material.hole_mass;
}

double well_energy(double mass, double width_nm) {
  return units::kHbar2OverM0 / mass * units::kPi * units::kPi / (2.0 * width_nm * width_nm);
}

double stark_energy(double mass, double confinement_mev, double field_kv_cm) {
  const double force = units::kFieldEnergyPerNm * field_kv_cm;
  return -force * force / (2.0 * spring_constant(mass, confinement_mev));
}

void check_dot(const DeviceStructure& s, std::size_t dot) {
  if (dot >= s.size()) {
    throw InvalidParameter("dot index " + std::to_string(dot) + " out of range for " +
                           std::to_string(s.size()) + " dots");
  }
}

}  // namespace

void MaterialParams::validate() const {
  if (!positive(electron_mass) || !positive(hole_mass)) {
    throw InvalidParameter("effective masses must be positive");
  }
  if (!(relative_permittivity >= 1.0) || !std::isfinite(relative_permittivity)) {
    throw InvalidParameter("relative permittivity must be >= 1");
  }
  if (!positive(band_gap_ev)) throw InvalidParameter("band gap must be positive");
}

void DotGeometry::validate() const {
  if (!positive(confinement_electron_mev) || !positive(confinement_hole_mev)) {
    throw InvalidParameter("confinement energies must be positive");
  }
  if (!positive(well_width_nm)) throw InvalidParameter("well width must be positive");
  if (!std::isfinite(z_center_nm)) throw InvalidParameter("z centre must be finite");
}

void DeviceStructure::validate() const {
  if (dots.empty()) throw InvalidParameter("device needs at least one dot");
  if (barrier_widths_nm.size() + 1 != dots.size()) {
    throw InvalidParameter("expected " + std::to_string(dots.size() - 1) + " barrier widths");
  }
  material.validate();
  if (!(field_kv_cm >= 0.0) || !std::isfinite(field_kv_cm)) {
    throw InvalidParameter("field must be non-negative");
  }
  for (const auto& d : dots) d.validate();
  for (std::size_t i = 0; i + 1 < dots.size(); ++i) {
    if (!positive(barrier_widths_nm[i])) throw InvalidParameter("barrier widths must be positive");
    const double needed = 0.5 * (dots[i].well_width_nm + dots[i + 1].well_width_nm) +
                          barrier_widths_nm[i];
    if (dots[i + 1].z_center_nm - dots[i].z_center_nm < needed - 1e-9) {
      throw InvalidParameter("dots " + std::to_string(i) + " and " + std::to_string(i + 1) +
                             " overlap along z");
    }
  }
}

DeviceStructure DeviceStructure::with_field(double field) const {
  DeviceStructure out = *this;
  out.field_kv_cm = field;
  return out;
}

DeviceStructure DeviceStructure::translated(double dz_nm) const {
  DeviceStructure out = *this;
  for (auto& d : out.dots) d.z_center_nm += dz_nm;
  return out;
}

DeviceStructure stack_dots(std::vector<DotGeometry> dots, std::vector<double> barrier_widths_nm,
                           const MaterialParams& material, double field_kv_cm,
                           double z_origin_nm) {
  if (dots.empty()) throw InvalidParameter("device needs at least one dot");
  if (barrier_widths_nm.size() + 1 != dots.size()) {
    throw InvalidParameter("expected " + std::to_string(dots.size() - 1) + " barrier widths");
  }
  dots[0].z_center_nm = z_origin_nm;
  for (std::size_t i = 1; i < dots.size(); ++i) {
    dots[i].z_center_nm = dots[i - 1].z_center_nm + 0.5 * dots[i - 1].well_width_nm +
                          barrier_widths_nm[i - 1] + 0.5 * dots[i].well_width_nm;
  }
  DeviceStructure s{std::move(dots), std::move(barrier_widths_nm), material, field_kv_cm};
  s.validate();
  return s;
}

DeviceStructure paper_two_dot_preset() {
  MaterialParams gaas;
  gaas.electron_mass = 0.067;
  gaas.hole_mass = 0.34;
  gaas.relative_permittivity = 12.9;
  // Effective gap, fitted to put dot a at 1.70 eV at 30 kV/cm.
  gaas.band_gap_ev = 1.27768;
  DotGeometry a{20.0, 20.0, 4.0485, 0.0};
  DotGeometry b{20.0, 20.0, 4.0, 0.0};
  return stack_dots({a, b}, {5.0}, gaas, 30.0);
}

InplaneGaussian inplane_ground_state(const MaterialParams& material, double confinement_mev,
                                     int charge_sign, double field_kv_cm) {
  if (charge_sign != 1 && charge_sign != -1) throw InvalidParameter("charge sign must be +1 or -1");
  if (!positive(confinement_mev)) throw InvalidParameter("confinement energy must be positive");
  const double mass = carrier_mass(material, charge_sign);
  if (!positive(mass)) throw InvalidParameter("effective mass must be positive");
  if (!std::isfinite(field_kv_cm)) throw InvalidParameter("field must be finite");

  // Oscillator length l = sqrt(hbar^2 / (m hbar omega)); |psi|^2 has std l / sqrt(2).
  const double length = std::sqrt(units::kHbar2OverM0 / (mass * confinement_mev));
  const double shift = charge_sign * units::kFieldEnergyPerNm * field_kv_cm /
                       spring_constant(mass, confinement_mev);
  return {charge_sign, {shift, 0.0}, length / std::sqrt(2.0)};
}

ZProfile well_ground_state(const DotGeometry& geometry) {
  geometry.validate();
  return {ZProfileKind::InfiniteWell, geometry.z_center_nm, geometry.well_width_nm};
}

ChargeDensity carrier_density(const DeviceStructure& structure, std::size_t dot, int charge) {
  check_dot(structure, dot);
  const auto& g = structure.dots[dot];
  const double hw = charge < 0 ? g.confinement_electron_mev : g.confinement_hole_mev;
  return {inplane_ground_state(structure.material, hw, charge, structure.field_kv_cm),
          well_ground_state(g)};
}

ExcitonEnergyBreakdown exciton_energy_breakdown(const DeviceStructure& structure, std::size_t dot,
                                                const QuadratureOptions& options) {
  structure.validate();
  check_dot(structure, dot);
  const auto& m = structure.material;
  const auto& g = structure.dots[dot];
  const double f = structure.field_kv_cm;

  ExcitonEnergyBreakdown out{};
  out.band_gap_mev = units::ev_to_mev(m.band_gap_ev);
  out.z_confinement_mev =
      well_energy(m.electron_mass, g.well_width_nm) + well_energy(m.hole_mass, g.well_width_nm);
  out.zero_point_mev = g.confinement_electron_mev + g.confinement_hole_mev;
  out.stark_mev = stark_energy(m.electron_mass, g.confinement_electron_mev, f) +
                  stark_energy(m.hole_mass, g.confinement_hole_mev, f);
  out.coulomb_mev = coulomb_integral(carrier_density(structure, dot, -1),
                                     carrier_density(structure, dot, +1), m, options);
  return out;
}

double exciton_energy(const DeviceStructure& structure, std::size_t dot,
                      const QuadratureOptions& options) {
  return units::mev_to_ev(exciton_energy_breakdown(structure, dot, options).total_mev());
}

double biexcitonic_shift(const DeviceStructure& structure, std::size_t l, std::size_t lp,
                         const QuadratureOptions& options) {
  structure.validate();
  check_dot(structure, l);
  check_dot(structure, lp);
  if (l == lp) throw InvalidParameter("biexcitonic shift needs two distinct dots");
  const auto& m = structure.material;
  const auto e_l = carrier_density(structure, l, -1);
  const auto h_l = carrier_density(structure, l, +1);
  const auto e_lp = carrier_density(structure, lp, -1);
  const auto h_lp = carrier_density(structure, lp, +1);
  // Fixed lower/higher ordering keeps the result bitwise symmetric in (l, l').
  const bool swap = lp < l;
  const auto& e1 = swap ? e_lp : e_l;
  const auto& h1 = swap ? h_lp : h_l;
  const auto& e2 = swap ? e_l : e_lp;
  const auto& h2 = swap ? h_l : h_lp;
  double shift = coulomb_integral(e1, e2, m, options);
  shift += coulomb_integral(h1, h2, m, options);
  shift += coulomb_integral(e1, h2, m, options);
  shift += coulomb_integral(h1, e2, m, options);
  return shift;
}

std::vector<ShiftPoint> shift_vs_field(const DeviceStructure& structure, std::size_t l,
                                       std::size_t lp, std::span<const double> field_grid_kv_cm,
                                       const QuadratureOptions& options) {
  if (field_grid_kv_cm.empty()) throw InvalidParameter("field grid is empty");
  for (std::size_t i = 0; i < field_grid_kv_cm.size(); ++i) {
    const double f = field_grid_kv_cm[i];
    if (!(f >= 0.0) || !std::isfinite(f)) throw InvalidParameter("field grid values must be non-negative");
    if (i > 0 && !(f > field_grid_kv_cm[i - 1])) throw InvalidParameter("field grid must be ascending");
  }
  std::vector<ShiftPoint> out;
  out.reserve(field_grid_kv_cm.size());
  for (double f : field_grid_kv_cm) {
    out.push_back({f, biexcitonic_shift(structure.with_field(f), l, lp, options)});
  }
  return out;
}

ExcitonRegister make_register(const DeviceStructure& structure, std::vector<double> dipoles,
                              const QuadratureOptions& options) {
  structure.validate();
  const auto n = structure.size();
  std::vector<double> energies(n);
  for (std::size_t l = 0; l < n; ++l) {
    energies[l] = exciton_energy_breakdown(structure, l, options).total_mev();
  }
  Eigen::MatrixXd shifts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n));
  for (std::size_t l = 0; l < n; ++l) {
    for (std::size_t lp = l + 1; lp < n; ++lp) {
      const double s = biexcitonic_shift(structure, l, lp, options);
      shifts(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(lp)) = s;
      shifts(static_cast<Eigen::Index>(lp), static_cast<Eigen::Index>(l)) = s;
    }
  }
  return {std::move(energies), std::move(shifts), std::move(dipoles)};
}

}  // namespace excitonq
