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

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "excitonq/model.hpp"

namespace excitonq {

struct MaterialParams {
  double electron_mass = 0.067;           // units of m0
  double hole_mass = 0.34;                // units of m0
  double relative_permittivity = 12.9;
  double band_gap_ev = 1.519;

  void validate() const;
};

struct DotGeometry {
  double confinement_electron_mev = 20.0;  // hbar omega_e of the in-plane trap
  double confinement_hole_mev = 20.0;      // hbar omega_h
  double well_width_nm = 4.0;              // z square well
  double z_center_nm = 0.0;

  void validate() const;
};

/// A vertical stack of dots separated by barriers, in a static in-plane field
/// applied along x.
struct DeviceStructure {
  std::vector<DotGeometry> dots;
  std::vector<double> barrier_widths_nm;  // dots.size() - 1 entries
  MaterialParams material;
  double field_kv_cm = 0.0;

  void validate() const;
  std::size_t size() const noexcept { return dots.size(); }
  DeviceStructure with_field(double field_kv_cm) const;
  DeviceStructure translated(double dz_nm) const;
};

/// Builds a structure by stacking dots along z (dot 0 centred at z_origin),
/// deriving each z_center from the well widths and barriers.
DeviceStructure stack_dots(std::vector<DotGeometry> dots, std::vector<double> barrier_widths_nm,
                           const MaterialParams& material, double field_kv_cm,
                           double z_origin_nm = 0.0);

/// Calibrated two-dot GaAs structure. At 30 kV/cm it reproduces the published
/// anchors E_a = 1.70 eV, E_b ~ 1.71 eV, dE ~ 4.5 meV.
DeviceStructure paper_two_dot_preset();

/// Isotropic in-plane Gaussian charge cloud (per-axis standard deviation).
struct InplaneGaussian {
  int charge = -1;                        // elementary charges, +1 or -1
  std::array<double, 2> center_nm{0.0, 0.0};
  double std_nm = 1.0;
};

enum class ZProfileKind {
  InfiniteWell,  // (2/L) cos^2(pi (z - z0) / L) on |z - z0| < L/2
  Gaussian,      // normal density, `width_nm` is the standard deviation
};

/// Analytic normalized density along the growth axis.
struct ZProfile {
  ZProfileKind kind = ZProfileKind::InfiniteWell;
  double center_nm = 0.0;
  double width_nm = 1.0;

  double density(double z_nm) const;
  double mean_nm() const { return center_nm; }
  /// Interval outside of which the density is zero (or below 1e-30 for Gaussians).
  std::array<double, 2> support_nm() const;
};

struct ChargeDensity {
  InplaneGaussian inplane;
  ZProfile z;

  int charge() const noexcept { return inplane.charge; }
};

/// Ground state of a 2-D parabolic trap of energy hbar*omega, displaced along
/// x by charge * e F / (m omega^2). Mass is picked from the charge sign
/// (electron for -1, hole for +1).
InplaneGaussian inplane_ground_state(const MaterialParams& material, double confinement_mev,
                                     int charge_sign, double field_kv_cm);

/// Infinite-square-well ground state of the dot's z confinement.
ZProfile well_ground_state(const DotGeometry& geometry);

/// Field-dependent electron (charge -1) or hole (+1) density in a dot.
ChargeDensity carrier_density(const DeviceStructure& structure, std::size_t dot, int charge);

struct QuadratureOptions {
  double relative_tolerance = 1e-10;
  unsigned max_depth = 25;
};

/// Direct Coulomb energy q_a q_b e^2 / (4 pi eps0 eps_r) <1/|r1 - r2|> between
/// two normalized densities, meV.
double coulomb_integral(const ChargeDensity& a, const ChargeDensity& b,
                        const MaterialParams& material, const QuadratureOptions& options = {});

/// Individual contributions to a ground-state exciton energy, meV.
struct ExcitonEnergyBreakdown {
  double band_gap_mev;
  double z_confinement_mev;   // electron + hole square-well ground energies
  double zero_point_mev;      // hbar omega_e + hbar omega_h (two in-plane axes)
  double stark_mev;           // -(eF)^2 / (2 m omega^2), electron + hole
  double coulomb_mev;         // intra-dot electron-hole attraction (negative)

  double total_mev() const {
    return band_gap_mev + z_confinement_mev + zero_point_mev + stark_mev + coulomb_mev;
  }
};

ExcitonEnergyBreakdown exciton_energy_breakdown(const DeviceStructure& structure, std::size_t dot,
                                                const QuadratureOptions& options = {});

/// Ground-state exciton energy of one dot, eV.
double exciton_energy(const DeviceStructure& structure, std::size_t dot,
                      const QuadratureOptions& options = {});

/// dE_{ll'} = J(e_l,e_l') + J(h_l,h_l') + J(e_l,h_l') + J(h_l,e_l'), meV.
double biexcitonic_shift(const DeviceStructure& structure, std::size_t l, std::size_t lp,
                         const QuadratureOptions& options = {});

struct ShiftPoint {
  double field_kv_cm;
  double shift_mev;
};

/// Biexcitonic shift on a non-empty ascending grid of non-negative fields.
std::vector<ShiftPoint> shift_vs_field(const DeviceStructure& structure, std::size_t l,
                                       std::size_t lp, std::span<const double> field_grid_kv_cm,
                                       const QuadratureOptions& options = {});

/// Register whose energies and shifts are computed from the structure.
ExcitonRegister make_register(const DeviceStructure& structure, std::vector<double> dipoles,
                              const QuadratureOptions& options = {});

}  // namespace excitonq
