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

#include "excitonq/device.hpp"
#include "excitonq/errors.hpp"
#include "excitonq/units.hpp"

namespace excitonq {
namespace {

constexpr double kPi = units::kPi;

ChargeDensity gaussian_cloud(int charge, double x, double y, double z, double sigma) {
  return {{charge, {x, y}, sigma}, {ZProfileKind::Gaussian, z, sigma}};
}

ChargeDensity well_cloud(int charge, double x, double sigma, double z, double width) {
  return {{charge, {x, 0.0}, sigma}, {ZProfileKind::InfiniteWell, z, width}};
}

double closed_form(double distance, double sigma, double eps) {
  return units::kCoulomb / eps / distance * std::erf(distance / (2.0 * sigma));
}

double sample_z(std::mt19937_64& rng, const ZProfile& p) {
  if (p.kind == ZProfileKind::Gaussian) {
    return std::normal_distribution<double>(p.center_nm, p.width_nm)(rng);
  }
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::uniform_real_distribution<double> v(0.0, 1.0);
  for (;;) {
    const double x = u(rng);
    const double c = std::cos(kPi * x);
    if (v(rng) < c * c) return p.center_nm + x * p.width_nm;
  }
}

// Monte Carlo estimate of <k / (eps r)> with its standard error.
std::pair<double, double> monte_carlo(const ChargeDensity& a, const ChargeDensity& b, double eps,
                                      std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double dx = a.inplane.center_nm[0] + a.inplane.std_nm * n01(rng) -
                      (b.inplane.center_nm[0] + b.inplane.std_nm * n01(rng));
    const double dy = a.inplane.center_nm[1] + a.inplane.std_nm * n01(rng) -
                      (b.inplane.center_nm[1] + b.inplane.std_nm * n01(rng));
    const double dz = sample_z(rng, a.z) - sample_z(rng, b.z);
    const double v = 1.0 / std::sqrt(dx * dx + dy * dy + dz * dz);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / samples;
  const double var = sum2 / samples - mean * mean;
  const double k = a.charge() * b.charge() * units::kCoulomb / eps;
  return {k * mean, std::abs(k) * std::sqrt(var / samples)};
}

TEST(Coulomb, GaussianClosedFormSpotValue) {
  MaterialParams m;
  const double j = coulomb_integral(gaussian_cloud(-1, 0, 0, 0, 2.0), gaussian_cloud(-1, 10, 0, 0, 2.0), m);
  EXPECT_NEAR(j, 11.158, 1e-3);
}

TEST(Coulomb, GaussianClosedFormAcrossGeometries) {
  MaterialParams m;
  const double sigma = 1.5;
  struct Case { double x, y, z; };
  for (const Case c : {Case{0.3, 0, 0}, Case{3, 4, 0}, Case{0, 0, 6}, Case{2, -1, 3}, Case{20, 0, 5},
                       Case{0, 0, 0.01}}) {
    const double d = std::sqrt(c.x * c.x + c.y * c.y + c.z * c.z);
    const double j = coulomb_integral(gaussian_cloud(1, 0, 0, 0, sigma),
                                      gaussian_cloud(1, c.x, c.y, c.z, sigma), m);
    EXPECT_NEAR(j / closed_form(d, sigma, m.relative_permittivity), 1.0, 1e-6) << d;
  }
  // Coincident clouds: limit k / (eps sigma sqrt(pi)).
  const double j0 = coulomb_integral(gaussian_cloud(1, 0, 0, 0, sigma), gaussian_cloud(1, 0, 0, 0, sigma), m);
  EXPECT_NEAR(j0 / (units::kCoulomb / m.relative_permittivity / (sigma * std::sqrt(kPi))), 1.0, 1e-6);
}

TEST(Coulomb, SymmetricAndSignRule) {
  MaterialParams m;
  const auto e = well_cloud(-1, -1.2, 3.0, 0.0, 4.0);
  const auto h = well_cloud(1, 0.8, 2.0, 9.0, 4.5);
  EXPECT_EQ(coulomb_integral(e, h, m), coulomb_integral(h, e, m));
  auto e2 = e;
  e2.inplane.charge = 1;
  EXPECT_DOUBLE_EQ(coulomb_integral(e2, h, m), -coulomb_integral(e, h, m));
  EXPECT_LT(coulomb_integral(e, h, m), 0.0);
}

TEST(Coulomb, MatchesMonteCarlo) {
  MaterialParams m;
  struct Case { ChargeDensity a, b; };
  const Case cases[] = {
      {well_cloud(-1, 0.0, 3.0, 0.0, 4.0), well_cloud(-1, 2.0, 2.5, 9.0, 4.0)},    // disjoint wells
      {well_cloud(-1, -1.0, 3.0, 0.0, 4.0), well_cloud(1, 1.0, 1.5, 0.0, 4.0)},    // same well
      {well_cloud(-1, 0.0, 3.0, 0.0, 4.0), well_cloud(1, 0.5, 2.0, 1.0, 5.0)},     // overlapping wells
      {well_cloud(-1, 0.0, 3.0, 0.0, 4.0), gaussian_cloud(1, 1.0, 0.0, 2.0, 1.0)}, // mixed kinds
  };
  std::uint64_t seed = 11;
  for (const auto& c : cases) {
    const double j = coulomb_integral(c.a, c.b, m);
    const auto [mc, se] = monte_carlo(c.a, c.b, m.relative_permittivity, 400000, seed++);
    EXPECT_NEAR(j, mc, 5.0 * se + 1e-9) << "seed " << seed;
  }
}

TEST(Coulomb, ReportsNonConvergence) {
  MaterialParams m;
  QuadratureOptions tight;
  tight.relative_tolerance = 1e-15;
  tight.max_depth = 0;
  try {
    coulomb_integral(well_cloud(-1, 0, 0.3, 0, 4), well_cloud(1, 80, 0.3, 0, 4), m, tight);
    FAIL() << "expected ConvergenceError";
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.achieved_relative_error(), 1e-15);
  }
}

TEST(Coulomb, RejectsBadDensities) {
  MaterialParams m;
  auto a = gaussian_cloud(2, 0, 0, 0, 1);
  EXPECT_THROW(coulomb_integral(a, gaussian_cloud(1, 0, 0, 0, 1), m), InvalidParameter);
  EXPECT_THROW(coulomb_integral(gaussian_cloud(1, 0, 0, 0, 0), gaussian_cloud(1, 0, 0, 0, 1), m),
               InvalidParameter);
}

TEST(InplaneState, DisplacementAndWidth) {
  MaterialParams m;
  const auto e = inplane_ground_state(m, 30.0, -1, 30.0);
  const auto h = inplane_ground_state(m, 20.0, 1, 30.0);
  EXPECT_NEAR(e.center_nm[0], -3.79, 0.01);
  EXPECT_NEAR(h.center_nm[0], 1.68, 0.01);
  const double l = std::sqrt(units::kHbar2OverM0 / (m.electron_mass * 30.0));
  EXPECT_NEAR(e.std_nm, l / std::sqrt(2.0), 1e-12);
  EXPECT_EQ(inplane_ground_state(m, 30.0, -1, 0.0).center_nm[0], 0.0);
}

TEST(Device, PresetAnchors) {
  const auto d = paper_two_dot_preset();
  EXPECT_NEAR(exciton_energy(d, 0), 1.700, 1e-3);
  EXPECT_NEAR(exciton_energy(d, 1), 1.710, 2e-3);
  const double shift = biexcitonic_shift(d, 0, 1);
  EXPECT_GE(shift, 3.0);
  EXPECT_LE(shift, 6.0);
}

TEST(Device, ShiftIsSymmetricBitwise) {
  const auto d = paper_two_dot_preset();
  EXPECT_EQ(biexcitonic_shift(d, 0, 1), biexcitonic_shift(d, 1, 0));
  EXPECT_THROW(biexcitonic_shift(d, 1, 1), InvalidParameter);
}

TEST(Device, ShiftVanishesForMirrorCarriers) {
  auto d = paper_two_dot_preset().with_field(0.0);
  d.material.hole_mass = d.material.electron_mass;
  for (auto& g : d.dots) g.confinement_hole_mev = g.confinement_electron_mev;
  EXPECT_NEAR(biexcitonic_shift(d, 0, 1), 0.0, 1e-10);
}

TEST(Device, TranslationAlongZLeavesEnergiesUnchanged) {
  const auto d = paper_two_dot_preset();
  const auto t = d.translated(37.5);
  EXPECT_NEAR(biexcitonic_shift(t, 0, 1), biexcitonic_shift(d, 0, 1), 1e-9);
  EXPECT_NEAR(exciton_energy(t, 1), exciton_energy(d, 1), 1e-12);
}

TEST(Device, ShiftGrowsWithFieldAndStarkLowersEnergies) {
  const auto d = paper_two_dot_preset();
  std::vector<double> grid;
  for (int f = 0; f <= 40; f += 5) grid.push_back(f);
  const auto pts = shift_vs_field(d, 0, 1, grid);
  ASSERT_EQ(pts.size(), grid.size());
  for (std::size_t i = 1; i < pts.size(); ++i) {
    EXPECT_GE(pts[i].shift_mev, pts[i - 1].shift_mev);
    for (std::size_t l = 0; l < 2; ++l) {
      EXPECT_LT(exciton_energy(d.with_field(grid[i]), l), exciton_energy(d.with_field(grid[i - 1]), l));
    }
  }
  EXPECT_GT(pts.back().shift_mev, 0.0);
}

TEST(Device, ShiftGridValidation) {
  const auto d = paper_two_dot_preset();
  EXPECT_THROW(shift_vs_field(d, 0, 1, std::vector<double>{}), InvalidParameter);
  EXPECT_THROW(shift_vs_field(d, 0, 1, std::vector<double>{10, 5}), InvalidParameter);
  EXPECT_THROW(shift_vs_field(d, 0, 1, std::vector<double>{-1, 5}), InvalidParameter);
  EXPECT_EQ(shift_vs_field(d, 0, 1, std::vector<double>{30}).size(), 1U);
}

// Far apart, the shift is the interaction of two parallel point dipoles
// perpendicular to their separation: k p_a p_b / (eps R^3).
TEST(Device, PointDipoleLimit) {
  const auto base = paper_two_dot_preset();
  double d = 0.0, sigma = 0.0;
  for (std::size_t l = 0; l < 2; ++l) {
    const auto e = carrier_density(base, l, -1);
    const auto h = carrier_density(base, l, 1);
    d = std::max(d, std::abs(h.inplane.center_nm[0] - e.inplane.center_nm[0]));
    sigma = std::max({sigma, e.inplane.std_nm, h.inplane.std_nm});
  }
  const double r0 = base.dots[1].z_center_nm - base.dots[0].z_center_nm;
  const double target = 5.0 * (d + 2.0 * sigma);
  ASSERT_GT(target, r0);
  auto far = stack_dots(base.dots, {base.barrier_widths_nm[0] + target - r0}, base.material, base.field_kv_cm);
  const double r = far.dots[1].z_center_nm - far.dots[0].z_center_nm;
  ASSERT_NEAR(r, target, 1e-9);
  double p[2];
  for (std::size_t l = 0; l < 2; ++l) {
    p[l] = carrier_density(far, l, 1).inplane.center_nm[0] - carrier_density(far, l, -1).inplane.center_nm[0];
  }
  const double dipole = units::kCoulomb / far.material.relative_permittivity * p[0] * p[1] / (r * r * r);
  EXPECT_NEAR(biexcitonic_shift(far, 0, 1) / dipole, 1.0, 0.05);
}

TEST(Device, StructureValidation) {
  auto d = paper_two_dot_preset();
  d.dots[1].z_center_nm = d.dots[0].z_center_nm;
  EXPECT_THROW(d.validate(), InvalidParameter);
  MaterialParams bad;
  bad.electron_mass = 0;
  EXPECT_THROW(bad.validate(), InvalidParameter);
}

TEST(Device, RegisterFromStructure) {
  const auto d = paper_two_dot_preset();
  const auto reg = make_register(d, {kDefaultTransitionDipole, kDefaultTransitionDipole});
  EXPECT_NEAR(reg.exciton_energy_mev(0), units::ev_to_mev(exciton_energy(d, 0)), 1e-9);
  EXPECT_EQ(reg.shift_mev(0, 1), biexcitonic_shift(d, 0, 1));
}

}  // namespace
}  // namespace excitonq
