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

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "excitonq/device.hpp"
#include "excitonq/errors.hpp"
#include "excitonq/units.hpp"

// Direct Coulomb integrals between densities that factor into an isotropic
// in-plane Gaussian and a z profile. The in-plane part is done in Fourier
// space, which leaves
//
//   J = q_a q_b (e^2 / 4 pi eps0 eps_r) int_0^inf dq exp(-q^2 s^2 / 2) J0(q c) F(q)
//
// with s^2 = sigma_a^2 + sigma_b^2, c the in-plane centre distance and
// F(q) = < exp(-q |z1 - z2|) > over the two z profiles.

namespace excitonq {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kPi = units::kPi;

double erfcx(double x) {
  if (x < 5.0) return std::exp(x * x) * std::erfc(x);
  // Continued fraction, converges quickly for x >= 5.
  double f = x;
  for (int n = 60; n >= 1; --n) f = x + (0.5 * n) / f;
  return 1.0 / (std::sqrt(kPi) * f);
}

// exp(a^2 - m2) erfc(a), arranged to stay finite for any sign of a.
double scaled_erfc_term(double a, double m2) {
  if (a < 0.0) return std::exp(a * a - m2) * std::erfc(a);
  return std::exp(-m2) * erfcx(a);
}

double gaussian_form_factor(double q, double mu, double sz) {
  const double m2 = mu * mu / (2.0 * sz * sz);
  const double r = sz * std::sqrt(2.0);
  const double a1 = (q * sz * sz - mu) / r;
  const double a2 = (q * sz * sz + mu) / r;
  return 0.5 * (scaled_erfc_term(a1, m2) + scaled_erfc_term(a2, m2));
}

// Laplace transform of a centred cos^2 well density, without the
// exp(q L / 2) edge factor: (1 - e^{-qL}) / (qL) * k^2 / (q^2 + k^2).
double well_edge_transform(double q, double width) {
  const double x = q * width;
  const double k = 2.0 * kPi / width;
  const double edge = x < 1e-300 ? 1.0 : -std::expm1(-x) / x;
  return edge * k * k / (q * q + k * k);
}

// (x - 1 + e^{-x}) / x^2 without cancellation at small x.
double quadratic_remainder(double x) {
  if (x < 0.5) {
    double term = 0.5;
    double sum = 0.0;
    for (int n = 2; n < 40 && std::abs(term) > 1e-18; ++n) {
      sum += term;
      term *= -x / (n + 1);
    }
    return sum;
  }
  return (x + std::expm1(-x)) / (x * x);
}

// < exp(-q |z1 - z2|) > for two independent draws from the same well.
double same_well_form_factor(double q, double width) {
  const double L = width;
  const double k = 2.0 * kPi / L;
  const double e = std::exp(-q * L);
  const std::complex<double> p(q, -k);
  const double t1 = L * L * quadratic_remainder(q * L);
  const double t2 = 0.5 * std::real(L / p - (1.0 - e) / (p * p));
  const double t3 = 1.5 / k * std::imag((1.0 - e) / p);
  return 2.0 / (L * L) * (t1 + t2 + t3);
}

double numeric_form_factor(double q, const ZProfile& a, const ZProfile& b) {
  const auto sa = a.support_nm();
  const auto sb = b.support_nm();
  auto inner = [&](double z1) {
    auto f = [&](double z2) { return b.density(z2) * std::exp(-q * std::abs(z1 - z2)); };
    double total = 0.0;
    if (z1 > sb[0] && z1 < sb[1]) {
      total += gauss_kronrod<double, 31>::integrate(f, sb[0], z1, 15, 1e-12);
      total += gauss_kronrod<double, 31>::integrate(f, z1, sb[1], 15, 1e-12);
    } else {
      total += gauss_kronrod<double, 31>::integrate(f, sb[0], sb[1], 15, 1e-12);
    }
    return a.density(z1) * total;
  };
  return gauss_kronrod<double, 31>::integrate(inner, sa[0], sa[1], 15, 1e-12);
}

bool same_profile(const ZProfile& a, const ZProfile& b) {
  return a.kind == b.kind && a.center_nm == b.center_nm && a.width_nm == b.width_nm;
}

bool disjoint_wells(const ZProfile& a, const ZProfile& b) {
  const double gap = std::abs(a.center_nm - b.center_nm) - 0.5 * (a.width_nm + b.width_nm);
  return gap >= -1e-12;
}

double form_factor(double q, const ZProfile& a, const ZProfile& b) {
  using K = ZProfileKind;
  if (a.kind == K::Gaussian && b.kind == K::Gaussian) {
    return gaussian_form_factor(q, a.center_nm - b.center_nm,
                                std::hypot(a.width_nm, b.width_nm));
  }
  if (a.kind == K::InfiniteWell && b.kind == K::InfiniteWell) {
    if (same_profile(a, b)) return same_well_form_factor(q, a.width_nm);
    if (disjoint_wells(a, b)) {
      const double gap = std::abs(a.center_nm - b.center_nm) - 0.5 * (a.width_nm + b.width_nm);
      return std::exp(-q * std::max(gap, 0.0)) * well_edge_transform(q, a.width_nm) *
             well_edge_transform(q, b.width_nm);
    }
  }
  return numeric_form_factor(q, a, b);
}

void check_density(const ChargeDensity& d, const char* name) {
  if (d.inplane.charge != 1 && d.inplane.charge != -1) {
    throw InvalidParameter(std::string(name) + ": charge must be +1 or -1");
  }
  if (!(d.inplane.std_nm > 0.0)) throw InvalidParameter(std::string(name) + ": in-plane std must be positive");
  if (!(d.z.width_nm > 0.0)) throw InvalidParameter(std::string(name) + ": z width must be positive");
}

}  // namespace

double ZProfile::density(double z_nm) const {
  const double x = z_nm - center_nm;
  if (kind == ZProfileKind::InfiniteWell) {
    if (std::abs(x) >= 0.5 * width_nm) return 0.0;
    const double c = std::cos(kPi * x / width_nm);
    return 2.0 / width_nm * c * c;
  }
  return std::exp(-0.5 * x * x / (width_nm * width_nm)) / (width_nm * std::sqrt(2.0 * kPi));
}

std::array<double, 2> ZProfile::support_nm() const {
  if (kind == ZProfileKind::InfiniteWell) {
    return {center_nm - 0.5 * width_nm, center_nm + 0.5 * width_nm};
  }
  return {center_nm - 12.0 * width_nm, center_nm + 12.0 * width_nm};
}

double coulomb_integral(const ChargeDensity& a, const ChargeDensity& b,
                        const MaterialParams& material, const QuadratureOptions& options) {
  material.validate();
  check_density(a, "first density");
  check_density(b, "second density");

  const double s = std::hypot(a.inplane.std_nm, b.inplane.std_nm);
  const double c = std::hypot(a.inplane.center_nm[0] - b.inplane.center_nm[0],
                              a.inplane.center_nm[1] - b.inplane.center_nm[1]);
  auto integrand = [&](double q) {
    const double bessel = c == 0.0 ? 1.0 : std::cyl_bessel_j(0.0, q * c);
    return std::exp(-0.5 * q * q * s * s) * bessel * form_factor(q, a.z, b.z);
  };
  // exp(-q^2 s^2 / 2) < 1e-30 beyond this point.
  const double q_max = std::sqrt(2.0 * 69.0) / s;
  double error = 0.0;
  double l1 = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, q_max, options.max_depth, options.relative_tolerance, &error, &l1);
  if (!std::isfinite(value) || error > options.relative_tolerance * std::max(std::abs(value), 1e-300) * 10.0) {
    const double achieved = error / std::max(std::abs(value), 1e-300);
    throw ConvergenceError("Coulomb quadrature did not converge (achieved relative error " +
                               std::to_string(achieved) + ")",
                           achieved);
  }
  const double prefactor = units::kCoulomb / material.relative_permittivity;
  return static_cast<double>(a.charge() * b.charge()) * prefactor * value;
}

}  // namespace excitonq
