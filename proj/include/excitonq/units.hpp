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

// Unit system used throughout the library: energies in meV, lengths in nm,
// times in ps, fields in kV/cm. eV only appears at reporting boundaries.

namespace excitonq::units {

inline constexpr double kHbar = 0.6582119514;        // meV ps
inline constexpr double kCoulomb = 1439.96;          // e^2 / (4 pi eps0), meV nm
inline constexpr double kHbar2OverM0 = 76.19964;     // hbar^2 / m0, meV nm^2
inline constexpr double kFieldEnergyPerNm = 0.1;     // e * (1 kV/cm), meV / nm
inline constexpr double kMeVPerEv = 1000.0;

inline constexpr double kPi = 3.14159265358979323846;

constexpr double ev_to_mev(double ev) { return ev * kMeVPerEv; }
constexpr double mev_to_ev(double mev) { return mev / kMeVPerEv; }

}  // namespace excitonq::units
