// Copyright 2026 The tlsbath Authors
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

#include <cmath>
#include <numbers>

namespace tlsbath::units {

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;

// CODATA exact SI values.
inline constexpr double planck_h = 6.62607015e-34;      // J s
inline constexpr double hbar = planck_h / two_pi;       // J s
inline constexpr double boltzmann_kb = 1.380649e-23;    // J / K

// h * 1 GHz / k_B, in kelvin (about 47.99 mK per GHz).
inline constexpr double kelvin_per_ghz = planck_h * 1e9 / boltzmann_kb;

// Angular frequency used internally by the quantum module: rad per microsecond.
// A line at f GHz rotates at 2*pi*f*1e3 rad/us; a coupling of g MHz at 2*pi*g rad/us.
inline constexpr double ghz_to_rad_per_us(double f_ghz) { return two_pi * f_ghz * 1e3; }
inline constexpr double mhz_to_rad_per_us(double f_mhz) { return two_pi * f_mhz; }
inline constexpr double rad_per_us_to_mhz(double w) { return w / two_pi; }
inline constexpr double ns_to_us(double t_ns) { return t_ns * 1e-3; }

// Photon energy of an f GHz quantum expressed as a temperature.
inline constexpr double ghz_to_kelvin(double f_ghz) { return f_ghz * kelvin_per_ghz; }

// hbar*omega / (2 k_B T) for a frequency in GHz and temperature in K.
inline double half_thermal_ratio(double f_ghz, double t_kelvin) {
  return ghz_to_kelvin(f_ghz) / (2.0 * t_kelvin);
}

// Aluminium gap, Delta0 = 1.764 k_B Tc with Tc = 1.2 K.
inline constexpr double aluminium_gap_kelvin = 1.764 * 1.2;

}  // namespace tlsbath::units
