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
#include <utility>
#include <vector>

#include "tlsbath/core/error.hpp"
#include "tlsbath/core/units.hpp"
#include "tlsbath/phonon/dos.hpp"

namespace tlsbath::phonon {

struct PhononMode {
  double omega_ghz = 0.0;
  double gamma_mhz = 1.0;  // linewidth
  double g_t_mhz = 0.0;    // transverse coupling
  double g_l_mhz = 0.0;    // longitudinal coupling
};

namespace detail {

inline void require_nonnegative_temperature(double t, const char* who) {
  if (!(t >= 0.0)) throw InvalidArgument(std::string(who) + ": temperature must be >= 0");
}

// coth(hbar w / 2 k_B T), equal to 1 at T = 0.
inline double thermal_coth(double f_ghz, double t) {
  if (t == 0.0) return 1.0;
  return 1.0 / std::tanh(units::half_thermal_ratio(f_ghz, t));
}

// sech^2(x) without overflow.
inline double sech2(double x) {
  const double e = std::exp(-2.0 * std::abs(x));
  return 4.0 * e / ((1.0 + e) * (1.0 + e));
}

}  // namespace detail

// Sum over discrete phonon modes of g^2 gamma coth / (detuning^2 + (gamma/2)^2), in 1/us.
inline double tls_relaxation_discrete(double omega_tls_ghz, const std::vector<PhononMode>& modes, double t_kelvin) {
  detail::require_nonnegative_temperature(t_kelvin, "tls_relaxation_discrete");
  const double w = units::ghz_to_rad_per_us(omega_tls_ghz);
  double rate = 0.0;
  for (const auto& m : modes) {
    if (!(m.gamma_mhz > 0.0)) throw InvalidArgument("tls_relaxation_discrete: linewidth must be positive");
    const double g = units::mhz_to_rad_per_us(m.g_t_mhz);
    const double gamma = units::mhz_to_rad_per_us(m.gamma_mhz);
    const double d = w - units::ghz_to_rad_per_us(m.omega_ghz);
    rate += g * g * gamma * detail::thermal_coth(m.omega_ghz, t_kelvin) / (d * d + 0.25 * gamma * gamma);
  }
  return rate;
}

// Continuum limit 4 rho g^2 coth, with rho in states per GHz (converted to per rad/us).
inline double tls_relaxation_continuum(double omega_tls_ghz, double rho_per_ghz, double g_t_mhz, double t_kelvin) {
  detail::require_nonnegative_temperature(t_kelvin, "tls_relaxation_continuum");
  if (!(rho_per_ghz >= 0.0)) throw InvalidArgument("tls_relaxation_continuum: density must be >= 0");
  const double rho = rho_per_ghz / units::ghz_to_rad_per_us(1.0);
  const double g = units::mhz_to_rad_per_us(g_t_mhz);
  return 4.0 * rho * g * g * detail::thermal_coth(omega_tls_ghz, t_kelvin);
}

inline double tls_relaxation_continuum(double omega_tls_ghz, const DosHistogram& rho, double g_t_mhz, double t_kelvin) {
  return tls_relaxation_continuum(omega_tls_ghz, rho.density_at(omega_tls_ghz), g_t_mhz, t_kelvin);
}

// Phonon-mode damping by a bath of TLS given as (frequency GHz, Gamma1 1/us) pairs:
// sum of (2 g_l^2 / w_s)(hbar Gamma1 / k_B T) sech^2(hbar w_TLS / 2 k_B T). Zero at T = 0.
inline double phonon_relax_from_tls_bath(const PhononMode& mode, const std::vector<std::pair<double, double>>& tls_bath,
                                         double t_kelvin) {
  detail::require_nonnegative_temperature(t_kelvin, "phonon_relax_from_tls_bath");
  if (!(mode.omega_ghz > 0.0)) throw InvalidArgument("phonon_relax_from_tls_bath: mode frequency must be positive");
  if (t_kelvin == 0.0) return 0.0;
  const double gl = units::mhz_to_rad_per_us(mode.g_l_mhz);
  const double prefactor = 2.0 * gl * gl / units::ghz_to_rad_per_us(mode.omega_ghz);
  double rate = 0.0;
  for (const auto& [f_tls, gamma1] : tls_bath) {
    if (!(gamma1 >= 0.0)) throw InvalidArgument("phonon_relax_from_tls_bath: Gamma1 must be >= 0");
    const double energy_ratio = units::hbar * gamma1 * 1e6 / (units::boltzmann_kb * t_kelvin);
    rate += prefactor * energy_ratio * detail::sech2(units::half_thermal_ratio(f_tls, t_kelvin));
  }
  return rate;
}

// Integral of x^D csch(x) over (0, inf) = 2 Gamma(D+1) (1 - 2^-(D+1)) zeta(D+1).
inline double thermal_scaling_integral(double d) {
  if (!(d >= 1.0)) throw InvalidArgument("thermal_scaling_integral: need D >= 1");
  return 2.0 * std::tgamma(d + 1.0) * (1.0 - std::pow(2.0, -(d + 1.0))) * std::riemann_zeta(d + 1.0);
}

// sech^2(x/2) coth(x/2), which equals 2 csch(x).
inline double sech2_coth_half(double x) {
  const double h = 0.5 * x;
  return detail::sech2(h) / std::tanh(h);
}
inline double twice_csch(double x) { return 2.0 / std::sinh(x); }

}  // namespace tlsbath::phonon
