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
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "tlsbath/core/error.hpp"
#include "tlsbath/core/units.hpp"

namespace tlsbath::loss {

// Transmon quality-factor model: saturable TLS loss, thermally activated QP loss
// and a temperature-independent residual.
struct QModelParams {
  double q_tls0 = 1e6;
  double q_qp0 = 1e-2;
  double q_other = 1e6;
  double D = 1.0;
  double beta1 = 1.0;
  double beta2 = 1.0;
  double delta0 = units::aluminium_gap_kelvin;  // K
  double nbar = 0.0;
};

struct TeffParams {
  double A = 0.05;  // K
  double B = 0.0;
  double C = 0.1;   // K
};

namespace detail {

// e^x K0(x), finite for all x > 0. The large-x branch is the Hankel asymptotic series.
inline double scaled_k0(double x) {
  if (x < 60.0) return std::exp(x) * std::cyl_bessel_k(0.0, x);
  double term = 1.0, sum = 1.0;
  for (int k = 1; k <= 8; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -odd * odd / (8.0 * k * x);
    sum += term;
  }
  return std::sqrt(units::pi / (2.0 * x)) * sum;
}

// log(sinh(x) K0(x)) for x > 0, stable from x ~ 1e-6 up to x ~ 1e6.
inline double log_sinh_k0(double x) {
  return std::log(0.5 * -std::expm1(-2.0 * x)) + std::log(scaled_k0(x));
}

inline void require_temperature(double t, const char* who) {
  if (!(t > 0.0)) throw InvalidArgument(std::string(who) + ": temperature must be positive");
}

}  // namespace detail

// sinh(x) K0(x), x = hbar w / 2 k_B T.
inline double sinh_k0(double x) { return std::exp(detail::log_sinh_k0(x)); }

// 1/Q_TLS = tanh(x) / (Q_TLS0 sqrt(1 + nbar^b2 / (D T^b1) tanh(x))).
inline double inverse_q_tls(double omega_ghz, double t_kelvin, const QModelParams& p) {
  detail::require_temperature(t_kelvin, "inverse_q_tls");
  const double th = std::tanh(units::half_thermal_ratio(omega_ghz, t_kelvin));
  const double sat = std::pow(p.nbar, p.beta2) / (p.D * std::pow(t_kelvin, p.beta1));
  return th / (p.q_tls0 * std::sqrt(1.0 + sat * th));
}

// 1/Q_QP = e^{-Delta0/T} sinh(x) K0(x) / Q_QP0.
inline double inverse_q_qp(double omega_ghz, double t_kelvin, const QModelParams& p) {
  detail::require_temperature(t_kelvin, "inverse_q_qp");
  const double x = units::half_thermal_ratio(omega_ghz, t_kelvin);
  return std::exp(-p.delta0 / t_kelvin + detail::log_sinh_k0(x)) / p.q_qp0;
}

inline double q_qp(double omega_ghz, double t_kelvin, const QModelParams& p) {
  return 1.0 / inverse_q_qp(omega_ghz, t_kelvin, p);
}

inline double q_total(double omega_ghz, double t_kelvin, const QModelParams& p) {
  if (!(t_kelvin > 0.0)) throw InvalidArgument("q_total: temperature must be positive");
  const double inv = inverse_q_tls(omega_ghz, t_kelvin, p) + inverse_q_qp(omega_ghz, t_kelvin, p) +
                     1.0 / p.q_other;
  return 1.0 / inv;
}

// Low-temperature closed form of the QP current spectral density (GHz when Ej is in GHz).
// Frequencies and temperatures enter through hbar w / k_B, i.e. in kelvin.
inline double qp_spectral_density_closed(double omega_ghz, double t_kelvin, double delta0_kelvin,
                                         double ej_ghz) {
  detail::require_temperature(t_kelvin, "qp_spectral_density_closed");
  if (ej_ghz == 0.0) return 0.0;
  const double w = units::ghz_to_kelvin(omega_ghz);
  const double x = std::abs(w) / (2.0 * t_kelvin);
  // e^{w/2T} K0(|w|/2T) = e^{w/2T - |w|/2T} * scaled_k0
  const double log_s = -delta0_kelvin / t_kelvin + (w - std::abs(w)) / (2.0 * t_kelvin) +
                       std::log(detail::scaled_k0(x));
  return 16.0 * ej_ghz / units::pi * std::exp(log_s);
}

// Full integral with Boltzmann occupation f(E) = e^{-E/T}:
//   S(w) = 16 Ej/pi * int_0^inf dx f((1+x)D) [1 - f((1+x)D + w)] / (sqrt(x) sqrt(x + w/D)).
// The substitution x = u^2 (w >= 0) or x = u^2 - w/D (w < 0) removes the endpoint singularity.
inline double qp_spectral_density(double omega_ghz, double t_kelvin, double delta0_kelvin, double ej_ghz) {
  detail::require_temperature(t_kelvin, "qp_spectral_density");
  if (!(delta0_kelvin > 0.0)) throw InvalidArgument("qp_spectral_density: gap must be positive");
  if (ej_ghz == 0.0) return 0.0;
  const double w = units::ghz_to_kelvin(omega_ghz);
  if (w == 0.0) throw InvalidArgument("qp_spectral_density: integral diverges logarithmically at omega = 0");
  if (std::abs(w) >= 2.0 * delta0_kelvin)
    throw InvalidArgument("qp_spectral_density: |omega| must stay below 2 Delta0");
  const double a = std::abs(w) / delta0_kelvin;
  const double r = delta0_kelvin / t_kelvin;
  auto integrand = [&](double u) {
    const double x = w >= 0.0 ? u * u : u * u + a;
    // The global e^{-Delta/T} is pulled out and restored below.
    const double occ = std::exp(-x * r);
    const double block = -std::expm1(-((1.0 + x) * delta0_kelvin + w) / t_kelvin);
    return 2.0 / std::sqrt(u * u + a) * occ * block;
  };
  boost::math::quadrature::exp_sinh<double> integrator;
  double err = 0.0;
  const double val = integrator.integrate(integrand, std::sqrt(std::numeric_limits<double>::epsilon()), &err);
  if (!std::isfinite(val)) throw InvalidArgument("qp_spectral_density: integral diverged");
  return 16.0 * ej_ghz / units::pi * std::exp(-r) * val;
}

// log Gamma; use below ~3 mK where e^{-Delta0/T} leaves double range.
inline double log_tls_qp_rate(double omega_ghz, double t_kelvin, double amplitude,
                              double delta0_kelvin = units::aluminium_gap_kelvin) {
  detail::require_temperature(t_kelvin, "tls_qp_rate");
  const double x = units::half_thermal_ratio(omega_ghz, t_kelvin);
  return std::log(amplitude) - delta0_kelvin / t_kelvin + detail::log_sinh_k0(x);
}

// Gamma = amplitude e^{-Delta0/T} sinh(x) K0(x), in the units of amplitude (1/us).
inline double tls_qp_rate(double omega_ghz, double t_kelvin, double amplitude,
                          double delta0_kelvin = units::aluminium_gap_kelvin) {
  detail::require_temperature(t_kelvin, "tls_qp_rate");
  if (amplitude == 0.0) return 0.0;
  return std::exp(log_tls_qp_rate(omega_ghz, t_kelvin, amplitude, delta0_kelvin));
}

// Quality factor of the same channel: Q = w / Gamma with w in rad/us.
inline double tls_qp_quality(double omega_ghz, double t_kelvin, double amplitude,
                             double delta0_kelvin = units::aluminium_gap_kelvin) {
  return units::ghz_to_rad_per_us(omega_ghz) / tls_qp_rate(omega_ghz, t_kelvin, amplitude, delta0_kelvin);
}

// T_eff = A sqrt(1 + B tanh(C/T)) / tanh(C/T).
inline double effective_temperature(double t_mxc, const TeffParams& p) {
  if (!(t_mxc > 0.0)) throw InvalidArgument("effective_temperature: temperature must be positive");
  const double th = std::tanh(p.C / t_mxc);
  return p.A * std::sqrt(1.0 + p.B * th) / th;
}

inline double saturation_temperature(const TeffParams& p) { return p.A * std::sqrt(1.0 + p.B); }

// Purcell rate through a detuned lossy mode, (g/Delta)^2 gamma_q. Dispersive regime only.
inline double purcell_rate(double g_mhz, double delta_mhz, double gamma_q) {
  if (std::abs(delta_mhz) <= g_mhz) throw InvalidArgument("purcell_rate: requires |delta| > g");
  const double r = g_mhz / delta_mhz;
  return r * r * gamma_q;
}

// Off-resonant exchange with a TLS broadened by Gamma2: g^2 Gamma2 / (Delta^2 + Gamma2^2).
// g in kHz, Delta and Gamma2 in MHz; the result is in Hz.
inline double off_resonant_tls_rate(double g_khz, double delta_mhz, double gamma2_mhz) {
  if (g_khz < 0.0 || delta_mhz < 0.0 || gamma2_mhz < 0.0)
    throw InvalidArgument("off_resonant_tls_rate: inputs must be non-negative");
  const double g_mhz = g_khz * 1e-3;
  const double denom = delta_mhz * delta_mhz + gamma2_mhz * gamma2_mhz;
  if (denom == 0.0) throw InvalidArgument("off_resonant_tls_rate: delta and gamma2 both zero");
  return g_mhz * g_mhz * gamma2_mhz / denom * 1e6;
}

}  // namespace tlsbath::loss
