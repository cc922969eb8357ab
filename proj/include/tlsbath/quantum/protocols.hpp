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

#include <random>
#include <vector>

#include "tlsbath/fit/fit_result.hpp"
#include "tlsbath/quantum/simulator.hpp"
#include "tlsbath/spectro/spectrum_map.hpp"

namespace tlsbath::quantum {

// Square pulse calibrated on the dressed qubit transition at the given flux; fraction 1 is a pi pulse.
inline XYPulse pi_pulse(const DeviceModel& d, double amplitude_mhz, double flux = 0.0, double fraction = 1.0,
                        double phase = 0.0) {
  if (!(amplitude_mhz > 0.0)) throw InvalidArgument("pi_pulse: amplitude must be positive");
  return {dressed_qubit_frequency(d, flux), amplitude_mhz, fraction * 1e3 / (2.0 * amplitude_mhz), phase};
}

struct SweepPoint {
  double x = 0.0;
  double population = 0.0;
  double sampled = 0.0;
  double sigma = 0.0;
};
using SweepTrace = std::vector<SweepPoint>;

// Sampled populations as a fit trace, x scaled by `scale` (e.g. 1e-3 for ns -> us).
inline fit::Trace to_fit_trace(const SweepTrace& s, double scale = 1.0) {
  fit::Trace tr;
  for (const auto& p : s) {
    tr.t.push_back(p.x * scale);
    tr.y.push_back(p.sampled);
  }
  return tr;
}

namespace detail {

inline SweepPoint sweep_point(const Simulator& sim, const PulseSequence& seq, double x, int shots, std::mt19937_64& rng,
                              const InitialState& init = {}) {
  const auto r = sim.run(seq, init, shots, &rng);
  const auto& m = r.points.back();
  return {x, m.population, m.sampled, m.sigma};
}

}  // namespace detail

// Microwave spectroscopy: hold the flux, apply a long weak drive at f, read the qubit.
inline PulseSequence microwave_spectroscopy_sequence(double flux, double f_ghz, double amplitude_mhz, double duration_ns) {
  return {{ZPulse{flux, 0.0}, XYPulse{f_ghz, amplitude_mhz, duration_ns, 0.0}, Measure{"qubit"}}};
}

inline spectro::SpectrumMap microwave_spectroscopy_map(const DeviceModel& d, const std::vector<double>& fluxes,
                                                       const std::vector<double>& freqs_ghz, double amplitude_mhz,
                                                       double duration_ns, int shots, std::uint64_t seed) {
  const Simulator sim(d);
  std::mt19937_64 rng(seed);
  spectro::SpectrumMap m{"flux", "freq_ghz", fluxes, freqs_ghz, {}, duration_ns};
  for (double flux : fluxes) {
    std::vector<double> row;
    for (double f : freqs_ghz)
      row.push_back(detail::sweep_point(sim, microwave_spectroscopy_sequence(flux, f, amplitude_mhz, duration_ns), f,
                                        shots, rng).sampled);
    m.values.push_back(std::move(row));
  }
  return m;
}

// SWAP spectroscopy: excite at the idle bias, pulse the flux for tau, read the qubit.
inline PulseSequence swap_spectroscopy_sequence(const DeviceModel& d, double flux, double tau_ns, double amplitude_mhz,
                                                double idle_flux = 0.0) {
  return {{ZPulse{idle_flux, 0.0}, pi_pulse(d, amplitude_mhz, idle_flux), ZPulse{flux, tau_ns}, Measure{"qubit"}}};
}

inline spectro::SpectrumMap swap_spectroscopy_map(const DeviceModel& d, const std::vector<double>& fluxes,
                                                  const std::vector<double>& durations_ns, double amplitude_mhz,
                                                  int shots, std::uint64_t seed, double idle_flux = 0.0) {
  const Simulator sim(d);
  std::mt19937_64 rng(seed);
  spectro::SpectrumMap m{"flux", "duration_ns", fluxes, durations_ns, {}, std::nullopt};
  for (double flux : fluxes) {
    std::vector<double> row;
    for (double tau : durations_ns)
      row.push_back(
          detail::sweep_point(sim, swap_spectroscopy_sequence(d, flux, tau, amplitude_mhz, idle_flux), tau, shots, rng)
              .sampled);
    m.values.push_back(std::move(row));
  }
  return m;
}

// Energy relaxation: pi pulse at the sweet spot, step to `flux`, wait, read.
inline SweepTrace t1_trace(const DeviceModel& d, double flux, const std::vector<double>& delays_ns,
                           double amplitude_mhz, int shots, std::uint64_t seed) {
  const Simulator sim(d);
  std::mt19937_64 rng(seed);
  SweepTrace out;
  for (double tau : delays_ns) {
    const PulseSequence seq{{pi_pulse(d, amplitude_mhz), ZPulse{flux, 0.0}, Delay{tau}, Measure{"qubit"}}};
    out.push_back(detail::sweep_point(sim, seq, tau, shots, rng));
  }
  return out;
}

// Ramsey fringes: two pi/2 pulses detuned by detuning_mhz from the sweet-spot frequency.
inline SweepTrace ramsey_trace(const DeviceModel& d, const std::vector<double>& delays_ns, double detuning_mhz,
                               double amplitude_mhz, int shots, std::uint64_t seed) {
  const Simulator sim(d);
  std::mt19937_64 rng(seed);
  XYPulse half = pi_pulse(d, amplitude_mhz, 0.0, 0.5);
  half.freq_ghz += detuning_mhz * 1e-3;
  SweepTrace out;
  for (double tau : delays_ns) {
    const PulseSequence seq{{half, Delay{tau}, half, Measure{"qubit"}}};
    out.push_back(detail::sweep_point(sim, seq, tau, shots, rng));
  }
  return out;
}

// Two-excitation SWAP: qubit and TLS k both start excited (as after an ideal SWAP and a second
// pi pulse); the qubit is then tuned onto the TLS for tau. A two-level TLS blocks the exchange.
inline SweepTrace two_excitation_swap_trace(const DeviceModel& d, std::size_t tls_index,
                                            const std::vector<double>& durations_ns, int shots, std::uint64_t seed) {
  if (tls_index >= d.tls.size()) throw InvalidArgument("two_excitation_swap_trace: no such TLS");
  const Simulator sim(d);
  std::mt19937_64 rng(seed);
  InitialState init;
  init.excitations.assign(d.tls.size() + 1, 0);
  init.excitations[0] = 1;
  init.excitations[tls_index + 1] = 1;
  const double flux = flux_for_frequency(d, d.tls[tls_index].omega_ghz);
  SweepTrace out;
  for (double tau : durations_ns) {
    const PulseSequence seq{{ZPulse{flux, tau}, Measure{"qubit"}}};
    out.push_back(detail::sweep_point(sim, seq, tau, shots, rng, init));
  }
  return out;
}

// Uniform grid helper: n points from a to b inclusive.
inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

}  // namespace tlsbath::quantum
