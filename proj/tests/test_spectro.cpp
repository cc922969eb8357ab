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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "tlsbath/quantum/protocols.hpp"
#include "tlsbath/spectro/analysis.hpp"

using namespace tlsbath;
using namespace tlsbath::spectro;

namespace {

// Closed-form vacuum Rabi exchange P_qubit(t) for one duration column per detuning.
SpectrumMap rabi_map(double g_mhz, const std::vector<double>& deltas_mhz, double t_max_ns, std::size_t n) {
  SpectrumMap m{"delta_mhz", "duration_ns", deltas_mhz, quantum::linspace(0.0, t_max_ns, n), {}, std::nullopt};
  for (double d : deltas_mhz) {
    const double w = quantum::jc_splitting_mhz(d, g_mhz);
    std::vector<double> row;
    for (double t : m.axis2) {
      const double s = std::sin(M_PI * w * t * 1e-3);
      row.push_back(1.0 - 4.0 * g_mhz * g_mhz / (w * w) * s * s);
    }
    m.values.push_back(std::move(row));
  }
  return m;
}

quantum::DeviceModel single_tls(double wt, double g) {
  quantum::DeviceModel d;
  d.omega_max_ghz = 6.2;
  d.tls = {{wt, g, 0.0, 0.0, 2}};
  return d;
}

// Spectroscopy map spanning +-6 g around the TLS with a 1 us half-pi drive.
SpectrumMap crossing_map(const quantum::DeviceModel& d, double wt, double g_mhz, double half_span_ghz = 0.0) {
  const double span = half_span_ghz > 0.0 ? half_span_ghz : 6.0 * g_mhz * 1e-3;
  const auto fluxes = quantum::linspace(quantum::flux_for_frequency(d, wt + span),
                                        quantum::flux_for_frequency(d, wt - span), 41);
  const auto step = 2e-4;
  const auto n = static_cast<std::size_t>(std::lround(2.0 * (span + 0.02) / step)) + 1;
  const auto freqs = quantum::linspace(wt - span - 0.02, wt + span + 0.02, n);
  const double tp = 1000.0;
  return quantum::microwave_spectroscopy_map(d, fluxes, freqs, 0.5 * 1e3 / (2.0 * tp), tp, 0, 1);
}

}  // namespace

TEST(ChevronFft, OnResonancePeakIsTwiceCoupling) {
  const auto cols = chevron_fft(rabi_map(21.7, {0.0}, 400.0, 401), {false, 8, 1, {}});
  ASSERT_EQ(cols.size(), 1u);
  EXPECT_NEAR(cols[0].peak_mhz, 43.4, cols[0].bin_mhz);
}

TEST(ChevronFft, DetunedPeak) {
  EXPECT_NEAR(quantum::jc_splitting_mhz(30.0, 21.7), 52.76, 5e-3);
  const auto cols = chevron_fft(rabi_map(21.7, {30.0}, 400.0, 401));
  EXPECT_NEAR(cols[0].peak_mhz, 52.76, cols[0].bin_mhz);
  EXPECT_NEAR(cols[0].bin_mhz, 1e3 / 401.0, 1e-12);
}

TEST(ChevronFft, PeakWithinHalfBinAcrossDetunings) {
  std::vector<double> deltas;
  for (double r = 0.0; r <= 20.0; r += 0.5) deltas.push_back(r * 7.0);
  const auto cols = chevron_fft(rabi_map(7.0, deltas, 1000.0, 501), {false, 8, 1, {}});
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const double want = quantum::jc_splitting_mhz(deltas[i], 7.0);
    EXPECT_LT(std::abs(cols[i].peak_mhz - want), 0.5 * cols[i].bin_mhz) << deltas[i];
  }
}

TEST(ChevronFft, SimulatedSwapMapMatchesEigenSplitting) {
  const auto d = single_tls(5.6563, 21.7);
  std::vector<double> fluxes;
  for (double det : {-40.0, -10.0, 0.0, 25.0}) fluxes.push_back(quantum::flux_for_frequency(d, 5.6563 + det * 1e-3));
  const auto map = quantum::swap_spectroscopy_map(d, fluxes, quantum::linspace(0.0, 400.0, 401), 25.0, 0, 1);
  const auto cols = chevron_fft(map, {false, 4, 1, {}});
  for (const auto& c : cols) {
    const double det = 1e3 * (5.6563 - quantum::transmon_freq_at_flux(d, c.axis1));
    EXPECT_LT(std::abs(c.peak_mhz - quantum::jc_splitting_mhz(det, 21.7)), c.bin_mhz);
  }
}

TEST(ChevronFft, HannWindowKeepsPeak) {
  const auto cols = chevron_fft(rabi_map(21.7, {30.0}, 400.0, 401), {true, 8, 3, {}});
  EXPECT_NEAR(cols[0].peak_mhz, 52.76, cols[0].bin_mhz);
  EXPECT_LE(cols[0].peaks.size(), 3u);
}

TEST(ChevronFft, Errors) {
  auto m = rabi_map(21.7, {0.0}, 400.0, 101);
  EXPECT_THROW(chevron_fft(m, {false, 1, 1, 200.0}), InvalidArgument);
  EXPECT_NO_THROW(chevron_fft(m, {false, 1, 1, 100.0}));
  m.axis2[3] += 0.7;
  EXPECT_THROW(chevron_fft(m), InvalidArgument);
}

TEST(AvoidedCrossing, RoundTripTls5) {
  const auto d = single_tls(5.6563, 21.7);
  const auto r = fit_avoided_crossing(crossing_map(d, 5.6563, 21.7), [&](double f) {
    return quantum::transmon_freq_at_flux(d, f);
  });
  EXPECT_NEAR(r.omega_tls_ghz, 5.6563, 2e-4);
  EXPECT_NEAR(r.g_mhz, 21.7, 0.2);
  EXPECT_TRUE(r.resolvable);
  EXPECT_EQ(r.ridge_ghz.size(), 41u);
}

TEST(AvoidedCrossing, RoundTripAcrossCouplings) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> G(5.0, 50.0), W(4.6, 5.9);
  for (int k = 0; k < 4; ++k) {
    const double g = G(rng), wt = W(rng);
    const auto d = single_tls(wt, g);
    const auto r = fit_avoided_crossing(crossing_map(d, wt, g), [&](double f) {
      return quantum::transmon_freq_at_flux(d, f);
    });
    EXPECT_LT(std::abs(r.omega_tls_ghz - wt) / wt, 0.01);
    EXPECT_LT(std::abs(r.g_mhz - g) / g, 0.01) << g;
  }
}

TEST(AvoidedCrossing, NoCouplingMeansNoCrossing) {
  const auto d = single_tls(5.6563, 0.0);
  const auto map = crossing_map(d, 5.6563, 21.7);
  EXPECT_THROW(fit_avoided_crossing(map, [&](double f) { return quantum::transmon_freq_at_flux(d, f); }),
               InvalidArgument);
}

TEST(AvoidedCrossing, TwoCrossingsRejected) {
  quantum::DeviceModel d;
  d.omega_max_ghz = 6.2;
  d.tls = {{5.55, 20.0, 0.0, 0.0, 2}, {5.75, 20.0, 0.0, 0.0, 2}};
  const auto map = crossing_map(d, 5.65, 20.0, 0.2);
  EXPECT_THROW(fit_avoided_crossing(map, [&](double f) { return quantum::transmon_freq_at_flux(d, f); }),
               InvalidArgument);
}

TEST(AvoidedCrossing, ResolutionFloor) {
  EXPECT_DOUBLE_EQ(resolution_floor_mhz(100.0), 5.0);
  const auto weak = single_tls(5.6563, 4.0);
  const auto map = crossing_map(weak, 5.6563, 4.0);
  const auto fc = [&](double f) { return quantum::transmon_freq_at_flux(weak, f); };
  EXPECT_FALSE(fit_avoided_crossing(map, fc, 100.0).resolvable);
  EXPECT_TRUE(fit_avoided_crossing(map, fc).resolvable);
  EXPECT_THROW(resolution_floor_mhz(0.0), InvalidArgument);
}

TEST(AvoidedCrossing, ChevronRouteAgrees) {
  const auto d = single_tls(5.6563, 21.7);
  const auto fluxes = quantum::linspace(quantum::flux_for_frequency(d, 5.6563 + 0.13),
                                        quantum::flux_for_frequency(d, 5.6563 - 0.13), 21);
  const auto map = quantum::swap_spectroscopy_map(d, fluxes, quantum::linspace(0.0, 400.0, 401), 25.0, 0, 1);
  const auto r = fit_chevron_crossing(chevron_fft(map, {false, 4, 1, {}}),
                                      [&](double f) { return quantum::transmon_freq_at_flux(d, f); });
  EXPECT_NEAR(r.omega_tls_ghz, 5.6563, 5e-4);
  EXPECT_NEAR(r.g_mhz, 21.7, 0.2);
}

TEST(ThreeModeGap, Examples) {
  const auto a = three_mode_gap(21.7, 10.0, 500.0);
  EXPECT_NEAR(a.exact_mhz, 20.92, 5e-3);
  EXPECT_NEAR(a.approx_mhz, 20.92, 5e-3);
  EXPECT_TRUE(a.approx_valid);
  EXPECT_NEAR(three_mode_gap(21.7, 0.0, 500.0).exact_mhz, 0.94, 5e-3);
  EXPECT_NEAR(three_mode_gap(21.7, 0.0, 500.0).approx_mhz, 21.7 * 21.7 / 500.0, 1e-12);
  for (double g2 : {0.5, 3.0, 12.0}) EXPECT_DOUBLE_EQ(three_mode_gap(0.0, g2, 200.0).exact_mhz, 2.0 * g2);
  EXPECT_FALSE(three_mode_gap(21.7, 10.0, 100.0).approx_valid);
}

TEST(ThreeModeGap, ClosedFormIsBlockDiagonalEigenGap) {
  // TLS1 coupled only to the bright transmon-TLS2 state at -g2; the dark state stays at +g2.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> G1(1.0, 40.0), G2(1.0, 30.0), D(50.0, 800.0);
  for (int k = 0; k < 50; ++k) {
    const double g1 = G1(rng), g2 = G2(rng), d1 = D(rng);
    const auto w = [](double f) { return units::mhz_to_rad_per_us(f); };
    quantum::Matrix h = quantum::Matrix::Zero(3, 3);
    h(0, 0) = w(d1);
    h(0, 1) = h(1, 0) = w(g1);
    h(1, 1) = w(-g2);
    h(2, 2) = w(g2);
    const auto ev = quantum::eigenfrequencies_mhz(h);
    EXPECT_NEAR(three_mode_gap(g1, g2, d1).exact_mhz, g2 - ev[0], 1e-9);
  }
}

TEST(ThreeModeGap, FullEigenGapLimits) {
  for (double g2 : {2.0, 10.0, 25.0}) EXPECT_NEAR(three_mode_eigen_gap(0.0, g2, 400.0), 2.0 * g2, 1e-9);
  for (double d1 : {150.0, 500.0}) {
    const auto g = three_mode_gap(21.7, 0.0, d1);
    EXPECT_NEAR(three_mode_eigen_gap(21.7, 0.0, d1), g.exact_mhz, 1e-9);
  }
  // The full Hamiltonian also couples TLS1 to the dark state, which cancels most of g1^2 / D1.
  const double full = three_mode_eigen_gap(21.7, 10.0, 500.0);
  EXPECT_LT(std::abs(full - 20.92) / full, 0.05);
  EXPECT_LT(full, three_mode_gap(21.7, 10.0, 500.0).exact_mhz);
}

TEST(ThreeModeGap, SimulatedChevronShowsGap) {
  quantum::DeviceModel d;
  d.omega_max_ghz = 6.5;
  d.tls = {{5.6563 + 0.5, 21.7, 0.0, 0.0, 2}, {5.6563, 10.0, 0.0, 0.0, 2}};
  const std::vector<double> flux{quantum::flux_for_frequency(d, 5.6563)};
  const auto map = quantum::swap_spectroscopy_map(d, flux, quantum::linspace(0.0, 1000.0, 501), 25.0, 0, 1);
  const auto cols = chevron_fft(map, {false, 8, 1, {}});
  EXPECT_NEAR(cols[0].peak_mhz, three_mode_eigen_gap(21.7, 10.0, 500.0), cols[0].bin_mhz);
}

TEST(Anharmonicity, Bounds) {
  const auto b = anharmonicity_bounds(6.08, 5.9, 6.49);
  EXPECT_NEAR(b.bound1_ghz, 0.41, 1e-12);
  EXPECT_NEAR(b.bound2_ghz, -0.18, 1e-12);
  const auto z = anharmonicity_bounds(6.08, 6.08, 6.08);
  EXPECT_EQ(z.bound1_ghz, 0.0);
  EXPECT_EQ(z.bound2_ghz, 0.0);
  EXPECT_THROW(anharmonicity_bounds(6.6, 5.9, 6.49), InvalidArgument);
  double prev1 = 0.0, prev2 = 0.0;
  for (double w = 0.0; w < 1.0; w += 0.1) {
    const auto c = anharmonicity_bounds(6.08, 6.08 - w, 6.08 + 0.5 * w);
    EXPECT_GE(c.bound1_ghz, prev1);
    EXPECT_LE(c.bound2_ghz, prev2);
    prev1 = c.bound1_ghz;
    prev2 = c.bound2_ghz;
  }
  EXPECT_TRUE(transition_12_in_scan(6.08, -0.1, 5.9, 6.49));
  EXPECT_FALSE(transition_12_in_scan(6.08, 0.5, 5.9, 6.49));
}

TEST(SpectrumMapCsv, RoundTrip) {
  auto m = rabi_map(21.7, {0.0, 12.5}, 10.0, 11);
  m.pulse_duration_ns = 250.0;
  std::stringstream ss;
  write_spectrum_csv(ss, m);
  const auto back = read_spectrum_csv(ss);
  EXPECT_EQ(back.axis1_name, m.axis1_name);
  EXPECT_EQ(back.axis2_name, m.axis2_name);
  EXPECT_EQ(back.axis1, m.axis1);
  EXPECT_EQ(back.axis2, m.axis2);
  EXPECT_EQ(back.values, m.values);
  ASSERT_TRUE(back.pulse_duration_ns);
  EXPECT_EQ(*back.pulse_duration_ns, 250.0);
}

TEST(SpectrumMapCsv, Invalid) {
  SpectrumMap m{"a", "b", {0.0, 1.0}, {0.0, 1.0}, {{0.1, 0.2}, {0.3}}, std::nullopt};
  EXPECT_THROW(validate(m), InvalidArgument);
  m.values[1] = {0.3, 1.5};
  EXPECT_THROW(validate(m), InvalidArgument);
  std::stringstream bad("a\\b,0,1\n0,0.1\n");
  EXPECT_THROW(read_spectrum_csv(bad), ParseError);
}
