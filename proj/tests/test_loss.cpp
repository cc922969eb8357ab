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

#include "tlsbath/loss/models.hpp"

using namespace tlsbath;
using namespace tlsbath::loss;

namespace {

constexpr double kGap = units::aluminium_gap_kelvin;

// Rise from thermal TLS saturation, then QP collapse.
QModelParams transmon_like() {
  QModelParams p;
  p.q_tls0 = 1.5e6;
  p.q_other = 4e6;
  p.q_qp0 = 1.0;
  p.nbar = 0.0;
  return p;
}

}  // namespace

TEST(QModel, FreezesOutToResidualAtOneMillikelvin) {
  QModelParams p;
  p.q_tls0 = 2e6;
  p.q_other = 3e6;
  p.q_qp0 = 1.0;
  p.nbar = 0.05;
  p.D = 1e-2;
  p.beta1 = 2.0;
  p.beta2 = 1.0;
  const double q = q_total(6.48, 1e-3, p);
  EXPECT_NEAR(q / p.q_other, 1.0, 1e-3);
}

TEST(QModel, QpRatioAcrossTemperature) {
  QModelParams p;
  p.q_qp0 = 0.37;
  // mpmath oracle at 6.48 GHz, Delta0 = 1.764 * 1.2 K.
  EXPECT_NEAR(q_qp(6.48, 0.193, p) / q_qp(6.48, 0.075, p), 2.6003333950428633e-8, 1e-15);
}

TEST(QModel, NonMonotoneInTemperature) {
  const auto p = transmon_like();
  const double q_cold = q_total(6.48, 0.02, p);
  const double q_mid = q_total(6.48, 0.12, p);
  const double q_hot = q_total(6.48, 0.25, p);
  EXPECT_GT(q_mid, q_cold);
  EXPECT_LT(q_hot, q_mid);
}

TEST(QModel, NeverBetterThanResidual) {
  const auto p = transmon_like();
  for (double f = 1.0; f <= 10.0; f += 0.5)
    for (double t = 0.005; t <= 0.4; t += 0.005) EXPECT_GE(1.0 / q_total(f, t, p), 1.0 / p.q_other);
}

TEST(QModel, RejectsNonPositiveTemperature) {
  EXPECT_THROW(q_total(6.0, 0.0, transmon_like()), InvalidArgument);
  EXPECT_THROW(q_total(6.0, -0.1, transmon_like()), InvalidArgument);
}

TEST(SinhK0, StableAtLargeArgument) {
  // x = hbar w / 2 k_B T at 5.65 GHz and 1 mK is about 135.6.
  const double x = units::half_thermal_ratio(5.65, 1e-3);
  EXPECT_NEAR(sinh_k0(x), 0.0537694260220388, 1e-13);
  EXPECT_NEAR(sinh_k0(2.0), std::sinh(2.0) * std::cyl_bessel_k(0.0, 2.0), 1e-14);
  EXPECT_NEAR(sinh_k0(59.9) / sinh_k0(60.1), std::sqrt(60.1 / 59.9), 2e-4);
}

TEST(QpSpectralDensity, ClosedFormDetailedBalance) {
  for (double f = 1.0; f <= 10.0; f += 1.0) {
    for (double t = 0.05; t <= 0.3001; t += 0.05) {
      const double ratio = qp_spectral_density_closed(-f, t, kGap, 10.0) / qp_spectral_density_closed(f, t, kGap, 10.0);
      const double expected = std::exp(-units::ghz_to_kelvin(f) / t);
      EXPECT_NEAR(ratio / expected, 1.0, 1e-6) << f << " GHz " << t << " K";
    }
  }
}

TEST(QpSpectralDensity, NumericMatchesClosedForm) {
  const double closed = qp_spectral_density_closed(5.65, 0.15, kGap, 1.0);
  const double numeric = qp_spectral_density(5.65, 0.15, kGap, 1.0);
  EXPECT_NEAR(closed, 4.52449757513866605e-6, 1e-17);
  EXPECT_NEAR(numeric / closed, 1.0, 1e-2);
  EXPECT_NEAR(numeric, 4.52449716832071829e-6, 1e-12);
}

TEST(QpSpectralDensity, NegativeFrequencyNumeric) {
  // Detailed balance holds up to the blocking-factor correction of order e^{-Delta/T}.
  const double t = 0.1;
  const double ratio = qp_spectral_density(-5.0, t, kGap, 1.0) / qp_spectral_density(5.0, t, kGap, 1.0);
  EXPECT_NEAR(ratio / std::exp(-units::ghz_to_kelvin(5.0) / t), 1.0, 1e-3);
}

TEST(QpSpectralDensity, ZeroJosephsonEnergy) {
  EXPECT_EQ(qp_spectral_density(5.0, 0.1, kGap, 0.0), 0.0);
  EXPECT_EQ(qp_spectral_density_closed(5.0, 0.1, kGap, 0.0), 0.0);
}

TEST(QpSpectralDensity, DivergentParameters) {
  EXPECT_THROW(qp_spectral_density(0.0, 0.1, kGap, 1.0), InvalidArgument);
  EXPECT_THROW(qp_spectral_density(200.0, 0.1, kGap, 1.0), InvalidArgument);
}

TEST(TlsQpRate, MonotoneInTemperature) {
  double prev = 0.0;
  for (double t = 0.010; t <= 0.2501; t += 0.001) {
    const double r = tls_qp_rate(5.65, t, 1e6);
    EXPECT_GT(r, prev);
    prev = r;
  }
}

TEST(TlsQpRate, RatioAcrossTemperature) {
  EXPECT_NEAR(tls_qp_rate(5.65, 0.193, 1.0) / tls_qp_rate(5.65, 0.075, 1.0), 36478251.6120842, 1e-3);
}

TEST(TlsQpRate, SharesFunctionalFormWithTransmonQp) {
  QModelParams p;
  p.q_qp0 = 0.8;
  const double amplitude = 3.3e4;
  double ref = 0.0;
  for (double t = 0.03; t <= 0.3; t += 0.01) {
    const double v = q_qp(5.65, t, p) * tls_qp_rate(5.65, t, amplitude);
    if (ref == 0.0) ref = v;
    EXPECT_NEAR(v / ref, 1.0, 1e-9);
  }
}

TEST(TlsQpRate, QualityFormIsOmegaOverGamma) {
  const double g = tls_qp_rate(5.65, 0.15, 2e5);
  EXPECT_NEAR(tls_qp_quality(5.65, 0.15, 2e5), units::ghz_to_rad_per_us(5.65) / g, 1e-6);
  EXPECT_THROW(tls_qp_rate(5.65, 0.0, 1.0), InvalidArgument);
}

TEST(TlsQpRate, PositiveAndFinite) {
  for (double t = 0.005; t < 0.5; t *= 1.3) {
    const double r = tls_qp_rate(5.65, t, 1e5);
    EXPECT_TRUE(std::isfinite(r));
    EXPECT_GT(r, 0.0);
  }
  // Below a few mK only the log form is representable.
  const double lr = log_tls_qp_rate(5.65, 1e-3, 1e5);
  EXPECT_TRUE(std::isfinite(lr));
  EXPECT_NEAR(lr, std::log(1e5) - kGap / 1e-3 + std::log(0.0537694260220388), 1e-9);
}

TEST(EffectiveTemperature, Limits) {
  TeffParams p{0.08, 1.2, 0.3};
  EXPECT_NEAR(effective_temperature(1e-4, p), saturation_temperature(p), 1e-15);
  EXPECT_NEAR(saturation_temperature(p), 0.08 * std::sqrt(2.2), 1e-15);
  // Linear asymptote (A/C) T at large T.
  const double t = 1e5;
  EXPECT_NEAR(effective_temperature(t, p) / ((p.A / p.C) * t), 1.0, 1e-5);
}

TEST(Purcell, Values) {
  EXPECT_EQ(purcell_rate(0.0, 100.0, 1.0), 0.0);
  EXPECT_NEAR(1.0 / purcell_rate(11.7, 122.0, 1.0 / 1.5), 163.09, 0.01);
  EXPECT_NEAR(purcell_rate(10.0, 200.0, 1.0) / purcell_rate(10.0, 100.0, 1.0), 0.25, 1e-15);
  EXPECT_THROW(purcell_rate(10.0, 5.0, 1.0), InvalidArgument);
}

TEST(OffResonant, Values) {
  EXPECT_NEAR(off_resonant_tls_rate(5.0, 250.0, 1.0), 0.4e-3, 1e-8);
  EXPECT_EQ(off_resonant_tls_rate(0.0, 250.0, 1.0), 0.0);
  // Delta = 0 gives g^2 / Gamma2.
  EXPECT_NEAR(off_resonant_tls_rate(5.0, 0.0, 2.0), 0.005 * 0.005 / 2.0 * 1e6, 1e-12);
}
