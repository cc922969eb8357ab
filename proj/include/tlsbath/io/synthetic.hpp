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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tlsbath/census/record.hpp"
#include "tlsbath/core/error.hpp"
#include "tlsbath/fit/distribution.hpp"
#include "tlsbath/fit/fit_result.hpp"

namespace tlsbath::io {

// Planted census: TLS inside [gap_lo, gap_hi] belong to the long-lived family B, the rest to
// family A, except for a random `outlier_fraction` whose membership is flipped.
struct SynthParams {
  std::size_t n_tls = 60;
  double f_lo_ghz = 3.8, f_hi_ghz = 6.6;
  double gap_lo_ghz = 4.5, gap_hi_ghz = 5.7;
  double median_a_us = 4.0, median_b_us = 400.0;
  double sigma_a = 0.55, sigma_b = 0.8;  // log-space widths
  double outlier_fraction = 0.0;
  double g_min_mhz = 5.0, g_max_mhz = 60.0;
  std::size_t trace_points = 60;
  double trace_noise = 0.01;
  int devices = 1;
};

struct SyntheticDataset {
  census::RecordSet records;
  std::vector<fit::Trace> traces;  // energy-relaxation trace per record, t in us
  std::vector<bool> planted_b;     // planted family membership per record
};

inline void validate(const SynthParams& p) {
  if (p.n_tls < 4) throw InvalidArgument("synth: need at least 4 TLS");
  if (!(p.f_lo_ghz > 0.0 && p.f_lo_ghz < p.gap_lo_ghz && p.gap_lo_ghz < p.gap_hi_ghz && p.gap_hi_ghz < p.f_hi_ghz))
    throw InvalidArgument("synth: need 0 < f_lo < gap_lo < gap_hi < f_hi");
  if (!(p.median_a_us > 0.0 && p.median_b_us > p.median_a_us))
    throw InvalidArgument("synth: need 0 < median_a < median_b");
  if (!(p.sigma_a > 0.0 && p.sigma_b > 0.0)) throw InvalidArgument("synth: lognormal widths must be positive");
  if (!(p.outlier_fraction >= 0.0 && p.outlier_fraction < 0.5))
    throw InvalidArgument("synth: outlier_fraction must lie in [0, 0.5)");
  if (!(p.g_min_mhz > 0.0 && p.g_max_mhz > p.g_min_mhz)) throw InvalidArgument("synth: need 0 < g_min < g_max");
  if (p.trace_points < 8) throw InvalidArgument("synth: need at least 8 trace points");
  if (!(p.trace_noise >= 0.0)) throw InvalidArgument("synth: trace_noise must be non-negative");
  if (p.devices < 1) throw InvalidArgument("synth: need at least one device");
}

// Deterministic for a given seed. T1 values are lognormal draws truncated symmetrically at
// 3 sigma in log space, which keeps the median and leaves a clean T1 gap between the families.
inline SyntheticDataset generate_synthetic_dataset(const SynthParams& p, std::uint64_t seed) {
  validate(p);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> freq(p.f_lo_ghz, p.f_hi_ghz), unit(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> f(p.n_tls);
  for (auto& v : f) v = freq(rng);
  std::sort(f.begin(), f.end());
  const auto g = fit::sample_tls_couplings(p.n_tls, p.g_min_mhz, p.g_max_mhz, rng);

  SyntheticDataset ds;
  for (std::size_t i = 0; i < p.n_tls; ++i) {
    bool b = f[i] >= p.gap_lo_ghz && f[i] <= p.gap_hi_ghz;
    if (unit(rng) < p.outlier_fraction) b = !b;
    double z = normal(rng);
    while (std::abs(z) > 3.0) z = normal(rng);
    const double t1 = b ? p.median_b_us * std::exp(p.sigma_b * z) : p.median_a_us * std::exp(p.sigma_a * z);

    census::TlsRecord r;
    r.index = static_cast<int>(i) + 1;
    r.freq_ghz = std::round(f[i] * 1e4) / 1e4;
    r.g_mhz = std::round(g[i] * 10.0) / 10.0;
    r.t1_err_us = 0.05 * t1;
    r.device = "synth-" + std::to_string(static_cast<int>(i) % p.devices + 1);
    r.cooldown = "CD1";

    fit::Trace tr;
    const double t_max = 5.0 * t1;
    for (std::size_t k = 0; k < p.trace_points; ++k) {
      const double t = t_max * static_cast<double>(k) / static_cast<double>(p.trace_points - 1);
      tr.t.push_back(t);
      tr.y.push_back(std::exp(-t / t1) + p.trace_noise * normal(rng));
    }
    r.t1_us = t1;
    ds.records.push_back(r);
    ds.traces.push_back(std::move(tr));
    ds.planted_b.push_back(b);
  }
  return ds;
}

}  // namespace tlsbath::io
