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
#include <complex>
#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "tlsbath/core/error.hpp"
#include "tlsbath/core/units.hpp"
#include "tlsbath/fit/fit_result.hpp"
#include "tlsbath/quantum/hamiltonians.hpp"
#include "tlsbath/spectro/spectrum_map.hpp"

namespace tlsbath::spectro {

using FluxCurve = std::function<double(double)>;  // flux -> transmon frequency, GHz

struct ChevronOptions {
  bool hann = false;
  std::size_t pad_factor = 1;   // zero padding before the transform
  std::size_t top_k = 1;        // number of local maxima reported per column
  std::optional<double> expected_max_mhz;
};

struct Peak {
  double freq_mhz = 0.0;
  double amplitude = 0.0;
};

struct ChevronColumn {
  double axis1 = 0.0;
  double peak_mhz = 0.0;  // dominant nonzero frequency
  double amplitude = 0.0;
  double bin_mhz = 0.0;   // 1 / (N dt) of the unpadded record
  std::vector<Peak> peaks;
};

namespace detail {

inline double uniform_step(const std::vector<double>& x) {
  if (x.size() < 4) throw InvalidArgument("chevron_fft: need at least 4 samples per column");
  const double dt = (x.back() - x.front()) / static_cast<double>(x.size() - 1);
  if (!(dt > 0.0)) throw InvalidArgument("chevron_fft: duration axis must increase");
  for (std::size_t i = 1; i < x.size(); ++i)
    if (std::abs(x[i] - x[i - 1] - dt) > 1e-6 * dt) throw InvalidArgument("chevron_fft: duration axis is not uniform");
  return dt;
}

// Vertex offset of the parabola through (-1, a), (0, b), (1, c).
inline double parabolic_offset(double a, double b, double c) {
  const double den = a - 2.0 * b + c;
  return den == 0.0 ? 0.0 : 0.5 * (a - c) / den;
}

}  // namespace detail

// Per-column DFT of a (flux x duration) map: magnitude spectrum without the mean, dominant
// nonzero peak with quadratic interpolation. Durations in ns, frequencies in MHz.
inline std::vector<ChevronColumn> chevron_fft(const SpectrumMap& map, const ChevronOptions& opt = {}) {
  validate(map);
  const double dt_ns = detail::uniform_step(map.axis2);
  const double fs_mhz = 1e3 / dt_ns;
  if (opt.expected_max_mhz && *opt.expected_max_mhz > 0.5 * fs_mhz)
    throw InvalidArgument("chevron_fft: expected Rabi frequency exceeds the Nyquist frequency");
  const std::size_t n = map.axis2.size();
  const std::size_t np = n * std::max<std::size_t>(1, opt.pad_factor);
  const std::size_t half = np / 2;
  std::vector<std::complex<double>> twiddle(np);
  for (std::size_t k = 0; k < np; ++k)
    twiddle[k] = std::polar(1.0, -units::two_pi * static_cast<double>(k) / static_cast<double>(np));

  std::vector<ChevronColumn> out;
  for (std::size_t i = 0; i < map.axis1.size(); ++i) {
    std::vector<double> x = map.values[i];
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(n);
    for (std::size_t t = 0; t < n; ++t) {
      x[t] -= mean;
      if (opt.hann) x[t] *= 0.5 - 0.5 * std::cos(units::two_pi * static_cast<double>(t) / static_cast<double>(n - 1));
    }
    std::vector<double> mag(half + 1, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
      std::complex<double> s = 0.0;
      for (std::size_t t = 0; t < n; ++t) s += x[t] * twiddle[(k * t) % np];
      mag[k] = std::abs(s) / static_cast<double>(n);
    }
    ChevronColumn col;
    col.axis1 = map.axis1[i];
    col.bin_mhz = fs_mhz / static_cast<double>(n);
    std::vector<Peak> peaks;
    for (std::size_t k = 1; k <= half; ++k) {
      const double left = mag[k - 1], right = k < half ? mag[k + 1] : 0.0;
      if (mag[k] >= left && mag[k] > right) {
        const double off = k < half ? detail::parabolic_offset(left, mag[k], right) : 0.0;
        peaks.push_back({(static_cast<double>(k) + off) * fs_mhz / static_cast<double>(np), mag[k]});
      }
    }
    std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) { return a.amplitude > b.amplitude; });
    if (!peaks.empty()) {
      col.peak_mhz = peaks.front().freq_mhz;
      col.amplitude = peaks.front().amplitude;
    }
    peaks.resize(std::min(peaks.size(), std::max<std::size_t>(1, opt.top_k)));
    col.peaks = std::move(peaks);
    out.push_back(std::move(col));
  }
  return out;
}

// Smallest coupling resolvable with pi pulses of length t_pi: 1 / (2 t_pi).
inline double resolution_floor_mhz(double t_pi_ns) {
  if (!(t_pi_ns > 0.0)) throw InvalidArgument("resolution_floor_mhz: pulse length must be positive");
  return 1e3 / (2.0 * t_pi_ns);
}

struct AvoidedCrossingFit {
  double omega_tls_ghz = 0.0;
  double g_mhz = 0.0;
  double omega_tls_sigma_ghz = 0.0;
  double g_sigma_mhz = 0.0;
  bool resolvable = true;
  fit::FitResult fit;
  std::vector<double> ridge_ghz;  // per column of a spectroscopy map; empty for chevron fits
};

// Hybridised branch frequencies 1/2 (wq + wt) +- 1/2 sqrt(D^2 + 4 g^2), GHz.
inline double crossing_branch(double wq_ghz, double wt_ghz, double g_mhz, bool upper) {
  const double split = std::hypot(wt_ghz - wq_ghz, 2.0 * g_mhz * 1e-3);
  return 0.5 * (wq_ghz + wt_ghz) + (upper ? 0.5 : -0.5) * split;
}

namespace detail {

inline void require_single_crossing(const std::vector<double>& dev, double noise) {
  const double peak = *std::max_element(dev.begin(), dev.end());
  if (!(peak > noise)) throw InvalidArgument("fit_avoided_crossing: no crossing detected");
  int clusters = 0;
  bool inside = false;
  for (double v : dev) {
    if (v > 0.5 * peak && !inside) {
      ++clusters;
      inside = true;
    } else if (v < 0.1 * peak) {
      inside = false;
    }
  }
  if (clusters > 1) throw InvalidArgument("fit_avoided_crossing: multiple overlapping crossings");
}

inline AvoidedCrossingFit finish(const fit::FitResult& r, std::optional<double> t_pi_ns) {
  AvoidedCrossingFit out;
  out.fit = r;
  out.omega_tls_ghz = r.value("omega_tls");
  out.g_mhz = r.value("g");
  out.omega_tls_sigma_ghz = r.sigma("omega_tls");
  out.g_sigma_mhz = r.sigma("g");
  if (t_pi_ns) out.resolvable = out.g_mhz >= resolution_floor_mhz(*t_pi_ns);
  return out;
}

}  // namespace detail

// Ridge fit of a (flux x drive frequency) spectroscopy map. t_pi_ns sets the resolution flag
// and defaults to the map's drive length.
inline AvoidedCrossingFit fit_avoided_crossing(const SpectrumMap& map, const FluxCurve& flux_curve,
                                               std::optional<double> t_pi_ns = std::nullopt) {
  validate(map);
  const auto& f = map.axis2;
  if (f.size() < 3) throw InvalidArgument("fit_avoided_crossing: need at least 3 frequency points");
  double step = 0.0;
  for (std::size_t j = 1; j < f.size(); ++j) step = std::max(step, std::abs(f[j] - f[j - 1]));

  std::vector<double> ridge, wq, dev;
  for (std::size_t i = 0; i < map.axis1.size(); ++i) {
    const auto& row = map.values[i];
    const auto j = static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    double r = f[j];
    if (j > 0 && j + 1 < f.size()) {
      // Parabola through three possibly unevenly spaced points.
      const double x0 = f[j - 1] - f[j], x2 = f[j + 1] - f[j];
      const double y0 = row[j - 1] - row[j], y2 = row[j + 1] - row[j];
      const double a = (y0 * x2 - y2 * x0) / (x0 * x2 * (x0 - x2));
      const double b = (y0 - a * x0 * x0) / x0;
      if (a < 0.0) r += std::clamp(-b / (2.0 * a), x0, x2);
    }
    ridge.push_back(r);
    wq.push_back(flux_curve(map.axis1[i]));
    dev.push_back(std::abs(r - wq.back()));
  }
  detail::require_single_crossing(dev, 2.0 * step);

  const auto c = static_cast<std::size_t>(std::max_element(dev.begin(), dev.end()) - dev.begin());
  const double wt0 = wq[c];
  std::vector<bool> upper;
  for (double r : ridge) upper.push_back(r > wt0);
  std::vector<fit::ParamSpec> specs{{"omega_tls", wt0}, {"g", std::max(dev[c] * 1e3, 0.1), fit::Transform::log}};
  fit::ResidualFn res = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(ridge.size()));
    for (std::size_t i = 0; i < ridge.size(); ++i)
      r[static_cast<Eigen::Index>(i)] = 1e3 * (ridge[i] - crossing_branch(wq[i], p[0], p[1], upper[i]));
    return r;
  };
  auto r = fit::make_result("avoided_crossing", specs, fit::levenberg_marquardt(res, specs));
  fit::require_converged(r);
  auto out = detail::finish(r, t_pi_ns ? t_pi_ns : map.pulse_duration_ns);
  out.ridge_ghz = ridge;
  return out;
}

// Fits sqrt((w_TLS - w_q)^2 + 4 g^2) to the chevron peak frequencies of a SWAP map.
inline AvoidedCrossingFit fit_chevron_crossing(const std::vector<ChevronColumn>& cols, const FluxCurve& flux_curve,
                                               std::optional<double> t_pi_ns = std::nullopt) {
  if (cols.size() < 3) throw InvalidArgument("fit_chevron_crossing: need at least 3 columns");
  std::vector<double> wq, rabi;
  for (const auto& c : cols) {
    wq.push_back(flux_curve(c.axis1));
    rabi.push_back(c.peak_mhz);
  }
  const auto m = static_cast<std::size_t>(std::min_element(rabi.begin(), rabi.end()) - rabi.begin());
  if (!(rabi[m] > 0.0)) throw InvalidArgument("fit_chevron_crossing: no oscillation detected");
  std::vector<fit::ParamSpec> specs{{"omega_tls", wq[m]}, {"g", 0.5 * rabi[m], fit::Transform::log}};
  fit::ResidualFn res = [&](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(rabi.size()));
    for (std::size_t i = 0; i < rabi.size(); ++i)
      r[static_cast<Eigen::Index>(i)] = rabi[i] - quantum::jc_splitting_mhz(1e3 * (p[0] - wq[i]), p[1]);
    return r;
  };
  auto r = fit::make_result("chevron_crossing", specs, fit::levenberg_marquardt(res, specs));
  fit::require_converged(r);
  return detail::finish(r, t_pi_ns);
}

struct ThreeModeGap {
  double exact_mhz = 0.0;   // block-diagonalised closed form
  double approx_mhz = 0.0;  // 2 g2 + g1^2 / (D1 + g2)
  bool approx_valid = true; // (D1 + g2)^2 > 100 g1^2
};

// Gap between the two Rabi lines of a TLS2-transmon pair perturbed by a detuned TLS1, at D2 = 0.
inline ThreeModeGap three_mode_gap(double g1_mhz, double g2_mhz, double delta1_mhz) {
  ThreeModeGap g;
  const double s = delta1_mhz + g2_mhz;
  g.exact_mhz = 0.5 * (std::sqrt(s * s + 4.0 * g1_mhz * g1_mhz) - (delta1_mhz - 3.0 * g2_mhz));
  g.approx_mhz = s == 0.0 ? std::numeric_limits<double>::infinity() : 2.0 * g2_mhz + g1_mhz * g1_mhz / s;
  g.approx_valid = s * s > 100.0 * g1_mhz * g1_mhz;
  return g;
}

// Same gap from the 3x3 eigenvalues: the two eigenstates with least TLS1 weight.
inline double three_mode_eigen_gap(double g1_mhz, double g2_mhz, double delta1_mhz, double delta2_mhz = 0.0) {
  Eigen::SelfAdjointEigenSolver<quantum::Matrix> es(
      quantum::build_three_mode_hamiltonian(delta1_mhz, g1_mhz, delta2_mhz, g2_mhz));
  Eigen::Index drop = 0;
  es.eigenvectors().row(0).cwiseAbs2().maxCoeff(&drop);
  std::vector<double> keep;
  for (Eigen::Index k = 0; k < 3; ++k)
    if (k != drop) keep.push_back(es.eigenvalues()[k]);
  return units::rad_per_us_to_mhz(std::abs(keep[1] - keep[0]));
}

struct AnharmonicityBounds {
  double bound1_ghz = 0.0;  // alpha > bound1 > 0
  double bound2_ghz = 0.0;  // alpha < bound2 < 0
};

// With no |1>-|2> line (f12 = f01 + alpha) in the scanned window, alpha lies outside it.
inline AnharmonicityBounds anharmonicity_bounds(double f01_ghz, double scan_lo_ghz, double scan_hi_ghz) {
  if (!(scan_lo_ghz <= f01_ghz && f01_ghz <= scan_hi_ghz))
    throw InvalidArgument("anharmonicity_bounds: f01 must lie inside the scan");
  return {scan_hi_ghz - f01_ghz, scan_lo_ghz - f01_ghz};
}

inline bool transition_12_in_scan(double f01_ghz, double alpha_ghz, double scan_lo_ghz, double scan_hi_ghz) {
  const double f12 = f01_ghz + alpha_ghz;
  return f12 >= scan_lo_ghz && f12 <= scan_hi_ghz;
}

}  // namespace tlsbath::spectro
