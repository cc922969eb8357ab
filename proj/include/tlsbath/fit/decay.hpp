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
#include <numeric>
#include <string>
#include <vector>

#include "tlsbath/core/error.hpp"
#include "tlsbath/core/units.hpp"
#include "tlsbath/fit/fit_result.hpp"

namespace tlsbath::fit {

enum class DecayModel { simple, stretched, double_exp };

inline const char* to_string(DecayModel m) {
  switch (m) {
    case DecayModel::simple: return "simple";
    case DecayModel::stretched: return "stretched";
    default: return "double_exp";
  }
}

// p(t) = A exp(-t/T1) + B
inline double simple_decay(double t, double A, double T1, double B) { return A * std::exp(-t / T1) + B; }

// p(t) = A exp(-(t/T1)^n) + B
inline double stretched_decay(double t, double A, double T1, double n, double B) {
  return A * std::exp(-std::pow(t / T1, n)) + B;
}

// p(t) = A exp(<n_qp> (exp(-t/T1qp) - 1)) exp(-t/T1) + B
inline double double_exp_decay(double t, double A, double nqp, double T1qp, double T1, double B) {
  return A * std::exp(nqp * std::expm1(-t / T1qp)) * std::exp(-t / T1) + B;
}

// A cos(w t + phi) exp(-(t/T2)^n) + B, w in rad per time unit of t.
inline double oscillatory_decay(double t, double A, double w, double phi, double T2, double n, double B) {
  return A * std::cos(w * t + phi) * std::exp(-std::pow(t / T2, n)) + B;
}

namespace detail {

inline void check_trace(const Trace& tr, std::size_t min_points, const char* who) {
  if (tr.t.size() != tr.y.size()) throw InvalidArgument(std::string(who) + ": t and y differ in length");
  if (!tr.err.empty() && tr.err.size() != tr.t.size())
    throw InvalidArgument(std::string(who) + ": err length mismatch");
  if (tr.size() < min_points)
    throw InvalidArgument(std::string(who) + ": need at least " + std::to_string(min_points) + " points");
  for (double t : tr.t)
    if (!(t >= 0.0)) throw InvalidArgument(std::string(who) + ": times must be non-negative");
  for (double e : tr.err)
    if (!(e > 0.0)) throw InvalidArgument(std::string(who) + ": errors must be positive");
  const auto [lo, hi] = std::minmax_element(tr.y.begin(), tr.y.end());
  if (*hi - *lo <= 1e-14 * std::max(1.0, std::abs(*hi)))
    throw InvalidArgument(std::string(who) + ": degenerate (constant) trace");
}

template <class Model>
ResidualFn residuals_for(const Trace& tr, Model model) {
  return [&tr, model](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(tr.size()));
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const double w = tr.err.empty() ? 1.0 : 1.0 / tr.err[i];
      r[static_cast<Eigen::Index>(i)] = (tr.y[i] - model(tr.t[i], p)) * w;
    }
    return r;
  };
}

struct DecayGuess {
  double A, T1, B;
};

// Offset from the tail, amplitude from the head, T1 from a log-linear slope.
inline DecayGuess guess_decay(const Trace& tr) {
  std::vector<std::size_t> order(tr.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return tr.t[a] < tr.t[b]; });
  const std::size_t n = order.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double B = 0.0;
  for (std::size_t i = n - tail; i < n; ++i) B += tr.y[order[i]];
  B /= static_cast<double>(tail);
  const double A = tr.y[order[0]] - B;
  const double span = tr.t[order[n - 1]] - tr.t[order[0]];

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double d = (tr.y[order[k]] - B) / A;
    if (d > 0.2 && d <= 1.5) {
      const double x = tr.t[order[k]], yv = std::log(d);
      sx += x, sy += yv, sxx += x * x, sxy += x * yv;
      ++m;
    }
  }
  double T1 = span / 3.0;
  if (m >= 3) {
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    if (slope < 0.0 && std::isfinite(slope)) T1 = -1.0 / slope;
  }
  if (!(T1 > 0.0)) T1 = std::max(span, 1e-9);
  return {A, T1, B};
}

inline FitResult best_of(std::vector<FitResult> rs) {
  std::sort(rs.begin(), rs.end(), [](const FitResult& a, const FitResult& b) {
    if (a.converged != b.converged) return a.converged;
    return a.rss < b.rss;
  });
  return rs.front();
}

}  // namespace detail

inline FitResult fit_decay(const Trace& tr, DecayModel model, const LmOptions& opt = {}) {
  detail::check_trace(tr, 8, "fit_decay");
  const auto g = detail::guess_decay(tr);
  FitResult result;
  switch (model) {
    case DecayModel::simple: {
      std::vector<ParamSpec> specs{{"A", g.A}, {"T1", g.T1, Transform::log}, {"B", g.B}};
      auto f = detail::residuals_for(tr, [](double t, const Eigen::VectorXd& p) {
        return simple_decay(t, p[0], p[1], p[2]);
      });
      result = make_result("simple", specs, levenberg_marquardt(f, specs, opt));
      break;
    }
    case DecayModel::stretched: {
      auto f = detail::residuals_for(tr, [](double t, const Eigen::VectorXd& p) {
        return stretched_decay(t, p[0], p[1], p[2], p[3]);
      });
      std::vector<FitResult> tries;
      for (double n0 : {1.0, 0.6, 1.6}) {
        std::vector<ParamSpec> specs{{"A", g.A}, {"T1", g.T1, Transform::log}, {"n", n0, Transform::log}, {"B", g.B}};
        tries.push_back(make_result("stretched", specs, levenberg_marquardt(f, specs, opt)));
      }
      result = detail::best_of(std::move(tries));
      break;
    }
    case DecayModel::double_exp: {
      auto f = detail::residuals_for(tr, [](double t, const Eigen::VectorXd& p) {
        return double_exp_decay(t, p[0], p[1], p[2], p[3], p[4]);
      });
      std::vector<FitResult> tries;
      for (double nqp : {0.2, 1.0, 3.0}) {
        for (double frac : {0.05, 0.2}) {
          // The slow rate is bounded by the late-time decay, so start T1 long.
          std::vector<ParamSpec> specs{{"A", g.A},
                                       {"n_qp", nqp, Transform::log},
                                       {"T1_qp", frac * g.T1 * 4.0, Transform::log},
                                       {"T1", g.T1 * 1.5, Transform::log},
                                       {"B", g.B}};
          try {
            tries.push_back(make_result("double_exp", specs, levenberg_marquardt(f, specs, opt)));
          } catch (const InvalidArgument&) {
          }
        }
      }
      if (tries.empty()) throw ConvergenceError("fit_decay: double_exp failed from every start");
      result = detail::best_of(std::move(tries));
      break;
    }
  }
  require_converged(result);
  return result;
}

// Discrete Fourier amplitude of the mean-removed trace at angular frequency w.
inline double fourier_amplitude(const Trace& tr, double w, double mean) {
  std::complex<double> s{0.0, 0.0};
  for (std::size_t i = 0; i < tr.size(); ++i) s += (tr.y[i] - mean) * std::polar(1.0, -w * tr.t[i]);
  return std::abs(s);
}

// Ramsey-type fit. The starting frequency comes from the DFT peak with parabolic refinement;
// the starting amplitude and phase from a linear least-squares solve at that frequency.
inline FitResult fit_oscillatory_decay(const Trace& tr, const LmOptions& opt = {}) {
  detail::check_trace(tr, 16, "fit_oscillatory_decay");
  const auto [tmin_it, tmax_it] = std::minmax_element(tr.t.begin(), tr.t.end());
  const double span = *tmax_it - *tmin_it;
  std::vector<double> ts = tr.t;
  std::sort(ts.begin(), ts.end());
  double dt_min = span;
  for (std::size_t i = 1; i < ts.size(); ++i)
    if (ts[i] > ts[i - 1]) dt_min = std::min(dt_min, ts[i] - ts[i - 1]);
  const double mean = std::accumulate(tr.y.begin(), tr.y.end(), 0.0) / static_cast<double>(tr.size());

  // Oversampled periodogram from one cycle per span to Nyquist.
  const double w_step = units::two_pi / span / 8.0;
  const double w_nyq = units::pi / dt_min;
  std::vector<double> ws, amp;
  for (double w = w_step; w <= w_nyq; w += w_step) {
    ws.push_back(w);
    amp.push_back(fourier_amplitude(tr, w, mean));
  }
  if (ws.size() < 3) throw InvalidArgument("fit_oscillatory_decay: trace too short for a spectrum");
  // Skip the low-frequency skirt of the decay envelope: start after one full cycle per span.
  const std::size_t first = 8;
  std::size_t k = first;
  for (std::size_t i = first; i < amp.size(); ++i)
    if (amp[i] > amp[k]) k = i;
  std::vector<double> sorted_amp(amp.begin() + static_cast<long>(first), amp.end());
  std::nth_element(sorted_amp.begin(), sorted_amp.begin() + static_cast<long>(sorted_amp.size() / 2), sorted_amp.end());
  const double floor = sorted_amp[sorted_amp.size() / 2];
  double yscale = 0.0;
  for (double y : tr.y) yscale = std::max(yscale, std::abs(y - mean));
  if (!(amp[k] > 4.0 * floor) || amp[k] < 1e-9 * yscale * static_cast<double>(tr.size()) || yscale == 0.0)
    throw InvalidArgument("fit_oscillatory_decay: no spectral peak above the noise floor");
  double w0 = ws[k];
  if (k > 0 && k + 1 < amp.size()) {
    const double a = amp[k - 1], b = amp[k], c = amp[k + 1];
    const double den = a - 2.0 * b + c;
    if (den < 0.0) w0 += 0.5 * (a - c) / den * w_step;
  }

  std::vector<FitResult> tries;
  for (double t2_frac : {0.25, 0.6}) {
    const double T2 = t2_frac * span;
    // Linear solve for a cos + b sin + c under an exponential envelope.
    Eigen::MatrixXd M(static_cast<Eigen::Index>(tr.size()), 3);
    Eigen::VectorXd Y(static_cast<Eigen::Index>(tr.size()));
    for (std::size_t i = 0; i < tr.size(); ++i) {
      const double env = std::exp(-tr.t[i] / T2);
      const auto ii = static_cast<Eigen::Index>(i);
      M(ii, 0) = std::cos(w0 * tr.t[i]) * env;
      M(ii, 1) = std::sin(w0 * tr.t[i]) * env;
      M(ii, 2) = 1.0;
      Y[ii] = tr.y[i];
    }
    const Eigen::Vector3d abc = M.colPivHouseholderQr().solve(Y);
    const double A0 = std::hypot(abc[0], abc[1]);
    const double phi0 = std::atan2(-abc[1], abc[0]);
    for (double n0 : {1.0, 2.0}) {
      std::vector<ParamSpec> specs{{"A", A0},
                                   {"omega", w0, Transform::log},
                                   {"phi", phi0},
                                   {"T2", T2, Transform::log},
                                   {"n", n0, Transform::log},
                                   {"B", abc[2]}};
      auto f = detail::residuals_for(tr, [](double t, const Eigen::VectorXd& p) {
        return oscillatory_decay(t, p[0], p[1], p[2], p[3], p[4], p[5]);
      });
      try {
        tries.push_back(make_result("oscillatory", specs, levenberg_marquardt(f, specs, opt)));
      } catch (const InvalidArgument&) {
      }
    }
  }
  if (tries.empty()) throw ConvergenceError("fit_oscillatory_decay: every start failed");
  auto best = detail::best_of(std::move(tries));
  // Canonical sign: positive amplitude, phase wrapped to (-pi, pi].
  auto& A = best.params[best.index_of("A")];
  auto& phi = best.params[best.index_of("phi")];
  if (A < 0.0) {
    A = -A;
    phi += units::pi;
  }
  phi = std::remainder(phi, units::two_pi);
  best.derived["frequency"] = best.value("omega") / units::two_pi;
  require_converged(best);
  return best;
}

struct RateDifference {
  double rate = 0.0;
  bool negative = false;
};

// 1/T1_direct - 1/T1_swap: the extra relaxation present only under direct drive.
inline RateDifference qp_rate_difference(double t1_direct, double t1_swap) {
  if (!(t1_direct > 0.0) || !(t1_swap > 0.0))
    throw InvalidArgument("qp_rate_difference: lifetimes must be positive");
  RateDifference d;
  d.rate = 1.0 / t1_direct - 1.0 / t1_swap;
  d.negative = d.rate < 0.0;
  return d;
}

}  // namespace tlsbath::fit
