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
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "tlsbath/core/error.hpp"
#include "tlsbath/fit/fit_result.hpp"
#include "tlsbath/loss/models.hpp"

namespace tlsbath::fit {

// Quality factors against temperature for one mode.
struct QCurve {
  double omega_ghz = 0.0;
  std::vector<double> t_kelvin;
  std::vector<double> q;
};

inline void check_curve(const QCurve& c, std::size_t min_points, const char* who) {
  if (c.t_kelvin.size() != c.q.size()) throw InvalidArgument(std::string(who) + ": length mismatch");
  if (c.t_kelvin.size() < min_points) throw InvalidArgument(std::string(who) + ": too few points");
  for (std::size_t i = 0; i < c.q.size(); ++i)
    if (!(c.q[i] > 0.0) || !(c.t_kelvin[i] > 0.0))
      throw InvalidArgument(std::string(who) + ": temperatures and Q must be positive");
}

// Fits the QP amplitude of Q = w / Gamma(T) in log space to points with T >= t_min.
inline FitResult fit_qp_branch(const QCurve& c, double t_min, double delta0 = units::aluminium_gap_kelvin,
                               const LmOptions& opt = {}) {
  check_curve(c, 1, "fit_qp_branch");
  std::vector<std::size_t> use;
  for (std::size_t i = 0; i < c.q.size(); ++i)
    if (c.t_kelvin[i] >= t_min) use.push_back(i);
  if (use.empty()) throw InvalidArgument("fit_qp_branch: no points above t_min");
  // Closed-form start: mean log offset.
  double s = 0.0;
  for (auto i : use) s += std::log(units::ghz_to_rad_per_us(c.omega_ghz) / c.q[i]) -
                          loss::log_tls_qp_rate(c.omega_ghz, c.t_kelvin[i], 1.0, delta0);
  const double amp0 = std::exp(s / static_cast<double>(use.size()));
  std::vector<ParamSpec> specs{{"amplitude", amp0, Transform::log}};
  ResidualFn f = [&c, use, delta0](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(use.size()));
    for (std::size_t k = 0; k < use.size(); ++k) {
      const auto i = use[k];
      r[static_cast<Eigen::Index>(k)] =
          std::log(c.q[i]) - std::log(loss::tls_qp_quality(c.omega_ghz, c.t_kelvin[i], p[0], delta0));
    }
    return r;
  };
  auto res = make_result("qp_branch", specs, levenberg_marquardt(f, specs, opt));
  require_converged(res);
  return res;
}

// Temperature at which the QP channel alone yields quality factor q.
inline double invert_qp_temperature(double q, double omega_ghz, double amplitude,
                                    double delta0 = units::aluminium_gap_kelvin) {
  if (!(q > 0.0)) throw InvalidArgument("invert_qp_temperature: Q must be positive");
  const double target = std::log(units::ghz_to_rad_per_us(omega_ghz) / q);
  auto fn = [&](double t) { return loss::log_tls_qp_rate(omega_ghz, t, amplitude, delta0) - target; };
  double lo = 1e-3, hi = 5.0;
  if (fn(lo) > 0.0 || fn(hi) < 0.0) throw InvalidArgument("invert_qp_temperature: Q outside the model range");
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(fn, lo, hi, tol, iters);
  return 0.5 * (a + b);
}

// Fits T_eff = A sqrt(1 + B tanh(C/T)) / tanh(C/T) to (T_mxc, T_eff) pairs.
inline FitResult fit_effective_temperature(const std::vector<double>& t_mxc, const std::vector<double>& t_eff,
                                           const LmOptions& opt = {}) {
  if (t_mxc.size() != t_eff.size() || t_mxc.size() < 4)
    throw InvalidArgument("fit_effective_temperature: need at least 4 matched points");
  const double t_low = *std::min_element(t_eff.begin(), t_eff.end());
  const double t_max = *std::max_element(t_mxc.begin(), t_mxc.end());
  std::vector<FitResult> tries;
  for (double b0 : {0.1, 1.0, 5.0}) {
    std::vector<ParamSpec> specs{{"A", t_low / std::sqrt(1.0 + b0), Transform::log},
                                 {"B", b0, Transform::log},
                                 {"C", 0.5 * t_max, Transform::log}};
    ResidualFn f = [&](const Eigen::VectorXd& p) {
      Eigen::VectorXd r(static_cast<Eigen::Index>(t_mxc.size()));
      for (std::size_t i = 0; i < t_mxc.size(); ++i)
        r[static_cast<Eigen::Index>(i)] = t_eff[i] - loss::effective_temperature(t_mxc[i], {p[0], p[1], p[2]});
      return r;
    };
    try {
      tries.push_back(make_result("effective_temperature", specs, levenberg_marquardt(f, specs, opt)));
    } catch (const InvalidArgument&) {
    }
  }
  if (tries.empty()) throw ConvergenceError("fit_effective_temperature: every start failed");
  std::sort(tries.begin(), tries.end(), [](const auto& a, const auto& b) { return a.rss < b.rss; });
  auto best = tries.front();
  require_converged(best);
  best.derived["saturation"] = best.value("A") * std::sqrt(1.0 + best.value("B"));
  return best;
}

struct SaturationAnalysis {
  FitResult qp_branch;
  FitResult teff;
  std::vector<double> t_eff;
  double saturation_kelvin = 0.0;
};

// QP-branch fit on the warm points, inversion of every point to an effective temperature,
// then the T_eff model fit. The plateau of T_eff is the QP saturation temperature.
inline SaturationAnalysis analyse_qp_saturation(const QCurve& c, double t_branch_min,
                                                double delta0 = units::aluminium_gap_kelvin) {
  SaturationAnalysis s;
  s.qp_branch = fit_qp_branch(c, t_branch_min, delta0);
  const double amp = s.qp_branch.value("amplitude");
  for (double q : c.q) s.t_eff.push_back(invert_qp_temperature(q, c.omega_ghz, amp, delta0));
  s.teff = fit_effective_temperature(c.t_kelvin, s.t_eff);
  s.saturation_kelvin = s.teff.derived.at("saturation");
  return s;
}

// Fits Q_TLS0, Q_QP0 and Q_other of the transmon model with the remaining parameters held.
inline FitResult fit_q_model(const QCurve& c, loss::QModelParams base, const LmOptions& opt = {}) {
  check_curve(c, 4, "fit_q_model");
  std::vector<ParamSpec> specs{{"q_tls0", base.q_tls0, Transform::log},
                               {"q_qp0", base.q_qp0, Transform::log},
                               {"q_other", base.q_other, Transform::log}};
  ResidualFn f = [&c, base](const Eigen::VectorXd& p) {
    auto m = base;
    m.q_tls0 = p[0];
    m.q_qp0 = p[1];
    m.q_other = p[2];
    Eigen::VectorXd r(static_cast<Eigen::Index>(c.q.size()));
    for (std::size_t i = 0; i < c.q.size(); ++i)
      r[static_cast<Eigen::Index>(i)] = std::log(c.q[i]) - std::log(loss::q_total(c.omega_ghz, c.t_kelvin[i], m));
    return r;
  };
  auto res = make_result("q_total", specs, levenberg_marquardt(f, specs, opt));
  require_converged(res);
  return res;
}

}  // namespace tlsbath::fit
