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
#include <random>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>

#include "tlsbath/core/error.hpp"
#include "tlsbath/core/stats.hpp"
#include "tlsbath/fit/fit_result.hpp"

namespace tlsbath::fit {

enum class CdfModel { normal, exponential, lognormal };

inline const char* to_string(CdfModel m) {
  switch (m) {
    case CdfModel::normal: return "normal";
    case CdfModel::exponential: return "exponential";
    default: return "lognormal";
  }
}

inline double cdf_normal(double x, double mu, double sigma) {
  return 0.5 * (1.0 + std::erf((x - mu) / (std::sqrt(2.0) * sigma)));
}
inline double cdf_exponential(double x, double lambda) { return x <= 0.0 ? 0.0 : -std::expm1(-lambda * x); }
inline double cdf_lognormal(double x, double mu, double sigma) {
  return x <= 0.0 ? 0.0 : cdf_normal(std::log(x), mu, sigma);
}

// Empirical CDF with plotting positions (i - 0.5)/n over the sorted samples.
inline Trace empirical_cdf(std::vector<double> samples) {
  std::sort(samples.begin(), samples.end());
  Trace tr;
  const double n = static_cast<double>(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    tr.t.push_back(samples[i]);
    tr.y.push_back((static_cast<double>(i) + 0.5) / n);
  }
  return tr;
}

// Unweighted least-squares fit of a model CDF to the empirical CDF. Reports the fitted
// median (with a delta-method sigma) and the sample skewness.
inline FitResult fit_cdf(std::vector<double> samples, CdfModel model, const LmOptions& opt = {}) {
  std::sort(samples.begin(), samples.end());  // makes the result independent of input order
  if (samples.size() < 5) throw InvalidArgument("fit_cdf: need at least 5 samples");
  if (model == CdfModel::lognormal)
    for (double s : samples)
      if (!(s > 0.0)) throw InvalidArgument("fit_cdf: lognormal needs positive samples");
  const Trace ecdf = empirical_cdf(samples);
  const auto m = stats::mean(samples).value();
  std::vector<double> logs;
  for (double s : samples) logs.push_back(std::log(std::max(s, 1e-300)));
  auto sd = [](const std::vector<double>& v) {
    const double mu = *stats::mean(v);
    double s2 = 0.0;
    for (double x : v) s2 += (x - mu) * (x - mu);
    return std::sqrt(s2 / static_cast<double>(v.size()));
  };

  std::vector<ParamSpec> specs;
  ResidualFn f;
  switch (model) {
    case CdfModel::normal:
      specs = {{"mu", m}, {"sigma", std::max(sd(samples), 1e-12), Transform::log}};
      f = [&ecdf](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(static_cast<Eigen::Index>(ecdf.size()));
        for (std::size_t i = 0; i < ecdf.size(); ++i)
          r[static_cast<Eigen::Index>(i)] = ecdf.y[i] - cdf_normal(ecdf.t[i], p[0], p[1]);
        return r;
      };
      break;
    case CdfModel::exponential:
      if (!(m > 0.0)) throw InvalidArgument("fit_cdf: exponential needs a positive mean");
      specs = {{"lambda", 1.0 / m, Transform::log}};
      f = [&ecdf](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(static_cast<Eigen::Index>(ecdf.size()));
        for (std::size_t i = 0; i < ecdf.size(); ++i)
          r[static_cast<Eigen::Index>(i)] = ecdf.y[i] - cdf_exponential(ecdf.t[i], p[0]);
        return r;
      };
      break;
    case CdfModel::lognormal:
      specs = {{"mu", *stats::mean(logs)}, {"sigma", std::max(sd(logs), 1e-12), Transform::log}};
      f = [&ecdf](const Eigen::VectorXd& p) {
        Eigen::VectorXd r(static_cast<Eigen::Index>(ecdf.size()));
        for (std::size_t i = 0; i < ecdf.size(); ++i)
          r[static_cast<Eigen::Index>(i)] = ecdf.y[i] - cdf_lognormal(ecdf.t[i], p[0], p[1]);
        return r;
      };
      break;
  }
  auto res = make_result(to_string(model), specs, levenberg_marquardt(f, specs, opt));
  require_converged(res);
  switch (model) {
    case CdfModel::normal:
      res.derived["median"] = res.value("mu");
      res.derived["median_sigma"] = res.sigma("mu");
      break;
    case CdfModel::exponential:
      res.derived["median"] = std::log(2.0) / res.value("lambda");
      res.derived["median_sigma"] = std::log(2.0) * res.sigma("lambda") / (res.value("lambda") * res.value("lambda"));
      break;
    case CdfModel::lognormal:
      res.derived["median"] = std::exp(res.value("mu"));
      res.derived["median_sigma"] = std::exp(res.value("mu")) * res.sigma("mu");
      break;
  }
  if (auto s = stats::skewness(samples)) res.derived["skewness"] = *s;
  return res;
}

// Tail integral of the coupling density sqrt(1 - v^2)/v from u = g/g_max to 1.
inline double tls_tail_fraction(double u) {
  if (u >= 1.0) return 0.0;
  if (!(u > 0.0)) throw InvalidArgument("tls_tail_fraction: u must be positive");
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate([](double v) { return std::sqrt(std::max(0.0, 1.0 - v * v)) / v; }, u, 1.0);
}

// Closed form of the same integral, used to cross-check the quadrature.
inline double tls_tail_fraction_closed(double u) {
  if (u >= 1.0) return 0.0;
  const double s = std::sqrt(1.0 - u * u);
  return std::log((1.0 + s) / u) - s;
}

// Expected number of TLS with coupling >= g for density sigma (1/(GHz um^2)), area (um^2)
// and frequency span (GHz).
inline double tls_count_above(double g, double sigma, double g_max, double area, double span) {
  return sigma * area * span * tls_tail_fraction(g / g_max);
}

// Fits the complementary cumulative count of couplings to sigma * A * span * F(g / g_max).
// The count at the i-th smallest sample (0-based) is n - i.
inline FitResult fit_tls_density(std::vector<double> g, double area, double span, const LmOptions& opt = {}) {
  if (g.empty()) throw InvalidArgument("fit_tls_density: empty sample set");
  if (!(area > 0.0) || !(span > 0.0)) throw InvalidArgument("fit_tls_density: area and span must be positive");
  for (double v : g)
    if (!(v > 0.0)) throw InvalidArgument("fit_tls_density: couplings must be positive");
  if (g.size() < 3) throw InvalidArgument("fit_tls_density: need at least 3 couplings");
  std::sort(g.begin(), g.end());
  const double n = static_cast<double>(g.size());
  const double gmax_floor = g.back();
  const double sigma0 = n / (area * span * tls_tail_fraction(g.front() / (1.2 * gmax_floor)));
  std::vector<ParamSpec> specs{{"sigma", sigma0, Transform::log}, {"g_max", 1.2 * gmax_floor, Transform::above, gmax_floor}};
  ResidualFn f = [&g, n, area, span](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(g.size()));
    for (std::size_t i = 0; i < g.size(); ++i)
      r[static_cast<Eigen::Index>(i)] = (n - static_cast<double>(i)) - tls_count_above(g[i], p[0], p[1], area, span);
    return r;
  };
  auto res = make_result("tls_density", specs, levenberg_marquardt(f, specs, opt));
  require_converged(res);
  // Cumulative-count residuals are correlated, so the covariance sigma understates the
  // spread. The counting (Poisson) uncertainty of a density built from n events is sigma/sqrt(n).
  res.derived["sigma_counting"] = res.value("sigma") / std::sqrt(n);
  return res;
}

// Draws couplings from the density sqrt(1 - g^2/g_max^2)/g restricted to [g_min, g_max]
// by inverting the tail fraction.
inline std::vector<double> sample_tls_couplings(std::size_t count, double g_min, double g_max, std::mt19937_64& rng) {
  if (!(g_min > 0.0) || !(g_max > g_min)) throw InvalidArgument("sample_tls_couplings: need 0 < g_min < g_max");
  const double total = tls_tail_fraction_closed(g_min / g_max);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double target = U(rng) * total;  // tail mass above the drawn g
    auto fn = [&](double u) { return tls_tail_fraction_closed(u) - target; };
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t iters = 200;
    const auto [a, b] = boost::math::tools::toms748_solve(fn, g_min / g_max, 1.0, tol, iters);
    out.push_back(0.5 * (a + b) * g_max);
  }
  return out;
}

}  // namespace tlsbath::fit
