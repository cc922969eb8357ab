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
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlsbath/core/error.hpp"

namespace tlsbath::fit {

// How a parameter is mapped to the unconstrained space the optimizer walks in.
enum class Transform {
  none,   // p = z
  log,    // p = exp(z), p > 0
  above,  // p = floor + exp(z), p > floor
};

struct ParamSpec {
  std::string name;
  double init = 0.0;
  Transform transform = Transform::none;
  double floor = 0.0;  // only for Transform::above
};

struct LmOptions {
  int max_iterations = 2000;
  double gradient_tol = 1e-12;  // relative to the starting gradient
  double step_tol = 1e-14;      // relative step in z
  double rss_floor = 1e-300;
  double lambda0 = 1e-3;
};

struct LmResult {
  Eigen::VectorXd params;      // natural parameters
  Eigen::VectorXd sigmas;      // 1 sigma from s^2 (J^T J)^{-1}
  Eigen::MatrixXd covariance;  // natural parameters
  Eigen::VectorXd residuals;
  double rss = 0.0;
  double initial_gradient_norm = 0.0;
  double final_gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

namespace detail {

inline double to_natural(double z, const ParamSpec& s) {
  switch (s.transform) {
    case Transform::log: return std::exp(z);
    case Transform::above: return s.floor + std::exp(z);
    default: return z;
  }
}

inline double to_internal(double p, const ParamSpec& s) {
  switch (s.transform) {
    case Transform::log:
      if (!(p > 0.0)) throw InvalidArgument("initial value of '" + s.name + "' must be positive");
      return std::log(p);
    case Transform::above:
      if (!(p > s.floor)) throw InvalidArgument("initial value of '" + s.name + "' must exceed its floor");
      return std::log(p - s.floor);
    default: return p;
  }
}

inline Eigen::VectorXd natural(const Eigen::VectorXd& z, const std::vector<ParamSpec>& specs) {
  Eigen::VectorXd p(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) p[i] = to_natural(z[i], specs[i]);
  return p;
}

// Central-difference Jacobian of f with respect to x.
inline Eigen::MatrixXd numeric_jacobian(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& f,
                                        const Eigen::VectorXd& x, Eigen::Index m) {
  Eigen::MatrixXd J(m, x.size());
  Eigen::VectorXd xp = x;
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = 1e-6 * std::max(1.0, std::abs(x[j]));
    xp[j] = x[j] + h;
    const Eigen::VectorXd fp = f(xp);
    xp[j] = x[j] - h;
    const Eigen::VectorXd fm = f(xp);
    xp[j] = x[j];
    J.col(j) = (fp - fm) / (2.0 * h);
  }
  return J;
}

}  // namespace detail

// Damped Gauss-Newton with Marquardt diagonal scaling, walking in transformed coordinates.
inline LmResult levenberg_marquardt(const ResidualFn& residual, const std::vector<ParamSpec>& specs,
                                    const LmOptions& opt = {}) {
  const Eigen::Index np = static_cast<Eigen::Index>(specs.size());
  Eigen::VectorXd z(np);
  for (Eigen::Index i = 0; i < np; ++i) z[i] = detail::to_internal(specs[i].init, specs[i]);

  auto rz = [&](const Eigen::VectorXd& zz) { return residual(detail::natural(zz, specs)); };
  Eigen::VectorXd r = rz(z);
  const Eigen::Index m = r.size();
  if (m < np) throw InvalidArgument("levenberg_marquardt: fewer residuals than parameters");
  if (!r.allFinite()) throw InvalidArgument("levenberg_marquardt: residuals not finite at the initial point");
  double rss = r.squaredNorm();

  LmResult out;
  double lambda = opt.lambda0;
  Eigen::MatrixXd J = detail::numeric_jacobian(rz, z, m);
  Eigen::VectorXd g = J.transpose() * r;
  out.initial_gradient_norm = g.norm();
  bool converged = out.initial_gradient_norm == 0.0 || rss <= opt.rss_floor;
  int it = 0;
  for (; it < opt.max_iterations && !converged; ++it) {
    const Eigen::MatrixXd JtJ = J.transpose() * J;
    Eigen::VectorXd diag = JtJ.diagonal().cwiseMax(1e-30);
    bool accepted = false;
    for (int tries = 0; tries < 60; ++tries) {
      Eigen::MatrixXd A = JtJ;
      A.diagonal() += lambda * diag;
      const Eigen::VectorXd step = A.ldlt().solve(-g);
      if (!step.allFinite()) {
        lambda *= 10.0;
        continue;
      }
      const Eigen::VectorXd zn = z + step;
      const Eigen::VectorXd rn = rz(zn);
      const double rss_n = rn.allFinite() ? rn.squaredNorm() : std::numeric_limits<double>::infinity();
      if (rss_n <= rss) {
        const double rel_step = step.norm() / (z.norm() + 1e-12);
        const double gain = rss - rss_n;
        z = zn;
        r = rn;
        rss = rss_n;
        lambda = std::max(lambda / 3.0, 1e-15);
        accepted = true;
        J = detail::numeric_jacobian(rz, z, m);
        g = J.transpose() * r;
        if (g.norm() <= opt.gradient_tol * out.initial_gradient_norm || rss <= opt.rss_floor ||
            (rel_step < opt.step_tol) || (gain <= 1e-15 * rss && rel_step < 1e-10))
          converged = true;
        break;
      }
      lambda *= 4.0;
      if (lambda > 1e20) break;
    }
    if (!accepted) {
      // No downhill step at any damping: a minimum to working precision.
      converged = true;
      break;
    }
  }

  out.params = detail::natural(z, specs);
  out.residuals = r;
  out.rss = rss;
  out.iterations = it;
  out.converged = converged;
  out.final_gradient_norm = g.norm();

  // Covariance in natural coordinates.
  const Eigen::MatrixXd Jn = detail::numeric_jacobian(residual, out.params, m);
  const double dof = static_cast<double>(std::max<Eigen::Index>(1, m - np));
  const double s2 = rss / dof;
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(Jn.transpose() * Jn);
  out.covariance = s2 * cod.pseudoInverse();
  out.sigmas = out.covariance.diagonal().cwiseMax(0.0).cwiseSqrt();
  return out;
}

}  // namespace tlsbath::fit
