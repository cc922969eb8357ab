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
#include <string>
#include <vector>

#include "tlsbath/quantum/operators.hpp"

namespace tlsbath::quantum {

struct Collapse {
  double rate = 0.0;  // 1/us
  Matrix op;
};

// Column-stacked Lindbladian: vec(drho/dt) = L vec(rho).
inline Matrix lindbladian(const Matrix& h, const std::vector<Collapse>& collapse) {
  const Eigen::Index d = h.rows();
  const Matrix id = identity(d);
  const cplx i(0.0, 1.0);
  // vec(A X B) = (B^T kron A) vec(X)
  Matrix l = -i * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& c : collapse) {
    if (c.rate == 0.0) continue;
    const Matrix ldl = c.op.adjoint() * c.op;
    l += c.rate * (kron(c.op.conjugate(), c.op) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
  }
  return l;
}

inline Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }
inline Matrix unvec(const Vector& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

namespace detail {

// Fourth-order Taylor (RK4) step operator for a time-independent generator.
inline Matrix rk4_step(const Matrix& l, double h) {
  const Matrix hl = h * l;
  Matrix term = Matrix::Identity(l.rows(), l.cols());
  Matrix out = term;
  for (int k = 1; k <= 4; ++k) {
    term = term * hl / static_cast<double>(k);
    out += term;
  }
  return out;
}

inline Matrix matrix_power(Matrix base, std::size_t n) {
  Matrix out = Matrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1U) out = out * base;
    n >>= 1U;
    if (n > 0) base = base * base;
  }
  return out;
}

inline double infinity_norm(const Matrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

}  // namespace detail

// Superoperator advancing vec(rho) by t_us: n RK4 steps with h ||L|| < 0.05 and h <= max_step_us.
inline Matrix lindblad_step_operator(const Matrix& l, double t_us, double max_step_us) {
  if (t_us == 0.0) return Matrix::Identity(l.rows(), l.cols());
  const double norm = detail::infinity_norm(l);
  double h = std::min(max_step_us, norm > 0.0 ? 0.05 / norm : t_us);
  const auto n = static_cast<std::size_t>(std::ceil(t_us / h - 1e-12));
  h = t_us / static_cast<double>(std::max<std::size_t>(n, 1));
  return detail::matrix_power(detail::rk4_step(l, h), std::max<std::size_t>(n, 1));
}

// Exact unitary exp(-i H t) from the Hermitian eigendecomposition.
inline Matrix unitary(const Matrix& h, double t_us) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const Eigen::VectorXd& e = es.eigenvalues();
  Vector phase(e.size());
  for (Eigen::Index k = 0; k < e.size(); ++k) phase[k] = std::exp(cplx(0.0, -e[k] * t_us));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

// Propagates rho0 for t_ns under H (rad/us) and the collapse channels. dt_ns bounds the
// integration step; it is refined further so that dt ||L|| < 0.05.
inline Matrix lindblad_propagate(const Matrix& h, const std::vector<Collapse>& collapse, const Matrix& rho0, double t_ns,
                                 double dt_ns) {
  require_hermitian(h, "lindblad_propagate");
  if (rho0.rows() != h.rows() || rho0.cols() != h.cols()) throw InvalidArgument("lindblad_propagate: dimension mismatch");
  for (const auto& c : collapse) {
    if (c.op.rows() != h.rows() || c.op.cols() != h.cols())
      throw InvalidArgument("lindblad_propagate: collapse operator dimension mismatch");
    if (!(c.rate >= 0.0)) throw InvalidArgument("lindblad_propagate: rates must be >= 0");
  }
  if (!(dt_ns > 0.0)) throw InvalidArgument("lindblad_propagate: dt must be positive");
  if (!(t_ns >= 0.0)) throw InvalidArgument("lindblad_propagate: t must be >= 0");
  require_density_matrix(rho0, "lindblad_propagate");
  const Matrix step = lindblad_step_operator(lindbladian(h, collapse), t_ns * 1e-3, dt_ns * 1e-3);
  return unvec(step * vec(rho0), h.rows());
}

}  // namespace tlsbath::quantum
