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
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "tlsbath/core/error.hpp"

namespace tlsbath::quantum {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline Matrix identity(Eigen::Index n) { return Matrix::Identity(n, n); }

// Truncated lowering operator on n levels.
inline Matrix destroy(Eigen::Index n) {
  Matrix a = Matrix::Zero(n, n);
  for (Eigen::Index k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}
inline Matrix create(Eigen::Index n) { return destroy(n).adjoint(); }
inline Matrix number(Eigen::Index n) {
  Matrix m = Matrix::Zero(n, n);
  for (Eigen::Index k = 0; k < n; ++k) m(k, k) = static_cast<double>(k);
  return m;
}

inline Matrix sigma_minus() { return destroy(2); }
inline Matrix sigma_plus() { return create(2); }
inline Matrix sigma_z() {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = -1.0;  // ground
  z(1, 1) = 1.0;   // excited
  return z;
}
inline Matrix sigma_x() { return sigma_plus() + sigma_minus(); }

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Embeds a single-mode operator at position `which` of a tensor product with the given dims.
inline Matrix embed(const Matrix& op, std::size_t which, const std::vector<Eigen::Index>& dims) {
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t k = 0; k < dims.size(); ++k) out = kron(out, k == which ? op : identity(dims[k]));
  return out;
}

inline bool is_hermitian(const Matrix& h, double rel_tol = 1e-12) {
  if (h.rows() != h.cols()) return false;
  const double scale = std::max(h.norm(), 1e-300);
  return (h - h.adjoint()).norm() <= rel_tol * scale;
}

inline void require_hermitian(const Matrix& h, const char* who) {
  if (!is_hermitian(h)) throw InvalidArgument(std::string(who) + ": Hamiltonian is not Hermitian");
}

// Unit trace and positive semidefinite within the given tolerances.
inline void require_density_matrix(const Matrix& rho, const char* who, double tol = 1e-10) {
  if (rho.rows() != rho.cols()) throw InvalidArgument(std::string(who) + ": density matrix must be square");
  if (std::abs(rho.trace() - 1.0) > tol) throw InvalidArgument(std::string(who) + ": density matrix trace is not 1");
  if (!is_hermitian(rho, 1e-10)) throw InvalidArgument(std::string(who) + ": density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw InvalidArgument(std::string(who) + ": density matrix is not positive");
}

inline Matrix projector(const Vector& psi) { return psi * psi.adjoint(); }

inline Vector basis(Eigen::Index dim, Eigen::Index k) {
  Vector v = Vector::Zero(dim);
  v[k] = 1.0;
  return v;
}

inline double expectation(const Matrix& rho, const Matrix& op) { return (rho * op).trace().real(); }

}  // namespace tlsbath::quantum
