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

#include <vector>

#include "tlsbath/core/units.hpp"
#include "tlsbath/quantum/operators.hpp"

namespace tlsbath::quantum {

// Single-excitation transmon-TLS block [[D/2, g], [g, -D/2]] in rad/us, D = w_TLS - w_q.
inline Matrix build_jc_hamiltonian(double delta_mhz, double g_mhz) {
  const double d = units::mhz_to_rad_per_us(delta_mhz), g = units::mhz_to_rad_per_us(g_mhz);
  Matrix h(2, 2);
  h << 0.5 * d, g, g, -0.5 * d;
  return h;
}

// TLS1 - transmon - TLS2 chain, energies relative to the transmon, rad/us.
inline Matrix build_three_mode_hamiltonian(double delta1_mhz, double g1_mhz, double delta2_mhz, double g2_mhz) {
  const auto w = [](double f) { return units::mhz_to_rad_per_us(f); };
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = w(delta1_mhz);
  h(0, 1) = h(1, 0) = w(g1_mhz);
  h(1, 2) = h(2, 1) = w(g2_mhz);
  h(2, 2) = w(delta2_mhz);
  return h;
}

// Eigenfrequencies of a Hamiltonian in rad/us, returned in MHz, ascending.
inline std::vector<double> eigenfrequencies_mhz(const Matrix& h) {
  require_hermitian(h, "eigenfrequencies_mhz");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) out.push_back(units::rad_per_us_to_mhz(es.eigenvalues()[i]));
  return out;
}

// sqrt(D^2 + 4 g^2), the vacuum-Rabi splitting.
inline double jc_splitting_mhz(double delta_mhz, double g_mhz) { return std::hypot(delta_mhz, 2.0 * g_mhz); }

}  // namespace tlsbath::quantum
