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

#include <array>
#include <string>

#include "tlsbath/phonon/lattice.hpp"

namespace tlsbath::phonon {

// Parameters of the cross-shield surrogate: a heavy centre block joined to its four
// neighbours through light bridge masses. Loading is added mass per nm of Al film.
struct CrossShieldParams {
  double stiffness = 1000.0;  // (rad/ns)^2 per unit mass
  double centre_mass = 3.7;
  double bridge_mass = 1.0;
  double centre_load_per_nm = 0.0;
  double bridge_load_per_nm = 0.0;
};

inline UnitCell cross_shield_cell(const CrossShieldParams& p, double loading_nm) {
  UnitCell c;
  c.name = "cross_shield_" + std::to_string(static_cast<int>(loading_nm)) + "nm";
  c.sites = {{{0.0, 0.0}, p.centre_mass}, {{0.5, 0.0}, p.bridge_mass}, {{0.0, 0.5}, p.bridge_mass}};
  const double k = p.stiffness;
  c.springs = {{0, 1, {0, 0}, k, k}, {1, 0, {1, 0}, k, k}, {0, 2, {0, 0}, k, k}, {2, 0, {0, 1}, k, k}};
  c.mass_loading = {p.centre_load_per_nm * loading_nm, p.bridge_load_per_nm * loading_nm,
                    p.bridge_load_per_nm * loading_nm};
  return c;
}

// Film thicknesses of the three simulated loadings and their target gaps (GHz).
inline constexpr std::array<double, 3> surrogate_loadings_nm{0.0, 30.0, 50.0};
inline constexpr std::array<std::array<double, 2>, 3> surrogate_target_gaps{{{4.442, 6.033}, {4.417, 5.979}, {4.389, 5.814}}};

}  // namespace tlsbath::phonon
