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

// Fits the cross-shield surrogate to the three target gaps and writes one JSON cell per loading.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "tlsbath/fit/levenberg_marquardt.hpp"
#include "tlsbath/phonon/dos.hpp"
#include "tlsbath/phonon/surrogate.hpp"

using namespace tlsbath;

namespace {

phonon::CrossShieldParams unpack(const Eigen::VectorXd& p) {
  return {p[0], p[1], 1.0, p[2], p[3]};
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path out_dir = argc > 1 ? argv[1] : "data/cells";
  constexpr std::size_t grid = 17;
  const std::vector<fit::ParamSpec> specs{{"stiffness", 800.0, fit::Transform::log},
                                          {"centre_mass", 3.0, fit::Transform::log},
                                          {"centre_load_per_nm", 1e-3, fit::Transform::log},
                                          {"bridge_load_per_nm", 1e-3, fit::Transform::log}};
  fit::ResidualFn residual = [](const Eigen::VectorXd& p) {
    Eigen::VectorXd r(6);
    for (std::size_t l = 0; l < 3; ++l) {
      const auto cell = phonon::cross_shield_cell(unpack(p), phonon::surrogate_loadings_nm[l]);
      const auto gap = phonon::band_gap_edges(phonon::compute_band_structure(cell, grid));
      const auto& target = phonon::surrogate_target_gaps[l];
      r[static_cast<Eigen::Index>(2 * l)] = gap ? gap->f1 / target[0] - 1.0 : 1.0;
      r[static_cast<Eigen::Index>(2 * l + 1)] = gap ? gap->f2 / target[1] - 1.0 : 1.0;
    }
    return r;
  };
  const auto res = fit::levenberg_marquardt(residual, specs);
  const auto params = unpack(res.params);
  std::printf("stiffness %.6f centre_mass %.6f centre_load %.6g bridge_load %.6g rss %.3e\n", params.stiffness,
              params.centre_mass, params.centre_load_per_nm, params.bridge_load_per_nm, res.rss);
  std::filesystem::create_directories(out_dir);
  for (std::size_t l = 0; l < 3; ++l) {
    const double nm = phonon::surrogate_loadings_nm[l];
    const auto cell = phonon::cross_shield_cell(params, nm);
    const auto gap = phonon::band_gap_edges(phonon::compute_band_structure(cell, grid));
    std::printf("%2.0f nm: gap %.4f - %.4f GHz\n", nm, gap ? gap->f1 : 0.0, gap ? gap->f2 : 0.0);
    auto j = phonon::to_json(cell);
    j["loading_nm"] = nm;
    std::ofstream(out_dir / (cell.name + ".json")) << j.dump(2) << '\n';
  }
  return res.converged ? 0 : 1;
}
