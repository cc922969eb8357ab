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
#include <array>
#include <cmath>
#include <complex>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "tlsbath/core/error.hpp"
#include "tlsbath/core/units.hpp"

namespace tlsbath::phonon {

struct Site {
  std::array<double, 2> position{0.0, 0.0};  // fractional coordinates in the cell
  double mass = 1.0;
};

// Spring between site i of cell 0 and site j of cell `offset`. The force tensor is
// k_long n n^T + k_trans (1 - n n^T) for bond direction n.
struct Spring {
  std::size_t i = 0;
  std::size_t j = 0;
  std::array<int, 2> offset{0, 0};
  double k_long = 1.0;
  double k_trans = 1.0;
};

// Square-lattice mass-spring cell with two in-plane displacement components per site.
// Eigenvalues of the dynamical matrix are (rad/ns)^2, so stiffness/mass sets GHz scales.
struct UnitCell {
  std::string name;
  double lattice_constant = 1.0;
  std::vector<Site> sites;
  std::vector<Spring> springs;
  std::vector<double> mass_loading;  // per site, added to the bare mass; empty means none

  double effective_mass(std::size_t s) const {
    return sites[s].mass + (mass_loading.empty() ? 0.0 : mass_loading[s]);
  }
};

namespace detail {

inline std::size_t find_root(std::vector<std::size_t>& parent, std::size_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace detail

inline void validate(const UnitCell& c) {
  if (!(c.lattice_constant > 0.0)) throw InvalidArgument("unit cell: lattice constant must be positive");
  if (c.sites.empty()) throw InvalidArgument("unit cell: no sites");
  if (!c.mass_loading.empty() && c.mass_loading.size() != c.sites.size())
    throw InvalidArgument("unit cell: mass_loading needs one entry per site");
  for (std::size_t s = 0; s < c.sites.size(); ++s) {
    if (!(c.sites[s].mass > 0.0)) throw InvalidArgument("unit cell: masses must be positive");
    if (!(c.effective_mass(s) > 0.0)) throw InvalidArgument("unit cell: loaded masses must be positive");
  }
  if (c.springs.empty()) throw InvalidArgument("unit cell: no springs");
  std::vector<std::size_t> parent(c.sites.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  for (const auto& sp : c.springs) {
    if (sp.i >= c.sites.size() || sp.j >= c.sites.size()) throw InvalidArgument("unit cell: spring site out of range");
    if (!(sp.k_long > 0.0) || !(sp.k_trans >= 0.0)) throw InvalidArgument("unit cell: stiffnesses must be positive");
    const double dx = c.sites[sp.j].position[0] + sp.offset[0] - c.sites[sp.i].position[0];
    const double dy = c.sites[sp.j].position[1] + sp.offset[1] - c.sites[sp.i].position[1];
    if (std::hypot(dx, dy) < 1e-12) throw InvalidArgument("unit cell: zero-length spring");
    parent[detail::find_root(parent, sp.i)] = detail::find_root(parent, sp.j);
  }
  const auto root = detail::find_root(parent, 0);
  for (std::size_t s = 1; s < c.sites.size(); ++s)
    if (detail::find_root(parent, s) != root) throw InvalidArgument("unit cell: spring graph is disconnected");
}

struct KPoint {
  std::size_t ix = 0, iy = 0;
  double kx = 0.0, ky = 0.0;  // 1/length
};

// Quarter-zone sampling kx, ky in [0, pi/a] with N points per axis.
struct BandStructure {
  std::size_t n = 0;
  double lattice_constant = 1.0;
  std::vector<KPoint> k_points;
  std::vector<std::vector<double>> bands;  // GHz, ascending, one row per k-point

  std::size_t band_count() const { return bands.empty() ? 0 : bands.front().size(); }
};

// Hermitian dynamical matrix at wavevector (kx, ky).
inline Eigen::MatrixXcd dynamical_matrix(const UnitCell& c, double kx, double ky) {
  const auto ns = static_cast<Eigen::Index>(c.sites.size());
  Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(2 * ns, 2 * ns);
  for (const auto& sp : c.springs) {
    const double dx = c.sites[sp.j].position[0] + sp.offset[0] - c.sites[sp.i].position[0];
    const double dy = c.sites[sp.j].position[1] + sp.offset[1] - c.sites[sp.i].position[1];
    const double len = std::hypot(dx, dy);
    Eigen::Vector2d n(dx / len, dy / len);
    const Eigen::Matrix2d K = sp.k_long * n * n.transpose() + sp.k_trans * (Eigen::Matrix2d::Identity() - n * n.transpose());
    const double mi = c.effective_mass(sp.i), mj = c.effective_mass(sp.j);
    const std::complex<double> phase =
        std::exp(std::complex<double>(0.0, (kx * sp.offset[0] + ky * sp.offset[1]) * c.lattice_constant));
    const auto bi = 2 * static_cast<Eigen::Index>(sp.i), bj = 2 * static_cast<Eigen::Index>(sp.j);
    D.block(bi, bi, 2, 2) += (K / mi).cast<std::complex<double>>();
    D.block(bj, bj, 2, 2) += (K / mj).cast<std::complex<double>>();
    const Eigen::Matrix2cd off = -(K / std::sqrt(mi * mj)).cast<std::complex<double>>() * phase;
    D.block(bi, bj, 2, 2) += off;
    D.block(bj, bi, 2, 2) += off.adjoint();
  }
  return D;
}

// Frequencies (GHz) at one wavevector, ascending.
inline std::vector<double> frequencies_at(const UnitCell& c, double kx, double ky) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dynamical_matrix(c, kx, ky), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& lam = es.eigenvalues();
  const double scale = std::max(1.0, lam.cwiseAbs().maxCoeff());
  std::vector<double> f;
  f.reserve(static_cast<std::size_t>(lam.size()));
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    double l = lam[i];
    if (l < -1e-9 * scale) throw InvalidArgument("dynamical matrix is not positive semidefinite");
    if (l < 1e-12 * scale) l = 0.0;  // rounding noise of the rigid-translation modes
    f.push_back(std::sqrt(l) / units::two_pi);
  }
  std::sort(f.begin(), f.end());
  return f;
}

inline BandStructure compute_band_structure(const UnitCell& c, std::size_t n) {
  if (n < 2) throw InvalidArgument("compute_band_structure: need N >= 2");
  validate(c);
  BandStructure bs;
  bs.n = n;
  bs.lattice_constant = c.lattice_constant;
  const double kmax = units::pi / c.lattice_constant;
  for (std::size_t iy = 0; iy < n; ++iy)
    for (std::size_t ix = 0; ix < n; ++ix) {
      KPoint k{ix, iy, kmax * static_cast<double>(ix) / static_cast<double>(n - 1),
               kmax * static_cast<double>(iy) / static_cast<double>(n - 1)};
      bs.bands.push_back(frequencies_at(c, k.kx, k.ky));
      bs.k_points.push_back(k);
    }
  return bs;
}

// Monatomic square lattice with isotropic nearest-neighbour springs.
inline UnitCell monatomic_square(double mass, double k) {
  UnitCell c;
  c.name = "monatomic";
  c.sites = {{{0.0, 0.0}, mass}};
  c.springs = {{0, 0, {1, 0}, k, k}, {0, 0, {0, 1}, k, k}};
  return c;
}

// Closed-form dispersion of monatomic_square: 2 sqrt(k/m) sqrt(sin^2(kx a/2) + sin^2(ky a/2)).
inline double monatomic_frequency(double mass, double k, double kx, double ky, double a = 1.0) {
  const double sx = std::sin(kx * a / 2.0), sy = std::sin(ky * a / 2.0);
  return 2.0 * std::sqrt(k / mass) * std::sqrt(sx * sx + sy * sy) / units::two_pi;
}

// ---- JSON ----

inline UnitCell unit_cell_from_json(const nlohmann::json& j) {
  static const std::set<std::string> allowed{"name", "description", "lattice_constant", "sites", "springs",
                                              "mass_loading", "loading_nm"};
  if (!j.is_object()) throw SchemaError("unit cell: expected a JSON object");
  for (const auto& [key, _] : j.items())
    if (!allowed.count(key)) throw SchemaError("unit cell: unknown key '" + key + "'");
  try {
    UnitCell c;
    c.name = j.value("name", std::string{});
    c.lattice_constant = j.value("lattice_constant", 1.0);
    for (const auto& s : j.at("sites")) {
      for (const auto& [key, _] : s.items())
        if (key != "position" && key != "mass") throw SchemaError("unit cell site: unknown key '" + key + "'");
      c.sites.push_back({s.at("position").get<std::array<double, 2>>(), s.at("mass").get<double>()});
    }
    for (const auto& s : j.at("springs")) {
      Spring sp;
      for (const auto& [key, _] : s.items())
        if (key != "i" && key != "j" && key != "offset" && key != "stiffness" && key != "k_long" && key != "k_trans")
          throw SchemaError("unit cell spring: unknown key '" + key + "'");
      sp.i = s.at("i").get<std::size_t>();
      sp.j = s.at("j").get<std::size_t>();
      sp.offset = s.value("offset", std::array<int, 2>{0, 0});
      if (s.contains("stiffness")) {
        sp.k_long = sp.k_trans = s.at("stiffness").get<double>();
      } else {
        sp.k_long = s.at("k_long").get<double>();
        sp.k_trans = s.value("k_trans", sp.k_long);
      }
      c.springs.push_back(sp);
    }
    if (j.contains("mass_loading")) c.mass_loading = j.at("mass_loading").get<std::vector<double>>();
    validate(c);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("unit cell: ") + e.what());
  }
}

inline nlohmann::json to_json(const UnitCell& c) {
  nlohmann::json j;
  j["name"] = c.name;
  j["lattice_constant"] = c.lattice_constant;
  for (const auto& s : c.sites) j["sites"].push_back({{"position", s.position}, {"mass", s.mass}});
  for (const auto& sp : c.springs)
    j["springs"].push_back({{"i", sp.i}, {"j", sp.j}, {"offset", sp.offset}, {"k_long", sp.k_long}, {"k_trans", sp.k_trans}});
  if (!c.mass_loading.empty()) j["mass_loading"] = c.mass_loading;
  return j;
}

inline UnitCell load_unit_cell(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open unit cell file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("unit cell: ") + e.what(), 0);
  }
  return unit_cell_from_json(j);
}

// One row per k-point: ix, iy, kx, ky, then every band in GHz.
inline void write_band_structure_csv(std::ostream& os, const BandStructure& bs) {
  os << "ix,iy,kx,ky";
  for (std::size_t b = 0; b < bs.band_count(); ++b) os << ",band" << b;
  os << '\n';
  os.precision(12);
  for (std::size_t p = 0; p < bs.k_points.size(); ++p) {
    const auto& k = bs.k_points[p];
    os << k.ix << ',' << k.iy << ',' << k.kx << ',' << k.ky;
    for (double f : bs.bands[p]) os << ',' << f;
    os << '\n';
  }
}

}  // namespace tlsbath::phonon
