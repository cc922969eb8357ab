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
#include <random>
#include <string>
#include <vector>

#include "tlsbath/core/units.hpp"
#include "tlsbath/quantum/device.hpp"
#include "tlsbath/quantum/lindblad.hpp"
#include "tlsbath/quantum/pulse.hpp"

namespace tlsbath::quantum {

// Fock occupation per mode (transmon first, then each TLS); empty means all ground.
struct InitialState {
  std::vector<int> excitations;
};

struct MeasurePoint {
  double time_ns = 0.0;
  std::string target;
  double population = 0.0;  // noiseless expectation
  double sampled = 0.0;     // with binomial shot noise, equal to population when shots == 0
  double sigma = 0.0;       // binomial standard error
};

struct SimulationResult {
  std::vector<MeasurePoint> points;
  Matrix final_state;
};

// Transmon plus TLS modes in the rotating-wave approximation. Energies are taken relative to a
// frame frequency, which follows the carrier of the most recent XY pulse.
class Simulator {
 public:
  explicit Simulator(DeviceModel device) : d_(std::move(device)) {
    validate(d_);
    dims_.push_back(d_.transmon_levels);
    for (const auto& t : d_.tls) dims_.push_back(t.levels);
    dim_ = 1;
    for (auto n : dims_) dim_ *= n;
    if (dim_ > 64) throw InvalidArgument("simulator: Hilbert space larger than 64 states");
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      lower_.push_back(embed(destroy(dims_[k]), k, dims_));
      num_.push_back(embed(number(dims_[k]), k, dims_));
      Matrix ground = Matrix::Zero(dims_[k], dims_[k]);
      ground(0, 0) = 1.0;
      excited_.push_back(identity(dim_) - embed(ground, k, dims_));
    }
    total_number_ = Matrix::Zero(dim_, dim_);
    for (const auto& n : num_) total_number_ += n;
    anharmonic_ = num_[0] * num_[0] - num_[0];
    add_channels(0, d_.qubit_gamma1, d_.qubit_gamma_phi);
    for (std::size_t k = 0; k < d_.tls.size(); ++k) add_channels(k + 1, d_.tls[k].gamma1, d_.tls[k].gamma_phi);
  }

  const DeviceModel& device() const { return d_; }
  Eigen::Index dimension() const { return dim_; }
  const std::vector<Collapse>& collapse_channels() const { return collapse_; }

  // Hamiltonian (rad/us) at a flux bias in the frame rotating at frame_ghz, optionally driven.
  Matrix hamiltonian(double flux, double frame_ghz, const XYPulse* drive = nullptr) const {
    Matrix h = units::ghz_to_rad_per_us(transmon_freq_at_flux(d_, flux) - frame_ghz) * num_[0];
    h += 0.5 * units::mhz_to_rad_per_us(d_.alpha_mhz) * anharmonic_;
    for (std::size_t k = 0; k < d_.tls.size(); ++k) {
      const auto& t = d_.tls[k];
      h += units::ghz_to_rad_per_us(t.omega_ghz - frame_ghz) * num_[k + 1];
      const Matrix hop = lower_[0].adjoint() * lower_[k + 1];
      h += units::mhz_to_rad_per_us(t.g_mhz) * (hop + hop.adjoint());
    }
    if (drive) {
      const Matrix a = std::exp(cplx(0.0, drive->phase)) * lower_[0];
      h += 0.5 * units::mhz_to_rad_per_us(drive->amplitude_mhz) * (a + a.adjoint());
    }
    return h;
  }

  // Qubit-like 0 -> 1 transition at a flux bias, including the shifts from every coupled TLS.
  double qubit_transition_ghz(double flux) const {
    Eigen::SelfAdjointEigenSolver<Matrix> es(hamiltonian(flux, 0.0));
    Eigen::Index ground = 0, dressed = 0;
    es.eigenvectors().row(0).cwiseAbs2().maxCoeff(&ground);
    const Eigen::Index qubit_state = dim_ / dims_[0];  // |1> on the transmon, TLS in ground
    es.eigenvectors().row(qubit_state).cwiseAbs2().maxCoeff(&dressed);
    return (es.eigenvalues()[dressed] - es.eigenvalues()[ground]) / units::ghz_to_rad_per_us(1.0);
  }

  Matrix initial_density(const InitialState& init) const {
    Eigen::Index index = 0;
    for (std::size_t k = 0; k < dims_.size(); ++k) {
      const int n = k < init.excitations.size() ? init.excitations[k] : 0;
      if (n < 0 || n >= dims_[k]) throw InvalidArgument("simulator: initial occupation outside the truncated space");
      index = index * dims_[k] + n;
    }
    if (!init.excitations.empty() && init.excitations.size() != dims_.size())
      throw InvalidArgument("simulator: initial state needs one occupation per mode");
    return projector(basis(dim_, index));
  }

  std::size_t target_mode(const std::string& target) const {
    if (target == "qubit") return 0;
    if (target.rfind("tls", 0) == 0) {
      const auto k = static_cast<std::size_t>(std::stoul(target.substr(3)));
      if (k < d_.tls.size()) return k + 1;
    }
    throw InvalidArgument("simulator: unknown measure target '" + target + "'");
  }

  double excited_population(const Matrix& rho, std::size_t mode) const {
    return std::clamp(expectation(rho, excited_[mode]), 0.0, 1.0);
  }

  SimulationResult run(const PulseSequence& seq, const InitialState& init = {}, int shots = 0,
                       std::mt19937_64* rng = nullptr) const {
    validate(seq);
    if (shots < 0) throw InvalidArgument("simulator: shots must be >= 0");
    if (shots > 0 && !rng) throw InvalidArgument("simulator: sampling needs a random generator");
    double frame = d_.omega_max_ghz;
    for (const auto& seg : seq.segments)
      if (const auto* xy = std::get_if<XYPulse>(&seg)) {
        frame = xy->freq_ghz;
        break;
      }
    SimulationResult out;
    Matrix rho = initial_density(init);
    double held_flux = 0.0, t_us = 0.0;
    for (const auto& seg : seq.segments) {
      if (const auto* xy = std::get_if<XYPulse>(&seg)) {
        if (!(xy->freq_ghz > 0.0) || xy->freq_ghz > d_.max_frequency_ghz() + 1.0)
          throw InvalidArgument("simulator: pulse frequency outside the simulated band");
        if (xy->freq_ghz != frame) {
          change_frame(rho, xy->freq_ghz - frame, t_us);
          frame = xy->freq_ghz;
        }
        evolve(rho, hamiltonian(held_flux, frame, xy), xy->duration_ns * 1e-3);
        t_us += xy->duration_ns * 1e-3;
      } else if (const auto* z = std::get_if<ZPulse>(&seg)) {
        if (z->duration_ns == 0.0) {
          held_flux = z->flux;
        } else {
          evolve(rho, hamiltonian(z->flux, frame), z->duration_ns * 1e-3);
          t_us += z->duration_ns * 1e-3;
        }
      } else if (const auto* dl = std::get_if<Delay>(&seg)) {
        evolve(rho, hamiltonian(held_flux, frame), dl->duration_ns * 1e-3);
        t_us += dl->duration_ns * 1e-3;
      } else {
        const auto& m = std::get<Measure>(seg);
        MeasurePoint p;
        p.time_ns = t_us * 1e3;
        p.target = m.target;
        p.population = excited_population(rho, target_mode(m.target));
        p.sampled = p.population;
        if (shots > 0) {
          std::binomial_distribution<int> b(shots, p.population);
          p.sampled = static_cast<double>(b(*rng)) / shots;
          p.sigma = std::sqrt(p.population * (1.0 - p.population) / shots);
        }
        out.points.push_back(p);
      }
    }
    out.final_state = rho;
    return out;
  }

 private:
  void add_channels(std::size_t mode, double gamma1, double gamma_phi) {
    if (gamma1 > 0.0) collapse_.push_back({gamma1, lower_[mode]});
    // D[sqrt(2 Gamma_phi) n] damps the 0-1 coherence at Gamma_phi.
    if (gamma_phi > 0.0) collapse_.push_back({2.0 * gamma_phi, num_[mode]});
  }

  void evolve(Matrix& rho, const Matrix& h, double t_us) const {
    if (t_us == 0.0) return;
    if (collapse_.empty()) {
      const Matrix u = unitary(h, t_us);
      rho = u * rho * u.adjoint();
    } else {
      rho = unvec(lindblad_step_operator(lindbladian(h, collapse_), t_us, t_us) * vec(rho), dim_);
    }
  }

  // psi_new = exp(i (w_new - w_old) N t) psi_old for a frame shift at time t.
  void change_frame(Matrix& rho, double shift_ghz, double t_us) const {
    const double phase = units::ghz_to_rad_per_us(shift_ghz) * t_us;
    Vector u(dim_);
    for (Eigen::Index i = 0; i < dim_; ++i) u[i] = std::exp(cplx(0.0, phase * total_number_(i, i).real()));
    rho = u.asDiagonal() * rho * u.conjugate().asDiagonal();
  }

  DeviceModel d_;
  std::vector<Eigen::Index> dims_;
  Eigen::Index dim_ = 1;
  std::vector<Matrix> lower_, num_, excited_;
  Matrix total_number_, anharmonic_;
  std::vector<Collapse> collapse_;
};

inline double dressed_qubit_frequency(const DeviceModel& device, double flux) {
  return Simulator(device).qubit_transition_ghz(flux);
}

inline SimulationResult simulate_sequence(const DeviceModel& device, const PulseSequence& seq, int shots,
                                          std::uint64_t seed, const InitialState& init = {}) {
  std::mt19937_64 rng(seed);
  return Simulator(device).run(seq, init, shots, &rng);
}

}  // namespace tlsbath::quantum
