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
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "tlsbath/core/error.hpp"
#include "tlsbath/core/units.hpp"

namespace tlsbath::quantum {

// One defect mode. levels == 2 is a two-level system; more levels make it a truncated
// harmonic mode.
struct TlsSpec {
  double omega_ghz = 0.0;
  double g_mhz = 0.0;
  double gamma1 = 0.0;     // 1/us
  double gamma_phi = 0.0;  // 1/us
  int levels = 2;
};

struct DeviceModel {
  double omega_max_ghz = 6.0;
  double alpha_mhz = -200.0;
  std::vector<TlsSpec> tls;
  double qubit_gamma1 = 0.0;     // 1/us
  double qubit_gamma_phi = 0.0;  // 1/us
  double flux_quantum_normalization = 1.0;
  int transmon_levels = 2;

  double max_frequency_ghz() const {
    double f = omega_max_ghz;
    for (const auto& t : tls) f = std::max(f, t.omega_ghz);
    return f;
  }
};

inline void validate(const DeviceModel& d) {
  if (!(d.omega_max_ghz > 0.0)) throw InvalidArgument("device: omega_max must be positive");
  if (!(d.flux_quantum_normalization > 0.0)) throw InvalidArgument("device: flux normalization must be positive");
  if (d.transmon_levels != 2 && d.transmon_levels != 3) throw InvalidArgument("device: transmon_levels must be 2 or 3");
  if (!(d.qubit_gamma1 >= 0.0) || !(d.qubit_gamma_phi >= 0.0)) throw InvalidArgument("device: rates must be >= 0");
  for (const auto& t : d.tls) {
    if (!(t.omega_ghz > 0.0)) throw InvalidArgument("device: TLS frequency must be positive");
    if (!(t.g_mhz >= 0.0)) throw InvalidArgument("device: couplings must be >= 0");
    if (!(t.gamma1 >= 0.0) || !(t.gamma_phi >= 0.0)) throw InvalidArgument("device: rates must be >= 0");
    if (t.levels < 2) throw InvalidArgument("device: a TLS needs at least 2 levels");
  }
}

// Symmetric-SQUID tuning curve w_max sqrt|cos(pi flux)|, flux in units of the normalised quantum.
inline double transmon_freq_at_flux(const DeviceModel& d, double flux) {
  return d.omega_max_ghz * std::sqrt(std::abs(std::cos(units::pi * flux / d.flux_quantum_normalization)));
}

// Flux in [0, 1/2] (normalised) at which the transmon sits at f_ghz.
inline double flux_for_frequency(const DeviceModel& d, double f_ghz) {
  if (!(f_ghz >= 0.0) || f_ghz > d.omega_max_ghz) throw InvalidArgument("flux_for_frequency: frequency out of tuning range");
  const double r = f_ghz / d.omega_max_ghz;
  return d.flux_quantum_normalization * std::acos(r * r) / units::pi;
}

inline DeviceModel device_from_json(const nlohmann::json& j) {
  static const std::set<std::string> keys{"omega_max_ghz", "alpha_mhz", "tls", "qubit_gamma1", "qubit_gamma_phi",
                                          "flux_quantum_normalization", "transmon_levels"};
  static const std::set<std::string> tls_keys{"omega_ghz", "g_mhz", "gamma1", "gamma_phi", "levels"};
  if (!j.is_object()) throw SchemaError("device: expected an object");
  for (const auto& [k, _] : j.items())
    if (!keys.count(k)) throw SchemaError("device: unknown key '" + k + "'");
  try {
    DeviceModel d;
    d.omega_max_ghz = j.at("omega_max_ghz").get<double>();
    d.alpha_mhz = j.value("alpha_mhz", d.alpha_mhz);
    d.qubit_gamma1 = j.value("qubit_gamma1", 0.0);
    d.qubit_gamma_phi = j.value("qubit_gamma_phi", 0.0);
    d.flux_quantum_normalization = j.value("flux_quantum_normalization", 1.0);
    d.transmon_levels = j.value("transmon_levels", 2);
    for (const auto& t : j.value("tls", nlohmann::json::array())) {
      for (const auto& [k, _] : t.items())
        if (!tls_keys.count(k)) throw SchemaError("device tls: unknown key '" + k + "'");
      TlsSpec s;
      s.omega_ghz = t.at("omega_ghz").get<double>();
      s.g_mhz = t.at("g_mhz").get<double>();
      s.gamma1 = t.value("gamma1", 0.0);
      s.gamma_phi = t.value("gamma_phi", 0.0);
      if (t.contains("levels")) {
        const auto& lv = t.at("levels");
        if (lv.is_string()) {
          if (lv.get<std::string>() != "harmonic") throw SchemaError("device tls: levels must be an integer or \"harmonic\"");
          s.levels = 3;
        } else {
          s.levels = lv.get<int>();
        }
      }
      d.tls.push_back(s);
    }
    validate(d);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("device: ") + e.what());
  }
}

inline nlohmann::json to_json(const DeviceModel& d) {
  nlohmann::json j{{"omega_max_ghz", d.omega_max_ghz},
                   {"alpha_mhz", d.alpha_mhz},
                   {"qubit_gamma1", d.qubit_gamma1},
                   {"qubit_gamma_phi", d.qubit_gamma_phi},
                   {"flux_quantum_normalization", d.flux_quantum_normalization},
                   {"transmon_levels", d.transmon_levels},
                   {"tls", nlohmann::json::array()}};
  for (const auto& t : d.tls)
    j["tls"].push_back({{"omega_ghz", t.omega_ghz}, {"g_mhz", t.g_mhz}, {"gamma1", t.gamma1},
                        {"gamma_phi", t.gamma_phi}, {"levels", t.levels}});
  return j;
}

}  // namespace tlsbath::quantum
