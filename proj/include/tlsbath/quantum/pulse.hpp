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

#include <set>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tlsbath/core/error.hpp"

namespace tlsbath::quantum {

// Square resonant drive; amplitude is the Rabi frequency in MHz.
struct XYPulse {
  double freq_ghz = 0.0;
  double amplitude_mhz = 0.0;
  double duration_ns = 0.0;
  double phase = 0.0;
};

// Flux step. duration 0 holds the new bias; otherwise the bias returns to the held value.
struct ZPulse {
  double flux = 0.0;
  double duration_ns = 0.0;
};

struct Delay {
  double duration_ns = 0.0;
};

// Records the excited-state population of "qubit" or "tls<k>".
struct Measure {
  std::string target = "qubit";
};

using Segment = std::variant<XYPulse, ZPulse, Delay, Measure>;

struct PulseSequence {
  std::vector<Segment> segments;
};

inline void validate(const PulseSequence& s) {
  if (s.segments.empty() || !std::holds_alternative<Measure>(s.segments.back()))
    throw InvalidArgument("pulse sequence must end with a measure segment");
  for (const auto& seg : s.segments) {
    const double d = std::visit(
        [](const auto& x) {
          if constexpr (requires { x.duration_ns; }) return x.duration_ns;
          return 0.0;
        },
        seg);
    if (!(d >= 0.0)) throw InvalidArgument("pulse sequence: durations must be >= 0");
    if (const auto* xy = std::get_if<XYPulse>(&seg); xy && !(xy->amplitude_mhz >= 0.0))
      throw InvalidArgument("pulse sequence: drive amplitude must be >= 0");
  }
}

inline double total_duration_ns(const PulseSequence& s) {
  double t = 0.0;
  for (const auto& seg : s.segments)
    t += std::visit(
        [](const auto& x) {
          if constexpr (requires { x.duration_ns; }) return x.duration_ns;
          return 0.0;
        },
        seg);
  return t;
}

inline nlohmann::json to_json(const PulseSequence& s) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& seg : s.segments) {
    if (const auto* p = std::get_if<XYPulse>(&seg))
      arr.push_back({{"type", "xy"}, {"freq_ghz", p->freq_ghz}, {"amplitude_mhz", p->amplitude_mhz},
                     {"duration_ns", p->duration_ns}, {"phase", p->phase}});
    else if (const auto* z = std::get_if<ZPulse>(&seg))
      arr.push_back({{"type", "z"}, {"flux", z->flux}, {"duration_ns", z->duration_ns}});
    else if (const auto* d = std::get_if<Delay>(&seg))
      arr.push_back({{"type", "delay"}, {"duration_ns", d->duration_ns}});
    else
      arr.push_back({{"type", "measure"}, {"target", std::get<Measure>(seg).target}});
  }
  return {{"segments", arr}};
}

inline PulseSequence pulse_sequence_from_json(const nlohmann::json& j) {
  auto check_keys = [](const nlohmann::json& o, const std::set<std::string>& allowed, const std::string& what) {
    for (const auto& [k, _] : o.items())
      if (!allowed.count(k)) throw SchemaError(what + ": unknown key '" + k + "'");
  };
  if (!j.is_object()) throw SchemaError("pulse sequence: expected an object");
  check_keys(j, {"segments"}, "pulse sequence");
  PulseSequence s;
  try {
    for (const auto& o : j.at("segments")) {
      const auto type = o.at("type").get<std::string>();
      if (type == "xy") {
        check_keys(o, {"type", "freq_ghz", "amplitude_mhz", "duration_ns", "phase"}, "xy segment");
        s.segments.push_back(XYPulse{o.at("freq_ghz").get<double>(), o.at("amplitude_mhz").get<double>(),
                                     o.at("duration_ns").get<double>(), o.value("phase", 0.0)});
      } else if (type == "z") {
        check_keys(o, {"type", "flux", "duration_ns"}, "z segment");
        s.segments.push_back(ZPulse{o.at("flux").get<double>(), o.value("duration_ns", 0.0)});
      } else if (type == "delay") {
        check_keys(o, {"type", "duration_ns"}, "delay segment");
        s.segments.push_back(Delay{o.at("duration_ns").get<double>()});
      } else if (type == "measure") {
        check_keys(o, {"type", "target"}, "measure segment");
        s.segments.push_back(Measure{o.value("target", std::string("qubit"))});
      } else {
        throw SchemaError("pulse sequence: unknown segment type '" + type + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("pulse sequence: ") + e.what());
  }
  validate(s);
  return s;
}

}  // namespace tlsbath::quantum
