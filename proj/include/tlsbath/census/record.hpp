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

#include <optional>
#include <string>
#include <vector>

namespace tlsbath::census {

enum class Method { swap, direct_drive };

inline const char* to_string(Method m) { return m == Method::swap ? "swap" : "direct_drive"; }

// One characterised TLS. A missing coupling means it was not extracted with confidence.
// Direct-drive T1 values underestimate the true lifetime; the flag travels with the record.
struct TlsRecord {
  int index = 0;
  double freq_ghz = 0.0;
  std::optional<double> g_mhz;
  double t1_us = 0.0;
  double t1_err_us = 0.0;
  std::string device;
  std::string cooldown;
  Method method = Method::swap;
  bool excluded = false;
};

using RecordSet = std::vector<TlsRecord>;

inline RecordSet included(const RecordSet& records) {
  RecordSet out;
  for (const auto& r : records)
    if (!r.excluded) out.push_back(r);
  return out;
}

inline RecordSet for_device(const RecordSet& records, const std::string& device) {
  RecordSet out;
  for (const auto& r : records)
    if (r.device == device) out.push_back(r);
  return out;
}

inline std::vector<std::string> devices(const RecordSet& records) {
  std::vector<std::string> out;
  for (const auto& r : records) {
    bool seen = false;
    for (const auto& d : out) seen = seen || d == r.device;
    if (!seen) out.push_back(r.device);
  }
  return out;
}

}  // namespace tlsbath::census
