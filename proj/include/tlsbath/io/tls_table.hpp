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

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "tlsbath/census/record.hpp"
#include "tlsbath/io/csv.hpp"

namespace tlsbath::io {

inline constexpr const char* tls_table_header =
    "index,freq_ghz,g_mhz,t1_us,t1_err_us,device,cooldown,method,excluded";

// Reads the TLS table schema. Lines starting with '#' are comments; the first
// other line must be the header. Empty g means the coupling is unknown.
inline census::RecordSet parse_tls_table(std::istream& in) {
  census::RecordSet out;
  std::set<int> seen;
  std::string line;
  long lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    if (!header) {
      if (t != tls_table_header) throw ParseError("unexpected header", lineno);
      header = true;
      continue;
    }
    const auto f = split_csv(t);
    if (f.size() != 9) throw ParseError("expected 9 fields, got " + std::to_string(f.size()), lineno);
    census::TlsRecord r;
    r.index = static_cast<int>(parse_long(f[0], lineno, "index"));
    r.freq_ghz = parse_double(f[1], lineno, "freq_ghz");
    if (!f[2].empty()) r.g_mhz = parse_double(f[2], lineno, "g_mhz");
    r.t1_us = parse_double(f[3], lineno, "t1_us");
    r.t1_err_us = parse_double(f[4], lineno, "t1_err_us");
    r.device = f[5];
    r.cooldown = f[6];
    if (f[7] == "swap")
      r.method = census::Method::swap;
    else if (f[7] == "direct_drive")
      r.method = census::Method::direct_drive;
    else
      throw ParseError("unknown method '" + f[7] + "'", lineno);
    if (f[8] == "0" || f[8].empty())
      r.excluded = false;
    else if (f[8] == "1")
      r.excluded = true;
    else
      throw ParseError("excluded must be 0 or 1", lineno);

    if (!(r.freq_ghz > 0.0)) throw ParseError("freq_ghz must be positive", lineno);
    if (!(r.t1_us > 0.0)) throw ParseError("t1_us must be positive", lineno);
    if (r.t1_err_us < 0.0) throw ParseError("t1_err_us must be non-negative", lineno);
    if (r.g_mhz && *r.g_mhz < 0.0) throw ParseError("g_mhz must be non-negative", lineno);
    if (r.device.empty()) throw ParseError("device is empty", lineno);
    if (!seen.insert(r.index).second) throw ParseError("duplicate index " + std::to_string(r.index), lineno);
    out.push_back(std::move(r));
  }
  if (!header) throw ParseError("missing header");
  return out;
}

inline census::RecordSet load_tls_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MissingInput("cannot open TLS table: " + path);
  return parse_tls_table(in);
}

inline void write_tls_table(std::ostream& os, const census::RecordSet& records) {
  os << tls_table_header << '\n';
  for (const auto& r : records) {
    os << r.index << ',' << format_double(r.freq_ghz) << ',' << (r.g_mhz ? format_double(*r.g_mhz) : "")
       << ',' << format_double(r.t1_us) << ',' << format_double(r.t1_err_us) << ',' << r.device << ','
       << r.cooldown << ',' << census::to_string(r.method) << ',' << (r.excluded ? 1 : 0) << '\n';
  }
}

}  // namespace tlsbath::io
