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
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tlsbath/core/error.hpp"
#include "tlsbath/io/csv.hpp"

namespace tlsbath::spectro {

// Population on a rectangular grid; values[i][j] belongs to (axis1[i], axis2[j]).
struct SpectrumMap {
  std::string axis1_name = "flux";
  std::string axis2_name = "freq_ghz";
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<std::vector<double>> values;
  std::optional<double> pulse_duration_ns;  // drive length of spectroscopy maps

  std::vector<double> column(std::size_t i) const { return values.at(i); }
};

inline void validate(const SpectrumMap& m) {
  if (m.axis1.empty() || m.axis2.empty()) throw InvalidArgument("spectrum map: empty axis");
  if (m.values.size() != m.axis1.size()) throw InvalidArgument("spectrum map: row count does not match axis1");
  for (const auto& row : m.values) {
    if (row.size() != m.axis2.size()) throw InvalidArgument("spectrum map: grid is not rectangular");
    for (double v : row)
      if (!(v >= -1e-9 && v <= 1.0 + 1e-9)) throw InvalidArgument("spectrum map: values must lie in [0, 1]");
  }
}

// First line: "<axis1>\<axis2>,a2_0,a2_1,..."; then one row per axis1 value.
inline void write_spectrum_csv(std::ostream& os, const SpectrumMap& m) {
  validate(m);
  if (m.pulse_duration_ns) os << "# pulse_duration_ns=" << io::format_double(*m.pulse_duration_ns) << '\n';
  os << m.axis1_name << '\\' << m.axis2_name;
  for (double v : m.axis2) os << ',' << io::format_double(v);
  os << '\n';
  for (std::size_t i = 0; i < m.axis1.size(); ++i) {
    os << io::format_double(m.axis1[i]);
    for (double v : m.values[i]) os << ',' << io::format_double(v);
    os << '\n';
  }
}

inline SpectrumMap read_spectrum_csv(std::istream& is) {
  SpectrumMap m;
  std::string line;
  long line_no = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++line_no;
    line = std::string(io::trim(line));
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string key = "# pulse_duration_ns=";
      if (line.rfind(key, 0) == 0)
        m.pulse_duration_ns = io::parse_double(std::string_view(line).substr(key.size()), line_no, "pulse_duration_ns");
      continue;
    }
    const auto cells = io::split_csv(line);
    if (!header) {
      const auto slash = cells[0].find('\\');
      if (slash == std::string::npos) throw ParseError("spectrum csv: header must start with axis1\\axis2", line_no);
      m.axis1_name = cells[0].substr(0, slash);
      m.axis2_name = cells[0].substr(slash + 1);
      for (std::size_t k = 1; k < cells.size(); ++k) m.axis2.push_back(io::parse_double(cells[k], line_no, m.axis2_name));
      header = true;
      continue;
    }
    if (cells.size() != m.axis2.size() + 1) throw ParseError("spectrum csv: wrong number of columns", line_no);
    m.axis1.push_back(io::parse_double(cells[0], line_no, m.axis1_name));
    std::vector<double> row;
    for (std::size_t k = 1; k < cells.size(); ++k) row.push_back(io::parse_double(cells[k], line_no, "value"));
    m.values.push_back(std::move(row));
  }
  if (!header) throw ParseError("spectrum csv: missing header", line_no);
  validate(m);
  return m;
}

}  // namespace tlsbath::spectro
