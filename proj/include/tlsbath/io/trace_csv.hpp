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

#include <istream>
#include <ostream>
#include <string>

#include "tlsbath/fit/fit_result.hpp"
#include "tlsbath/io/csv.hpp"

namespace tlsbath::io {

// Columns t, value and an optional error. '#' lines are comments; a non-numeric first row is a header.
inline fit::Trace parse_trace_csv(std::istream& in) {
  fit::Trace tr;
  std::string line;
  long lineno = 0;
  std::size_t columns = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto f = split_csv(t);
    if (first) {
      first = false;
      double probe = 0.0;
      const auto head = trim(f.front());
      const auto [p, ec] = std::from_chars(head.data(), head.data() + head.size(), probe);
      if (ec != std::errc() || p != head.data() + head.size()) {
        if (f.size() < 2 || f.size() > 3) throw ParseError("trace header needs 2 or 3 columns", lineno);
        columns = f.size();
        continue;
      }
    }
    if (columns == 0) columns = f.size();
    if (f.size() != columns || columns < 2 || columns > 3)
      throw ParseError("expected " + std::to_string(columns ? columns : 2) + " columns", lineno);
    tr.t.push_back(parse_double(f[0], lineno, "t"));
    tr.y.push_back(parse_double(f[1], lineno, "value"));
    if (columns == 3) {
      const double e = parse_double(f[2], lineno, "error");
      if (!(e > 0.0)) throw ParseError("error must be positive", lineno);
      tr.err.push_back(e);
    }
  }
  if (tr.t.empty()) throw ParseError("trace has no data rows", lineno);
  return tr;
}

inline void write_trace_csv(std::ostream& os, const fit::Trace& tr, const std::string& t_name = "t_us") {
  os << t_name << ",value" << (tr.err.empty() ? "" : ",error") << '\n';
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    os << format_double(tr.t[i]) << ',' << format_double(tr.y[i]);
    if (!tr.err.empty()) os << ',' << format_double(tr.err[i]);
    os << '\n';
  }
}

}  // namespace tlsbath::io
