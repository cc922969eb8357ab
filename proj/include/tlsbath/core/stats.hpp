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
#include <cmath>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace tlsbath::stats {

inline std::optional<double> mean(std::span<const double> x) {
  if (x.empty()) return std::nullopt;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

inline std::optional<double> median(std::span<const double> x) {
  if (x.empty()) return std::nullopt;
  std::vector<double> v(x.begin(), x.end());
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Population (moment) skewness m3 / m2^{3/2}; needs at least 3 points and nonzero spread.
inline std::optional<double> skewness(std::span<const double> x) {
  if (x.size() < 3) return std::nullopt;
  const double mu = *mean(x);
  double m2 = 0.0, m3 = 0.0;
  for (double v : x) {
    const double d = v - mu;
    m2 += d * d;
    m3 += d * d * d;
  }
  const double n = static_cast<double>(x.size());
  m2 /= n;
  m3 /= n;
  if (m2 <= 0.0) return std::nullopt;
  return m3 / std::pow(m2, 1.5);
}

}  // namespace tlsbath::stats
