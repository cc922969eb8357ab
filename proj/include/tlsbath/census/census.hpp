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
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tlsbath/census/record.hpp"
#include "tlsbath/core/error.hpp"
#include "tlsbath/core/stats.hpp"

namespace tlsbath::census {

enum class FamilyLabel { A, B };

// Partition of the non-excluded records by T1. The gap (lo, hi) is open: its
// endpoints are the neighbouring members, lo in family A and hi in family B.
struct FamilySplit {
  std::vector<int> a;  // record indices
  std::vector<int> b;
  double gap_lo_us = 0.0;
  double gap_hi_us = 0.0;

  // Single cutoff for consumers that want one threshold.
  double cutoff_us() const { return std::sqrt(gap_lo_us * gap_hi_us); }

  std::optional<FamilyLabel> label_of(int index) const {
    if (std::find(a.begin(), a.end(), index) != a.end()) return FamilyLabel::A;
    if (std::find(b.begin(), b.end(), index) != b.end()) return FamilyLabel::B;
    return std::nullopt;
  }
};

struct ClassifyOptions {
  double window_lo_us = 10.0;
  double window_hi_us = 200.0;
  double min_ratio = 1.5;
};

// The widest empty T1 interval (by ratio) that touches the search window splits
// the records into the short-lived family A and the long-lived family B.
inline FamilySplit classify_families(const RecordSet& records, const ClassifyOptions& opt = {}) {
  std::vector<double> t1;
  for (const auto& r : records)
    if (!r.excluded) t1.push_back(r.t1_us);
  if (t1.size() < 2) throw InvalidArgument("classify_families: need at least two non-excluded records");
  std::sort(t1.begin(), t1.end());
  t1.erase(std::unique(t1.begin(), t1.end()), t1.end());

  double best_ratio = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i + 1 < t1.size(); ++i) {
    if (t1[i] >= opt.window_hi_us || t1[i + 1] <= opt.window_lo_us) continue;
    const double ratio = t1[i + 1] / t1[i];
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = i;
    }
  }
  if (best_ratio <= opt.min_ratio)
    throw InvalidArgument("classify_families: no empty T1 interval wider than the minimum ratio");

  FamilySplit split;
  split.gap_lo_us = t1[best];
  split.gap_hi_us = t1[best + 1];
  for (const auto& r : records) {
    if (r.excluded) continue;
    (r.t1_us <= split.gap_lo_us ? split.a : split.b).push_back(r.index);
  }
  return split;
}

namespace detail {

struct Labelled {
  double freq;
  FamilyLabel label;
};

inline std::vector<Labelled> labelled(const RecordSet& records, const FamilySplit& split) {
  std::vector<Labelled> out;
  for (const auto& r : records) {
    if (r.excluded) continue;
    if (auto l = split.label_of(r.index)) out.push_back({r.freq_ghz, *l});
  }
  return out;
}

inline double cost_of(const std::vector<Labelled>& pts, double f1, double f2) {
  std::size_t na = 0, nb = 0, a_out = 0, b_in = 0;
  for (const auto& p : pts) {
    const bool in = p.freq >= f1 && p.freq <= f2;
    if (p.label == FamilyLabel::A) {
      ++na;
      a_out += in ? 0 : 1;
    } else {
      ++nb;
      b_in += in ? 1 : 0;
    }
  }
  if (na == 0 || nb == 0) throw InvalidArgument("cost: empty family");
  const double fa = static_cast<double>(a_out) / static_cast<double>(na);
  const double fb = static_cast<double>(b_in) / static_cast<double>(nb);
  const double prod = fa * fb;
  if (prod >= 1.0) return -std::numeric_limits<double>::infinity();
  return std::log(1.0 - prod);
}

}  // namespace detail

// C = ln(1 - F_A F_B) for the closed band [f1, f2]; -inf when the separation is perfect.
inline double cost(double f1, double f2, const RecordSet& records, const FamilySplit& split) {
  if (!(f1 < f2)) throw InvalidArgument("cost: f1 must be below f2");
  return detail::cost_of(detail::labelled(records, split), f1, f2);
}

// An interval of optimal edge positions. Infinite ends mean the data do not bound that side.
struct EdgeInterval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool lo_open = true;
  bool hi_open = true;

  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

  // Edges rounded inward to whole MHz, the precision used in reports.
  double lo_mhz_rounded() const { return std::ceil(lo * 1000.0 - 1e-7) / 1000.0; }
  double hi_mhz_rounded() const { return std::floor(hi * 1000.0 + 1e-7) / 1000.0; }
};

struct Plateau {
  EdgeInterval f1;
  EdgeInterval f2;

  // Any (f1, f2) in the plateau gives the same band membership; this one lies on the data.
  double f1_representative() const { return std::isfinite(f1.hi) ? f1.hi : f1.lo; }
  double f2_representative() const { return std::isfinite(f2.lo) ? f2.lo : f2.hi; }
};

struct CostMinimum {
  double c_min = 0.0;
  std::vector<Plateau> plateaus;
};

// Exhaustive search over candidate edges placed 1 kHz either side of every distinct
// TLS frequency. C is piecewise constant between data frequencies, so this grid is complete.
inline CostMinimum minimize_cost(const RecordSet& records, const FamilySplit& split) {
  const auto pts = detail::labelled(records, split);
  std::vector<double> fs;
  for (const auto& p : pts) fs.push_back(p.freq);
  std::sort(fs.begin(), fs.end());
  fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
  const std::size_t n = fs.size();
  if (n == 0) throw InvalidArgument("minimize_cost: no labelled records");
  constexpr double eps = 1e-6;  // 1 kHz in GHz

  // f1 in cell k: (fs[k-1], fs[k]]; f2 in cell m: [fs[m-1], fs[m]). The band holds fs[k..m-1].
  auto f1_at = [&](std::size_t k) { return k < n ? fs[k] - eps : fs[n - 1] + eps; };
  auto f2_at = [&](std::size_t m) { return m > 0 ? fs[m - 1] + eps : fs[0] - eps; };

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t m = k + 1; m <= n; ++m) {
      const double c = detail::cost_of(pts, f1_at(k), f2_at(m));
      if (c == best) {
        cells.emplace_back(k, m);
      } else if (c < best) {
        best = c;
        cells.assign(1, {k, m});
      }
    }
  }

  auto f1_interval = [&](std::size_t k0, std::size_t k1) {
    EdgeInterval e;
    if (k0 > 0) e.lo = fs[k0 - 1];
    e.lo_open = true;
    if (k1 < n) {
      e.hi = fs[k1];
      e.hi_open = false;
    }
    return e;
  };
  auto f2_interval = [&](std::size_t m0, std::size_t m1) {
    EdgeInterval e;
    if (m0 > 0) {
      e.lo = fs[m0 - 1];
      e.lo_open = false;
    }
    if (m1 < n) e.hi = fs[m1];
    e.hi_open = true;
    return e;
  };

  // Group optimal cells by k into contiguous m runs, then merge consecutive k with equal runs.
  std::map<std::size_t, std::vector<std::size_t>> by_k;
  for (auto [k, m] : cells) by_k[k].push_back(m);
  struct Run {
    std::size_t k0, k1, m0, m1;
  };
  std::vector<Run> runs;
  for (auto& [k, ms] : by_k) {
    std::sort(ms.begin(), ms.end());
    std::size_t start = ms[0];
    for (std::size_t i = 1; i <= ms.size(); ++i) {
      if (i == ms.size() || ms[i] != ms[i - 1] + 1) {
        const std::size_t stop = ms[i - 1];
        bool merged = false;
        for (auto& r : runs) {
          if (r.k1 + 1 == k && r.m0 == start && r.m1 == stop) {
            r.k1 = k;
            merged = true;
            break;
          }
        }
        if (!merged) runs.push_back({k, k, start, stop});
        if (i < ms.size()) start = ms[i];
      }
    }
  }

  CostMinimum out;
  out.c_min = best;
  for (const auto& r : runs) out.plateaus.push_back({f1_interval(r.k0, r.k1), f2_interval(r.m0, r.m1)});
  return out;
}

struct CensusStats {
  std::optional<double> median_in, median_out;
  std::optional<double> mean_in, mean_out;
  std::optional<double> skew_in, skew_out;
  std::size_t n_in = 0, n_out = 0;
  std::vector<int> outliers;  // family-A members inside the band, family-B members outside
};

// Sample statistics of T1 split by membership of the closed band [f1, f2].
// Infinite edges are allowed for one-sided bands.
inline CensusStats census_stats(const RecordSet& records, double f1, double f2,
                                const FamilySplit* split = nullptr) {
  if (!(f1 <= f2)) throw InvalidArgument("census_stats: f1 must not exceed f2");
  std::vector<double> in, out;
  CensusStats s;
  for (const auto& r : records) {
    if (r.excluded) continue;
    const bool inside = r.freq_ghz >= f1 && r.freq_ghz <= f2;
    (inside ? in : out).push_back(r.t1_us);
    if (split) {
      const auto l = split->label_of(r.index);
      if (l && ((*l == FamilyLabel::A && inside) || (*l == FamilyLabel::B && !inside)))
        s.outliers.push_back(r.index);
    }
  }
  s.n_in = in.size();
  s.n_out = out.size();
  s.median_in = stats::median(in);
  s.median_out = stats::median(out);
  s.mean_in = stats::mean(in);
  s.mean_out = stats::mean(out);
  s.skew_in = stats::skewness(in);
  s.skew_out = stats::skewness(out);
  return s;
}

struct DeviceBandgap {
  std::string device;
  CostMinimum minimum;
  CensusStats stats;
};

// Per-device bandgap: families come from the global split, the search runs on one device.
inline std::vector<DeviceBandgap> per_device_bandgaps(const RecordSet& records, const FamilySplit& split) {
  std::vector<DeviceBandgap> out;
  for (const auto& dev : devices(records)) {
    const auto sub = for_device(records, dev);
    DeviceBandgap d;
    d.device = dev;
    d.minimum = minimize_cost(sub, split);
    const auto& p = d.minimum.plateaus.front();
    d.stats = census_stats(sub, p.f1_representative(), p.f2_representative(), &split);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace tlsbath::census
