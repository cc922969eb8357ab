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
#include <limits>
#include <optional>
#include <ostream>
#include <vector>

#include "tlsbath/core/error.hpp"
#include "tlsbath/phonon/lattice.hpp"

namespace tlsbath::phonon {

// Histogram of Bloch frequencies. counts[b] is the symmetry-weighted number of states in
// [b w, (b+1) w); the density per cell is counts / normalization.
struct DosHistogram {
  double bin_width = 0.08;  // GHz
  std::vector<long long> counts;
  long long normalization = 1;  // (2N - 2)^2

  std::size_t size() const { return counts.size(); }
  double f_lo(std::size_t b) const { return bin_width * static_cast<double>(b); }
  double f_hi(std::size_t b) const { return bin_width * static_cast<double>(b + 1); }
  // States per unit cell in bin b.
  double weight(std::size_t b) const { return static_cast<double>(counts[b]) / static_cast<double>(normalization); }
  // States per unit cell per GHz.
  double density(std::size_t b) const { return weight(b) / bin_width; }
  double density_at(double f_ghz) const {
    if (f_ghz < 0.0) return 0.0;
    const auto b = static_cast<std::size_t>(std::floor(f_ghz / bin_width));
    return b < counts.size() ? density(b) : 0.0;
  }
  // Total number of states per cell; exact because counting is integral.
  double integral() const {
    long long total = 0;
    for (auto c : counts) total += c;
    return static_cast<double>(total) / static_cast<double>(normalization);
  }
};

// Quarter-zone weights: 1 on the zone-centre and zone-boundary lines, 2 inside, per axis.
inline long long quarter_zone_weight(std::size_t i, std::size_t n) { return (i == 0 || i + 1 == n) ? 1 : 2; }

inline DosHistogram compute_dos(const BandStructure& bs, double bin_width_ghz = 0.08) {
  if (bs.n < 2 || bs.k_points.empty()) throw InvalidArgument("compute_dos: empty band structure");
  if (!(bin_width_ghz > 0.0)) throw InvalidArgument("compute_dos: bin width must be positive");
  DosHistogram h;
  h.bin_width = bin_width_ghz;
  const auto side = static_cast<long long>(2 * bs.n - 2);
  h.normalization = side * side;
  for (std::size_t p = 0; p < bs.k_points.size(); ++p) {
    const long long w = quarter_zone_weight(bs.k_points[p].ix, bs.n) * quarter_zone_weight(bs.k_points[p].iy, bs.n);
    for (double f : bs.bands[p]) {
      const auto b = static_cast<std::size_t>(std::floor(f / bin_width_ghz));
      if (b >= h.counts.size()) h.counts.resize(b + 1, 0);
      h.counts[b] += w;
    }
  }
  return h;
}

struct Bandgap {
  double f1 = 0.0;  // GHz
  double f2 = 0.0;
  double width() const { return f2 - f1; }
};

// Widest run of empty bins lying inside [f_min, f_max]; edges are bin boundaries.
inline std::optional<Bandgap> find_bandgap(const DosHistogram& dos, double f_min, double f_max) {
  if (!(f_min < f_max)) throw InvalidArgument("find_bandgap: need f_min < f_max");
  const double eps = 1e-9 * dos.bin_width;
  std::optional<Bandgap> best;
  std::optional<std::size_t> run_start;
  auto close_run = [&](std::size_t end) {
    if (!run_start) return;
    Bandgap g{dos.f_lo(*run_start), dos.f_lo(end)};
    if (!best || g.width() > best->width() + eps) best = g;
    run_start.reset();
  };
  for (std::size_t b = 0; b < dos.size(); ++b) {
    const bool inside = dos.f_lo(b) >= f_min - eps && dos.f_hi(b) <= f_max + eps;
    if (inside && dos.counts[b] == 0) {
      if (!run_start) run_start = b;
    } else {
      close_run(b);
    }
  }
  close_run(dos.size());
  return best;
}

// Exact complete gap between consecutive bands over the sampled grid (widest one).
inline std::optional<Bandgap> band_gap_edges(const BandStructure& bs) {
  std::optional<Bandgap> best;
  for (std::size_t b = 0; b + 1 < bs.band_count(); ++b) {
    double top = 0.0, bottom = std::numeric_limits<double>::infinity();
    for (const auto& row : bs.bands) {
      top = std::max(top, row[b]);
      bottom = std::min(bottom, row[b + 1]);
    }
    if (bottom > top && (!best || bottom - top > best->width())) best = Bandgap{top, bottom};
  }
  return best;
}

// Frequencies free of states in every structure: the overlap of all gaps.
inline std::optional<Bandgap> intersect_gaps(const std::vector<std::optional<Bandgap>>& gaps) {
  if (gaps.empty()) return std::nullopt;
  Bandgap out{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (const auto& g : gaps) {
    if (!g) return std::nullopt;
    out.f1 = std::max(out.f1, g->f1);
    out.f2 = std::min(out.f2, g->f2);
  }
  if (!(out.f2 > out.f1)) return std::nullopt;
  return out;
}

inline void write_dos_csv(std::ostream& os, const DosHistogram& dos) {
  os << "f_lo_ghz,f_hi_ghz,density_per_ghz\n";
  os.precision(12);
  for (std::size_t b = 0; b < dos.size(); ++b) os << dos.f_lo(b) << ',' << dos.f_hi(b) << ',' << dos.density(b) << '\n';
}

}  // namespace tlsbath::phonon
