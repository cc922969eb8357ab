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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "tlsbath/census/census.hpp"
#include "tlsbath/io/tls_table.hpp"

using namespace tlsbath;
using namespace tlsbath::census;

namespace {

RecordSet bundled_table() { return io::load_tls_table(std::string(TLSBATH_DATA_DIR) + "/tls_table.csv"); }

TlsRecord rec(int idx, double f, double t1, const char* dev = "X") {
  TlsRecord r;
  r.index = idx;
  r.freq_ghz = f;
  r.t1_us = t1;
  r.t1_err_us = 0.1 * t1;
  r.device = dev;
  return r;
}

}  // namespace

TEST(Classify, BundledTableGap) {
  const auto records = bundled_table();
  const auto split = classify_families(records);
  EXPECT_DOUBLE_EQ(split.gap_lo_us, 35.0);
  EXPECT_DOUBLE_EQ(split.gap_hi_us, 85.0);
  EXPECT_EQ(split.a.size(), 26u);
  EXPECT_EQ(split.b.size(), 29u);
  EXPECT_NEAR(split.cutoff_us(), 54.54, 0.01);
}

TEST(Classify, TwoRecords) {
  RecordSet rs{rec(1, 5.0, 1.0), rec(2, 5.1, 1000.0)};
  const auto split = classify_families(rs);
  EXPECT_DOUBLE_EQ(split.gap_lo_us, 1.0);
  EXPECT_DOUBLE_EQ(split.gap_hi_us, 1000.0);
  EXPECT_EQ(split.a, std::vector<int>{1});
  EXPECT_EQ(split.b, std::vector<int>{2});
}

TEST(Classify, EqualValuesHaveNoGap) {
  RecordSet rs{rec(1, 5.0, 50.0), rec(2, 5.1, 50.0), rec(3, 5.2, 50.0)};
  EXPECT_THROW(classify_families(rs), InvalidArgument);
}

TEST(Cost, ZeroWhenNoSeparation) {
  RecordSet rs{rec(1, 4.0, 1.0), rec(2, 6.0, 1000.0)};
  const auto split = classify_families(rs);
  // Band holds nothing: F_B = 0.
  EXPECT_DOUBLE_EQ(cost(4.5, 5.5, rs, split), 0.0);
}

TEST(Cost, PerfectSeparationIsMinusInfinity) {
  RecordSet rs{rec(1, 4.0, 1.0), rec(2, 5.0, 1000.0), rec(3, 6.0, 2.0)};
  const auto split = classify_families(rs);
  EXPECT_TRUE(std::isinf(cost(4.5, 5.5, rs, split)));
  EXPECT_LT(cost(4.5, 5.5, rs, split), 0.0);
}

TEST(Cost, RejectsInvertedBand) {
  RecordSet rs{rec(1, 4.0, 1.0), rec(2, 5.0, 1000.0)};
  const auto split = classify_families(rs);
  EXPECT_THROW(cost(5.0, 4.0, rs, split), InvalidArgument);
}

TEST(MinimizeCost, BundledTableOptimum) {
  const auto records = bundled_table();
  const auto split = classify_families(records);
  const auto m = minimize_cost(records, split);
  EXPECT_NEAR(m.c_min, std::log(1.0 - (25.0 / 26.0) * (26.0 / 29.0)), 1e-12);
  ASSERT_EQ(m.plateaus.size(), 1u);
  const auto& p = m.plateaus[0];
  EXPECT_DOUBLE_EQ(p.f1.lo, 4.5098);
  EXPECT_TRUE(p.f1.lo_open);
  EXPECT_DOUBLE_EQ(p.f1.hi, 4.5474);
  EXPECT_FALSE(p.f1.hi_open);
  EXPECT_DOUBLE_EQ(p.f2.lo, 5.6891);
  EXPECT_DOUBLE_EQ(p.f2.hi, 5.7359);
  EXPECT_DOUBLE_EQ(p.f1.lo_mhz_rounded(), 4.510);
  EXPECT_DOUBLE_EQ(p.f1.hi_mhz_rounded(), 4.547);
  EXPECT_DOUBLE_EQ(p.f2.lo_mhz_rounded(), 5.690);
  EXPECT_DOUBLE_EQ(p.f2.hi_mhz_rounded(), 5.735);
}

TEST(MinimizeCost, InvariantUnderPermutation) {
  auto records = bundled_table();
  const auto split = classify_families(records);
  const auto ref = minimize_cost(records, split);
  std::mt19937 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(records.begin(), records.end(), rng);
    const auto m = minimize_cost(records, split);
    EXPECT_EQ(m.c_min, ref.c_min);
    ASSERT_EQ(m.plateaus.size(), ref.plateaus.size());
    EXPECT_EQ(m.plateaus[0].f1.lo, ref.plateaus[0].f1.lo);
    EXPECT_EQ(m.plateaus[0].f2.hi, ref.plateaus[0].f2.hi);
  }
}

TEST(MinimizeCost, ConstantInsidePlateauAndChangesAcrossData) {
  const auto records = bundled_table();
  const auto split = classify_families(records);
  const auto m = minimize_cost(records, split);
  const auto& p = m.plateaus[0];
  for (double f1 : {4.5099, 4.52, 4.5474})
    for (double f2 : {5.6891, 5.70, 5.7358}) EXPECT_EQ(cost(f1, f2, records, split), m.c_min);
  // Stepping f2 across 5.7359 moves a family-A member into the band.
  EXPECT_NE(cost(4.52, 5.7360, records, split), m.c_min);
  EXPECT_NE(cost(4.5097, 5.70, records, split), m.c_min);
  (void)p;
}

TEST(MinimizeCost, CostIgnoresT1ValuesBeyondLabels) {
  auto records = bundled_table();
  const auto split = classify_families(records);
  const double c0 = cost(4.52, 5.70, records, split);
  for (auto& r : records) r.t1_us = std::log1p(r.t1_us);  // monotone relabel
  EXPECT_EQ(cost(4.52, 5.70, records, split), c0);
}

TEST(MinimizeCost, ChipAQ2Plateau) {
  const auto records = bundled_table();
  const auto split = classify_families(records);
  const auto m = minimize_cost(for_device(records, "A-Q2"), split);
  ASSERT_EQ(m.plateaus.size(), 1u);
  const auto& p = m.plateaus[0];
  EXPECT_DOUBLE_EQ(p.f1.lo_mhz_rounded(), 4.975);
  EXPECT_DOUBLE_EQ(p.f1.hi_mhz_rounded(), 5.653);
  EXPECT_DOUBLE_EQ(p.f2.lo_mhz_rounded(), 5.690);
  EXPECT_DOUBLE_EQ(p.f2.hi_mhz_rounded(), 6.274);
}

TEST(MinimizeCost, PlantedGapRecovered) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> f(4.0, 6.5);
  std::lognormal_distribution<double> short_t1(std::log(4.0), 0.8), long_t1(std::log(400.0), 0.8);
  RecordSet rs;
  for (int i = 0; i < 60; ++i) {
    const double fr = f(rng);
    const bool in = fr >= 4.5 && fr <= 5.7;
    double t1 = in ? long_t1(rng) : short_t1(rng);
    t1 = in ? std::max(t1, 120.0) : std::min(t1, 30.0);
    rs.push_back(rec(i + 1, fr, t1));
  }
  const auto split = classify_families(rs);
  const auto m = minimize_cost(rs, split);
  EXPECT_TRUE(std::isinf(m.c_min));
  const auto& p = m.plateaus.front();
  std::vector<double> fs;
  for (const auto& r : rs) fs.push_back(r.freq_ghz);
  std::sort(fs.begin(), fs.end());
  double max_spacing = 0.0;
  for (std::size_t i = 1; i < fs.size(); ++i) max_spacing = std::max(max_spacing, fs[i] - fs[i - 1]);
  EXPECT_LE(std::abs(p.f1.hi - 4.5), max_spacing);
  EXPECT_LE(std::abs(p.f2.lo - 5.7), max_spacing);
}

TEST(CensusStats, AverageBandgap) {
  const auto records = bundled_table();
  const auto split = classify_families(records);
  const auto s = census_stats(records, 4.52, 5.70, &split);
  EXPECT_DOUBLE_EQ(*s.median_in, 506.0);
  EXPECT_DOUBLE_EQ(*s.median_out, 4.4);
  EXPECT_NEAR(*s.mean_in, 21493.0 / 27.0, 1e-9);
  EXPECT_NEAR(*s.mean_out, 688.22 / 28.0, 1e-9);
  EXPECT_EQ(s.n_in + s.n_out, 55u);
  EXPECT_EQ(s.outliers.size(), 4u);
}

TEST(CensusStats, SimulatedBandgap) {
  const auto records = bundled_table();
  const auto s = census_stats(records, 4.442, 5.814);
  EXPECT_DOUBLE_EQ(*s.median_in, 462.5);
  EXPECT_DOUBLE_EQ(*s.median_out, 4.3);
}

TEST(CensusStats, EmptyPartitionIsAbsent) {
  const auto records = bundled_table();
  const auto s = census_stats(records, 7.0, 8.0);
  EXPECT_FALSE(s.median_in.has_value());
  EXPECT_TRUE(s.median_out.has_value());
}

TEST(CensusStats, ExcludedRecordIgnored) {
  const auto records = bundled_table();
  auto copy = records;
  for (auto& r : copy)
    if (r.excluded) r.t1_us = 1e9;
  EXPECT_EQ(*census_stats(copy, 4.52, 5.70).mean_in, *census_stats(records, 4.52, 5.70).mean_in);
}

TEST(PerDevice, ChipAQ3Stats) {
  const auto records = bundled_table();
  const auto split = classify_families(records);
  const auto rows = per_device_bandgaps(records, split);
  ASSERT_EQ(rows.size(), 7u);
  const auto it = std::find_if(rows.begin(), rows.end(), [](const auto& r) { return r.device == "A-Q3"; });
  ASSERT_NE(it, rows.end());
  EXPECT_DOUBLE_EQ(*it->stats.median_in, 524.0);
  EXPECT_DOUBLE_EQ(*it->stats.median_out, 5.6);
}

TEST(PerDevice, UnboundedSideReportedAbsent) {
  const auto records = bundled_table();
  const auto split = classify_families(records);
  const auto rows = per_device_bandgaps(records, split);
  for (const auto& r : rows) {
    const auto& p = r.minimum.plateaus.front();
    if (r.device == "A-Q1") EXPECT_FALSE(std::isfinite(p.f1.lo));
    if (r.device == "B-Q1") EXPECT_FALSE(std::isfinite(p.f2.hi));
  }
}

TEST(TlsTable, BundledTable) {
  const auto records = bundled_table();
  EXPECT_EQ(records.size(), 56u);
  EXPECT_EQ(included(records).size(), 55u);
  const auto it = std::find_if(records.begin(), records.end(), [](const auto& r) { return r.index == 35; });
  ASSERT_NE(it, records.end());
  EXPECT_TRUE(it->excluded);
  const auto seven = std::find_if(records.begin(), records.end(), [](const auto& r) { return r.index == 7; });
  EXPECT_FALSE(seven->g_mhz.has_value());
}

TEST(TlsTable, ParseErrorsCarryLineNumbers) {
  std::istringstream bad_t1(std::string(io::tls_table_header) + "\n1,5.0,10,0,0.1,D,C,swap,0\n");
  try {
    io::parse_tls_table(bad_t1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  std::istringstream dup(std::string(io::tls_table_header) +
                         "\n1,5.0,10,3,0.1,D,C,swap,0\n1,5.1,10,3,0.1,D,C,swap,0\n");
  EXPECT_THROW(io::parse_tls_table(dup), ParseError);
  std::istringstream short_row(std::string(io::tls_table_header) + "\n1,5.0,10\n");
  EXPECT_THROW(io::parse_tls_table(short_row), ParseError);
}

TEST(TlsTable, RoundTrip) {
  const auto records = bundled_table();
  std::stringstream ss;
  io::write_tls_table(ss, records);
  const auto back = io::parse_tls_table(ss);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].freq_ghz, records[i].freq_ghz);
    EXPECT_EQ(back[i].g_mhz, records[i].g_mhz);
    EXPECT_EQ(back[i].method, records[i].method);
  }
}
