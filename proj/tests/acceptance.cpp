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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/special_functions/erf.hpp>

#include "tlsbath/census/census.hpp"
#include "tlsbath/fit/decay.hpp"
#include "tlsbath/fit/distribution.hpp"
#include "tlsbath/fit/temperature.hpp"
#include "tlsbath/io/tls_table.hpp"
#include "tlsbath/loss/models.hpp"
#include "tlsbath/phonon/dos.hpp"
#include "tlsbath/phonon/relaxation.hpp"
#include "tlsbath/phonon/surrogate.hpp"
#include "tlsbath/quantum/protocols.hpp"
#include "tlsbath/spectro/analysis.hpp"

using namespace tlsbath;

namespace {

// Collects individual checks; the criterion passes when every check does.
class Verdict {
 public:
  void check(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    ++count_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    std::ostringstream os;
    os << what << " = " << got << " (want " << want << " +- " << tol << ")";
    check(std::isfinite(got) && std::abs(got - want) <= tol, os.str());
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool pass() const { return failures_.empty(); }
  std::string detail() const {
    std::ostringstream os;
    if (pass()) {
      os << count_ << " checks";
      for (const auto& n : notes_) os << "; " << n;
    } else {
      os << failures_.size() << "/" << count_ << " checks failed: ";
      for (std::size_t i = 0; i < failures_.size() && i < 4; ++i) os << (i ? "; " : "") << failures_[i];
      if (failures_.size() > 4) os << "; ...";
    }
    return os.str();
  }

 private:
  std::vector<std::string> failures_, notes_;
  int count_ = 0;
};

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

census::RecordSet bundled_table() { return io::load_tls_table(std::string(TLSBATH_DATA_DIR) + "/tls_table.csv"); }

phonon::UnitCell bundled_cell(int nm) {
  return phonon::load_unit_cell(std::string(TLSBATH_DATA_DIR) + "/cells/cross_shield_" + std::to_string(nm) + "nm.json");
}

fit::Trace sample(double t_end, int n, const std::function<double(double)>& f) {
  fit::Trace tr;
  for (int i = 0; i < n; ++i) {
    const double t = t_end * i / (n - 1);
    tr.t.push_back(t);
    tr.y.push_back(f(t));
  }
  return tr;
}

void criterion_1(Verdict& v) {
  const auto records = bundled_table();
  const auto split = census::classify_families(records);
  v.near(split.gap_lo_us, 35.0, 0.0, "T1 gap lower end");
  v.near(split.gap_hi_us, 85.0, 0.0, "T1 gap upper end");
  const auto m = census::minimize_cost(records, split);
  v.near(m.c_min, -1.98, 0.01, "C_min");
  v.check(m.plateaus.size() == 1, "single optimal plateau");
  if (m.plateaus.empty()) return;
  const auto& p = m.plateaus.front();
  v.near(p.f1.lo_mhz_rounded(), 4.510, 1e-12, "f1 lower");
  v.near(p.f1.hi_mhz_rounded(), 4.547, 1e-12, "f1 upper");
  v.near(p.f2.lo_mhz_rounded(), 5.690, 1e-12, "f2 lower");
  v.near(p.f2.hi_mhz_rounded(), 5.735, 1e-12, "f2 upper");
  v.note("C_min " + fmt(m.c_min, 4) + ", f1 [" + fmt(p.f1.lo_mhz_rounded(), 3) + ", " + fmt(p.f1.hi_mhz_rounded(), 3) +
         "], f2 [" + fmt(p.f2.lo_mhz_rounded(), 3) + ", " + fmt(p.f2.hi_mhz_rounded(), 3) + "] GHz");
}

// Displayed precision of the reference table: whole microseconds inside the band, 0.1 us outside.
std::string stats_cell(const std::optional<double>& in, const std::optional<double>& out) {
  return (in ? fmt(*in, 0) : "-") + "/" + (out ? fmt(*out, 1) : "-");
}

std::string edge_cell(const census::EdgeInterval& e) {
  if (!std::isfinite(e.lo) || !std::isfinite(e.hi)) return "-";
  return fmt(e.lo_mhz_rounded(), 3) + "--" + fmt(e.hi_mhz_rounded(), 3);
}

void criterion_2(Verdict& v) {
  const auto records = bundled_table();
  const auto split = census::classify_families(records);
  const auto avg = census::census_stats(records, 4.52, 5.70, &split);
  v.check(stats_cell(avg.median_in, avg.median_out) == "506/4.4", "average-band medians " + stats_cell(avg.median_in, avg.median_out));
  v.check(stats_cell(avg.mean_in, avg.mean_out) == "796/24.6", "average-band means " + stats_cell(avg.mean_in, avg.mean_out));

  struct Row {
    const char *device, *f1, *f2, *median, *mean;
  };
  static const Row reference[] = {
      {"A-Q1", "-", "5.796--5.798", "948/2.3", "835/31.2"},
      {"A-Q2", "4.975--5.653", "5.690--6.274", "1635/16.1", "1635/16.1"},
      {"A-Q3", "4.510--4.692", "5.487--5.735", "524/5.6", "1349/7.4"},
      {"A-Q4", "4.343--4.956", "5.410--5.852", "451/11.2", "506/11.2"},
      {"B-Q1", "4.437--4.547", "-", "476/4.0", "496/14.2"},
      {"B-Q2", "4.423--4.891", "-", "490/4.2", "490/27.6"},
      {"B-Q3", "4.329--4.987", "-", "759/11.5", "759/12.7"},
  };
  const auto rows = census::per_device_bandgaps(records, split);
  v.check(rows.size() == 7, "seven devices");
  for (const auto& ref : reference) {
    const auto it = std::find_if(rows.begin(), rows.end(), [&](const auto& r) { return r.device == ref.device; });
    if (it == rows.end() || it->minimum.plateaus.empty()) {
      v.check(false, std::string(ref.device) + " missing");
      continue;
    }
    const auto& p = it->minimum.plateaus.front();
    const std::string got = edge_cell(p.f1) + " " + edge_cell(p.f2) + " " +
                            stats_cell(it->stats.median_in, it->stats.median_out) + " " +
                            stats_cell(it->stats.mean_in, it->stats.mean_out);
    const std::string want = std::string(ref.f1) + " " + ref.f2 + " " + ref.median + " " + ref.mean;
    v.check(got == want, std::string(ref.device) + " row " + got + " (want " + want + ")");
  }
}

void criterion_3(Verdict& v) {
  const auto records = bundled_table();
  const auto split = census::classify_families(records);
  std::vector<double> a, b;
  for (const auto& r : records) {
    if (r.excluded) continue;
    (split.label_of(r.index) == census::FamilyLabel::A ? a : b).push_back(r.t1_us);
  }
  const auto ra = fit::fit_cdf(a, fit::CdfModel::lognormal);
  const auto rb = fit::fit_cdf(b, fit::CdfModel::lognormal);
  v.near(ra.derived.at("median"), 4.1, 0.41, "family A lognormal median");
  v.near(rb.derived.at("median"), 414.0, 41.4, "family B lognormal median");
  v.near(ra.derived.at("skewness"), 1.8, 0.2, "family A skewness");
  v.near(rb.derived.at("skewness"), 3.3, 0.2, "family B skewness");
  v.note("medians " + fmt(ra.derived.at("median"), 2) + "/" + fmt(rb.derived.at("median"), 1) + " us, skewness " +
         fmt(ra.derived.at("skewness"), 2) + "/" + fmt(rb.derived.at("skewness"), 2));
}

void criterion_4(Verdict& v) {
  std::vector<double> g;
  for (const auto& r : bundled_table())
    if (r.g_mhz) g.push_back(*r.g_mhz);
  const auto r = fit::fit_tls_density(g, 1.66, 22.0);
  v.near(r.value("sigma"), 0.6, 0.2, "sigma");
  v.note("sigma " + fmt(r.value("sigma"), 3) + " /GHz/um^2 from " + std::to_string(g.size()) + " couplings");
}

void criterion_5(Verdict& v) {
  std::mt19937_64 rng(2025);
  std::uniform_real_distribution<double> G(5.0, 50.0), W(4.6, 5.9);
  double worst_w = 0.0, worst_g = 0.0, worst_bins = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double g = G(rng), wt = W(rng);
    quantum::DeviceModel d;
    d.omega_max_ghz = 6.2;
    d.tls = {{wt, g, 0.0, 0.0, 2}};
    const auto fc = [&](double f) { return quantum::transmon_freq_at_flux(d, f); };

    // Microwave spectroscopy across the crossing, 0.2 MHz probe step, 1 us half-pi drive.
    const double span = 6.0 * g * 1e-3, tp = 1000.0, step = 2e-4;
    const auto fluxes =
        quantum::linspace(quantum::flux_for_frequency(d, wt + span), quantum::flux_for_frequency(d, wt - span), 41);
    const auto n = static_cast<std::size_t>(std::lround(2.0 * (span + 0.02) / step)) + 1;
    const auto freqs = quantum::linspace(wt - span - 0.02, wt + span + 0.02, n);
    const auto map = quantum::microwave_spectroscopy_map(d, fluxes, freqs, 0.5 * 1e3 / (2.0 * tp), tp, 0, 1);
    const auto r = spectro::fit_avoided_crossing(map, fc);
    const double ew = std::abs(r.omega_tls_ghz - wt) / wt, eg = std::abs(r.g_mhz - g) / g;
    worst_w = std::max(worst_w, ew);
    worst_g = std::max(worst_g, eg);
    v.check(ew < 0.01 && eg < 0.01, "config " + std::to_string(k) + " (wt " + fmt(wt, 4) + ", g " + fmt(g, 2) +
                                        ") recovered " + fmt(r.omega_tls_ghz, 4) + ", " + fmt(r.g_mhz, 2));

    // SWAP chevrons at a few detunings: dominant Fourier line against sqrt(D^2 + 4 g^2).
    std::vector<double> swap_flux;
    for (double det : {0.0, g, -2.0 * g}) swap_flux.push_back(quantum::flux_for_frequency(d, wt + det * 1e-3));
    const auto chevron = quantum::swap_spectroscopy_map(d, swap_flux, quantum::linspace(0.0, 600.0, 601), 25.0, 0, 1);
    for (const auto& c : spectro::chevron_fft(chevron, {false, 4, 1, {}})) {
      const double det = 1e3 * (wt - fc(c.axis1));
      const double bins = std::abs(c.peak_mhz - quantum::jc_splitting_mhz(det, g)) / c.bin_mhz;
      worst_bins = std::max(worst_bins, bins);
      v.check(bins <= 1.0, "config " + std::to_string(k) + " chevron peak off by " + fmt(bins, 2) + " bins");
    }
  }
  v.note("worst errors: omega " + fmt(100.0 * worst_w, 4) + "%, g " + fmt(100.0 * worst_g, 3) + "%, chevron " +
         fmt(worst_bins, 2) + " bins");
}

void criterion_6(Verdict& v) {
  const auto ex = spectro::three_mode_gap(21.7, 10.0, 500.0);
  const double ex_eigen = spectro::three_mode_eigen_gap(21.7, 10.0, 500.0);
  v.near(ex.approx_mhz, 20.92, 5e-3, "example approximation");
  v.check(std::abs(ex_eigen - ex.approx_mhz) <= 0.05 * ex_eigen,
          "example eigen gap " + fmt(ex_eigen, 3) + " vs approximation " + fmt(ex.approx_mhz, 3));

  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> G1(1.0, 40.0), G2(1.0, 30.0), D(50.0, 800.0);
  int tried = 0, agree = 0;
  double worst = 0.0;
  while (tried < 400) {
    const double g1 = G1(rng), g2 = G2(rng), d1 = D(rng);
    const auto gap = spectro::three_mode_gap(g1, g2, d1);
    if (!gap.approx_valid) continue;
    ++tried;
    const double eigen = spectro::three_mode_eigen_gap(g1, g2, d1);
    const double rel = std::abs(eigen - gap.approx_mhz) / eigen;
    worst = std::max(worst, rel);
    agree += rel <= 0.05 ? 1 : 0;
  }
  v.check(agree == tried, std::to_string(tried - agree) + "/" + std::to_string(tried) +
                              " valid draws disagree by more than 5% (worst " + fmt(100.0 * worst, 1) + "%)");
  v.note("example eigen gap " + fmt(ex_eigen, 2) + " MHz, worst relative gap " + fmt(100.0 * worst, 2) + "%");
}

void criterion_7(Verdict& v) {
  for (std::size_t n : {2u, 8u, 32u}) {
    const auto dos = phonon::compute_dos(phonon::compute_band_structure(bundled_cell(0), n));
    v.check(dos.integral() == 6.0, "DOS integral for N = " + std::to_string(n) + " is " + fmt(dos.integral(), 12));
  }
  const double m = 2.0, k = 500.0;
  const auto mono = phonon::compute_band_structure(phonon::monatomic_square(m, k), 16);
  double worst = 0.0;
  for (std::size_t p = 0; p < mono.k_points.size(); ++p)
    for (double w : mono.bands[p])
      worst = std::max(worst, std::abs(w - phonon::monatomic_frequency(m, k, mono.k_points[p].kx, mono.k_points[p].ky)));
  v.check(worst <= 1e-10, "monatomic dispersion off by " + std::to_string(worst));

  const int loadings[] = {0, 30, 50};
  const double target[3][2] = {{4.442, 6.033}, {4.417, 5.979}, {4.389, 5.814}};
  std::vector<phonon::Bandgap> gaps;
  std::string edges;
  for (int l = 0; l < 3; ++l) {
    const auto bs = phonon::compute_band_structure(bundled_cell(loadings[l]), 33);
    const auto gap = phonon::find_bandgap(phonon::compute_dos(bs), 3.0, 7.0);
    v.check(gap.has_value(), std::to_string(loadings[l]) + " nm cell has a gap");
    if (!gap) return;
    gaps.push_back(*gap);
    const std::string tag = std::to_string(loadings[l]) + " nm ";
    v.check(std::abs(gap->f1 / target[l][0] - 1.0) < 0.05, tag + "lower edge " + fmt(gap->f1, 3));
    v.check(std::abs(gap->f2 / target[l][1] - 1.0) < 0.05, tag + "upper edge " + fmt(gap->f2, 3));
    edges += (l ? ", " : "") + fmt(gap->f1, 3) + "/" + fmt(gap->f2, 3);
  }
  for (std::size_t l = 0; l + 1 < gaps.size(); ++l)
    v.check(gaps[l + 1].width() <= gaps[l].width() + 1e-12, "gap narrows with mass loading");
  v.note("edges " + edges + " GHz");
}

void criterion_8(Verdict& v) {
  constexpr double gap_k = units::aluminium_gap_kelvin;
  double worst_db = 0.0;
  for (double f = 1.0; f <= 10.0; f += 1.0)
    for (double t = 0.05; t <= 0.3001; t += 0.05) {
      const double ratio = loss::qp_spectral_density_closed(-f, t, gap_k, 10.0) / loss::qp_spectral_density_closed(f, t, gap_k, 10.0);
      worst_db = std::max(worst_db, std::abs(ratio / std::exp(-units::ghz_to_kelvin(f) / t) - 1.0));
    }
  v.check(worst_db <= 1e-6, "detailed balance off by " + std::to_string(worst_db));

  double worst_q = 0.0;
  for (double f : {3.0, 5.65, 8.0})
    for (double t : {0.1, 0.15, 0.2, 0.25}) {
      const double c = loss::qp_spectral_density_closed(f, t, gap_k, 1.0);
      worst_q = std::max(worst_q, std::abs(loss::qp_spectral_density(f, t, gap_k, 1.0) / c - 1.0));
    }
  v.check(worst_q <= 0.01, "closed form vs quadrature off by " + std::to_string(worst_q));

  bool monotone = true;
  double prev = 0.0;
  for (double t = 0.010; t <= 0.2501; t += 0.001) {
    const double r = loss::tls_qp_rate(5.65, t, 1e6);
    monotone = monotone && r > prev;
    prev = r;
  }
  v.check(monotone, "tls_qp_rate monotone in T");

  // Q(T) of TLS5 from its plateau (2.5e7) and its 193 mK value (5e4).
  const double f = 5.6563, q_floor = 2.5e7;
  const double amp = units::ghz_to_rad_per_us(f) / 5e4 / std::exp(loss::log_tls_qp_rate(f, 0.193, 1.0));
  fit::QCurve c;
  c.omega_ghz = f;
  for (double t = 0.010; t <= 0.2001; t += 0.010) {
    c.t_kelvin.push_back(t);
    c.q.push_back(1.0 / (1.0 / q_floor + 1.0 / loss::tls_qp_quality(f, t, amp)));
  }
  const auto s = fit::analyse_qp_saturation(c, 0.15);
  v.near(1e3 * s.saturation_kelvin, 130.0, 15.0, "saturation temperature (mK)");

  // The quoted 0.4 mHz carries one significant digit; the Lorentzian itself is checked to round-off.
  const double r = loss::off_resonant_tls_rate(5.0, 250.0, 1.0);
  v.check(fmt(1e3 * r, 1) == "0.4", "off-resonant rate " + fmt(1e3 * r, 6) + " mHz");
  v.near(r, 25.0 / (250.0 * 250.0 + 1.0), 1e-15, "off-resonant Lorentzian (Hz)");
  v.note("saturation " + fmt(1e3 * s.saturation_kelvin, 1) + " mK, off-resonant " + fmt(1e3 * r, 4) + " mHz");
}

// 2 Gamma(d+1) (1 - 2^-(d+1)) zeta(d+1), with zeta summed directly plus an Euler-Maclaurin tail.
double scaling_series(double d) {
  const double s = d + 1.0;
  const long n = 200000;
  double sum = 0.0;
  for (long k = n; k >= 1; --k) sum += std::pow(static_cast<double>(k), -s);
  const double tail = std::pow(n, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(n, -s) + s / 12.0 * std::pow(n, -s - 1.0);
  return 2.0 * std::tgamma(s) * (1.0 - std::pow(2.0, -s)) * (sum + tail);
}

void criterion_9(Verdict& v) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  v.near(phonon::thermal_scaling_integral(1.0), pi2 / 4.0, 1e-8, "I(1) vs pi^2/4");
  v.near(phonon::thermal_scaling_integral(1.0), scaling_series(1.0), 1e-8, "I(1) vs series");
  v.near(phonon::thermal_scaling_integral(2.0), 3.5 * std::riemann_zeta(3.0), 1e-8, "I(2) vs 3.5 zeta(3)");
  v.near(phonon::thermal_scaling_integral(2.0), scaling_series(2.0), 1e-8, "I(2) vs series");
  double worst = 0.0;
  for (double x = 0.01; x <= 20.0; x *= 1.01)
    worst = std::max(worst, std::abs(phonon::sech2_coth_half(x) - phonon::twice_csch(x)));
  v.check(worst <= 1e-12, "sech^2 coth identity off by " + std::to_string(worst));
}

void criterion_10(Verdict& v) {
  const auto rel = [&](double got, double want, const std::string& what) {
    v.check(std::abs(got - want) <= 1e-6 * std::max(1.0, std::abs(want)), what + " = " + fmt(got, 9));
  };
  using fit::DecayModel;
  const auto s = fit::fit_decay(sample(5000.0, 120, [](double t) { return fit::simple_decay(t, 0.9, 1100.0, 0.05); }),
                                DecayModel::simple);
  rel(s.value("A"), 0.9, "simple A");
  rel(s.value("T1"), 1100.0, "simple T1");
  rel(s.value("B"), 0.05, "simple B");

  const auto st = fit::fit_decay(
      sample(2000.0, 150, [](double t) { return fit::stretched_decay(t, 0.8, 300.0, 0.77, 0.1); }), DecayModel::stretched);
  rel(st.value("A"), 0.8, "stretched A");
  rel(st.value("T1"), 300.0, "stretched T1");
  rel(st.value("n"), 0.77, "stretched n");
  rel(st.value("B"), 0.1, "stretched B");

  const auto de = fit::fit_decay(
      sample(1500.0, 200, [](double t) { return fit::double_exp_decay(t, 0.85, 1.5, 30.0, 250.0, 0.04); }),
      DecayModel::double_exp);
  rel(de.value("A"), 0.85, "double_exp A");
  rel(de.value("n_qp"), 1.5, "double_exp n_qp");
  rel(de.value("T1_qp"), 30.0, "double_exp T1_qp");
  rel(de.value("T1"), 250.0, "double_exp T1");
  rel(de.value("B"), 0.04, "double_exp B");

  const double w = units::two_pi * 4.0;
  const auto os = fit::fit_oscillatory_decay(
      sample(3.0, 301, [&](double t) { return fit::oscillatory_decay(t, 0.4, w, 0.3, 0.91, 1.8, 0.5); }));
  rel(os.value("A"), 0.4, "oscillatory A");
  rel(os.value("omega"), w, "oscillatory omega");
  rel(os.value("phi"), 0.3, "oscillatory phi");
  rel(os.value("T2"), 0.91, "oscillatory T2");
  rel(os.value("n"), 1.8, "oscillatory n");
  rel(os.value("B"), 0.5, "oscillatory B");

  // Distribution model: samples placed at the mid-quantiles of a lognormal.
  std::vector<double> q;
  for (int i = 0; i < 29; ++i) q.push_back(414.0 * std::exp(1.3 * std::sqrt(2.0) * boost::math::erf_inv(2.0 * (i + 0.5) / 29 - 1.0)));
  const auto cdf = fit::fit_cdf(q, fit::CdfModel::lognormal);
  rel(cdf.derived.at("median"), 414.0, "cdf median");
  rel(cdf.value("sigma"), 1.3, "cdf sigma");

  double worst = 0.0;
  for (double t = 0.0; t < 3000.0; t += 7.3)
    worst = std::max(worst, std::abs(fit::double_exp_decay(t, 0.8, 0.0, 17.0, 420.0, 0.1) - fit::simple_decay(t, 0.8, 420.0, 0.1)));
  v.check(worst < 1e-12, "double_exp at n_qp = 0 differs from simple by " + std::to_string(worst));

  const auto d = fit::qp_rate_difference(129.0, 177.0);
  v.near(1.0 / d.rate, 476.0, 0.5, "1 / qp rate difference (us)");
  v.note("1/rate = " + fmt(1.0 / d.rate, 4) + " us");
}

struct Criterion {
  const char* title;
  void (*run)(Verdict&);
};

const Criterion criteria[] = {
    {"census reproduction", criterion_1},        {"statistics reproduction", criterion_2},
    {"distribution fits", criterion_3},          {"density fit", criterion_4},
    {"dynamics round trip", criterion_5},        {"three-mode check", criterion_6},
    {"phonon module", criterion_7},              {"loss models", criterion_8},
    {"scaling integrals", criterion_9},          {"fit engine", criterion_10},
};

bool report(int n) {
  const auto& c = criteria[n - 1];
  Verdict v;
  try {
    c.run(v);
  } catch (const std::exception& e) {
    v.check(false, std::string("exception: ") + e.what());
  }
  std::printf("criterion %d %-24s %s  %s\n", n, c.title, v.pass() ? "PASS" : "FAIL", v.detail().c_str());
  std::fflush(stdout);
  return v.pass();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria, one PASS/FAIL line each"};
  int only = 0;
  bool summary = false;
  app.add_option("--criterion", only, "run a single criterion; exit status reflects its verdict")->check(CLI::Range(1, 10));
  app.add_flag("--summary", summary, "run every criterion and always exit 0");
  CLI11_PARSE(app, argc, argv);

  if (only) return report(only) ? 0 : 1;
  int passed = 0;
  for (int n = 1; n <= 10; ++n) passed += report(n) ? 1 : 0;
  std::printf("%d/10 criteria pass\n", passed);
  return summary || passed == 10 ? 0 : 1;
}
