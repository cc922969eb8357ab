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
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tlsbath/census/census.hpp"
#include "tlsbath/fit/decay.hpp"
#include "tlsbath/fit/distribution.hpp"
#include "tlsbath/fit/temperature.hpp"
#include "tlsbath/io/config.hpp"
#include "tlsbath/io/json_io.hpp"
#include "tlsbath/io/svg.hpp"
#include "tlsbath/io/synthetic.hpp"
#include "tlsbath/io/tls_table.hpp"
#include "tlsbath/io/trace_csv.hpp"
#include "tlsbath/loss/models.hpp"
#include "tlsbath/phonon/dos.hpp"
#include "tlsbath/quantum/protocols.hpp"
#include "tlsbath/spectro/analysis.hpp"

namespace tlsbath::io {

enum class Format { json, csv };

inline Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  throw SchemaError("format: expected json or csv, got '" + s + "'");
}

// Result document plus the files a command writes, keyed by path relative to the output directory.
struct CommandOutput {
  json result;
  std::vector<std::pair<std::string, std::string>> files;

  void add(std::string name, std::string content) { files.emplace_back(std::move(name), std::move(content)); }
  const std::string* file(const std::string& name) const {
    for (const auto& [n, c] : files)
      if (n == name) return &c;
    return nullptr;
  }
};

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

namespace detail {

inline const json& require_block(const RunConfig& c, const std::string& command) {
  if (!c.has(command)) throw SchemaError("config: missing '" + command + "' block");
  return c.block(command);
}

inline json sweep_json(const quantum::SweepTrace& tr, const std::string& axis) {
  json x = json::array(), pop = json::array(), sampled = json::array(), sigma = json::array();
  for (const auto& p : tr) {
    x.push_back(p.x);
    pop.push_back(p.population);
    sampled.push_back(p.sampled);
    sigma.push_back(p.sigma);
  }
  return {{"axis", axis}, {"x", x}, {"population", pop}, {"sampled", sampled}, {"sigma", sigma}};
}

inline std::string sweep_csv(const quantum::SweepTrace& tr, const std::string& axis) {
  std::ostringstream os;
  os << axis << ",population,sampled,sigma\n";
  for (const auto& p : tr)
    os << format_double(p.x) << ',' << format_double(p.population) << ',' << format_double(p.sampled) << ','
       << format_double(p.sigma) << '\n';
  return os.str();
}

inline json map_json(const spectro::SpectrumMap& m) {
  json j{{"axis1_name", m.axis1_name}, {"axis2_name", m.axis2_name}, {"axis1", m.axis1}, {"axis2", m.axis2},
         {"values", m.values}};
  if (m.pulse_duration_ns) j["pulse_duration_ns"] = *m.pulse_duration_ns;
  return j;
}

inline json crossing_json(const spectro::AvoidedCrossingFit& f) {
  return {{"omega_tls_ghz", f.omega_tls_ghz}, {"omega_tls_sigma_ghz", number(f.omega_tls_sigma_ghz)},
          {"g_mhz", f.g_mhz},                 {"g_sigma_mhz", number(f.g_sigma_mhz)},
          {"resolvable", f.resolvable},       {"fit", to_json(f.fit)}};
}

// Runs an analysis step; a numerical failure is recorded in the document instead of aborting.
inline json attempt(const std::function<json()>& f) {
  try {
    return f();
  } catch (const ConvergenceError& e) {
    return {{"error", e.what()}};
  } catch (const InvalidArgument& e) {
    return {{"error", e.what()}};
  }
}

inline phonon::UnitCell cell_from(const RunConfig& c, const json& spec) {
  if (spec.is_string()) return phonon::load_unit_cell(c.resolve(spec.get<std::string>()).string());
  return phonon::unit_cell_from_json(spec);
}

inline census::RecordSet table_from(const RunConfig& c, const json& block) {
  const std::string path = block.contains("table") ? block.at("table").get<std::string>() : "data:tls_table.csv";
  return load_tls_table(c.resolve(path).string());
}

struct CensusAnalysis {
  census::RecordSet records;
  census::FamilySplit split;
  census::CostMinimum minimum;
  double f1 = 0.0, f2 = 0.0;
  census::CensusStats stats;
};

inline CensusAnalysis analyse_census(census::RecordSet records, const census::ClassifyOptions& opt) {
  CensusAnalysis a;
  a.records = std::move(records);
  a.split = census::classify_families(a.records, opt);
  a.minimum = census::minimize_cost(a.records, a.split);
  const auto& p = a.minimum.plateaus.front();
  a.f1 = p.f1_representative();
  a.f2 = p.f2_representative();
  a.stats = census::census_stats(a.records, a.f1, a.f2, &a.split);
  return a;
}

inline census::ClassifyOptions classify_options(const json& b) {
  census::ClassifyOptions o;
  o.window_lo_us = schema::number_or(b, "window_lo_us", o.window_lo_us);
  o.window_hi_us = schema::number_or(b, "window_hi_us", o.window_hi_us);
  o.min_ratio = schema::number_or(b, "min_ratio", o.min_ratio);
  return o;
}

inline std::pair<std::vector<double>, std::vector<double>> family_t1(const CensusAnalysis& a) {
  std::vector<double> fa, fb;
  for (const auto& r : a.records) {
    const auto l = a.split.label_of(r.index);
    if (l) (*l == census::FamilyLabel::A ? fa : fb).push_back(r.t1_us);
  }
  return {fa, fb};
}

inline std::string fit_csv(const fit::FitResult& r) {
  std::ostringstream os;
  os << "model,name,value,sigma\n";
  for (std::size_t i = 0; i < r.names.size(); ++i)
    os << r.model_id << ',' << r.names[i] << ',' << format_double(r.params[i]) << ',' << format_double(r.sigmas[i])
       << '\n';
  for (const auto& [k, v] : r.derived) os << r.model_id << ',' << k << ',' << format_double(v) << ",\n";
  return os.str();
}

inline svg::Plot t1_scatter_plot(const CensusAnalysis& a) {
  svg::Plot p{"T1 against TLS frequency", "TLS frequency (GHz)", "T1 (us)", false, true, {}, {}};
  svg::Series sa{"family A", {}, {}, svg::Style::points, "#d62728"};
  svg::Series sb{"family B", {}, {}, svg::Style::points, "#1f77b4"};
  for (const auto& r : a.records) {
    const auto l = a.split.label_of(r.index);
    if (!l) continue;
    auto& s = *l == census::FamilyLabel::A ? sa : sb;
    s.x.push_back(r.freq_ghz);
    s.y.push_back(r.t1_us);
  }
  p.series = {sa, sb};
  if (std::isfinite(a.f1) && std::isfinite(a.f2)) p.bands.push_back({a.f1, a.f2, "#f2c94c", "bandgap"});
  return p;
}

inline svg::Plot cdf_plot(const std::vector<double>& fa, const std::vector<double>& fb, const json& fits) {
  svg::Plot p{"Cumulative distribution of T1", "T1 (us)", "CDF", true, false, {}, {}};
  const auto add = [&](const std::vector<double>& v, const std::string& name, const std::string& color, const json& f) {
    if (v.empty()) return;
    const auto e = fit::empirical_cdf(v);
    p.series.push_back({name, e.t, e.y, svg::Style::step, color});
    if (!f.is_object() || !f.contains("params")) return;
    const double mu = f["params"]["mu"]["value"].get<double>(), sg = f["params"]["sigma"]["value"].get<double>();
    svg::Series line{name + " lognormal", {}, {}, svg::Style::line, color == "#d62728" ? "#ff9896" : "#aec7e8"};
    const double lo = std::log(e.t.front()) - 0.5, hi = std::log(e.t.back()) + 0.5;
    for (int k = 0; k <= 120; ++k) {
      const double x = std::exp(lo + (hi - lo) * k / 120.0);
      line.x.push_back(x);
      line.y.push_back(fit::cdf_lognormal(x, mu, sg));
    }
    p.series.push_back(std::move(line));
  };
  add(fa, "family A", "#d62728", fits.value("family_a", json()));
  add(fb, "family B", "#1f77b4", fits.value("family_b", json()));
  return p;
}

inline svg::Plot dos_plot(const phonon::DosHistogram& dos, const std::optional<phonon::Bandgap>& gap,
                          const std::string& title) {
  svg::Plot p{title, "Frequency (GHz)", "DOS (states / cell / GHz)", false, false, {}, {}};
  svg::Series s{"DOS", {}, {}, svg::Style::step, "#2ca02c"};
  for (std::size_t b = 0; b < dos.size(); ++b) {
    s.x.push_back(dos.f_lo(b));
    s.y.push_back(dos.density(b));
  }
  s.x.push_back(dos.f_hi(dos.size() - 1));
  s.y.push_back(dos.density(dos.size() - 1));
  p.series.push_back(std::move(s));
  if (gap) p.bands.push_back({gap->f1, gap->f2, "#f2c94c", "zero-DOS band"});
  return p;
}

struct DosAnalysis {
  phonon::BandStructure bands;
  phonon::DosHistogram dos;
  std::optional<phonon::Bandgap> gap, exact_gap;
  json result;
};

inline DosAnalysis analyse_dos(const phonon::UnitCell& cell, std::size_t grid, double bin, double lo, double hi) {
  DosAnalysis a;
  a.bands = phonon::compute_band_structure(cell, grid);
  a.dos = phonon::compute_dos(a.bands, bin);
  a.gap = phonon::find_bandgap(a.dos, lo, hi);
  a.exact_gap = phonon::band_gap_edges(a.bands);
  a.result = {{"cell", cell.name},
              {"grid", grid},
              {"bin_width_ghz", bin},
              {"window_ghz", {lo, hi}},
              {"band_count", a.bands.band_count()},
              {"dos_integral", a.dos.integral()},
              {"bandgap", to_json(a.gap)},
              {"exact_gap", to_json(a.exact_gap)}};
  return a;
}

}  // namespace detail

inline CommandOutput run_census(const RunConfig& c, Format fmt) {
  const auto& b = c.block("census");
  const auto a = detail::analyse_census(detail::table_from(c, b), detail::classify_options(b));
  CommandOutput out;
  out.result = {{"n_records", a.records.size()},
                {"n_included", census::included(a.records).size()},
                {"families", to_json(a.split)},
                {"minimum", to_json(a.minimum)},
                {"band", {{"f1_ghz", number(a.f1)}, {"f2_ghz", number(a.f2)}}},
                {"stats", to_json(a.stats)}};
  if (b.value("per_device", true)) {
    json devs = json::array();
    for (const auto& d : census::per_device_bandgaps(a.records, a.split)) devs.push_back(to_json(d));
    out.result["per_device"] = devs;
  }
  if (fmt == Format::json) {
    out.add("census.json", dump(out.result));
  } else {
    std::ostringstream os;
    os << "index,freq_ghz,t1_us,family,in_band\n";
    for (const auto& r : a.records) {
      const auto l = a.split.label_of(r.index);
      const bool in = r.freq_ghz >= a.f1 && r.freq_ghz <= a.f2;
      os << r.index << ',' << format_double(r.freq_ghz) << ',' << format_double(r.t1_us) << ','
         << (!l ? "excluded" : *l == census::FamilyLabel::A ? "A" : "B") << ',' << (in ? 1 : 0) << '\n';
    }
    out.add("census.csv", os.str());
  }
  return out;
}

inline CommandOutput run_dos(const RunConfig& c, Format fmt) {
  const auto& b = detail::require_block(c, "dos");
  const auto cell = detail::cell_from(c, b.at("cell"));
  const auto grid = static_cast<std::size_t>(b.value("grid", 32));
  const double bin = schema::number_or(b, "bin_width_ghz", 0.08);
  const auto [lo, hi] = b.contains("window_ghz") ? schema::range(b.at("window_ghz"), "dos.window_ghz")
                                                 : std::pair<double, double>{3.5, 7.5};
  const auto a = detail::analyse_dos(cell, grid, bin, lo, hi);
  CommandOutput out;
  out.result = a.result;
  std::ostringstream dos_csv, bs_csv;
  phonon::write_dos_csv(dos_csv, a.dos);
  phonon::write_band_structure_csv(bs_csv, a.bands);
  if (fmt == Format::json) out.add("dos.json", dump(out.result));
  out.add("dos.csv", dos_csv.str());
  out.add("band_structure.csv", bs_csv.str());
  out.add("dos.svg", svg::render(detail::dos_plot(a.dos, a.gap, "Phonon density of states: " + cell.name)));
  return out;
}

inline CommandOutput run_simulate(const RunConfig& c, Format fmt) {
  const auto& b = detail::require_block(c, "simulate");
  const auto device = quantum::device_from_json(b.at("device"));
  const int shots = b.value("shots", 0);
  const auto& p = b.at("protocol");
  const auto type = p.at("type").get<std::string>();
  const double amp = schema::number_or(p, "amplitude_mhz", 25.0);
  const auto flux_curve = [&](double f) { return quantum::transmon_freq_at_flux(device, f); };
  CommandOutput out;
  out.result = {{"protocol", type}, {"shots", shots}, {"seed", c.seed}, {"device", quantum::to_json(device)}};
  std::string csv;

  if (type == "sequence") {
    const auto seq = quantum::pulse_sequence_from_json(p.at("sequence"));
    quantum::InitialState init;
    if (p.contains("initial"))
      for (double v : schema::numbers(p.at("initial"), "initial")) init.excitations.push_back(static_cast<int>(v));
    const auto r = quantum::simulate_sequence(device, seq, shots, c.seed, init);
    json pts = json::array();
    std::ostringstream os;
    os << "time_ns,target,population,sampled,sigma\n";
    for (const auto& m : r.points) {
      pts.push_back({{"time_ns", m.time_ns}, {"target", m.target}, {"population", m.population},
                     {"sampled", m.sampled}, {"sigma", m.sigma}});
      os << format_double(m.time_ns) << ',' << m.target << ',' << format_double(m.population) << ','
         << format_double(m.sampled) << ',' << format_double(m.sigma) << '\n';
    }
    out.result["points"] = pts;
    csv = os.str();
  } else if (type == "t1" || type == "ramsey" || type == "two_excitation") {
    quantum::SweepTrace tr;
    std::string axis = "delay_ns";
    if (type == "t1") {
      tr = quantum::t1_trace(device, schema::number_or(p, "flux", 0.0), schema::grid(p.at("delays_ns"), "delays_ns"),
                             amp, shots, c.seed);
      out.result["fit"] = detail::attempt([&] {
        return to_json(fit::fit_decay(quantum::to_fit_trace(tr, 1e-3), fit::DecayModel::simple));
      });
    } else if (type == "ramsey") {
      tr = quantum::ramsey_trace(device, schema::grid(p.at("delays_ns"), "delays_ns"),
                                 p.at("detuning_mhz").get<double>(), amp, shots, c.seed);
      out.result["fit"] =
          detail::attempt([&] { return to_json(fit::fit_oscillatory_decay(quantum::to_fit_trace(tr, 1e-3))); });
    } else {
      axis = "duration_ns";
      tr = quantum::two_excitation_swap_trace(device, static_cast<std::size_t>(p.value("tls_index", 0)),
                                              schema::grid(p.at("durations_ns"), "durations_ns"), shots, c.seed);
    }
    out.result["trace"] = detail::sweep_json(tr, axis);
    csv = detail::sweep_csv(tr, axis);
  } else {
    spectro::SpectrumMap map;
    const bool analyse = p.value("analyse", true);
    const auto fluxes = schema::grid(p.at("fluxes"), "fluxes");
    if (type == "swap_spectroscopy") {
      map = quantum::swap_spectroscopy_map(device, fluxes, schema::grid(p.at("durations_ns"), "durations_ns"), amp,
                                           shots, c.seed);
      if (analyse) {
        const auto pad = static_cast<std::size_t>(std::max(1, p.value("pad_factor", 4)));
        out.result["analysis"] = detail::attempt([&] {
          const auto cols = spectro::chevron_fft(map, {false, pad, 1, {}});
          json peaks = json::array();
          for (const auto& col : cols)
            peaks.push_back({{"flux", col.axis1}, {"peak_mhz", col.peak_mhz}, {"bin_mhz", col.bin_mhz}});
          json j{{"columns", peaks}};
          j["crossing"] = detail::attempt([&] { return detail::crossing_json(spectro::fit_chevron_crossing(cols, flux_curve)); });
          return j;
        });
      }
    } else {
      map = quantum::microwave_spectroscopy_map(device, fluxes, schema::grid(p.at("freqs_ghz"), "freqs_ghz"),
                                                schema::number_or(p, "amplitude_mhz", 0.25),
                                                schema::number_or(p, "duration_ns", 1000.0), shots, c.seed);
      if (analyse)
        out.result["analysis"] = detail::attempt([&] {
          return json{{"crossing", detail::crossing_json(spectro::fit_avoided_crossing(map, flux_curve))}};
        });
    }
    out.result["map"] = detail::map_json(map);
    std::ostringstream os;
    spectro::write_spectrum_csv(os, map);
    csv = os.str();
  }
  if (fmt == Format::json)
    out.add("simulate.json", dump(out.result));
  else
    out.add("simulate.csv", csv);
  return out;
}

inline CommandOutput run_fit(const RunConfig& c, Format fmt) {
  const auto& b = detail::require_block(c, "fit");
  const auto kind = b.at("kind").get<std::string>();
  CommandOutput out;
  out.result = {{"kind", kind}};
  std::vector<fit::FitResult> fits;

  if (kind == "decay" || kind == "oscillatory") {
    std::istringstream is(read_file(c.resolve(b.at("trace").get<std::string>())));
    const auto tr = parse_trace_csv(is);
    if (kind == "oscillatory") {
      fits.push_back(fit::fit_oscillatory_decay(tr));
    } else {
      const auto model = b.value("model", std::string("simple"));
      for (auto m : {fit::DecayModel::simple, fit::DecayModel::stretched, fit::DecayModel::double_exp})
        if (model == "all" || model == fit::to_string(m)) fits.push_back(fit::fit_decay(tr, m));
    }
  } else if (kind == "cdf") {
    std::vector<std::pair<std::string, std::vector<double>>> sets;
    if (b.contains("samples")) {
      sets.emplace_back("samples", schema::numbers(b.at("samples"), "fit.samples"));
    } else {
      const auto a = detail::analyse_census(detail::table_from(c, b), {});
      auto [fa, fb] = detail::family_t1(a);
      sets.emplace_back("family_a", std::move(fa));
      sets.emplace_back("family_b", std::move(fb));
    }
    json groups = json::object();
    for (const auto& [name, v] : sets) {
      json g = json::object();
      for (auto m : {fit::CdfModel::normal, fit::CdfModel::exponential, fit::CdfModel::lognormal}) {
        auto r = fit::fit_cdf(v, m);
        g[fit::to_string(m)] = to_json(r);
        fits.push_back(std::move(r));
      }
      g["n"] = v.size();
      g["sample_skewness"] = number(stats::skewness(v));
      groups[name] = g;
    }
    out.result["groups"] = groups;
  } else if (kind == "density") {
    std::vector<double> g;
    if (b.contains("g_mhz")) {
      g = schema::numbers(b.at("g_mhz"), "fit.g_mhz");
    } else {
      for (const auto& r : detail::table_from(c, b))
        if (r.g_mhz) g.push_back(*r.g_mhz);
    }
    fits.push_back(fit::fit_tls_density(g, schema::number_or(b, "area_um2", 1.66), schema::number_or(b, "span_ghz", 22.0)));
    out.result["n"] = g.size();
  } else {
    fit::QCurve curve{b.at("omega_ghz").get<double>(), schema::numbers(b.at("t_kelvin"), "t_kelvin"),
                      schema::numbers(b.at("q"), "q")};
    const auto s = fit::analyse_qp_saturation(curve, b.at("t_branch_min_k").get<double>());
    fits = {s.qp_branch, s.teff};
    out.result["t_eff_k"] = s.t_eff;
    out.result["saturation_k"] = s.saturation_kelvin;
  }

  if (kind != "cdf") {
    json arr = json::array();
    for (const auto& f : fits) arr.push_back(to_json(f));
    out.result["fits"] = arr;
  }
  if (fmt == Format::json) {
    out.add("fit.json", dump(out.result));
  } else {
    std::string csv;
    for (std::size_t i = 0; i < fits.size(); ++i) {
      auto part = detail::fit_csv(fits[i]);
      if (i > 0) part.erase(0, part.find('\n') + 1);
      csv += part;
    }
    out.add("fit.csv", csv);
  }
  return out;
}

inline SynthParams synth_params(const json& b) {
  SynthParams p;
  p.n_tls = static_cast<std::size_t>(std::max(0, b.value("n_tls", static_cast<int>(p.n_tls))));
  if (b.contains("freq_range_ghz")) std::tie(p.f_lo_ghz, p.f_hi_ghz) = schema::range(b.at("freq_range_ghz"), "synth.freq_range_ghz");
  if (b.contains("gap_ghz")) std::tie(p.gap_lo_ghz, p.gap_hi_ghz) = schema::range(b.at("gap_ghz"), "synth.gap_ghz");
  if (b.contains("g_range_mhz")) std::tie(p.g_min_mhz, p.g_max_mhz) = schema::range(b.at("g_range_mhz"), "synth.g_range_mhz");
  p.median_a_us = schema::number_or(b, "median_a_us", p.median_a_us);
  p.median_b_us = schema::number_or(b, "median_b_us", p.median_b_us);
  p.sigma_a = schema::number_or(b, "sigma_a", p.sigma_a);
  p.sigma_b = schema::number_or(b, "sigma_b", p.sigma_b);
  p.outlier_fraction = schema::number_or(b, "outlier_fraction", p.outlier_fraction);
  p.trace_points = static_cast<std::size_t>(std::max(0, b.value("trace_points", static_cast<int>(p.trace_points))));
  p.trace_noise = schema::number_or(b, "trace_noise", p.trace_noise);
  p.devices = b.value("devices", p.devices);
  return p;
}

inline CommandOutput run_synth(const RunConfig& c, Format) {
  const auto p = synth_params(c.block("synth"));
  const auto ds = generate_synthetic_dataset(p, c.seed);
  CommandOutput out;
  std::ostringstream table;
  table << "# Synthetic TLS census, seed " << c.seed << ", planted band [" << format_double(p.gap_lo_ghz) << ", "
        << format_double(p.gap_hi_ghz) << "] GHz\n";
  write_tls_table(table, ds.records);
  out.add("tls_table.csv", table.str());
  json planted = json::array();
  for (std::size_t i = 0; i < ds.records.size(); ++i) {
    std::ostringstream tr;
    write_trace_csv(tr, ds.traces[i]);
    char name[48];
    std::snprintf(name, sizeof name, "traces/tls_%03d.csv", ds.records[i].index);
    out.add(name, tr.str());
    planted.push_back({{"index", ds.records[i].index}, {"family", ds.planted_b[i] ? "B" : "A"}, {"trace", name}});
  }
  out.result = {{"seed", c.seed},
                {"params",
                 {{"n_tls", p.n_tls},
                  {"freq_range_ghz", {p.f_lo_ghz, p.f_hi_ghz}},
                  {"gap_ghz", {p.gap_lo_ghz, p.gap_hi_ghz}},
                  {"median_a_us", p.median_a_us},
                  {"median_b_us", p.median_b_us},
                  {"sigma_a", p.sigma_a},
                  {"sigma_b", p.sigma_b},
                  {"outlier_fraction", p.outlier_fraction},
                  {"g_range_mhz", {p.g_min_mhz, p.g_max_mhz}},
                  {"trace_points", p.trace_points},
                  {"trace_noise", p.trace_noise},
                  {"devices", p.devices}}},
                {"table", "tls_table.csv"},
                {"records", planted}};
  out.add("manifest.json", dump(out.result));
  return out;
}

inline CommandOutput run_report(const RunConfig& c, Format) {
  const auto& b = c.block("report");
  CommandOutput out;
  json report = json::object();

  const auto a = detail::analyse_census(detail::table_from(c, b), {});
  report["census"] = {{"families", to_json(a.split)},
                      {"minimum", to_json(a.minimum)},
                      {"band", {{"f1_ghz", number(a.f1)}, {"f2_ghz", number(a.f2)}}},
                      {"stats", to_json(a.stats)}};
  const auto [fa, fb] = detail::family_t1(a);
  json fits = json::object();
  fits["family_a"] = detail::attempt([&] { return to_json(fit::fit_cdf(fa, fit::CdfModel::lognormal)); });
  fits["family_b"] = detail::attempt([&] { return to_json(fit::fit_cdf(fb, fit::CdfModel::lognormal)); });
  report["t1_distributions"] = fits;
  std::vector<double> g;
  for (const auto& r : a.records)
    if (r.g_mhz) g.push_back(*r.g_mhz);
  report["tls_density"] = detail::attempt([&] { return to_json(fit::fit_tls_density(g, 1.66, 22.0)); });
  out.add("t1_vs_freq.svg", svg::render(detail::t1_scatter_plot(a)));
  out.add("t1_cdf.svg", svg::render(detail::cdf_plot(fa, fb, fits)));

  const auto cell = detail::cell_from(c, b.value("cell", json("data:cells/cross_shield_0nm.json")));
  const auto d = detail::analyse_dos(cell, static_cast<std::size_t>(b.value("grid", 32)), 0.08, 3.5, 7.5);
  report["dos"] = d.result;
  out.add("dos.svg", svg::render(detail::dos_plot(d.dos, d.gap, "Phonon density of states: " + cell.name)));

  loss::QModelParams qp;
  double omega = 5.0;
  if (b.contains("q_model")) {
    const auto& q = b.at("q_model");
    qp.q_tls0 = schema::number_or(q, "q_tls0", qp.q_tls0);
    qp.q_qp0 = schema::number_or(q, "q_qp0", qp.q_qp0);
    qp.q_other = schema::number_or(q, "q_other", qp.q_other);
    qp.D = schema::number_or(q, "D", qp.D);
    qp.beta1 = schema::number_or(q, "beta1", qp.beta1);
    qp.beta2 = schema::number_or(q, "beta2", qp.beta2);
    qp.delta0 = schema::number_or(q, "delta0", qp.delta0);
    qp.nbar = schema::number_or(q, "nbar", qp.nbar);
    omega = schema::number_or(q, "omega_ghz", omega);
  }
  svg::Plot qplot{"Quality factor against temperature", "T (mK)", "Q", false, true, {}, {}};
  svg::Series model{"Q_total model", {}, {}, svg::Style::line, "#9467bd"};
  json curve = json::array();
  for (int k = 0; k <= 60; ++k) {
    const double t = 0.01 + 0.29 * k / 60.0;
    const double q = loss::q_total(omega, t, qp);
    model.x.push_back(1e3 * t);
    model.y.push_back(q);
    curve.push_back({{"t_kelvin", t}, {"q", q}});
  }
  qplot.series.push_back(std::move(model));
  report["q_model"] = {{"omega_ghz", omega}, {"params", to_json(qp)}, {"curve", curve}};
  if (b.contains("q_curve")) {
    const auto& q = b.at("q_curve");
    fit::QCurve data{q.at("omega_ghz").get<double>(), schema::numbers(q.at("t_kelvin"), "t_kelvin"),
                     schema::numbers(q.at("q"), "q")};
    svg::Series pts{"measured", {}, {}, svg::Style::points, "#8c564b"};
    for (std::size_t i = 0; i < data.q.size(); ++i) {
      pts.x.push_back(1e3 * data.t_kelvin[i]);
      pts.y.push_back(data.q[i]);
    }
    qplot.series.push_back(std::move(pts));
    if (q.contains("t_branch_min_k"))
      report["q_saturation"] = detail::attempt([&] {
        const auto s = fit::analyse_qp_saturation(data, q.at("t_branch_min_k").get<double>());
        return json{{"qp_branch", to_json(s.qp_branch)}, {"teff", to_json(s.teff)},
                    {"t_eff_k", s.t_eff},               {"saturation_k", s.saturation_kelvin}};
      });
  }
  out.add("q_vs_t.svg", svg::render(qplot));
  report["plots"] = {"t1_vs_freq.svg", "t1_cdf.svg", "dos.svg", "q_vs_t.svg"};
  out.result = report;
  out.files.insert(out.files.begin(), {"report.json", dump(report)});
  return out;
}

inline CommandOutput run_command(const std::string& command, const RunConfig& c, Format fmt) {
  if (command == "census") return run_census(c, fmt);
  if (command == "dos") return run_dos(c, fmt);
  if (command == "simulate") return run_simulate(c, fmt);
  if (command == "fit") return run_fit(c, fmt);
  if (command == "synth") return run_synth(c, fmt);
  if (command == "report") return run_report(c, fmt);
  throw SchemaError("unknown command '" + command + "'");
}

}  // namespace tlsbath::io
