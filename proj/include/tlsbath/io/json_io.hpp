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
#include <optional>
#include <string>

#include <json.hpp>

#include "tlsbath/census/census.hpp"
#include "tlsbath/fit/fit_result.hpp"
#include "tlsbath/loss/models.hpp"
#include "tlsbath/phonon/dos.hpp"

namespace tlsbath::io {

using nlohmann::json;

// Non-finite values have no JSON literal; they are written as null.
inline json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json number(const std::optional<double>& v) { return v ? number(*v) : json(nullptr); }

inline json to_json(const fit::FitResult& r) {
  json params = json::object();
  for (std::size_t i = 0; i < r.names.size(); ++i)
    params[r.names[i]] = {{"value", number(r.params[i])}, {"sigma", number(r.sigmas[i])}};
  json derived = json::object();
  for (const auto& [k, v] : r.derived) derived[k] = number(v);
  return {{"model", r.model_id},   {"params", params},         {"derived", derived},
          {"rss", number(r.rss)},  {"converged", r.converged}, {"iterations", r.iterations}};
}

inline json to_json(const census::EdgeInterval& e) {
  return {{"lo", number(e.lo)}, {"hi", number(e.hi)}, {"lo_open", e.lo_open}, {"hi_open", e.hi_open}};
}

inline json to_json(const census::CostMinimum& m) {
  json plateaus = json::array();
  for (const auto& p : m.plateaus)
    plateaus.push_back({{"f1", to_json(p.f1)},
                        {"f2", to_json(p.f2)},
                        {"f1_ghz", number(p.f1_representative())},
                        {"f2_ghz", number(p.f2_representative())}});
  return {{"c_min", number(m.c_min)}, {"perfect_separation", std::isinf(m.c_min)}, {"plateaus", plateaus}};
}

inline json to_json(const census::CensusStats& s) {
  return {{"n_in", s.n_in},
          {"n_out", s.n_out},
          {"median_in_us", number(s.median_in)},
          {"median_out_us", number(s.median_out)},
          {"mean_in_us", number(s.mean_in)},
          {"mean_out_us", number(s.mean_out)},
          {"skew_in", number(s.skew_in)},
          {"skew_out", number(s.skew_out)},
          {"outliers", s.outliers}};
}

inline json to_json(const census::FamilySplit& f) {
  return {{"family_a", f.a}, {"family_b", f.b}, {"gap_lo_us", f.gap_lo_us}, {"gap_hi_us", f.gap_hi_us}};
}

inline json to_json(const census::DeviceBandgap& d) {
  return {{"device", d.device}, {"minimum", to_json(d.minimum)}, {"stats", to_json(d.stats)}};
}

inline json to_json(const census::TlsRecord& r) {
  return {{"index", r.index},
          {"freq_ghz", r.freq_ghz},
          {"g_mhz", number(r.g_mhz)},
          {"t1_us", r.t1_us},
          {"t1_err_us", r.t1_err_us},
          {"device", r.device},
          {"cooldown", r.cooldown},
          {"method", census::to_string(r.method)},
          {"excluded", r.excluded}};
}

inline json to_json(const phonon::Bandgap& g) { return {{"f1_ghz", g.f1}, {"f2_ghz", g.f2}, {"width_ghz", g.width()}}; }

inline json to_json(const std::optional<phonon::Bandgap>& g) { return g ? to_json(*g) : json(nullptr); }

inline json to_json(const loss::QModelParams& p) {
  return {{"q_tls0", p.q_tls0}, {"q_qp0", p.q_qp0}, {"q_other", p.q_other}, {"D", p.D},
          {"beta1", p.beta1},   {"beta2", p.beta2}, {"delta0", p.delta0},   {"nbar", p.nbar}};
}

inline json to_json(const loss::TeffParams& p) { return {{"A", p.A}, {"B", p.B}, {"C", p.C}}; }

}  // namespace tlsbath::io
