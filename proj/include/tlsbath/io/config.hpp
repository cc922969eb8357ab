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

#include <cstdint>
#include <filesystem>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tlsbath/core/error.hpp"
#include "tlsbath/io/atomic_file.hpp"
#include "tlsbath/quantum/protocols.hpp"

namespace tlsbath::io {

using nlohmann::json;

namespace schema {

enum class Kind { number, integer, boolean, string, array, object, any };

inline const char* name(Kind k) {
  switch (k) {
    case Kind::number: return "a number";
    case Kind::integer: return "an integer";
    case Kind::boolean: return "a boolean";
    case Kind::string: return "a string";
    case Kind::array: return "an array";
    case Kind::object: return "an object";
    case Kind::any: return "a value";
  }
  return "a value";
}

inline bool matches(const json& v, Kind k) {
  switch (k) {
    case Kind::number: return v.is_number();
    case Kind::integer: return v.is_number_integer();
    case Kind::boolean: return v.is_boolean();
    case Kind::string: return v.is_string();
    case Kind::array: return v.is_array();
    case Kind::object: return v.is_object();
    case Kind::any: return true;
  }
  return false;
}

struct Field {
  const char* key;
  Kind kind;
  bool required = false;
};

// Rejects unknown keys, missing required keys and mistyped values. `where` names the block.
inline void check(const json& j, const std::string& where, std::initializer_list<Field> fields) {
  if (!j.is_object()) throw SchemaError(where + ": expected an object");
  for (const auto& [k, v] : j.items()) {
    const Field* f = nullptr;
    for (const auto& c : fields)
      if (k == c.key) f = &c;
    if (!f) throw SchemaError(where + ": unknown key '" + k + "'");
    if (!matches(v, f->kind)) throw SchemaError(where + "." + k + ": expected " + name(f->kind));
  }
  for (const auto& c : fields)
    if (c.required && !j.contains(c.key)) throw SchemaError(where + ": missing key '" + c.key + "'");
}

inline double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

inline std::vector<double> numbers(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw SchemaError(where + ": expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// A sample grid: an explicit array, or {"start", "stop", "count"}.
inline std::vector<double> grid(const json& j, const std::string& where) {
  if (j.is_array()) return numbers(j, where);
  check(j, where, {{"start", Kind::number, true}, {"stop", Kind::number, true}, {"count", Kind::integer, true}});
  const auto n = j.at("count").get<long long>();
  if (n < 1 || n > 1000000) throw SchemaError(where + ".count: must be in [1, 1000000]");
  return quantum::linspace(j.at("start").get<double>(), j.at("stop").get<double>(), static_cast<std::size_t>(n));
}

inline std::pair<double, double> range(const json& j, const std::string& where) {
  const auto v = numbers(j, where);
  if (v.size() != 2 || !(v[0] < v[1])) throw SchemaError(where + ": expected [lo, hi] with lo < hi");
  return {v[0], v[1]};
}

}  // namespace schema

inline const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"simulate", "dos", "census", "fit", "synth", "report"};
  return names;
}

// One document drives every subcommand: a seed, an output directory and one optional block per command.
struct RunConfig {
  std::uint64_t seed = 0;
  std::string output_dir = "out";
  json blocks = json::object();  // command name -> parameter block
  std::filesystem::path base_dir = ".";
  std::filesystem::path data_dir = ".";

  bool has(const std::string& command) const { return blocks.contains(command); }
  const json& block(const std::string& command) const {
    static const json empty = json::object();
    return blocks.contains(command) ? blocks.at(command) : empty;
  }

  // Relative paths resolve against the config file; a "data:" prefix names the bundled data directory.
  std::filesystem::path resolve(const std::string& p) const {
    if (p.rfind("data:", 0) == 0) return data_dir / p.substr(5);
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base_dir / path;
  }
};

namespace detail {

inline void validate_device(const json& j, const std::string& where) {
  try {
    (void)quantum::device_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(where + ": " + e.what());
  } catch (const InvalidArgument& e) {
    throw SchemaError(where + ": " + e.what());
  }
}

inline void validate_protocol(const json& j) {
  using schema::Kind;
  const std::string where = "simulate.protocol";
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string())
    throw SchemaError(where + ": expected an object with a string 'type'");
  const auto type = j.at("type").get<std::string>();
  if (type == "sequence") {
    schema::check(j, where, {{"type", Kind::string, true}, {"sequence", Kind::object, true}, {"initial", Kind::array}});
    try {
      (void)quantum::pulse_sequence_from_json(j.at("sequence"));
    } catch (const Error& e) {
      throw SchemaError(where + ".sequence: " + e.what());
    }
    if (j.contains("initial")) (void)schema::numbers(j.at("initial"), where + ".initial");
  } else if (type == "t1") {
    schema::check(j, where, {{"type", Kind::string, true}, {"flux", Kind::number}, {"delays_ns", Kind::any, true},
                             {"amplitude_mhz", Kind::number}});
    (void)schema::grid(j.at("delays_ns"), where + ".delays_ns");
  } else if (type == "ramsey") {
    schema::check(j, where, {{"type", Kind::string, true}, {"delays_ns", Kind::any, true},
                             {"detuning_mhz", Kind::number, true}, {"amplitude_mhz", Kind::number}});
    (void)schema::grid(j.at("delays_ns"), where + ".delays_ns");
  } else if (type == "swap_spectroscopy") {
    schema::check(j, where, {{"type", Kind::string, true}, {"fluxes", Kind::any, true},
                             {"durations_ns", Kind::any, true}, {"amplitude_mhz", Kind::number},
                             {"analyse", Kind::boolean}, {"pad_factor", Kind::integer}});
    (void)schema::grid(j.at("fluxes"), where + ".fluxes");
    (void)schema::grid(j.at("durations_ns"), where + ".durations_ns");
  } else if (type == "microwave_spectroscopy") {
    schema::check(j, where, {{"type", Kind::string, true}, {"fluxes", Kind::any, true}, {"freqs_ghz", Kind::any, true},
                             {"amplitude_mhz", Kind::number}, {"duration_ns", Kind::number}, {"analyse", Kind::boolean}});
    (void)schema::grid(j.at("fluxes"), where + ".fluxes");
    (void)schema::grid(j.at("freqs_ghz"), where + ".freqs_ghz");
  } else if (type == "two_excitation") {
    schema::check(j, where, {{"type", Kind::string, true}, {"tls_index", Kind::integer}, {"durations_ns", Kind::any, true}});
    (void)schema::grid(j.at("durations_ns"), where + ".durations_ns");
  } else {
    throw SchemaError(where + ".type: unknown protocol '" + type + "'");
  }
}

inline void validate_block(const std::string& command, const json& j) {
  using schema::Kind;
  if (command == "simulate") {
    schema::check(j, command, {{"device", Kind::object, true}, {"protocol", Kind::object, true}, {"shots", Kind::integer}});
    validate_device(j.at("device"), "simulate.device");
    validate_protocol(j.at("protocol"));
    if (j.contains("shots") && j.at("shots").get<long long>() < 0) throw SchemaError("simulate.shots: must be >= 0");
  } else if (command == "dos") {
    schema::check(j, command, {{"cell", Kind::any, true}, {"grid", Kind::integer}, {"bin_width_ghz", Kind::number},
                               {"window_ghz", Kind::array}});
    if (!j.at("cell").is_string() && !j.at("cell").is_object())
      throw SchemaError("dos.cell: expected a path or an object");
    if (j.contains("grid") && j.at("grid").get<long long>() < 2) throw SchemaError("dos.grid: must be >= 2");
    if (j.contains("window_ghz")) (void)schema::range(j.at("window_ghz"), "dos.window_ghz");
    if (j.contains("bin_width_ghz") && !(j.at("bin_width_ghz").get<double>() > 0.0))
      throw SchemaError("dos.bin_width_ghz: must be positive");
  } else if (command == "census") {
    schema::check(j, command, {{"table", Kind::string}, {"window_lo_us", Kind::number}, {"window_hi_us", Kind::number},
                               {"min_ratio", Kind::number}, {"per_device", Kind::boolean}});
  } else if (command == "fit") {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
      throw SchemaError("fit: expected an object with a string 'kind'");
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "decay") {
      schema::check(j, command, {{"kind", Kind::string, true}, {"trace", Kind::string, true}, {"model", Kind::string}});
      if (j.contains("model")) {
        const auto m = j.at("model").get<std::string>();
        if (m != "simple" && m != "stretched" && m != "double_exp" && m != "all")
          throw SchemaError("fit.model: expected simple, stretched, double_exp or all");
      }
    } else if (kind == "oscillatory") {
      schema::check(j, command, {{"kind", Kind::string, true}, {"trace", Kind::string, true}});
    } else if (kind == "cdf") {
      schema::check(j, command, {{"kind", Kind::string, true}, {"samples", Kind::array}, {"table", Kind::string}});
      if (j.contains("samples") == j.contains("table")) throw SchemaError("fit: cdf needs exactly one of samples, table");
      if (j.contains("samples")) (void)schema::numbers(j.at("samples"), "fit.samples");
    } else if (kind == "density") {
      schema::check(j, command, {{"kind", Kind::string, true}, {"g_mhz", Kind::array}, {"table", Kind::string},
                                 {"area_um2", Kind::number}, {"span_ghz", Kind::number}});
      if (j.contains("g_mhz") == j.contains("table")) throw SchemaError("fit: density needs exactly one of g_mhz, table");
      if (j.contains("g_mhz")) (void)schema::numbers(j.at("g_mhz"), "fit.g_mhz");
    } else if (kind == "saturation") {
      schema::check(j, command, {{"kind", Kind::string, true}, {"omega_ghz", Kind::number, true},
                                 {"t_kelvin", Kind::array, true}, {"q", Kind::array, true},
                                 {"t_branch_min_k", Kind::number, true}});
      if (schema::numbers(j.at("t_kelvin"), "fit.t_kelvin").size() != schema::numbers(j.at("q"), "fit.q").size())
        throw SchemaError("fit: t_kelvin and q differ in length");
    } else {
      throw SchemaError("fit.kind: unknown kind '" + kind + "'");
    }
  } else if (command == "synth") {
    schema::check(j, command, {{"n_tls", Kind::integer},        {"freq_range_ghz", Kind::array},
                               {"gap_ghz", Kind::array},        {"median_a_us", Kind::number},
                               {"median_b_us", Kind::number},   {"sigma_a", Kind::number},
                               {"sigma_b", Kind::number},       {"outlier_fraction", Kind::number},
                               {"g_range_mhz", Kind::array},    {"trace_points", Kind::integer},
                               {"trace_noise", Kind::number},   {"devices", Kind::integer}});
  } else if (command == "report") {
    schema::check(j, command, {{"table", Kind::string}, {"cell", Kind::any}, {"grid", Kind::integer},
                               {"q_curve", Kind::object}, {"q_model", Kind::object}});
    if (j.contains("cell") && !j.at("cell").is_string() && !j.at("cell").is_object())
      throw SchemaError("report.cell: expected a path or an object");
    if (j.contains("q_curve")) {
      const auto& q = j.at("q_curve");
      schema::check(q, "report.q_curve", {{"omega_ghz", Kind::number, true}, {"t_kelvin", Kind::array, true},
                                          {"q", Kind::array, true}, {"t_branch_min_k", Kind::number}});
      if (schema::numbers(q.at("t_kelvin"), "report.q_curve.t_kelvin").size() !=
          schema::numbers(q.at("q"), "report.q_curve.q").size())
        throw SchemaError("report.q_curve: t_kelvin and q differ in length");
    }
    if (j.contains("q_model"))
      schema::check(j.at("q_model"), "report.q_model",
                    {{"q_tls0", Kind::number}, {"q_qp0", Kind::number}, {"q_other", Kind::number}, {"D", Kind::number},
                     {"beta1", Kind::number}, {"beta2", Kind::number}, {"delta0", Kind::number}, {"nbar", Kind::number},
                     {"omega_ghz", Kind::number}});
  }
}

}  // namespace detail

inline RunConfig parse_run_config(const json& j, std::filesystem::path base_dir = ".",
                                  std::filesystem::path data_dir = ".") {
  if (!j.is_object()) throw SchemaError("config: expected a JSON object");
  RunConfig c;
  c.base_dir = std::move(base_dir);
  c.data_dir = std::move(data_dir);
  for (const auto& [k, v] : j.items()) {
    if (k == "seed") {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
        throw SchemaError("seed: expected a non-negative integer");
      c.seed = v.get<std::uint64_t>();
    } else if (k == "output_dir") {
      if (!v.is_string()) throw SchemaError("output_dir: expected a string");
      c.output_dir = v.get<std::string>();
    } else if (std::find(command_names().begin(), command_names().end(), k) != command_names().end()) {
      detail::validate_block(k, v);
      c.blocks[k] = v;
    } else {
      throw SchemaError("config: unknown key '" + k + "'");
    }
  }
  return c;
}

inline RunConfig load_run_config(const std::filesystem::path& path, std::filesystem::path data_dir = ".") {
  const auto text = read_file(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(path.string() + ": invalid JSON: " + e.what());
  }
  return parse_run_config(j, path.has_parent_path() ? path.parent_path() : std::filesystem::path("."),
                          std::move(data_dir));
}

}  // namespace tlsbath::io
