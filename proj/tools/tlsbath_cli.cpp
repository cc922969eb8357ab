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

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tlsbath/io/commands.hpp"

#ifndef TLSBATH_DATA_DIR
#define TLSBATH_DATA_DIR "data"
#endif

namespace fs = std::filesystem;
using namespace tlsbath;

namespace {

enum Exit { ok = 0, failure = 1, missing_input = 2, schema_violation = 3 };

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
  std::string data_dir = TLSBATH_DATA_DIR;
};

int run(const std::string& command, const Options& opt) {
  io::RunConfig cfg = opt.config.empty() ? io::parse_run_config(io::json::object(), fs::current_path(), opt.data_dir)
                                         : io::load_run_config(opt.config, opt.data_dir);
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.out.empty()) cfg.output_dir = opt.out;
  const auto out = io::run_command(command, cfg, io::parse_format(opt.format));
  const fs::path dir = opt.out.empty() && !opt.config.empty() ? cfg.resolve(cfg.output_dir) : fs::path(cfg.output_dir);
  for (const auto& [name, content] : out.files) {
    io::write_file_atomic(dir / name, content);
    std::cout << (dir / name).string() << '\n';
  }
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmon-TLS census, phonon bandgap and spectroscopy toolkit"};
  app.require_subcommand(1, 1);
  Options opt;
  for (const auto& name : io::command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " command");
    sub->add_option("--config", opt.config, "JSON run configuration");
    sub->add_option("--seed", opt.seed, "64-bit seed, overrides the config");
    sub->add_option("--out", opt.out, "output directory, overrides the config");
    sub->add_option("--format", opt.format, "result format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--data-dir", opt.data_dir, "directory behind the data: path prefix");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return schema_violation;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const MissingInput& e) {
    std::cerr << "tlsbath " << command << ": missing input: " << e.what() << '\n';
    return missing_input;
  } catch (const SchemaError& e) {
    std::cerr << "tlsbath " << command << ": schema violation: " << e.what() << '\n';
    return schema_violation;
  } catch (const ParseError& e) {
    std::cerr << "tlsbath " << command << ": malformed input: " << e.what() << '\n';
    return schema_violation;
  } catch (const std::exception& e) {
    std::cerr << "tlsbath " << command << ": " << e.what() << '\n';
    return failure;
  }
}
