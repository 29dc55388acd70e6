// Copyright 2026 The wecs-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// wecs_sim: command-line front end for the sensorless WECS simulator.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wecs/cli/commands.hpp"
#include "wecs/error.hpp"

namespace {

using wecs::cli::CliOptions;

struct Flags {
  std::string config;
  std::string out = "out";
  std::optional<int> jobs;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, Flags& flags, bool with_output) {
  cmd->add_option("--config", flags.config, "configuration file")->required();
  if (with_output) {
    cmd->add_option("--out", flags.out, "output directory")->capture_default_str();
    cmd->add_option("--jobs", flags.jobs, "worker threads (default: $WECS_SIM_JOBS or 1)");
  }
  cmd->add_option("--seed", flags.seed, "overrides sim.seed");
}

int report(const wecs::Error& e) {
  std::cerr << "error[" << wecs::to_string(e.kind()) << "]: " << e.what() << '\n';
  return wecs::cli::exit_code_for(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensorless wind energy conversion system simulator"};
  app.set_version_flag("--version", std::string(wecs::cli::tool_version()));
  app.require_subcommand(1);

  Flags flags;
  CLI::App* run = app.add_subcommand("run", "simulate the [sim] scenario");
  CLI::App* sweep = app.add_subcommand("sweep", "simulate every [sweep] scenario");
  CLI::App* gains = app.add_subcommand("gains", "print the gain and observer bound report");
  CLI::App* aep = app.add_subcommand("aep", "power curves and annual energy production");
  add_common(run, flags, true);
  add_common(sweep, flags, true);
  add_common(gains, flags, false);
  add_common(aep, flags, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : wecs::cli::kExitParse;
  }

  try {
    CliOptions options;
    options.config_path = flags.config;
    options.out_dir = flags.out;
    options.seed = flags.seed;
    if (gains->parsed()) {
      wecs::cli::cmd_gains(options, std::cout);
      return wecs::cli::kExitOk;
    }
    options.jobs = wecs::cli::resolve_jobs(flags.jobs);
    wecs::cli::RunManifest manifest;
    if (run->parsed()) {
      manifest = wecs::cli::cmd_run(options, std::cout);
    } else if (sweep->parsed()) {
      manifest = wecs::cli::cmd_sweep(options, std::cout);
    } else {
      manifest = wecs::cli::cmd_aep(options, std::cout);
    }
    std::cout << "wrote " << manifest.files.size() << " files and manifest.json to "
              << manifest.output_dir << '\n';
    if (manifest.diverged) {
      std::cerr << "error[divergence]: " << manifest.divergence_detail << '\n';
      return wecs::cli::kExitDivergence;
    }
    return wecs::cli::kExitOk;
  } catch (const wecs::Error& e) {
    return report(e);
  } catch (const std::exception& e) {
    std::cerr << "error[other]: " << e.what() << '\n';
    return wecs::cli::kExitOther;
  }
}
