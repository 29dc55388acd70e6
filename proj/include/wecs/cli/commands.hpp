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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "wecs/error.hpp"

namespace wecs::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitOther = 1,
  kExitParse = 2,
  kExitValidation = 3,
  kExitIo = 4,
  kExitDivergence = 5,
};

int exit_code_for(ErrorKind kind);

std::string_view tool_version();

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

// `--jobs` when given, else WECS_SIM_JOBS, else 1.
int resolve_jobs(std::optional<int> flag);

struct RunManifest {
  std::string command;
  std::string config_path;
  std::string output_dir;
  std::string tool_version;
  std::string config_hash;
  std::vector<std::string> files;  // relative to output_dir, excluding the manifest
  bool diverged = false;
  std::string divergence_detail;
};

std::string manifest_json(const RunManifest& manifest);

// Each command writes its outputs plus manifest.json into options.out_dir.
// A diverged scenario still produces every file; the manifest records it.
RunManifest cmd_run(const CliOptions& options, std::ostream& log);
RunManifest cmd_sweep(const CliOptions& options, std::ostream& log);
RunManifest cmd_aep(const CliOptions& options, std::ostream& log);
// Prints the gain report; warnings go to the same stream.
void cmd_gains(const CliOptions& options, std::ostream& out);

}  // namespace wecs::cli
