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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wecs/error.hpp"
#include "wecs/sim.hpp"
#include "wecs/wind.hpp"

namespace wecs::cli {

struct WindSpec {
  enum class Kind { kConstant, kTurbulent, kFile };
  Kind kind = Kind::kConstant;
  double speed = 6.0;       // constant, m/s
  double mean = 6.0;        // turbulent, m/s
  double intensity = 0.15;  // turbulent
  double dt = 0.05;         // turbulent sample spacing, s
  double duration = 0.0;    // s; 0 means sim.t_end_s
  std::string file;         // file, relative paths resolve against the config
};

// One row of the scenario matrix.
struct ScenarioTuple {
  Mode mode = Mode::kSensorless;
  double delta_L = 0.0;  // H
  double delta_R = 0.0;  // ohm
  std::string name;
  int line = 0;
};

struct RunConfig {
  std::string path;
  ScenarioConfig base;  // everything but the wind series and the scenario deltas
  WindSpec wind;
  ScenarioTuple scenario;               // [sim] mode and deltas, used by `run`
  std::vector<ScenarioTuple> matrix;    // [sweep] rows, used by `sweep` and `aep`
  AepSettings aep;
  double v_w_max = 8.0;  // m/s, extreme wind for the robust l1 bound
  bool k_p_auto = true;
  bool k_i_auto = true;
  bool K_auto = true;
  // Canonical `key = value` lines, sorted; the hash is computed over this.
  std::string canonical;
  std::map<std::string, int> key_lines;
};

// Parses the sectioned key/value format. `origin` prefixes error messages.
// Throws Error(kParse) for malformed lines and unknown keys and
// Error(kValidation) for out-of-range values, both as "origin:line: ...".
RunConfig parse_config(std::string_view text, const std::string& origin,
                       std::optional<std::uint64_t> seed_override = std::nullopt);
RunConfig load_config(const std::string& path,
                      std::optional<std::uint64_t> seed_override = std::nullopt);

std::uint64_t fnv1a64(std::string_view bytes);
// 16 hex digits of FNV-1a over the canonical form.
std::string config_hash(const RunConfig& config);

std::shared_ptr<const WindSeries> build_wind(const RunConfig& config);
ScenarioConfig make_scenario(const RunConfig& config, const ScenarioTuple& tuple,
                             std::shared_ptr<const WindSeries> wind);

// Rewrites a library error so that it points at the config line of the key it
// names, when there is one.
Error anchor_error(const RunConfig& config, const Error& error);

}  // namespace wecs::cli
