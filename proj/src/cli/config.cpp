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

#include "wecs/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "wecs/aero.hpp"
#include "wecs/control.hpp"

namespace wecs::cli {

namespace {

struct Entry {
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail_at(ErrorKind kind, const std::string& origin, int line,
                          const std::string& what) {
  fail(kind, origin + ":" + std::to_string(line) + ": " + what);
}

class Parser {
 public:
  Parser(const std::string& origin, const std::map<std::string, Entry>& entries)
      : origin_(origin), entries_(entries) {}

  const Entry* find(const std::string& key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? nullptr : &it->second;
  }

  void number(const std::string& key, double& out) const {
    if (const Entry* e = find(key)) out = to_double(key, *e);
  }

  void positive(const std::string& key, double& out) const {
    if (const Entry* e = find(key)) {
      out = to_double(key, *e);
      if (!(out > 0.0)) fail_at(ErrorKind::kValidation, origin_, e->line, key + " must be > 0");
    }
  }

  // Returns true when the value is "auto".
  bool number_or_auto(const std::string& key, double& out) const {
    const Entry* e = find(key);
    if (!e || e->value == "auto") return true;
    out = to_double(key, *e);
    return false;
  }

  void boolean(const std::string& key, bool& out) const {
    if (const Entry* e = find(key)) {
      if (e->value == "true") {
        out = true;
      } else if (e->value == "false") {
        out = false;
      } else {
        fail_at(ErrorKind::kParse, origin_, e->line, key + ": expected true or false");
      }
    }
  }

  void text(const std::string& key, std::string& out) const {
    if (const Entry* e = find(key)) out = e->value;
  }

  double to_double(const std::string& key, const Entry& e) const {
    return parse_double(e.value, key, e.line);
  }

  double parse_double(std::string_view s, const std::string& key, int line) const {
    double v = 0.0;
    const char* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
      fail_at(ErrorKind::kParse, origin_, line,
              key + ": expected a number, got '" + std::string(s) + "'");
    }
    return v;
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) const {
    if (const Entry* e = find(key)) {
      const char* end = e->value.data() + e->value.size();
      auto [ptr, ec] = std::from_chars(e->value.data(), end, out);
      if (ec != std::errc() || ptr != end) {
        fail_at(ErrorKind::kParse, origin_, e->line,
                key + ": expected an integer, got '" + e->value + "'");
      }
    }
  }

  const std::string& origin() const { return origin_; }

 private:
  std::string origin_;
  const std::map<std::string, Entry>& entries_;
};

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "machine.R_ohm", "machine.L_H", "machine.phi_f_Wb", "machine.pole_pairs",
      "machine.V_dc_V", "machine.I_max_A",
      "aero.rho_kg_m3", "aero.R_r_m", "aero.J_kg_m2", "aero.b_Nms_rad", "aero.cp_max",
      "aero.lambda_opt", "aero.cp_table_csv",
      "wind.kind", "wind.speed_mps", "wind.mean_mps", "wind.intensity", "wind.dt_s",
      "wind.duration_s", "wind.file",
      "control.k_p_V_A", "control.k_i_V_As", "control.K_Nms2",
      "observer.l1_V", "observer.l2_per_s", "observer.l3", "observer.boundary_layer_A",
      "observer.pure_sign",
      "bounds.L_min_H", "bounds.L_max_H", "bounds.R_min_ohm", "bounds.R_max_ohm",
      "bounds.v_w_max_mps",
      "sim.mode", "sim.delta_L", "sim.delta_R", "sim.t_end_s", "sim.dt_plant_s",
      "sim.dt_ctrl_s", "sim.dt_log_s", "sim.seed", "sim.omega0_rad_s", "sim.eps_amp_V",
      "sim.omega_limit_rad_s", "sim.settle_time_s",
      "sweep.scenario",
      "aep.v_mean_mps", "aep.v_cut_mps", "aep.v_min_mps", "aep.v_max_mps", "aep.settle_s",
      "aep.average_s",
  };
  return keys;
}

// Library messages name fields without units; map them to config keys.
const std::vector<std::pair<std::string, std::string>>& message_aliases() {
  static const std::vector<std::pair<std::string, std::string>> aliases = {
      {"machine.R ", "machine.R_ohm"},
      {"machine.L ", "machine.L_H"},
      {"machine.phi_f ", "machine.phi_f_Wb"},
      {"machine.p ", "machine.pole_pairs"},
      {"machine.V_dc ", "machine.V_dc_V"},
      {"machine.I_max ", "machine.I_max_A"},
      {"aero.rho_air ", "aero.rho_kg_m3"},
      {"aero.R_r ", "aero.R_r_m"},
      {"aero.J ", "aero.J_kg_m2"},
      {"aero.b ", "aero.b_Nms_rad"},
      {"aero.lambda_opt ", "aero.lambda_opt"},
      {"aero.cp_max ", "aero.cp_max"},
      {"aero: Cp curve", "aero.lambda_opt"},
      {"control.k_p ", "control.k_p_V_A"},
      {"control.k_i ", "control.k_i_V_As"},
      {"control.K ", "control.K_Nms2"},
      {"bounds: require 0 < L", "bounds.L_min_H"},
      {"bounds: require 0 < R", "bounds.R_min_ohm"},
      {"scenario delta_L", "sim.delta_L"},
      {"scenario delta_R", "sim.delta_R"},
      {"turbulence: mean", "wind.mean_mps"},
      {"turbulence: intensity", "wind.intensity"},
      {"turbulence: dt", "wind.dt_s"},
      {"turbulence: duration", "wind.duration_s"},
      {"wind: speed", "wind.speed_mps"},
  };
  return aliases;
}

// "-0.8L" → −0.8·unit, "L" → unit, plain numbers are SI.
double parse_delta(const Parser& p, std::string_view token, char suffix, double unit,
                   const std::string& key, int line) {
  if (!token.empty() && token.back() == suffix) {
    std::string_view factor = token.substr(0, token.size() - 1);
    if (factor.empty() || factor == "+") return unit;
    if (factor == "-") return -unit;
    return p.parse_double(factor, key, line) * unit;
  }
  return p.parse_double(token, key, line);
}

Mode parse_mode_at(const std::string& origin, int line, std::string_view text) {
  try {
    return parse_mode(text);
  } catch (const Error& e) {
    fail_at(ErrorKind::kValidation, origin, line, e.what());
  }
}

std::string tuple_name(const ScenarioTuple& t, std::string_view l_token, std::string_view r_token) {
  if (t.mode == Mode::kEncoder) return "encoder";
  return "sensorless_dL" + std::string(l_token) + "_dR" + std::string(r_token);
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string config_hash(const RunConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(config.canonical)));
  return buf;
}

Error anchor_error(const RunConfig& config, const Error& error) {
  const std::string what = error.what();
  auto anchored = [&](const std::string& key) -> std::optional<Error> {
    auto it = config.key_lines.find(key);
    if (it == config.key_lines.end()) return std::nullopt;
    return Error(error.kind(), config.path + ":" + std::to_string(it->second) + ": " + what);
  };
  for (const auto& key : known_keys()) {
    if (what.find(key) != std::string::npos) {
      if (auto e = anchored(key)) return *e;
    }
  }
  for (const auto& [needle, key] : message_aliases()) {
    if (what.find(needle) != std::string::npos) {
      if (auto e = anchored(key)) return *e;
    }
  }
  return error;
}

RunConfig parse_config(std::string_view text, const std::string& origin,
                       std::optional<std::uint64_t> seed_override) {
  std::map<std::string, Entry> entries;
  std::vector<Entry> scenario_rows;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        fail_at(ErrorKind::kParse, origin, line_no, "malformed section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail_at(ErrorKind::kParse, origin, line_no, "expected 'key = value'");
    }
    const std::string_view key_part = trim(line.substr(0, eq));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key_part.empty()) fail_at(ErrorKind::kParse, origin, line_no, "missing key");
    std::string key = key_part.find('.') != std::string_view::npos || section.empty()
                          ? std::string(key_part)
                          : section + "." + std::string(key_part);
    const auto& known = known_keys();
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      fail_at(ErrorKind::kParse, origin, line_no, "unknown key '" + key + "'");
    }
    if (value.empty()) fail_at(ErrorKind::kParse, origin, line_no, key + ": missing value");
    if (key == "sweep.scenario") {
      scenario_rows.push_back({std::string(value), line_no});
      continue;
    }
    if (auto it = entries.find(key); it != entries.end()) {
      fail_at(ErrorKind::kParse, origin, line_no,
              "duplicate key '" + key + "' (first set on line " + std::to_string(it->second.line) +
                  ")");
    }
    entries[key] = {std::string(value), line_no};
  }
  if (seed_override) entries["sim.seed"] = {std::to_string(*seed_override), 0};

  RunConfig cfg;
  cfg.path = origin;
  for (const auto& [key, e] : entries) {
    cfg.canonical += key + " = " + e.value + "\n";
    if (e.line > 0) cfg.key_lines[key] = e.line;
  }
  for (const auto& row : scenario_rows) cfg.canonical += "sweep.scenario = " + row.value + "\n";

  const Parser p(origin, entries);
  ScenarioConfig& s = cfg.base;
  try {
    MachineParams& m = s.machine;
    p.number("machine.R_ohm", m.R);
    p.number("machine.L_H", m.L);
    p.number("machine.phi_f_Wb", m.phi_f);
    p.integer("machine.pole_pairs", m.p);
    p.number("machine.V_dc_V", m.V_dc);
    p.number("machine.I_max_A", m.I_max);
    m.validate();

    AeroParams& a = s.aero;
    p.number("aero.rho_kg_m3", a.rho_air);
    p.number("aero.R_r_m", a.R_r);
    p.number("aero.J_kg_m2", a.J);
    p.number("aero.b_Nms_rad", a.b);
    p.number("aero.cp_max", a.cp_max);
    p.number("aero.lambda_opt", a.lambda_opt);
    if (const Entry* e = p.find("aero.cp_table_csv")) {
      std::filesystem::path table = e->value;
      if (table.is_relative()) table = std::filesystem::path(origin).parent_path() / table;
      a.cp_curve = CpCurve::load_csv(table.string());
    }
    a.validate();

    std::string kind = "constant";
    p.text("wind.kind", kind);
    if (kind == "constant") {
      cfg.wind.kind = WindSpec::Kind::kConstant;
    } else if (kind == "turbulent") {
      cfg.wind.kind = WindSpec::Kind::kTurbulent;
    } else if (kind == "file") {
      cfg.wind.kind = WindSpec::Kind::kFile;
    } else {
      fail_at(ErrorKind::kValidation, origin, p.find("wind.kind")->line,
              "wind.kind must be constant, turbulent or file");
    }
    p.positive("wind.speed_mps", cfg.wind.speed);
    p.positive("wind.mean_mps", cfg.wind.mean);
    p.number("wind.intensity", cfg.wind.intensity);
    p.positive("wind.dt_s", cfg.wind.dt);
    p.positive("wind.duration_s", cfg.wind.duration);
    p.text("wind.file", cfg.wind.file);
    if (cfg.wind.kind == WindSpec::Kind::kFile && cfg.wind.file.empty()) {
      fail(ErrorKind::kValidation, origin + ": wind.kind = file requires wind.file");
    }
    if (!cfg.wind.file.empty() && std::filesystem::path(cfg.wind.file).is_relative()) {
      cfg.wind.file = (std::filesystem::path(origin).parent_path() / cfg.wind.file).string();
    }

    ObserverParams& o = s.observer;
    p.number("observer.l1_V", o.l1);
    p.number("observer.l2_per_s", o.l2);
    p.number("observer.l3", o.l3);
    p.number("observer.boundary_layer_A", o.boundary_layer);
    p.boolean("observer.pure_sign", o.pure_sign);
    p.number("bounds.L_min_H", o.bounds.L_min);
    p.number("bounds.L_max_H", o.bounds.L_max);
    p.number("bounds.R_min_ohm", o.bounds.R_min);
    p.number("bounds.R_max_ohm", o.bounds.R_max);
    p.positive("bounds.v_w_max_mps", cfg.v_w_max);
    o.bounds.validate();

    double K = 0.0;
    double k_p = 0.0;
    double k_i = 0.0;
    cfg.K_auto = p.number_or_auto("control.K_Nms2", K);
    cfg.k_p_auto = p.number_or_auto("control.k_p_V_A", k_p);
    cfg.k_i_auto = p.number_or_auto("control.k_i_V_As", k_i);
    if (cfg.K_auto) K = optimal_torque_gain(a);
    const ControllerGains defaults = default_gains(m, o.bounds, a.b, K);
    s.gains.K = K;
    s.gains.k_p = cfg.k_p_auto ? defaults.k_p : k_p;
    s.gains.k_i = cfg.k_i_auto ? s.gains.k_p / kIntegralTimeConstant : k_i;
    s.gains.validate();

    p.number("sim.t_end_s", s.t_end);
    p.number("sim.dt_plant_s", s.dt_plant);
    p.number("sim.dt_ctrl_s", s.dt_ctrl);
    p.number("sim.dt_log_s", s.dt_log);
    p.integer("sim.seed", s.seed);
    p.number("sim.omega0_rad_s", s.omega0);
    p.number("sim.eps_amp_V", s.eps_amp);
    p.number("sim.omega_limit_rad_s", s.omega_limit);
    p.number("sim.settle_time_s", s.settle_time);

    ScenarioTuple& t = cfg.scenario;
    std::string l_token = "0";
    std::string r_token = "0";
    if (const Entry* e = p.find("sim.mode")) t.mode = parse_mode_at(origin, e->line, e->value);
    if (const Entry* e = p.find("sim.delta_L")) {
      l_token = e->value;
      t.delta_L = parse_delta(p, e->value, 'L', m.L, "sim.delta_L", e->line);
    }
    if (const Entry* e = p.find("sim.delta_R")) {
      r_token = e->value;
      t.delta_R = parse_delta(p, e->value, 'R', m.R, "sim.delta_R", e->line);
    }
    t.name = tuple_name(t, l_token, r_token);
    t.line = p.find("sim.mode") ? p.find("sim.mode")->line : 0;

    for (const auto& row : scenario_rows) {
      const auto tokens = split_ws(row.value);
      if (tokens.size() != 3) {
        fail_at(ErrorKind::kParse, origin, row.line,
                "sweep.scenario expects '<mode> <delta_L> <delta_R>'");
      }
      ScenarioTuple tuple;
      tuple.mode = parse_mode_at(origin, row.line, tokens[0]);
      tuple.delta_L = parse_delta(p, tokens[1], 'L', m.L, "sweep.scenario", row.line);
      tuple.delta_R = parse_delta(p, tokens[2], 'R', m.R, "sweep.scenario", row.line);
      tuple.name = tuple_name(tuple, tokens[1], tokens[2]);
      tuple.line = row.line;
      if (tuple.mode == Mode::kEncoder && (tuple.delta_L != 0.0 || tuple.delta_R != 0.0)) {
        fail_at(ErrorKind::kValidation, origin, row.line,
                "sweep.scenario: encoder rows take no parameter offsets");
      }
      cfg.matrix.push_back(tuple);
    }

    p.number("aep.v_mean_mps", cfg.aep.v_mean);
    p.number("aep.v_cut_mps", cfg.aep.v_cut);
    p.number("aep.v_min_mps", cfg.aep.v_min);
    p.number("aep.v_max_mps", cfg.aep.v_max);
    p.number("aep.settle_s", cfg.aep.settle);
    p.number("aep.average_s", cfg.aep.average);
    cfg.aep.validate();

    // Wind-independent checks of every scenario, against a placeholder record.
    const auto placeholder =
        std::make_shared<WindSeries>(constant_series(1.0, s.t_end > 0.0 ? s.t_end : 1.0));
    make_scenario(cfg, cfg.scenario, placeholder).validate();
    for (const auto& tuple : cfg.matrix) {
      try {
        make_scenario(cfg, tuple, placeholder).validate();
      } catch (const Error& e) {
        fail_at(e.kind(), origin, tuple.line, e.what());
      }
    }
  } catch (const Error& e) {
    const std::string what = e.what();
    if (what.rfind(origin + ":", 0) == 0) throw;
    throw anchor_error(cfg, e);
  }
  return cfg;
}

RunConfig load_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open config '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path, seed_override);
}

std::shared_ptr<const WindSeries> build_wind(const RunConfig& config) {
  const double duration = config.wind.duration > 0.0 ? config.wind.duration : config.base.t_end;
  try {
    switch (config.wind.kind) {
      case WindSpec::Kind::kConstant:
        return std::make_shared<WindSeries>(constant_series(config.wind.speed, duration));
      case WindSpec::Kind::kTurbulent:
        return std::make_shared<WindSeries>(synth_turbulence(
            config.wind.mean, config.wind.intensity, duration, config.wind.dt, config.base.seed));
      case WindSpec::Kind::kFile:
        return std::make_shared<WindSeries>(load_series(config.wind.file));
    }
  } catch (const Error& e) {
    throw anchor_error(config, e);
  }
  fail(ErrorKind::kValidation, "wind: unsupported kind");
}

ScenarioConfig make_scenario(const RunConfig& config, const ScenarioTuple& tuple,
                             std::shared_ptr<const WindSeries> wind) {
  ScenarioConfig s = config.base;
  s.name = tuple.name;
  s.mode = tuple.mode;
  s.delta_L = tuple.delta_L;
  s.delta_R = tuple.delta_R;
  s.wind = std::move(wind);
  return s;
}

}  // namespace wecs::cli
