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

#include "wecs/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "wecs/analysis.hpp"
#include "wecs/cli/config.hpp"
#include "wecs/cli/svg_plot.hpp"
#include "wecs/control.hpp"
#include "wecs/csv.hpp"
#include "wecs/observer.hpp"
#include "wecs/sim.hpp"

#ifndef WECS_VERSION
#define WECS_VERSION "0.0.0"
#endif

namespace wecs::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse:
      return kExitParse;
    case ErrorKind::kValidation:
      return kExitValidation;
    case ErrorKind::kIo:
      return kExitIo;
    case ErrorKind::kDivergence:
      return kExitDivergence;
    case ErrorKind::kDomain:
      return kExitOther;
  }
  return kExitOther;
}

std::string_view tool_version() { return WECS_VERSION; }

int resolve_jobs(std::optional<int> flag) {
  int jobs = 1;
  if (flag) {
    jobs = *flag;
  } else if (const char* env = std::getenv("WECS_SIM_JOBS"); env && *env) {
    const std::string_view text(env);
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), jobs);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      fail(ErrorKind::kValidation, "WECS_SIM_JOBS must be a positive integer, got '" +
                                       std::string(text) + "'");
    }
  }
  if (jobs < 1) fail(ErrorKind::kValidation, "--jobs must be >= 1");
  return jobs;
}

std::string manifest_json(const RunManifest& manifest) {
  nlohmann::ordered_json j;
  j["command"] = manifest.command;
  j["config_path"] = manifest.config_path;
  j["output_dir"] = manifest.output_dir;
  j["tool_version"] = manifest.tool_version;
  j["config_hash"] = manifest.config_hash;
  j["files"] = manifest.files;
  j["diverged"] = manifest.diverged;
  j["divergence_detail"] = manifest.divergence_detail;
  return j.dump(2) + "\n";
}

namespace {

struct Loaded {
  RunConfig config;
  RunManifest manifest;
};

Loaded load(const CliOptions& options, const char* command) {
  Loaded l{load_config(options.config_path, options.seed), {}};
  l.manifest.command = command;
  l.manifest.config_path = options.config_path;
  l.manifest.output_dir = options.out_dir;
  l.manifest.tool_version = std::string(tool_version());
  l.manifest.config_hash = config_hash(l.config);
  return l;
}

void prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    fail(ErrorKind::kIo, "cannot create output directory '" + dir + "'");
  }
}

std::string join(const std::string& dir, const std::string& file) {
  return (fs::path(dir) / file).string();
}

void write_manifest(const RunManifest& manifest) {
  for (const auto& f : manifest.files) {
    if (!fs::exists(join(manifest.output_dir, f))) {
      fail(ErrorKind::kIo, "missing output '" + f + "'");
    }
  }
  const std::string path = join(manifest.output_dir, "manifest.json");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path + "'");
  out << manifest_json(manifest);
  if (!out) fail(ErrorKind::kIo, "write failed for '" + path + "'");
}

std::string divergence_text(const std::string& name, const std::string& reason, double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, " at t = %.3f s", t);
  return name + ": " + reason + buf;
}

void note_divergence(RunManifest& manifest, const std::string& detail, std::ostream& log) {
  manifest.diverged = true;
  if (!manifest.divergence_detail.empty()) manifest.divergence_detail += "; ";
  manifest.divergence_detail += detail;
  log << "diverged: " << detail << '\n';
}

// Library validation messages point back at the offending config line.
template <typename F>
auto anchored(const RunConfig& config, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw anchor_error(config, e);
  }
}

PlotSeries series_of(const Trace& trace, const std::string& label, double (*get)(const Record&)) {
  PlotSeries s{label, {}, {}};
  s.x.reserve(trace.records.size());
  s.y.reserve(trace.records.size());
  for (const Record& r : trace.records) {
    s.x.push_back(r.t);
    s.y.push_back(get(r));
  }
  return s;
}

std::vector<std::string> write_run_plots(const std::string& dir, const ScenarioConfig& scenario,
                                         const Trace& trace) {
  std::vector<std::string> files;
  auto emit = [&](const std::string& file, PlotSpec spec) {
    write_svg(join(dir, file), spec);
    files.push_back(file);
  };
  const std::string& name = scenario.name;

  PlotSpec tsr{"Tip-speed ratio, " + name, "t [s]", "lambda [-]",
               {series_of(trace, "lambda", [](const Record& r) { return r.lambda; })}, true,
               scenario.aero.lambda_opt};
  emit("tsr.svg", std::move(tsr));
  emit("eps_d.svg",
       {"d-axis current error, " + name, "t [s]", "eps_d [A]",
        {series_of(trace, "id_ref - id",
                   [](const Record& r) { return r.i_dq_ref.first - r.i_dq.first; })},
        false, 0.0});
  emit("eps_q.svg",
       {"q-axis current error, " + name, "t [s]", "eps_q [A]",
        {series_of(trace, "iq_ref - iq",
                   [](const Record& r) { return r.i_dq_ref.second - r.i_dq.second; })},
        false, 0.0});
  if (scenario.mode == Mode::kSensorless) {
    emit("speed_error.svg",
         {"Speed estimation error, " + name, "t [s]", "omega_hat - omega [rad/s]",
          {series_of(trace, "omega_hat - omega",
                     [](const Record& r) { return r.omega_hat - r.omega; })},
          false, 0.0});
  }
  emit("p_dc.svg", {"DC power, " + name, "t [s]", "P_dc [W]",
                    {series_of(trace, "P_dc", [](const Record& r) { return r.p_dc; })},
                    false, 0.0});
  emit("energy.svg", {"Harvested energy, " + name, "t [s]", "W [kJ]",
                      {series_of(trace, "W_dc", [](const Record& r) { return r.w_dc / 1e3; })},
                      false, 0.0});
  return files;
}

std::vector<ScenarioTuple> matrix_or_single(const RunConfig& config) {
  return config.matrix.empty() ? std::vector<ScenarioTuple>{config.scenario} : config.matrix;
}

}  // namespace

RunManifest cmd_run(const CliOptions& options, std::ostream& log) {
  auto [config, manifest] = load(options, "run");
  const ScenarioConfig scenario = anchored(config, [&] {
    ScenarioConfig s = make_scenario(config, config.scenario, build_wind(config));
    s.validate();
    return s;
  });
  prepare_dir(options.out_dir);

  log << "run " << scenario.name << ": " << scenario.t_end << " s simulated\n";
  const Trace trace = simulate(scenario);
  const ScenarioSummary summary = summarize(scenario, trace);

  write_trace_csv(join(options.out_dir, "trace.csv"), trace);
  manifest.files.push_back("trace.csv");
  write_summary_csv(join(options.out_dir, "summary.csv"), {summary});
  manifest.files.push_back("summary.csv");
  for (auto& f : write_run_plots(options.out_dir, scenario, trace)) manifest.files.push_back(f);

  if (trace.diverged) {
    note_divergence(manifest,
                    divergence_text(scenario.name, trace.divergence_reason, trace.truncation_time),
                    log);
  }
  log << "W = " << format_double(summary.W) << " J, eta_E = " << format_double(summary.eta_E)
      << ", mean lambda = " << format_double(summary.mean_lambda) << '\n';
  write_manifest(manifest);
  return manifest;
}

RunManifest cmd_sweep(const CliOptions& options, std::ostream& log) {
  auto [config, manifest] = load(options, "sweep");
  const auto tuples = matrix_or_single(config);
  const std::vector<ScenarioConfig> scenarios = anchored(config, [&] {
    const auto wind = build_wind(config);
    std::vector<ScenarioConfig> out;
    for (const auto& t : tuples) {
      out.push_back(make_scenario(config, t, wind));
      out.back().validate();
    }
    return out;
  });
  prepare_dir(options.out_dir);

  log << "sweep: " << scenarios.size() << " scenarios, " << options.jobs << " job(s)\n";
  const std::vector<ScenarioSummary> rows = sweep(scenarios, options.jobs);

  write_summary_csv(join(options.out_dir, "summary.csv"), rows);
  manifest.files.push_back("summary.csv");

  PlotSpec energy{"Harvested energy per scenario", "t [s]", "W [kJ]", {}, false, 0.0};
  for (const auto& r : rows) {
    PlotSeries s{r.name, r.energy_t, r.energy_w};
    for (double& w : s.y) w /= 1e3;
    energy.series.push_back(std::move(s));
  }
  write_svg(join(options.out_dir, "energy_comparison.svg"), energy);
  manifest.files.push_back("energy_comparison.svg");

  for (const auto& r : rows) {
    log << r.name << ": W = " << format_double(r.W) << " J, eta_E = " << format_double(r.eta_E)
        << '\n';
    if (r.diverged) {
      note_divergence(manifest, divergence_text(r.name, r.divergence_reason, r.truncation_time),
                      log);
    }
  }
  write_manifest(manifest);
  return manifest;
}

RunManifest cmd_aep(const CliOptions& options, std::ostream& log) {
  auto [config, manifest] = load(options, "aep");

  // The encoder curve is the reference and always comes first.
  std::vector<ScenarioTuple> tuples;
  ScenarioTuple encoder;
  encoder.mode = Mode::kEncoder;
  encoder.name = "encoder";
  tuples.push_back(encoder);
  for (const auto& t : matrix_or_single(config)) {
    if (t.mode == Mode::kSensorless) tuples.push_back(t);
  }

  std::vector<ScenarioConfig> scenarios = anchored(config, [&] {
    config.aep.validate();
    // Bins supply their own stationary wind; this only satisfies validation.
    const auto placeholder = std::make_shared<WindSeries>(
        constant_series(1.0, config.aep.settle + config.aep.average));
    std::vector<ScenarioConfig> out;
    for (const auto& t : tuples) {
      out.push_back(make_scenario(config, t, placeholder));
      out.back().t_end = config.aep.settle + config.aep.average;
      out.back().validate();
    }
    return out;
  });
  prepare_dir(options.out_dir);

  struct Row {
    const ScenarioConfig* scenario;
    PowerCurveRun curve;
    double aep_kwh;
  };
  std::vector<Row> rows;
  for (const auto& s : scenarios) {
    log << "aep " << s.name << '\n';
    PowerCurveRun curve = simulate_power_curve(s, config.aep, options.jobs);
    const double aep = annual_energy_production(curve.points, config.aep.v_mean, config.aep.v_cut);
    rows.push_back({&s, std::move(curve), aep});
  }

  const double reference = rows.front().aep_kwh;
  std::string table = "name,mode,delta_L_H,delta_R_ohm,aep_kwh,aep_ratio,diverged\n";
  PlotSpec curves{"Power curves", "v_w [m/s]", "P_dc [W]", {}, false, 0.0};
  for (const auto& r : rows) {
    const ScenarioConfig& s = *r.scenario;
    const std::string file = "power_curve_" + s.name + ".csv";
    write_power_curve(join(options.out_dir, file), r.curve.points);
    manifest.files.push_back(file);

    const double ratio = reference > 0.0 ? r.aep_kwh / reference : 0.0;
    table += s.name + "," + std::string(to_string(s.mode)) + "," + format_double(s.delta_L) +
             "," + format_double(s.delta_R) + "," + format_double(r.aep_kwh) + "," +
             format_double(ratio) + "," + (r.curve.diverged ? "1" : "0") + "\n";

    PlotSeries series{s.name, {}, {}};
    for (const auto& p : r.curve.points) {
      series.x.push_back(p.wind_mps);
      series.y.push_back(p.p_dc_w);
    }
    curves.series.push_back(std::move(series));

    log << s.name << ": AEP = " << format_double(r.aep_kwh) << " kWh, ratio "
        << format_double(ratio) << '\n';
    if (r.curve.diverged) {
      note_divergence(manifest, s.name + ": at least one wind bin diverged", log);
    }
  }

  {
    const std::string path = join(options.out_dir, "aep.csv");
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::kIo, "cannot write '" + path + "'");
    out << table;
    if (!out) fail(ErrorKind::kIo, "write failed for '" + path + "'");
    manifest.files.push_back("aep.csv");
  }
  write_svg(join(options.out_dir, "power_curves.svg"), curves);
  manifest.files.push_back("power_curves.svg");

  write_manifest(manifest);
  return manifest;
}

void cmd_gains(const CliOptions& options, std::ostream& out) {
  const RunConfig config = load_config(options.config_path, options.seed);
  const ScenarioConfig& s = config.base;
  const MachineParams& m = s.machine;
  const UncertaintyBounds& bounds = s.observer.bounds;
  auto num = [](double v) { return format_double(v); };

  out << "config: " << config.path << " (hash " << config_hash(config) << ")\n";

  const double k_opt = optimal_torque_gain(s.aero);
  out << "K_opt = " << num(k_opt) << " N*m*s^2/rad^2 (configured K = " << num(s.gains.K)
      << (config.K_auto ? ", auto" : "") << ")\n";

  // Worst case of the assumed envelope: smallest R, largest L, full current.
  MachineParams worst = m;
  worst.R = bounds.R_min;
  worst.L = bounds.L_max;
  const FrameVector2 i_ref{0.0, -m.I_max};
  const KpBound bound = theorem1_kp_bound(worst, s.aero.b, i_ref);
  out << "kp_min = " << num(bound.kp_min) << " V/A (a = " << num(bound.a)
      << " V/A at i_q = " << num(i_ref.second) << " A, R_min = " << num(bounds.R_min)
      << " ohm, L_max = " << num(bounds.L_max) << " H)\n";
  out << "k_p = " << num(s.gains.k_p) << " V/A" << (config.k_p_auto ? " (auto)" : "")
      << ", k_i = " << num(s.gains.k_i) << " V/(A*s)" << (config.k_i_auto ? " (auto)" : "")
      << '\n';
  if (s.gains.k_p < bound.kp_min) {
    out << "warning: k_p = " << num(s.gains.k_p) << " V/A is below kp_min = "
        << num(bound.kp_min) << " V/A; certificate attempted anyway\n";
  }
  const StabilityReport cert = stability_certificate(worst, s.aero.b, s.aero.J, s.gains, i_ref);
  out << "certificate: " << (cert.certified ? "PASS" : "FAIL") << " (beta = "
      << num(cert.best_beta) << ", largest eigenvalue = " << num(cert.worst_eigenvalue) << ")\n";

  const OperatingExtremes x = operating_extremes(m, s.aero, config.v_w_max);
  const ObserverParams obs = s.observer_params();
  const double l1_min = robust_l1_bound(bounds, obs.L_o, x.E_max, x.V_max, x.I_max);
  out << "E_max = " << num(x.E_max) << " V (v_w = " << num(config.v_w_max)
      << " m/s, omega_max = " << num(x.omega_max) << " rad/s), V_max = " << num(x.V_max)
      << " V, I_max = " << num(x.I_max) << " A\n";
  out << "l1_min = " << num(l1_min) << " V (L_o = " << num(obs.L_o) << " H), configured l1 = "
      << num(obs.l1) << " V\n";
  if (obs.l1 < l1_min) {
    out << "warning: observer.l1_V = " << num(obs.l1)
        << " V is below the robust bound; sliding is not guaranteed over the envelope\n";
  }
}

}  // namespace wecs::cli
