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
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "wecs/aero.hpp"
#include "wecs/analysis.hpp"
#include "wecs/control.hpp"
#include "wecs/frame.hpp"
#include "wecs/machine.hpp"
#include "wecs/observer.hpp"
#include "wecs/wind.hpp"

namespace wecs {

enum class Mode { kEncoder, kSensorless };

std::string_view to_string(Mode mode);
// Accepts "encoder" and "sensorless"; throws Error(kValidation) otherwise.
Mode parse_mode(std::string_view text);

struct ScenarioConfig {
  std::string name;
  MachineParams machine;  // true plant
  AeroParams aero;
  std::shared_ptr<const WindSeries> wind;
  ControllerGains gains;
  // Observer gains and bounds. R_o and L_o are overwritten from the deltas by
  // observer_params().
  ObserverParams observer;
  Mode mode = Mode::kSensorless;
  double delta_L = 0.0;    // H
  double delta_R = 0.0;    // ohm
  double t_end = 120.0;    // s
  double dt_plant = 20e-6;  // s
  double dt_ctrl = 100e-6;  // s
  double dt_log = 1e-3;     // s
  std::uint64_t seed = 1;
  double omega0 = 5.0;     // rad/s
  double eps_amp = 0.5;    // V, below this ‖ê‖ the observer frame is undefined
  double omega_limit = 250.0;  // rad/s, divergence bound
  double settle_time = 10.0;   // s, excluded from summary statistics (t_end/2 if longer)

  // Throws Error(kValidation) naming the offending field.
  void validate() const;
  // Observer parameters with R_o = R + δ_R and L_o = L + δ_L.
  ObserverParams observer_params() const;
  // Plant steps per control tick, and control ticks per logged record.
  int plant_steps_per_tick() const;
  int ticks_per_log() const;
};

// One logged sample. Quantities computed at a control tick refer to the
// command applied from `t` until the next tick.
struct Record {
  double t = 0.0;
  double v_w = 0.0;
  double omega = 0.0;
  double omega_hat = 0.0;
  double theta_e = 0.0;
  double lambda = 0.0;
  FrameVector2 i_dq;
  FrameVector2 i_dq_hat;
  FrameVector2 i_dq_ref;
  FrameVector2 v_dq;
  double tau_b = 0.0;
  double tau_g = 0.0;
  double p_dc = 0.0;
  FrameVector2 s_ab;
  FrameVector2 e_hat_ab;
  double phi_meas = 0.0;
  // Cumulative energies since t = 0, J.
  double w_aero = 0.0;
  double w_damping = 0.0;
  double w_gen = 0.0;  // ∫ −τ_g·ω dt
  double w_dc = 0.0;   // ∫ P_dc dt
  double w_copper = 0.0;
};

struct Trace {
  double dt_log = 0.0;
  std::vector<Record> records;
  bool diverged = false;
  double truncation_time = 0.0;  // t of the last good record when diverged
  std::string divergence_reason;
  double kinetic_energy0 = 0.0;  // J
};

using RecordSink = std::function<void(const Record&)>;

struct RunStatus {
  bool diverged = false;
  double truncation_time = 0.0;
  std::string divergence_reason;
};

// Runs the scenario and streams each logged record to `sink`.
RunStatus simulate(const ScenarioConfig& config, const RecordSink& sink);
Trace simulate(const ScenarioConfig& config);

// Circular mean of phi_meas over records with t in [t0, t1], wrapped to
// (−π, π]. Throws Error(kDomain) if the window is empty or ω varies by more
// than 2% of its mean inside it.
double measure_phi(const Trace& trace, double t0, double t1);

struct ScenarioSummary {
  std::string name;
  Mode mode = Mode::kSensorless;
  double delta_L = 0.0;
  double delta_R = 0.0;
  double W = 0.0;      // J
  double W_opt = 0.0;  // J
  double eta_E = 0.0;
  double mean_abs_eps_d = 0.0;  // A, ε = i_ref − i
  double mean_abs_eps_q = 0.0;  // A
  double mean_lambda = 0.0;
  double max_rel_speed_error = 0.0;  // max |ω̂ − ω|/ω
  double mean_i_d = 0.0;
  double mean_i_q = 0.0;
  double mean_i_q_ref = 0.0;
  double mean_p_dc = 0.0;  // W
  bool diverged = false;
  double truncation_time = 0.0;
  std::string divergence_reason;
  // Cumulative DC energy sampled once per second, for comparison plots.
  std::vector<double> energy_t;
  std::vector<double> energy_w;
};

// Accumulates a ScenarioSummary from a record stream.
class SummaryAccumulator {
 public:
  explicit SummaryAccumulator(const ScenarioConfig& config);
  void add(const Record& r);
  ScenarioSummary finish(const RunStatus& status) const;

 private:
  ScenarioSummary summary_;
  double settle_time_;
  double sum_eps_d_ = 0.0;
  double sum_eps_q_ = 0.0;
  double sum_lambda_ = 0.0;
  double sum_i_d_ = 0.0;
  double sum_i_q_ = 0.0;
  double sum_i_q_ref_ = 0.0;
  double sum_p_dc_ = 0.0;
  long count_ = 0;
  double next_energy_sample_ = 0.0;
  double last_w_dc_ = 0.0;
};

ScenarioSummary summarize(const ScenarioConfig& config, const Trace& trace);

// Runs every scenario (up to `jobs` at a time) and returns the summaries in
// input order. Throws Error(kValidation) for an empty list.
std::vector<ScenarioSummary> sweep(const std::vector<ScenarioConfig>& configs, int jobs);

// Trapezoidal optimal energy of the wind record over [0, t_end].
double optimal_energy_until(const WindSeries& series, const AeroParams& aero, double t_end);

// Stationary-wind power curve used for the AEP: one run per 0.5 m/s bin
// midpoint inside [v_min, v_max], started at the optimal-TSR speed, P_dc
// averaged over the last `average` seconds.
struct AepSettings {
  double v_mean = 5.0;   // m/s, Rayleigh mean
  double v_cut = 10.0;   // m/s
  double v_min = 1.0;    // m/s
  double v_max = 10.0;   // m/s
  double settle = 20.0;  // s
  double average = 30.0;  // s

  void validate() const;
};

std::vector<double> aep_bin_midpoints(const AepSettings& settings);

struct PowerCurveRun {
  std::vector<PowerCurvePoint> points;
  bool diverged = false;
};

// `scenario` supplies everything except wind, t_end, omega0 and settle_time.
PowerCurveRun simulate_power_curve(const ScenarioConfig& scenario, const AepSettings& settings,
                                   int jobs);

inline constexpr const char* kTraceHeader =
    "t,v_w,omega,omega_hat,theta_e,lambda,id,iq,id_hat,iq_hat,id_ref,iq_ref,vd,vq,tau_b,tau_g,"
    "p_dc,s_a,s_b,e_hat_a,e_hat_b,phi_meas";

void write_trace_csv(const std::string& path, const Trace& trace);

inline constexpr const char* kSummaryHeader =
    "name,mode,delta_L_H,delta_R_ohm,W_J,W_opt_J,eta_E,mean_abs_eps_d_A,mean_abs_eps_q_A,"
    "mean_lambda,max_rel_speed_error,diverged,truncation_time_s";

void write_summary_csv(const std::string& path, const std::vector<ScenarioSummary>& rows);

}  // namespace wecs
