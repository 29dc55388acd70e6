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

#include "wecs/sim.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>

#include "wecs/analysis.hpp"
#include "wecs/csv.hpp"
#include "wecs/error.hpp"

namespace wecs {

std::string_view to_string(Mode mode) {
  return mode == Mode::kEncoder ? "encoder" : "sensorless";
}

Mode parse_mode(std::string_view text) {
  if (text == "encoder") return Mode::kEncoder;
  if (text == "sensorless") return Mode::kSensorless;
  fail(ErrorKind::kValidation,
       "unknown mode '" + std::string(text) + "' (expected encoder or sensorless)");
}

namespace {

// n = a/b when a is an integer multiple of b to within rounding, else 0.
int integer_ratio(double a, double b) {
  const double r = a / b;
  const double n = std::round(r);
  if (n < 1.0 || std::abs(r - n) > 1e-9 * n) return 0;
  return static_cast<int>(n);
}

}  // namespace

void ScenarioConfig::validate() const {
  machine.validate();
  aero.validate();
  gains.validate();
  if (!wind) fail(ErrorKind::kValidation, "wind: no wind series configured");
  if (!(t_end > 0.0)) fail(ErrorKind::kValidation, "sim.t_end_s must be > 0");
  if (!(dt_plant > 0.0)) fail(ErrorKind::kValidation, "sim.dt_plant_s must be > 0");
  if (!(dt_ctrl > 0.0)) fail(ErrorKind::kValidation, "sim.dt_ctrl_s must be > 0");
  if (!(dt_log > 0.0)) fail(ErrorKind::kValidation, "sim.dt_log_s must be > 0");
  if (integer_ratio(dt_ctrl, dt_plant) == 0) {
    fail(ErrorKind::kValidation, "sim.dt_ctrl_s must be an integer multiple of sim.dt_plant_s");
  }
  if (integer_ratio(dt_log, dt_ctrl) == 0) {
    fail(ErrorKind::kValidation, "sim.dt_log_s must be an integer multiple of sim.dt_ctrl_s");
  }
  if (t_end > wind->duration() * (1.0 + 1e-12)) {
    fail(ErrorKind::kValidation, "sim.t_end_s exceeds the wind record duration");
  }
  if (!(omega0 >= 0.0)) fail(ErrorKind::kValidation, "sim.omega0_rad_s must be >= 0");
  if (mode == Mode::kSensorless && !(omega0 > 0.0)) {
    fail(ErrorKind::kValidation,
         "sim.omega0_rad_s must be > 0 in sensorless mode (standstill start is unobservable)");
  }
  if (!(eps_amp > 0.0)) fail(ErrorKind::kValidation, "sim.eps_amp_V must be > 0");
  if (!(omega_limit > 0.0)) fail(ErrorKind::kValidation, "sim.omega_limit_rad_s must be > 0");
  if (!(settle_time >= 0.0)) fail(ErrorKind::kValidation, "sim.settle_time_s must be >= 0");
  if (!(machine.L + delta_L > 0.0)) {
    fail(ErrorKind::kValidation, "scenario delta_L leaves a non-positive observer inductance");
  }
  if (!(machine.R + delta_R > 0.0)) {
    fail(ErrorKind::kValidation, "scenario delta_R leaves a non-positive observer resistance");
  }
  observer_params().validate();
  const auto& v = wind->samples();
  const auto last = std::min<std::size_t>(
      v.size() - 1, static_cast<std::size_t>(std::ceil(t_end / wind->dt() - 1e-9)));
  for (std::size_t k = 0; k <= last; ++k) {
    if (!(v[k] > 0.0)) {
      fail(ErrorKind::kValidation,
           "wind: speed must be > 0 throughout the run (sample " + std::to_string(k) + ")");
    }
  }
}

ObserverParams ScenarioConfig::observer_params() const {
  ObserverParams obs = observer;
  obs.R_o = machine.R + delta_R;
  obs.L_o = machine.L + delta_L;
  return obs;
}

int ScenarioConfig::plant_steps_per_tick() const { return integer_ratio(dt_ctrl, dt_plant); }
int ScenarioConfig::ticks_per_log() const { return integer_ratio(dt_log, dt_ctrl); }

namespace {

// ω, θ_e, i_α, i_β, then the cumulative energies.
enum StateIndex { kOmega, kTheta, kIAlpha, kIBeta, kWAero, kWDamp, kWGen, kWDc, kWCu, kStateSize };
using PlantState = std::array<double, kStateSize>;

template <typename State, typename F>
State rk4_step(const State& x, double h, F&& f) {
  auto axpy = [](const State& a, double s, const State& b) {
    State out;
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + s * b[i];
    return out;
  };
  const State k1 = f(x);
  const State k2 = f(axpy(x, 0.5 * h, k1));
  const State k3 = f(axpy(x, 0.5 * h, k2));
  const State k4 = f(axpy(x, h, k3));
  State out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return out;
}

struct PlantInputs {
  double v_w;
  FrameVector2 v_ab;
};

double rotor_blade_torque(double v_w, double omega, const AeroParams& aero) {
  return blade_torque(v_w, std::max(omega, 0.0), aero);
}

PlantState plant_derivative(const PlantState& x, const PlantInputs& u, const MachineParams& m,
                            const AeroParams& aero) {
  const double omega = x[kOmega];
  const double theta = x[kTheta];
  const FrameVector2 i{x[kIAlpha], x[kIBeta]};
  const double i_q = park(theta, i).second;
  const double tau_g = electromagnetic_torque(i_q, m);
  const double tau_b = rotor_blade_torque(u.v_w, omega, aero);
  const FrameVector2 di = current_derivatives({i, theta}, u.v_ab, omega, m);
  PlantState dx;
  dx[kOmega] = rotor_derivative(omega, tau_b, tau_g, aero);
  dx[kTheta] = m.p * omega;
  dx[kIAlpha] = di.first;
  dx[kIBeta] = di.second;
  dx[kWAero] = tau_b * omega;
  dx[kWDamp] = aero.b * omega * omega;
  dx[kWGen] = -tau_g * omega;
  dx[kWDc] = -1.5 * dot(u.v_ab, i);
  dx[kWCu] = 1.5 * m.R * dot(i, i);
  return dx;
}

}  // namespace

RunStatus simulate(const ScenarioConfig& config, const RecordSink& sink) {
  config.validate();
  const MachineParams& m = config.machine;
  const AeroParams& aero = config.aero;
  const WindSeries& wind = *config.wind;
  const ObserverParams obs_params = config.observer_params();
  const bool sensorless = config.mode == Mode::kSensorless;
  const int steps_per_tick = config.plant_steps_per_tick();
  const int ticks_per_log = config.ticks_per_log();
  const auto n_ticks = static_cast<long>(std::llround(config.t_end / config.dt_ctrl));
  const double i_limit = 1.5 * m.I_max;

  PlantState x{};
  x[kOmega] = config.omega0;

  ControllerState ctrl;
  bool holding = false;
  Matrix2 last_frame = park_matrix(0.0);
  ObserverState obs;
  obs.omega_e_hat = m.p * config.omega0;

  RunStatus status;
  double last_logged = 0.0;

  for (long tick = 0;; ++tick) {
    const double t = tick * config.dt_ctrl;
    const double omega = x[kOmega];
    const double theta = x[kTheta];
    const FrameVector2 i_ab{x[kIAlpha], x[kIBeta]};

    const bool finite = std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
    if (!finite || i_ab.norm() > i_limit || std::abs(omega) > config.omega_limit) {
      status.diverged = true;
      status.truncation_time = last_logged;
      status.divergence_reason = !finite ? "non-finite plant state"
                                 : i_ab.norm() > i_limit ? "current exceeded 1.5 I_max"
                                                         : "speed exceeded sim.omega_limit_rad_s";
      break;
    }

    // Frame used by the controller.
    Matrix2 frame;
    double omega_used = omega;
    bool degenerate = false;
    const FrameVector2 e_hat_used = obs.e_hat_ab;
    if (sensorless) {
      // ê after a step is built from the switching signal of the previous
      // hold interval and so describes the BEMF half a tick in the past.
      const FrameVector2 e_aligned =
          inverse_park(0.5 * obs.omega_e_hat * config.dt_ctrl, e_hat_used);
      const EquivalentPark eq = equivalent_park(e_aligned, config.eps_amp);
      frame = eq.matrix;
      degenerate = eq.degenerate;
      omega_used = obs.omega_hat(m.p);
    } else {
      frame = park_matrix(theta);
    }
    const FrameVector2 i_dq_hat = frame * i_ab;
    const FrameVector2 i_ref = otc_reference(omega_used, config.gains.K, m);

    // Integrators follow the frame the controller runs in.
    if (degenerate != holding) {
      const Matrix2 rot = degenerate ? last_frame.transposed() : frame;
      const FrameVector2 xi = rot * FrameVector2{ctrl.x_id, ctrl.x_iq};
      ctrl.x_id = xi.first;
      ctrl.x_iq = xi.second;
      holding = degenerate;
    }
    FrameVector2 v_ab;
    FrameVector2 v_dq;
    if (degenerate) {
      // No usable frame yet. Regulate zero current in the stationary frame;
      // a zero voltage vector would short the machine and brake the rotor.
      const ControlStep step =
          current_control_step(i_ab, {}, ctrl, config.gains, config.dt_ctrl, m);
      ctrl = step.state;
      v_ab = step.v_dq;
      v_dq = frame * v_ab;
    } else {
      const ControlStep step =
          current_control_step(i_dq_hat, i_ref, ctrl, config.gains, config.dt_ctrl, m);
      v_dq = step.v_dq;
      ctrl = step.state;
      v_ab = frame.transposed() * v_dq;
      last_frame = frame;
    }

    FrameVector2 s_ab;
    if (sensorless) {
      s_ab = obs.i_hat_ab - i_ab;
      const SmoStep smo = smo_step(obs, i_ab, v_ab, obs_params, config.dt_ctrl);
      obs.z_ab = smo.z_ab;
      const BemfStep bemf =
          bemf_speed_step(obs, smo.z_ab, obs_params.l2, obs_params.l3, config.dt_ctrl);
      obs.i_hat_ab = smo.i_hat_ab;
      obs.e_hat_ab = bemf.e_hat_ab;
      obs.omega_e_hat = bemf.omega_e_hat;
    }

    if (tick % ticks_per_log == 0) {
      Record r;
      r.t = t;
      r.v_w = wind.sample(std::min(t, wind.duration()));
      r.omega = omega;
      r.omega_hat = omega_used;
      r.theta_e = theta;
      r.lambda = tsr(std::max(omega, 0.0), r.v_w, aero);
      r.i_dq = park(theta, i_ab);
      r.i_dq_hat = i_dq_hat;
      r.i_dq_ref = i_ref;
      r.v_dq = v_dq;
      r.tau_b = rotor_blade_torque(r.v_w, omega, aero);
      r.tau_g = electromagnetic_torque(r.i_dq.second, m);
      r.p_dc = -1.5 * dot(v_ab, i_ab);
      if (sensorless) {
        r.s_ab = s_ab;
        r.e_hat_ab = e_hat_used;
        r.phi_meas = degenerate ? 0.0 : wrap_pi(std::atan2(-frame.m10, frame.m11) - theta);
      }
      r.w_aero = x[kWAero];
      r.w_damping = x[kWDamp];
      r.w_gen = x[kWGen];
      r.w_dc = x[kWDc];
      r.w_copper = x[kWCu];
      sink(r);
      last_logged = t;
    }
    if (tick >= n_ticks) break;

    // Plant steps over the hold interval; wind is held within each step.
    for (int k = 0; k < steps_per_tick; ++k) {
      const double ts = t + k * config.dt_plant;
      const PlantInputs u{wind.sample(std::min(ts, wind.duration())), v_ab};
      x = rk4_step(x, config.dt_plant,
                   [&](const PlantState& s) { return plant_derivative(s, u, m, aero); });
      x[kTheta] = wrap_two_pi(x[kTheta]);
    }
  }
  return status;
}

Trace simulate(const ScenarioConfig& config) {
  Trace trace;
  trace.dt_log = config.dt_log;
  trace.kinetic_energy0 = 0.5 * config.aero.J * config.omega0 * config.omega0;
  trace.records.reserve(static_cast<std::size_t>(config.t_end / config.dt_log) + 2);
  const RunStatus status = simulate(config, [&](const Record& r) { trace.records.push_back(r); });
  trace.diverged = status.diverged;
  trace.truncation_time = status.truncation_time;
  trace.divergence_reason = status.divergence_reason;
  return trace;
}

double measure_phi(const Trace& trace, double t0, double t1) {
  double sum_s = 0.0;
  double sum_c = 0.0;
  double w_min = std::numeric_limits<double>::infinity();
  double w_max = -w_min;
  double w_sum = 0.0;
  long n = 0;
  for (const Record& r : trace.records) {
    if (r.t < t0 || r.t > t1) continue;
    sum_s += std::sin(r.phi_meas);
    sum_c += std::cos(r.phi_meas);
    w_min = std::min(w_min, r.omega);
    w_max = std::max(w_max, r.omega);
    w_sum += r.omega;
    ++n;
  }
  if (n == 0) fail(ErrorKind::kDomain, "measure_phi: empty window");
  const double w_mean = w_sum / static_cast<double>(n);
  if (!(w_max - w_min <= 0.02 * std::abs(w_mean))) {
    fail(ErrorKind::kDomain, "measure_phi: speed varies by more than 2% inside the window");
  }
  return wrap_pi(std::atan2(sum_s, sum_c));
}

double optimal_energy_until(const WindSeries& series, const AeroParams& aero, double t_end) {
  const double k = 0.5 * aero.rho_air * aero.swept_area() * aero.cp_max;
  const auto& v = series.samples();
  const double dt = series.dt();
  auto cube = [](double s) { return s * s * s; };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double a = static_cast<double>(i) * dt;
    if (a >= t_end) break;
    const double b = std::min(a + dt, t_end);
    const double vb = v[i] + (v[i + 1] - v[i]) * (b - a) / dt;
    sum += 0.5 * (cube(v[i]) + cube(vb)) * (b - a);
  }
  return k * sum;
}

SummaryAccumulator::SummaryAccumulator(const ScenarioConfig& config)
    : settle_time_(config.settle_time < config.t_end ? config.settle_time : 0.5 * config.t_end) {
  summary_.name = config.name;
  summary_.mode = config.mode;
  summary_.delta_L = config.delta_L;
  summary_.delta_R = config.delta_R;
  summary_.W_opt = optimal_energy_until(*config.wind, config.aero, config.t_end);
}

void SummaryAccumulator::add(const Record& r) {
  last_w_dc_ = r.w_dc;
  if (r.t >= next_energy_sample_) {
    summary_.energy_t.push_back(r.t);
    summary_.energy_w.push_back(r.w_dc);
    next_energy_sample_ = std::floor(r.t + 1.0 + 1e-9);
  }
  if (r.t < settle_time_) return;
  sum_eps_d_ += std::abs(r.i_dq_ref.first - r.i_dq.first);
  sum_eps_q_ += std::abs(r.i_dq_ref.second - r.i_dq.second);
  sum_lambda_ += r.lambda;
  sum_i_d_ += r.i_dq.first;
  sum_i_q_ += r.i_dq.second;
  sum_i_q_ref_ += r.i_dq_ref.second;
  sum_p_dc_ += r.p_dc;
  ++count_;
  const double rel = std::abs(r.omega_hat - r.omega) / std::max(std::abs(r.omega), kOmegaFloor);
  summary_.max_rel_speed_error = std::max(summary_.max_rel_speed_error, rel);
}

ScenarioSummary SummaryAccumulator::finish(const RunStatus& status) const {
  ScenarioSummary s = summary_;
  s.W = last_w_dc_;
  s.eta_E = s.W_opt > 0.0 ? s.W / s.W_opt : 0.0;
  if (count_ > 0) {
    const double n = static_cast<double>(count_);
    s.mean_abs_eps_d = sum_eps_d_ / n;
    s.mean_abs_eps_q = sum_eps_q_ / n;
    s.mean_lambda = sum_lambda_ / n;
    s.mean_i_d = sum_i_d_ / n;
    s.mean_i_q = sum_i_q_ / n;
    s.mean_i_q_ref = sum_i_q_ref_ / n;
    s.mean_p_dc = sum_p_dc_ / n;
  }
  s.diverged = status.diverged;
  s.truncation_time = status.truncation_time;
  s.divergence_reason = status.divergence_reason;
  return s;
}

ScenarioSummary summarize(const ScenarioConfig& config, const Trace& trace) {
  SummaryAccumulator acc(config);
  for (const Record& r : trace.records) acc.add(r);
  return acc.finish({trace.diverged, trace.truncation_time, trace.divergence_reason});
}

std::vector<ScenarioSummary> sweep(const std::vector<ScenarioConfig>& configs, int jobs) {
  if (configs.empty()) fail(ErrorKind::kValidation, "sweep: no scenarios");
  for (const auto& c : configs) c.validate();
  std::vector<ScenarioSummary> out(configs.size());
  std::vector<std::exception_ptr> errors(configs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      try {
        SummaryAccumulator acc(configs[i]);
        const RunStatus status = simulate(configs[i], [&](const Record& r) { acc.add(r); });
        out[i] = acc.finish(status);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const auto n_threads =
      static_cast<std::size_t>(std::clamp<std::size_t>(jobs > 0 ? jobs : 1, 1, configs.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < n_threads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

void AepSettings::validate() const {
  if (!(v_mean > 0.0)) fail(ErrorKind::kValidation, "aep.v_mean_mps must be > 0");
  if (!(v_cut > 0.0)) fail(ErrorKind::kValidation, "aep.v_cut_mps must be > 0");
  if (!(v_min > 0.0)) fail(ErrorKind::kValidation, "aep.v_min_mps must be > 0");
  if (!(v_max > v_min)) fail(ErrorKind::kValidation, "aep.v_max_mps must exceed aep.v_min_mps");
  if (!(settle >= 0.0)) fail(ErrorKind::kValidation, "aep.settle_s must be >= 0");
  if (!(average > 0.0)) fail(ErrorKind::kValidation, "aep.average_s must be > 0");
}

std::vector<double> aep_bin_midpoints(const AepSettings& settings) {
  std::vector<double> mids;
  const auto bins = static_cast<int>(std::ceil(settings.v_max / kAepBinWidth - 1e-9));
  for (int k = 0; k < bins; ++k) {
    const double mid = (k + 0.5) * kAepBinWidth;
    if (mid >= settings.v_min - 1e-12 && mid <= settings.v_max + 1e-12) mids.push_back(mid);
  }
  return mids;
}

PowerCurveRun simulate_power_curve(const ScenarioConfig& scenario, const AepSettings& settings,
                                   int jobs) {
  settings.validate();
  const std::vector<double> mids = aep_bin_midpoints(settings);
  if (mids.empty()) fail(ErrorKind::kValidation, "aep: no bin midpoint inside [v_min, v_max]");
  std::vector<ScenarioConfig> runs;
  for (double v : mids) {
    ScenarioConfig c = scenario;
    c.t_end = settings.settle + settings.average;
    c.wind = std::make_shared<WindSeries>(constant_series(v, c.t_end));
    c.omega0 = c.aero.lambda_opt * v / c.aero.R_r;
    c.settle_time = settings.settle;
    runs.push_back(std::move(c));
  }
  PowerCurveRun out;
  const auto rows = sweep(runs, jobs);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    out.points.push_back({mids[k], rows[k].diverged ? 0.0 : rows[k].mean_p_dc});
    out.diverged = out.diverged || rows[k].diverged;
  }
  return out;
}

namespace {

void append_row(std::string& buf, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) buf.push_back(',');
    buf += format_double(v);
    first = false;
  }
  buf.push_back('\n');
}

}  // namespace

void write_trace_csv(const std::string& path, const Trace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path + "'");
  std::string buf = std::string(kTraceHeader) + "\n";
  for (const Record& r : trace.records) {
    append_row(buf, {r.t, r.v_w, r.omega, r.omega_hat, r.theta_e, r.lambda, r.i_dq.first,
                     r.i_dq.second, r.i_dq_hat.first, r.i_dq_hat.second, r.i_dq_ref.first,
                     r.i_dq_ref.second, r.v_dq.first, r.v_dq.second, r.tau_b, r.tau_g, r.p_dc,
                     r.s_ab.first, r.s_ab.second, r.e_hat_ab.first, r.e_hat_ab.second,
                     r.phi_meas});
    if (buf.size() > (1u << 20)) {
      out << buf;
      buf.clear();
    }
  }
  out << buf;
  if (!out) fail(ErrorKind::kIo, "write failed for '" + path + "'");
}

void write_summary_csv(const std::string& path, const std::vector<ScenarioSummary>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path + "'");
  out << kSummaryHeader << '\n';
  for (const auto& s : rows) {
    out << s.name << ',' << to_string(s.mode) << ',' << format_double(s.delta_L) << ','
        << format_double(s.delta_R) << ',' << format_double(s.W) << ','
        << format_double(s.W_opt) << ',' << format_double(s.eta_E) << ','
        << format_double(s.mean_abs_eps_d) << ',' << format_double(s.mean_abs_eps_q) << ','
        << format_double(s.mean_lambda) << ',' << format_double(s.max_rel_speed_error) << ','
        << (s.diverged ? 1 : 0) << ',' << format_double(s.truncation_time) << '\n';
  }
  if (!out) fail(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace wecs
