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

#include "wecs/control.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "wecs/error.hpp"
#include "wecs/observer.hpp"

namespace wecs {

void ControllerGains::validate() const {
  if (!std::isfinite(k_p)) fail(ErrorKind::kValidation, "control.k_p must be finite");
  if (!(k_i > 0.0)) fail(ErrorKind::kValidation, "control.k_i must be > 0");
  if (!(K > 0.0)) fail(ErrorKind::kValidation, "control.K must be > 0");
}

double optimal_torque_gain(const AeroParams& aero) {
  const double r3 = aero.R_r * aero.R_r * aero.R_r;
  const double l3 = aero.lambda_opt * aero.lambda_opt * aero.lambda_opt;
  return 0.5 * aero.rho_air * aero.swept_area() * r3 * aero.cp_max / l3;
}

FrameVector2 otc_reference(double omega_hat, double K, const MachineParams& params) {
  const double i_q = -2.0 * K * omega_hat * omega_hat / (3.0 * params.p * params.phi_f);
  return {0.0, std::clamp(i_q, -params.I_max, params.I_max)};
}

FrameVector2 clamp_to_disc(const FrameVector2& v, double limit) {
  const double n = v.norm();
  if (n <= limit) return v;
  return v * (limit / n);
}

ControlStep current_control_step(const FrameVector2& i_dq_meas, const FrameVector2& i_dq_ref,
                                 const ControllerState& state, const ControllerGains& gains,
                                 double dt, const MachineParams& params) {
  const FrameVector2 demand{-gains.k_p * i_dq_meas.first - gains.k_i * state.x_id,
                            -gains.k_p * i_dq_meas.second - gains.k_i * state.x_iq};
  const double limit = params.voltage_limit();

  ControllerState next = state;
  next.i_dq_ref = i_dq_ref;
  next.clamped = demand.norm() > limit;
  next.v_dq_cmd = clamp_to_disc(demand, limit);
  if (!next.clamped) {
    next.x_id += dt * (i_dq_meas.first - i_dq_ref.first);
    next.x_iq += dt * (i_dq_meas.second - i_dq_ref.second);
  }
  return {next.v_dq_cmd, next};
}

KpBound theorem1_kp_bound(const MachineParams& params, double b, const FrameVector2& i_dq_ref) {
  const double p = params.p;
  const double i_d = i_dq_ref.first;
  const double i_q = i_dq_ref.second;
  double a = 0.0;
  if (i_d == 0.0) {
    a = theorem1_threshold_id_zero(params, b, i_q);
  } else {
    const double flux = params.phi_f + params.L * i_d;
    const double root = std::sqrt(p * p * flux * flux + std::pow(params.L * i_q * p, 2));
    a = 3.0 / (4.0 * b) * p * params.phi_f * root - 3.0 * p * p * params.phi_f * flux / (4.0 * b);
  }
  return {a, a - params.R};
}

double theorem1_threshold_id_zero(const MachineParams& params, double b, double i_q_ref) {
  const double p = params.p;
  const double phi = params.phi_f;
  const double root = std::sqrt(p * p * (params.L * params.L * i_q_ref * i_q_ref + phi * phi));
  return -3.0 * p * phi * (p * phi - root) / (4.0 * b);
}

namespace {

struct LyapunovTerms {
  double a, c, d, e;
};

LyapunovTerms lyapunov_terms(const MachineParams& params, double J, const ControllerGains& gains,
                             const FrameVector2& i_dq_ref) {
  const double p = params.p;
  return {gains.k_p + params.R, p * (params.phi_f + params.L * i_dq_ref.first) / 2.0,
          0.5 * p * params.L * i_dq_ref.second, 1.5 * p * params.phi_f / (2.0 * J)};
}

}  // namespace

Eigen::Matrix3d lyapunov_derivative_matrix(const MachineParams& params, double b, double J,
                                           const ControllerGains& gains,
                                           const FrameVector2& i_dq_ref, double beta) {
  const auto [a, c, d, e] = lyapunov_terms(params, J, gains, i_dq_ref);
  Eigen::Matrix3d m;
  m << -a * beta, 0.0, beta * d,
       0.0, -a * beta, e - beta * c,
       beta * d, e - beta * c, -b / J;
  return m;
}

double lyapunov_beta_max(const MachineParams& params, double b, double J,
                         const ControllerGains& gains, const FrameVector2& i_dq_ref) {
  const auto [a, c, d, e] = lyapunov_terms(params, J, gains, i_dq_ref);
  return (2.0 * J * c * e + a * b) / (2.0 * J * (c * c + d * d));
}

StabilityReport stability_certificate(const MachineParams& params, double b, double J,
                                      const ControllerGains& gains,
                                      const FrameVector2& i_dq_ref) {
  const KpBound bound = theorem1_kp_bound(params, b, i_dq_ref);
  StabilityReport report;
  report.a_value = bound.a;
  report.kp_min = bound.kp_min;
  report.worst_eigenvalue = std::numeric_limits<double>::infinity();

  const double beta_max = lyapunov_beta_max(params, b, J, gains, i_dq_ref);
  const double center = (std::isfinite(beta_max) && beta_max > 0.0) ? beta_max : 1.0;
  std::vector<double> betas;
  betas.push_back(center);
  for (int k = -240; k <= 240; ++k) betas.push_back(center * std::pow(10.0, k / 20.0));
  const auto [a, c, d, e] = lyapunov_terms(params, J, gains, i_dq_ref);
  if (c > 0.0) betas.push_back(e / c);  // cancels the (e_q, e_ω) coupling

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver;
  for (double beta : betas) {
    if (!(beta > 0.0) || !std::isfinite(beta)) continue;
    solver.compute(lyapunov_derivative_matrix(params, b, J, gains, i_dq_ref, beta),
                   Eigen::EigenvaluesOnly);
    const double top = solver.eigenvalues().maxCoeff();
    if (top < report.worst_eigenvalue) {
      report.worst_eigenvalue = top;
      report.best_beta = beta;
    }
  }
  report.certified = report.worst_eigenvalue < 0.0;
  return report;
}

ClosedLoopErrorModel::ClosedLoopErrorModel(const MachineParams& params, double b, double J,
                                           const ControllerGains& gains,
                                           const FrameVector2& i_dq_ref, double tau_b)
    : params_(params),
      b_(b),
      J_(J),
      gains_(gains),
      i_ref_(i_dq_ref),
      omega_star_(1.5 * params.p * params.phi_f * i_dq_ref.second / b + tau_b / b) {}

ClosedLoopErrorModel::State ClosedLoopErrorModel::derivative(const State& x) const {
  const auto [e_d, e_q, e_id, e_iq, e_w] = x;
  const double p = params_.p;
  const double L = params_.L;
  const double a = gains_.k_p + params_.R;
  const double omega = e_w + omega_star_;
  return {
      (-a * e_d - gains_.k_i * e_id) / L + p * omega * e_q + p * e_w * i_ref_.second,
      (-a * e_q - gains_.k_i * e_iq - p * params_.phi_f * e_w) / L - p * omega * e_d -
          p * e_w * i_ref_.first,
      e_d,
      e_q,
      1.5 * p * params_.phi_f * e_q / J_ - b_ * e_w / J_,
  };
}

ControllerGains default_gains(const MachineParams& params, const UncertaintyBounds& bounds,
                              double b, double K) {
  MachineParams worst = params;
  worst.R = bounds.R_min;
  worst.L = bounds.L_max;
  const KpBound bound = theorem1_kp_bound(worst, b, {0.0, -params.I_max});
  ControllerGains gains;
  gains.k_p = 2.0 * std::max(bound.kp_min, 0.5);
  gains.k_i = gains.k_p / kIntegralTimeConstant;
  gains.K = K;
  return gains;
}

}  // namespace wecs
