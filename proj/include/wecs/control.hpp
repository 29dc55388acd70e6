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

#include <array>

#include <Eigen/Dense>

#include "wecs/aero.hpp"
#include "wecs/frame.hpp"
#include "wecs/machine.hpp"

namespace wecs {

struct UncertaintyBounds;

struct ControllerGains {
  double k_p = 0.0;  // V/A
  double k_i = 0.0;  // V/(A·s)
  double K = 0.0;    // torque gain, N·m·s²/rad²

  void validate() const;
};

struct ControllerState {
  double x_id = 0.0;  // A·s
  double x_iq = 0.0;  // A·s
  FrameVector2 i_dq_ref;
  FrameVector2 v_dq_cmd;
  bool clamped = false;
};

struct StabilityReport {
  double a_value = 0.0;  // stability threshold a, V/A
  double kp_min = 0.0;   // a − R, V/A
  bool certified = false;
  // Largest eigenvalue of the Lyapunov-derivative matrix at the best β of the
  // sweep. Negative iff that β certifies.
  double worst_eigenvalue = 0.0;
  double best_beta = 0.0;
};

// K_opt = ½ρA·R_r³·Cp_max/λ_opt³.
double optimal_torque_gain(const AeroParams& aero);

// Optimal-torque current set point (0, −2Kω̂²/(3pφ_f)); the q component is
// clamped to [−I_max, I_max].
FrameVector2 otc_reference(double omega_hat, double K, const MachineParams& params);

struct ControlStep {
  FrameVector2 v_dq;
  ControllerState state;
};

// State feedback plus integral action on each axis,
//   v = −k_p·i − k_i·x,   ẋ = i − i_ref   (forward Euler),
// with the voltage vector limited to V_dc/√3. While the limit binds the
// direction is kept and both integrators hold their value.
ControlStep current_control_step(const FrameVector2& i_dq_meas, const FrameVector2& i_dq_ref,
                                 const ControllerState& state, const ControllerGains& gains,
                                 double dt, const MachineParams& params);

// Scales `v` onto the disc of radius `limit` without changing its direction.
FrameVector2 clamp_to_disc(const FrameVector2& v, double limit);

struct KpBound {
  double a = 0.0;       // V/A
  double kp_min = 0.0;  // V/A
};

// General stability threshold with arbitrary i_d reference:
//   a = (3/(4b))·pφ_f·√(p²(φ_f + L·i_d)² + (p·L·i_q)²) − 3p²φ_f(φ_f + L·i_d)/(4b),
// kp_min = a − R. When i_d = 0 the reduced closed form is used.
KpBound theorem1_kp_bound(const MachineParams& params, double b, const FrameVector2& i_dq_ref);

// The reduced closed form valid for i_d = 0 only.
double theorem1_threshold_id_zero(const MachineParams& params, double b, double i_q_ref);

// 3x3 matrix M(β) with V̇ = [e_d e_q e_ω] M [e_d e_q e_ω]ᵀ for the Lyapunov
// function β(V_d + V_q) + V_ω.
Eigen::Matrix3d lyapunov_derivative_matrix(const MachineParams& params, double b, double J,
                                           const ControllerGains& gains,
                                           const FrameVector2& i_dq_ref, double beta);

// β maximizing the determinant factor P(β); see stability_certificate.
double lyapunov_beta_max(const MachineParams& params, double b, double J,
                         const ControllerGains& gains, const FrameVector2& i_dq_ref);

// Numerical certificate: sweeps β over a logarithmic grid (plus the
// analytic maximizer) and reports whether M(β) is negative definite for some β.
StabilityReport stability_certificate(const MachineParams& params, double b, double J,
                                      const ControllerGains& gains,
                                      const FrameVector2& i_dq_ref);

// Closed-loop tracking-error dynamics for constant blade torque and constant
// current references. State is [e_d, e_q, e_id, e_iq, e_ω].
class ClosedLoopErrorModel {
 public:
  using State = std::array<double, 5>;

  ClosedLoopErrorModel(const MachineParams& params, double b, double J,
                       const ControllerGains& gains, const FrameVector2& i_dq_ref,
                       double tau_b);

  State derivative(const State& x) const;
  // Equilibrium speed ω* = (3/(2b))·pφ_f·i_q_ref + τ_b/b.
  double omega_star() const { return omega_star_; }

 private:
  MachineParams params_;
  double b_;
  double J_;
  ControllerGains gains_;
  FrameVector2 i_ref_;
  double omega_star_;
};

// Default operating gains: k_p = 2·max(kp_min, 0.5) with kp_min evaluated
// at i_q = −I_max using R_min and L_max; k_i = k_p/τ_i with τ_i = 5 ms.
ControllerGains default_gains(const MachineParams& params, const UncertaintyBounds& bounds,
                              double b, double K);

inline constexpr double kIntegralTimeConstant = 5e-3;  // s

}  // namespace wecs
