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

#include <numbers>

#include "wecs/frame.hpp"

namespace wecs {

// Electrical constants of a non-salient surface-mounted PMSG.
struct MachineParams {
  double R = 0.42;       // phase resistance, ohm
  double L = 1.0e-3;     // phase inductance, H
  double phi_f = 0.11;   // peak PM flux linkage, Wb
  int p = 8;             // pole pairs
  double V_dc = 50.0;    // DC bus voltage, V
  double I_max = 20.0;   // maximum phase current amplitude, A

  // Throws Error(kValidation) naming the offending field.
  void validate() const;

  // Largest phase-voltage amplitude the converter can synthesize in the
  // linear modulation range of a two-level, three-leg bridge.
  double voltage_limit() const { return V_dc / std::numbers::sqrt3; }
};

struct ElectricalState {
  FrameVector2 i_ab;     // A
  double theta_e = 0.0;  // rad, [0, 2π)
};

// Wraps to [0, 2π) by remainder.
double wrap_two_pi(double angle);
// Wraps to (−π, π].
double wrap_pi(double angle);

// Amplitude-invariant Clarke transform; zero sequence is discarded.
FrameVector2 clarke(double a, double b, double c);

// Rotation from αβ to dq at electrical angle theta.
Matrix2 park_matrix(double theta);
FrameVector2 park(double theta, const FrameVector2& x_ab);
FrameVector2 inverse_park(double theta, const FrameVector2& x_dq);

// BEMF in the αβ frame for mechanical speed omega (rad/s).
FrameVector2 bemf_ab(double theta_e, double omega, const MachineParams& params);

// Motor convention: generation corresponds to i_q < 0 and negative torque.
double electromagnetic_torque(double i_q, const MachineParams& params);

// Truth-plant current dynamics in αβ. Always uses the true R and L.
FrameVector2 current_derivatives(const ElectricalState& state, const FrameVector2& v_ab,
                                 double omega, const MachineParams& params);

}  // namespace wecs
