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

#include "wecs/machine.hpp"

#include <cmath>
#include <string>

#include "wecs/error.hpp"

namespace wecs {

namespace {

void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    fail(ErrorKind::kValidation,
         std::string("machine.") + field + " must be positive and finite, got " +
             std::to_string(value));
  }
}

}  // namespace

void MachineParams::validate() const {
  require_positive(R, "R");
  require_positive(L, "L");
  require_positive(phi_f, "phi_f");
  if (p < 1) fail(ErrorKind::kValidation, "machine.p must be >= 1");
  require_positive(V_dc, "V_dc");
  require_positive(I_max, "I_max");
}

double wrap_two_pi(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::fmod(angle, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2π.
  return r >= kTwoPi ? 0.0 : r;
}

double wrap_pi(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double r = std::remainder(angle, kTwoPi);
  if (r <= -std::numbers::pi) r += kTwoPi;
  return r;
}

FrameVector2 clarke(double a, double b, double c) {
  return {(2.0 / 3.0) * (a - 0.5 * b - 0.5 * c), (b - c) / std::numbers::sqrt3};
}

Matrix2 park_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, s, -s, c};
}

FrameVector2 park(double theta, const FrameVector2& x_ab) { return park_matrix(theta) * x_ab; }

FrameVector2 inverse_park(double theta, const FrameVector2& x_dq) {
  return park_matrix(theta).transposed() * x_dq;
}

FrameVector2 bemf_ab(double theta_e, double omega, const MachineParams& params) {
  const double amplitude = params.p * params.phi_f * omega;
  return {-amplitude * std::sin(theta_e), amplitude * std::cos(theta_e)};
}

double electromagnetic_torque(double i_q, const MachineParams& params) {
  return 1.5 * params.p * params.phi_f * i_q;
}

FrameVector2 current_derivatives(const ElectricalState& state, const FrameVector2& v_ab,
                                 double omega, const MachineParams& params) {
  const FrameVector2 e_ab = bemf_ab(state.theta_e, omega, params);
  return (v_ab - params.R * state.i_ab - e_ab) * (1.0 / params.L);
}

}  // namespace wecs
