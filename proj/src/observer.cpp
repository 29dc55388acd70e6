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

#include "wecs/observer.hpp"

#include <algorithm>
#include <cmath>

#include "wecs/aero.hpp"
#include "wecs/error.hpp"

namespace wecs {

void UncertaintyBounds::validate() const {
  if (!(L_min > 0.0 && L_min <= L_max)) {
    fail(ErrorKind::kValidation, "bounds: require 0 < L_min <= L_max");
  }
  if (!(R_min > 0.0 && R_min <= R_max)) {
    fail(ErrorKind::kValidation, "bounds: require 0 < R_min <= R_max");
  }
}

void ObserverParams::validate() const {
  if (!(R_o > 0.0)) fail(ErrorKind::kValidation, "observer: R_o must be > 0");
  if (!(L_o > 0.0)) fail(ErrorKind::kValidation, "observer: L_o must be > 0");
  if (!(l1 > 0.0)) fail(ErrorKind::kValidation, "observer.l1_V must be > 0");
  if (!(l2 > 0.0)) fail(ErrorKind::kValidation, "observer.l2_per_s must be > 0");
  if (!(l3 > 0.0)) fail(ErrorKind::kValidation, "observer.l3 must be > 0");
  if (!pure_sign && !(boundary_layer > 0.0)) {
    fail(ErrorKind::kValidation, "observer.boundary_layer_A must be > 0");
  }
  bounds.validate();
}

double saturated_sign(double x, double width) {
  if (width <= 0.0) return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
  return std::clamp(x / width, -1.0, 1.0);
}

SmoStep smo_step(const ObserverState& state, const FrameVector2& i_ab_meas,
                 const FrameVector2& v_ab, const ObserverParams& obs, double dt) {
  const double width = obs.pure_sign ? 0.0 : obs.boundary_layer;
  const FrameVector2 s = state.i_hat_ab - i_ab_meas;
  const FrameVector2 z{obs.l1 * saturated_sign(s.first, width),
                       obs.l1 * saturated_sign(s.second, width)};
  const FrameVector2 di = (v_ab - obs.R_o * state.i_hat_ab - z) * (1.0 / obs.L_o);
  return {state.i_hat_ab + dt * di, z};
}

BemfStep bemf_speed_step(const ObserverState& state, const FrameVector2& z_ab, double l2,
                         double l3, double dt) {
  const FrameVector2& e = state.e_hat_ab;
  const FrameVector2 innovation = e - z_ab;
  const double w = state.omega_e_hat;
  const FrameVector2 de{-w * e.second - l2 * innovation.first,
                        w * e.first - l2 * innovation.second};
  const double dw = l3 * (innovation.first * e.second - innovation.second * e.first);
  return {e + dt * de, w + dt * dw};
}

double robust_l1_bound(const UncertaintyBounds& bounds, double L_o, double E_max, double V_max,
                       double I_max) {
  const double dl_ratio = bounds.delta_L() / bounds.L_min;
  return L_o / bounds.L_min * E_max + (bounds.R_max * dl_ratio + bounds.delta_R()) * I_max +
         dl_ratio * V_max;
}

OperatingExtremes operating_extremes(const MachineParams& machine, const AeroParams& aero,
                                     double v_w_max) {
  OperatingExtremes x;
  x.omega_max = aero.lambda_opt * v_w_max / aero.R_r;
  x.E_max = machine.p * machine.phi_f * x.omega_max;
  x.V_max = machine.voltage_limit();
  x.I_max = machine.I_max;
  return x;
}

EquivalentPark equivalent_park(const FrameVector2& e_hat_ab, double eps_amp) {
  const double amplitude = e_hat_ab.norm();
  EquivalentPark out;
  out.degenerate = !(amplitude >= eps_amp);
  const double denom = std::max(amplitude, eps_amp);
  const double scale = denom > 0.0 ? 1.0 / denom : 0.0;
  const double ea = e_hat_ab.first * scale;
  const double eb = e_hat_ab.second * scale;
  out.matrix = {eb, -ea, ea, eb};
  return out;
}

double bemf_angle(const FrameVector2& e_ab) { return std::atan2(-e_ab.first, e_ab.second); }

}  // namespace wecs
