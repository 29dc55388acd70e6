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

#include "wecs/frame.hpp"
#include "wecs/machine.hpp"

namespace wecs {

struct AeroParams;

// Assumed envelope of the true and assumed electrical parameters.
struct UncertaintyBounds {
  double L_min = 0.2e-3;
  double L_max = 2.0e-3;
  double R_min = 0.084;
  double R_max = 0.84;

  double delta_L() const { return L_max - L_min; }
  double delta_R() const { return R_max - R_min; }
  bool contains(double R, double L) const {
    return R >= R_min && R <= R_max && L >= L_min && L <= L_max;
  }
  void validate() const;
};

struct ObserverParams {
  double R_o = 0.42;    // assumed resistance, ohm
  double L_o = 1e-3;    // assumed inductance, H
  double l1 = 30.0;     // sliding gain, V
  double l2 = 100.0;    // BEMF filter gain, 1/s
  double l3 = 10.0;     // speed adaptation gain
  double boundary_layer = 0.05;  // half-width of the saturated sign, A
  bool pure_sign = false;        // ignore boundary_layer and use sign()
  UncertaintyBounds bounds;

  void validate() const;
};

struct ObserverState {
  FrameVector2 i_hat_ab;     // A
  FrameVector2 e_hat_ab;     // V
  double omega_e_hat = 0.0;  // electrical rad/s
  FrameVector2 z_ab;         // switching signal, V

  double omega_hat(int pole_pairs) const { return omega_e_hat / pole_pairs; }
};

// sign() with an optional linear boundary layer of half-width `width`.
double saturated_sign(double x, double width);

struct SmoStep {
  FrameVector2 i_hat_ab;
  FrameVector2 z_ab;
};

// Forward-Euler step of the current sliding-mode observer
//   dî/dt = (v − R_o·î − l1·sgn(î − i))/L_o
// where `v_ab` is the voltage applied over the coming interval. Only the
// assumed parameters are visible here.
SmoStep smo_step(const ObserverState& state, const FrameVector2& i_ab_meas,
                 const FrameVector2& v_ab, const ObserverParams& obs, double dt);

struct BemfStep {
  FrameVector2 e_hat_ab;
  double omega_e_hat = 0.0;
};

// Forward-Euler step of the rotating BEMF filter with speed adaptation
//   dê_α/dt = −ω̂_e·ê_β − l2(ê_α − z_α)
//   dê_β/dt =  ω̂_e·ê_α − l2(ê_β − z_β)
//   dω̂_e/dt = l3[(ê_α − z_α)ê_β − (ê_β − z_β)ê_α].
BemfStep bemf_speed_step(const ObserverState& state, const FrameVector2& z_ab, double l2,
                         double l3, double dt);

// Smallest sliding gain guaranteeing s·ṡ < 0 over the parameter envelope:
//   (L_o/L_min)·E_max + (R_max·ΔL/L_min + ΔR)·I_max + (ΔL/L_min)·V_max.
double robust_l1_bound(const UncertaintyBounds& bounds, double L_o, double E_max, double V_max,
                       double I_max);

struct OperatingExtremes {
  double omega_max = 0.0;  // mechanical rad/s
  double E_max = 0.0;      // V
  double V_max = 0.0;      // V
  double I_max = 0.0;      // A
};

// E_max = pφ_f·ω_max with ω_max = λ_opt·v_w,max/R_r; V_max = V_dc/√3;
// I_max from the machine rating.
OperatingExtremes operating_extremes(const MachineParams& machine, const AeroParams& aero,
                                     double v_w_max);

struct EquivalentPark {
  Matrix2 matrix;
  bool degenerate = false;
};

// Park-equivalent rotation built from the normalized BEMF estimate. When
// ‖ê‖ < eps_amp the normalization uses eps_amp and `degenerate` is set.
EquivalentPark equivalent_park(const FrameVector2& e_hat_ab, double eps_amp);

// Electrical angle encoded by a BEMF vector (−E·sin θ, E·cos θ).
double bemf_angle(const FrameVector2& e_ab);

}  // namespace wecs
