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

#include <span>
#include <string>
#include <vector>

#include "wecs/aero.hpp"
#include "wecs/frame.hpp"
#include "wecs/machine.hpp"
#include "wecs/wind.hpp"

namespace wecs {

// Steady-state BEMF estimate under parameter mismatch:
//   ê_αβ = √(x² + y²)·(−sin(θ_e + φ), cos(θ_e + φ)).
struct MisalignmentPrediction {
  double x = 0.0;          // V
  double y = 0.0;          // V
  double phi = 0.0;        // rad
  double amplitude = 0.0;  // V
};

struct EquilibriumCurrents {
  double i_d_star = 0.0;  // A
  double i_q_star = 0.0;  // A
};

struct EnergyReport {
  double W = 0.0;      // J
  double W_opt = 0.0;  // J
  double eta_E = 0.0;
};

struct PowerCurvePoint {
  double wind_mps = 0.0;
  double p_dc_w = 0.0;
};

// x = pω(φ_f − i_d*·δ_L) − δ_R·i_q*,  y = −i_d*·δ_R + i_q*·pω·δ_L,
// φ = −atan(y/x) for x > 0, −atan(y/x) + π otherwise. ω is mechanical.
// Throws Error(kDomain) when x = y = 0.
MisalignmentPrediction misalignment(const FrameVector2& i_dq_star, double delta_R, double delta_L,
                                    double omega, const MachineParams& params);

// i_d* = δ_L·i_q#²/φ_f and
// i_q* = sign(i_q#)·√((φ_f·√(4δ_L²i_q#² + φ_f²) − φ_f²)/(2δ_L²)).
// δ_L = 0 returns (0, i_q#).
EquilibriumCurrents equilibrium_currents(double i_q_ref, double delta_L,
                                         const MachineParams& params);

// Trapezoidal integral of ½ρA·V_w³·Cp_max over the record.
double optimal_energy(const WindSeries& series, const AeroParams& aero);

// Trapezoidal integral of uniformly sampled P_dc, divided by W_opt.
EnergyReport energy_efficiency(std::span<const double> p_dc, double dt, double W_opt);

// Rayleigh CDF with mean v_mean.
double rayleigh_cdf(double v, double v_mean);

// Truncated annual energy production, kWh/yr: 0.5 m/s bins from 0 to v_cut,
// bin power by linear interpolation of the curve at the bin midpoint (zero
// outside the curve's support), weighted by the Rayleigh bin mass.
double annual_energy_production(std::span<const PowerCurvePoint> power_curve, double v_mean,
                                double v_cut);

inline constexpr double kAepBinWidth = 0.5;  // m/s
inline constexpr double kHoursPerYear = 8760.0;

// Lossless converter: P_dc = −(3/2)(v_d·i_d + v_q·i_q); positive when power
// flows to the DC bus.
double dc_power(const FrameVector2& v_dq, const FrameVector2& i_dq);

// CSV with header `wind_mps,p_dc_w`.
void write_power_curve(const std::string& path, std::span<const PowerCurvePoint> curve);
std::vector<PowerCurvePoint> load_power_curve(const std::string& path);

}  // namespace wecs
