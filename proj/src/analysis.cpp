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

#include "wecs/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

#include "wecs/csv.hpp"
#include "wecs/error.hpp"

namespace wecs {

MisalignmentPrediction misalignment(const FrameVector2& i_dq_star, double delta_R, double delta_L,
                                    double omega, const MachineParams& params) {
  const double i_d = i_dq_star.first;
  const double i_q = i_dq_star.second;
  const double pw = params.p * omega;
  MisalignmentPrediction out;
  out.x = pw * (params.phi_f - i_d * delta_L) - delta_R * i_q;
  out.y = -i_d * delta_R + i_q * pw * delta_L;
  if (out.x == 0.0 && out.y == 0.0) {
    fail(ErrorKind::kDomain, "misalignment: phase undefined for x = y = 0");
  }
  out.amplitude = std::hypot(out.x, out.y);
  // x = 0 falls in the "otherwise" branch; atan(±inf) keeps the limit.
  out.phi = out.x > 0.0 ? -std::atan(out.y / out.x) : -std::atan(out.y / out.x) + std::numbers::pi;
  return out;
}

EquilibriumCurrents equilibrium_currents(double i_q_ref, double delta_L,
                                         const MachineParams& params) {
  if (delta_L == 0.0) return {0.0, i_q_ref};
  const double phi = params.phi_f;
  const double dl2 = delta_L * delta_L;
  EquilibriumCurrents out;
  out.i_d_star = delta_L * i_q_ref * i_q_ref / phi;
  const double inner = phi * std::sqrt(4.0 * dl2 * i_q_ref * i_q_ref + phi * phi) - phi * phi;
  const double magnitude = std::sqrt(std::max(0.0, inner) / (2.0 * dl2));
  out.i_q_star = i_q_ref > 0.0 ? magnitude : (i_q_ref < 0.0 ? -magnitude : 0.0);
  return out;
}

double optimal_energy(const WindSeries& series, const AeroParams& aero) {
  const double k = 0.5 * aero.rho_air * aero.swept_area() * aero.cp_max;
  const auto& v = series.samples();
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    sum += 0.5 * (v[i] * v[i] * v[i] + v[i + 1] * v[i + 1] * v[i + 1]);
  }
  return k * sum * series.dt();
}

EnergyReport energy_efficiency(std::span<const double> p_dc, double dt, double W_opt) {
  if (!(W_opt > 0.0)) fail(ErrorKind::kDomain, "energy efficiency: W_opt must be > 0");
  double W = 0.0;
  for (std::size_t i = 0; i + 1 < p_dc.size(); ++i) W += 0.5 * (p_dc[i] + p_dc[i + 1]) * dt;
  return {W, W_opt, W / W_opt};
}

double rayleigh_cdf(double v, double v_mean) {
  if (v <= 0.0) return 0.0;
  const double r = v / v_mean;
  return 1.0 - std::exp(-std::numbers::pi / 4.0 * r * r);
}

namespace {

double interpolate(std::span<const PowerCurvePoint> curve, double v) {
  if (v < curve.front().wind_mps || v > curve.back().wind_mps) return 0.0;
  auto hi = std::lower_bound(curve.begin(), curve.end(), v,
                             [](const PowerCurvePoint& p, double x) { return p.wind_mps < x; });
  if (hi == curve.begin()) return hi->p_dc_w;
  auto lo = hi - 1;
  const double t = (v - lo->wind_mps) / (hi->wind_mps - lo->wind_mps);
  return lo->p_dc_w + t * (hi->p_dc_w - lo->p_dc_w);
}

}  // namespace

double annual_energy_production(std::span<const PowerCurvePoint> power_curve, double v_mean,
                                double v_cut) {
  if (power_curve.empty()) fail(ErrorKind::kDomain, "AEP: empty power curve");
  if (!(v_mean > 0.0)) fail(ErrorKind::kDomain, "AEP: mean wind speed must be > 0");
  if (!(v_cut > 0.0)) fail(ErrorKind::kDomain, "AEP: cut-off speed must be > 0");
  for (std::size_t i = 1; i < power_curve.size(); ++i) {
    if (!(power_curve[i].wind_mps > power_curve[i - 1].wind_mps)) {
      fail(ErrorKind::kDomain, "AEP: power curve wind speeds must be strictly increasing");
    }
  }
  const auto bins = static_cast<int>(std::ceil(v_cut / kAepBinWidth - 1e-9));
  double energy_wh = 0.0;
  for (int k = 0; k < bins; ++k) {
    const double lo = k * kAepBinWidth;
    const double hi = std::min(v_cut, lo + kAepBinWidth);
    const double mass = rayleigh_cdf(hi, v_mean) - rayleigh_cdf(lo, v_mean);
    energy_wh += interpolate(power_curve, 0.5 * (lo + hi)) * mass * kHoursPerYear;
  }
  return energy_wh / 1000.0;
}

double dc_power(const FrameVector2& v_dq, const FrameVector2& i_dq) {
  return -1.5 * dot(v_dq, i_dq);
}

void write_power_curve(const std::string& path, std::span<const PowerCurvePoint> curve) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path + "'");
  out << "wind_mps,p_dc_w\n";
  for (const auto& point : curve) {
    out << format_double(point.wind_mps) << ',' << format_double(point.p_dc_w) << '\n';
  }
}

std::vector<PowerCurvePoint> load_power_curve(const std::string& path) {
  const NumericTable table = read_numeric_csv(path, {"wind_mps", "p_dc_w"});
  std::vector<PowerCurvePoint> curve;
  for (const auto& row : table.rows) curve.push_back({row[0], row[1]});
  return curve;
}

}  // namespace wecs
