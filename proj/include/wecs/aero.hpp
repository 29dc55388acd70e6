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

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace wecs {

// Coefficients of Cp(λ) = c1·(c2/λi − c4)·exp(−c5/λi) + c6·λ,
// 1/λi = 1/λ − c7.
struct AnalyticCpCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;
  double c5 = 0.0;
  double c6 = 0.0;
  double c7 = 0.0;
};

// Fixed-pitch power-coefficient curve. Either the analytic exponential form
// or a sampled (λ, Cp) table interpolated with a monotone cubic. Cp is zero
// at λ = 0 and beyond the cut-out tip-speed ratio, and never negative.
class CpCurve {
 public:
  // Default curve: peak Cp = 0.33 at λ = 5.75 (see tools/fit_cp_curve.py).
  CpCurve();

  static CpCurve analytic(const AnalyticCpCoefficients& coefficients);
  // `lambda` strictly increasing and starting at 0 with cp 0; at least four
  // points. Throws Error(kValidation) otherwise.
  static CpCurve table(std::vector<double> lambda, std::vector<double> cp);
  // Two-column CSV with header `lambda,cp`.
  static CpCurve load_csv(const std::string& path);

  // λ must be finite and non-negative.
  double operator()(double lambda) const;

  // Largest λ with Cp > 0.
  double cutout() const { return cutout_; }

  // Location and value of the maximum, located on a dense grid and refined
  // by golden-section search.
  std::pair<double, double> peak() const;

  bool is_table() const { return static_cast<bool>(table_); }

 private:
  struct Table;

  CpCurve(const AnalyticCpCoefficients& coefficients, std::shared_ptr<const Table> table,
          double cutout)
      : coefficients_(coefficients), table_(std::move(table)), cutout_(cutout) {}

  double evaluate(double lambda) const;

  AnalyticCpCoefficients coefficients_;
  std::shared_ptr<const Table> table_;
  double cutout_ = 0.0;
};

struct AeroParams {
  double rho_air = 1.204;  // kg/m³
  double R_r = 1.2;        // rotor radius, m
  double J = 0.66;         // total inertia, kg·m²
  double b = 0.008;        // viscous damping, N·m·s/rad
  CpCurve cp_curve;
  double lambda_opt = 5.75;
  double cp_max = 0.33;

  double swept_area() const;
  // Checks ranges, the Betz limit, and that cp_curve peaks at
  // (lambda_opt, cp_max) within 1e-3.
  void validate() const;
};

inline constexpr double kBetzLimit = 16.0 / 27.0;
// Floor on ω in τ_b = P/ω that keeps start-up integrable.
inline constexpr double kOmegaFloor = 0.1;

double cp(const CpCurve& curve, double lambda);
double tsr(double omega, double v_w, const AeroParams& params);
double aero_power(double v_w, double omega, const AeroParams& params);
double blade_torque(double v_w, double omega, const AeroParams& params);
double rotor_derivative(double omega, double tau_b, double tau_g, const AeroParams& params);

}  // namespace wecs
