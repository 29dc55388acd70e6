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

#include "wecs/aero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

// Boost 1.74 pchip calls isnan unqualified.
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>

#include "wecs/csv.hpp"
#include "wecs/error.hpp"

namespace wecs {

struct CpCurve::Table {
  boost::math::interpolators::pchip<std::vector<double>> spline;
  double lambda_last;
};

namespace {

// Rescaled exponential fit peaking at (5.75, 0.33); regenerate with
// tools/fit_cp_curve.py.
constexpr AnalyticCpCoefficients kDefaultCoefficients{
    0.35584117600777337, 82.344487180917795, 5.0,
    14.907191644821324,  0.0065855841864224654, 0.049305061443637846};

double analytic_value(const AnalyticCpCoefficients& c, double lambda) {
  const double inv_li = 1.0 / lambda - c.c7;
  return c.c1 * (c.c2 * inv_li - c.c4) * std::exp(-c.c5 * inv_li) + c.c6 * lambda;
}

// First zero crossing of the analytic form past its maximum.
double analytic_cutout(const AnalyticCpCoefficients& c) {
  constexpr double kStep = 0.01;
  constexpr double kLimit = 200.0;
  double prev = analytic_value(c, kStep);
  bool rising_seen = false;
  for (double lambda = 2.0 * kStep; lambda < kLimit; lambda += kStep) {
    const double value = analytic_value(c, lambda);
    if (value > 0.0 && value > prev) rising_seen = true;
    if (rising_seen && value <= 0.0) {
      double lo = lambda - kStep;
      double hi = lambda;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        (analytic_value(c, mid) > 0.0 ? lo : hi) = mid;
      }
      return lo;
    }
    prev = value;
  }
  fail(ErrorKind::kValidation, "analytic Cp curve has no cut-out below lambda = 200");
}

}  // namespace

CpCurve::CpCurve() {
  static const CpCurve kDefault = analytic(kDefaultCoefficients);
  *this = kDefault;
}

CpCurve CpCurve::analytic(const AnalyticCpCoefficients& c) {
  if (!(c.c1 > 0.0 && c.c2 > 0.0 && c.c4 > 0.0 && c.c5 > 0.0 && c.c6 >= 0.0 && c.c7 >= 0.0)) {
    fail(ErrorKind::kValidation, "analytic Cp coefficients must be positive");
  }
  return CpCurve(c, nullptr, analytic_cutout(c));
}

CpCurve CpCurve::table(std::vector<double> lambda, std::vector<double> cp) {
  if (lambda.size() != cp.size()) fail(ErrorKind::kValidation, "Cp table: column size mismatch");
  if (lambda.size() < 4) fail(ErrorKind::kValidation, "Cp table: at least four points required");
  if (lambda.front() != 0.0 || cp.front() != 0.0) {
    fail(ErrorKind::kValidation, "Cp table: first row must be lambda=0, cp=0");
  }
  for (std::size_t k = 0; k < lambda.size(); ++k) {
    if (k > 0 && !(lambda[k] > lambda[k - 1])) {
      fail(ErrorKind::kValidation, "Cp table: lambda must be strictly increasing (row " +
                                       std::to_string(k + 1) + ")");
    }
    if (!(cp[k] >= 0.0) || !(cp[k] < kBetzLimit)) {
      fail(ErrorKind::kValidation, "Cp table: cp outside [0, 16/27) at row " + std::to_string(k + 1));
    }
  }
  double cutout = lambda.back();
  for (std::size_t k = lambda.size(); k-- > 0;) {
    if (cp[k] > 0.0) break;
    cutout = lambda[k];
  }
  const double last = lambda.back();
  auto spline =
      boost::math::interpolators::pchip<std::vector<double>>(std::move(lambda), std::move(cp));
  return CpCurve({}, std::make_shared<const Table>(Table{std::move(spline), last}), cutout);
}

CpCurve CpCurve::load_csv(const std::string& path) {
  const NumericTable t = read_numeric_csv(path, {"lambda", "cp"});
  std::vector<double> lambda, cp;
  for (const auto& row : t.rows) {
    lambda.push_back(row[0]);
    cp.push_back(row[1]);
  }
  try {
    return table(std::move(lambda), std::move(cp));
  } catch (const Error& e) {
    fail(e.kind(), path + ": " + e.what());
  }
}

double CpCurve::evaluate(double lambda) const {
  if (lambda <= 0.0 || lambda >= cutout_) return 0.0;
  if (table_) {
    if (lambda >= table_->lambda_last) return 0.0;
    return std::max(0.0, table_->spline(lambda));
  }
  return std::max(0.0, analytic_value(coefficients_, lambda));
}

double CpCurve::operator()(double lambda) const {
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    fail(ErrorKind::kDomain, "Cp: tip-speed ratio must be finite and >= 0, got " +
                                 std::to_string(lambda));
  }
  return evaluate(lambda);
}

std::pair<double, double> CpCurve::peak() const {
  constexpr int kGrid = 2000;
  double best_lambda = 0.0;
  double best_cp = 0.0;
  for (int k = 1; k < kGrid; ++k) {
    const double lambda = cutout_ * k / kGrid;
    const double value = evaluate(lambda);
    if (value > best_cp) {
      best_cp = value;
      best_lambda = lambda;
    }
  }
  double lo = std::max(0.0, best_lambda - cutout_ / kGrid);
  double hi = std::min(cutout_, best_lambda + cutout_ / kGrid);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 100 && hi - lo > 1e-12; ++it) {
    const double x1 = hi - ratio * (hi - lo);
    const double x2 = lo + ratio * (hi - lo);
    if (evaluate(x1) < evaluate(x2)) {
      lo = x1;
    } else {
      hi = x2;
    }
  }
  const double lambda = 0.5 * (lo + hi);
  return {lambda, evaluate(lambda)};
}

double AeroParams::swept_area() const { return std::numbers::pi * R_r * R_r; }

void AeroParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(ErrorKind::kValidation, std::string("aero.") + name + " must be positive");
    }
  };
  positive(rho_air, "rho_air");
  positive(R_r, "R_r");
  positive(J, "J");
  positive(b, "b");
  positive(lambda_opt, "lambda_opt");
  if (!(cp_max > 0.0 && cp_max < kBetzLimit)) {
    fail(ErrorKind::kValidation, "aero.cp_max must lie in (0, 16/27)");
  }
  const auto [lambda_peak, cp_peak] = cp_curve.peak();
  if (std::abs(cp_peak - cp_max) > 1e-3 || std::abs(cp_curve(lambda_opt) - cp_max) > 1e-3) {
    fail(ErrorKind::kValidation,
         "aero: Cp curve peaks at lambda=" + std::to_string(lambda_peak) +
             ", cp=" + std::to_string(cp_peak) + ", inconsistent with lambda_opt/cp_max");
  }
}

double cp(const CpCurve& curve, double lambda) { return curve(lambda); }

double tsr(double omega, double v_w, const AeroParams& params) {
  if (!(v_w > 0.0)) {
    fail(ErrorKind::kDomain, "tip-speed ratio: wind speed must be > 0, got " + std::to_string(v_w));
  }
  return omega * params.R_r / v_w;
}

double aero_power(double v_w, double omega, const AeroParams& params) {
  const double lambda = tsr(omega, v_w, params);
  return 0.5 * params.rho_air * params.swept_area() * v_w * v_w * v_w *
         cp(params.cp_curve, lambda);
}

double blade_torque(double v_w, double omega, const AeroParams& params) {
  return aero_power(v_w, omega, params) / std::max(omega, kOmegaFloor);
}

double rotor_derivative(double omega, double tau_b, double tau_g, const AeroParams& params) {
  return (tau_b + tau_g - params.b * omega) / params.J;
}

}  // namespace wecs
