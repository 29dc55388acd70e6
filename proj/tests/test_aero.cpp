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

#include <cmath>
#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "wecs/aero.hpp"
#include "wecs/control.hpp"
#include "wecs/error.hpp"

namespace wecs {
namespace {

TEST(CpCurve, DefaultPeaksAtOptimum) {
  const CpCurve c;
  EXPECT_NEAR(c(5.75), 0.33, 1e-6);
  const auto [lambda, value] = c.peak();
  EXPECT_NEAR(lambda, 5.75, 1e-3);
  EXPECT_NEAR(value, 0.33, 1e-6);
  EXPECT_EQ(c(0.0), 0.0);
  EXPECT_LT(c(11.5), 0.33);
  EXPECT_EQ(c(c.cutout() + 1e-6), 0.0);
  EXPECT_GT(c(c.cutout() - 1e-3), 0.0);
}

TEST(CpCurve, UnimodalAndNonNegative) {
  const CpCurve c;
  double prev = 0.0;
  for (double l = 0.01; l < 5.75; l += 0.01) {
    const double v = c(l);
    EXPECT_GE(v, prev - 1e-12) << l;
    prev = v;
  }
  for (double l = 5.76; l < 15.0; l += 0.01) {
    const double v = c(l);
    EXPECT_LE(v, prev + 1e-12) << l;
    EXPECT_GE(v, 0.0);
    prev = v;
  }
}

TEST(CpCurve, StartUpTorqueIsPositive) {
  // Without some torque at low λ the rotor cannot accelerate from rest.
  const CpCurve c;
  EXPECT_GT(c(0.5), 0.0);
  EXPECT_GT(c(1.0), 0.005);
}

TEST(CpCurve, RejectsNegativeOrNanLambda) {
  const CpCurve c;
  EXPECT_THROW(c(-0.1), Error);
  EXPECT_THROW(c(std::nan("")), Error);
}

TEST(CpCurve, TableInterpolatesMonotonically) {
  const CpCurve t = CpCurve::table({0, 2, 4, 5.75, 8, 10}, {0, 0.05, 0.22, 0.33, 0.15, 0});
  EXPECT_TRUE(t.is_table());
  EXPECT_NEAR(t(5.75), 0.33, 1e-12);
  EXPECT_NEAR(t(4.0), 0.22, 1e-12);
  EXPECT_EQ(t(10.0), 0.0);
  EXPECT_EQ(t(12.0), 0.0);
  for (double l = 0.0; l + 0.05 <= 5.75; l += 0.05) EXPECT_LE(t(l), t(l + 0.05) + 1e-12);
  EXPECT_NEAR(t.cutout(), 10.0, 1e-12);
}

TEST(CpCurve, TableValidation) {
  EXPECT_THROW(CpCurve::table({0, 1, 2}, {0, 0.1, 0.2}), Error);
  EXPECT_THROW(CpCurve::table({0, 1, 1, 3}, {0, 0.1, 0.2, 0.1}), Error);
  EXPECT_THROW(CpCurve::table({0, 1, 2, 3}, {0, 0.1, 0.7, 0.1}), Error);
  EXPECT_THROW(CpCurve::table({0.5, 1, 2, 3}, {0, 0.1, 0.2, 0.1}), Error);
}

TEST(CpCurve, LoadsCsv) {
  const auto path = std::filesystem::temp_directory_path() / "wecs_cp_table.csv";
  {
    std::ofstream out(path);
    out << "lambda,cp\n0,0\n2,0.05\n4,0.22\n5.75,0.33\n8,0.15\n10,0\n";
  }
  const CpCurve t = CpCurve::load_csv(path.string());
  EXPECT_NEAR(t(5.75), 0.33, 1e-12);
  std::filesystem::remove(path);
  EXPECT_THROW(CpCurve::load_csv("/nonexistent/cp.csv"), Error);
}

TEST(Aero, TipSpeedRatio) {
  const AeroParams a;
  EXPECT_NEAR(tsr(28.75, 6.0, a), 5.75, 1e-12);
  EXPECT_EQ(tsr(0.0, 6.0, a), 0.0);
  EXPECT_NEAR(tsr(10.0, 12.0, a), 1.0, 1e-12);
  EXPECT_THROW(tsr(1.0, 0.0, a), Error);
}

TEST(Aero, PowerAndTorque) {
  const AeroParams a;
  EXPECT_NEAR(aero_power(6.0, 28.75, a), 194.12280008269062, 1e-6);
  EXPECT_EQ(aero_power(6.0, 0.0, a), 0.0);
  EXPECT_NEAR(aero_power(12.0, 57.5, a), 8.0 * aero_power(6.0, 28.75, a), 1e-9);
  EXPECT_NEAR(blade_torque(6.0, 28.75, a), 6.752097394180543, 1e-6);
  EXPECT_EQ(blade_torque(6.0, 1000.0, a), 0.0);
  const double half = kOmegaFloor / 2.0;
  EXPECT_NEAR(blade_torque(6.0, half, a), aero_power(6.0, half, a) / kOmegaFloor, 1e-12);
}

TEST(Aero, RotorDerivative) {
  const AeroParams a;
  EXPECT_NEAR(rotor_derivative(10.0, 0.0, 0.0, a), -0.12121212121212122, 1e-12);
  EXPECT_EQ(rotor_derivative(0.0, 0.0, 0.0, a), 0.0);
  EXPECT_NEAR(rotor_derivative(28.75, 6.75, -6.52, a), 0.0, 1e-3);
}

TEST(Aero, OptimalTorqueGain) {
  AeroParams a;
  EXPECT_NEAR(optimal_torque_gain(a), 0.008168889096929201, 1e-12);
  a.cp_max = 0.0;
  EXPECT_EQ(optimal_torque_gain(a), 0.0);
}

// Root of τ_b(ω) − K_opt·ω² − bω, found by bisection, sits within 2% of λ_opt.
TEST(Aero, OptimalTorqueEquilibriumNearOptimalTsr) {
  const AeroParams a;
  const double K = optimal_torque_gain(a);
  for (double v : {4.0, 6.0, 8.0}) {
    auto f = [&](double w) { return blade_torque(v, w, a) - K * w * w - a.b * w; };
    double lo = 0.5 * 5.75 * v / a.R_r;
    double hi = 1.2 * 5.75 * v / a.R_r;
    ASSERT_GT(f(lo), 0.0);
    ASSERT_LT(f(hi), 0.0);
    for (int k = 0; k < 200; ++k) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 0.0 ? lo : hi) = mid;
    }
    EXPECT_NEAR(tsr(lo, v, a) / 5.75, 1.0, 0.02) << v;
  }
}

TEST(AeroParams, Validation) {
  AeroParams a;
  EXPECT_NO_THROW(a.validate());
  a.lambda_opt = 7.0;
  EXPECT_THROW(a.validate(), Error);
  AeroParams b;
  b.cp_max = 0.6;
  EXPECT_THROW(b.validate(), Error);
  AeroParams c;
  c.J = 0.0;
  EXPECT_THROW(c.validate(), Error);
}

}  // namespace
}  // namespace wecs
