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

#include "wecs/wind.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "wecs/csv.hpp"
#include "wecs/error.hpp"

namespace wecs {
namespace {

double sample_mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

WindSeries::WindSeries(double dt, std::vector<double> samples, double mean)
    : dt_(dt), samples_(std::move(samples)), mean_(mean) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) fail(ErrorKind::kValidation, "wind: dt must be > 0");
  if (samples_.size() < 2) fail(ErrorKind::kValidation, "wind: at least two samples required");
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (!(samples_[k] >= 0.0) || !std::isfinite(samples_[k])) {
      fail(ErrorKind::kValidation,
           "wind: negative or non-finite speed at sample " + std::to_string(k));
    }
  }
}

WindSeries::WindSeries(double dt, std::vector<double> samples)
    : WindSeries(dt, samples, samples.empty() ? 0.0 : sample_mean(samples)) {}

double WindSeries::sample(double t) const {
  const double end = duration();
  if (!(t >= 0.0) || t > end * (1.0 + 1e-12)) {
    fail(ErrorKind::kDomain, "wind: t=" + std::to_string(t) + " outside [0, " +
                                 std::to_string(end) + "]");
  }
  // A small relative slack keeps exact grid points in the later interval
  // despite rounding in t/dt.
  const auto k = static_cast<std::size_t>(std::floor(t / dt_ * (1.0 + 1e-12) + 1e-9));
  return samples_[std::min(k, samples_.size() - 1)];
}

double sample(const WindSeries& series, double t) { return series.sample(t); }

WindSeries load_series(const std::string& path) {
  const NumericTable table = read_numeric_csv(path, {"time_s", "wind_mps"});
  if (table.rows.size() < 2) fail(ErrorKind::kParse, path + ": at least two rows required");
  const double dt = table.rows[1][0] - table.rows[0][0];
  if (!(dt > 0.0)) {
    fail(ErrorKind::kValidation,
         path + ":" + std::to_string(table.line_numbers[1]) + ": time must increase");
  }
  std::vector<double> speeds;
  speeds.reserve(table.rows.size());
  const double t0 = table.rows[0][0];
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const double t = table.rows[k][0];
    const double v = table.rows[k][1];
    const std::string where = path + ":" + std::to_string(table.line_numbers[k]) + ": ";
    if (std::abs(t - (t0 + dt * static_cast<double>(k))) > 1e-6) {
      fail(ErrorKind::kValidation, where + "nonuniform time grid");
    }
    if (!(v >= 0.0)) fail(ErrorKind::kValidation, where + "negative wind speed");
    speeds.push_back(v);
  }
  return WindSeries(dt, std::move(speeds));
}

WindSeries synth_turbulence(double mean, double intensity, double duration, double dt,
                            std::uint64_t seed) {
  if (!(mean > 0.0)) fail(ErrorKind::kValidation, "turbulence: mean must be > 0");
  if (!(intensity >= 0.0 && intensity < 1.0)) {
    fail(ErrorKind::kValidation, "turbulence: intensity must lie in [0, 1)");
  }
  if (!(dt > 0.0)) fail(ErrorKind::kValidation, "turbulence: dt must be > 0");
  if (!(duration >= 10.0 * dt)) {
    fail(ErrorKind::kValidation, "turbulence: duration must be at least 10 samples");
  }
  const auto n = static_cast<std::size_t>(std::llround(duration / dt)) + 1;
  std::vector<double> samples(n, mean);
  const double sigma = intensity * mean;
  if (sigma > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double a = std::exp(-dt / kTurbulenceCorrelationTime);
    const double drive = std::sqrt(1.0 - a * a);
    std::vector<double> x(n);
    x[0] = gauss(rng);
    for (std::size_t k = 1; k < n; ++k) x[k] = a * x[k - 1] + drive * gauss(rng);

    const double m = sample_mean(x);
    double var = 0.0;
    for (double v : x) var += (v - m) * (v - m);
    const double sd = std::sqrt(var / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
      samples[k] = std::max(kMinSyntheticWind, mean + sigma * (x[k] - m) / sd);
    }
  }
  return WindSeries(dt, std::move(samples), mean);
}

WindSeries constant_series(double speed, double duration) {
  if (!(duration > 0.0)) fail(ErrorKind::kValidation, "wind: duration must be > 0");
  return WindSeries(duration, {speed, speed}, speed);
}

}  // namespace wecs
