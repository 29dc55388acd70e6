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

#include <cstdint>
#include <string>
#include <vector>

namespace wecs {

// Uniformly sampled wind speed record. Immutable once built.
class WindSeries {
 public:
  // Throws Error(kValidation) unless dt > 0, at least two samples, and all
  // samples are finite and >= 0.
  WindSeries(double dt, std::vector<double> samples, double mean);
  // Nominal mean defaults to the sample mean.
  WindSeries(double dt, std::vector<double> samples);

  double dt() const { return dt_; }
  const std::vector<double>& samples() const { return samples_; }
  double mean() const { return mean_; }
  double duration() const { return dt_ * static_cast<double>(samples_.size() - 1); }

  // Zero-order hold: returns the sample whose interval [k·dt, (k+1)·dt)
  // contains t. Throws Error(kDomain) outside [0, duration].
  double sample(double t) const;

 private:
  double dt_;
  std::vector<double> samples_;
  double mean_;
};

// Two-column CSV `time_s,wind_mps` on a uniform grid (jitter <= 1e-6 s).
WindSeries load_series(const std::string& path);

// Ornstein–Uhlenbeck (first-order filtered Gaussian) turbulence around
// `mean`, correlation time 10 s. The fluctuation is re-centred and rescaled
// so the record hits the requested mean and standard deviation; samples are
// then clamped to >= 0.5 m/s. Bit-identical for a fixed seed.
WindSeries synth_turbulence(double mean, double intensity, double duration, double dt,
                            std::uint64_t seed);

// Two-sample series holding `speed` over [0, duration].
WindSeries constant_series(double speed, double duration);

double sample(const WindSeries& series, double t);

inline constexpr double kTurbulenceCorrelationTime = 10.0;  // s
inline constexpr double kMinSyntheticWind = 0.5;             // m/s

}  // namespace wecs
