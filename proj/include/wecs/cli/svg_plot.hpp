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

#include <string>
#include <vector>

namespace wecs::cli {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  // Optional horizontal reference line (e.g. λ_opt); drawn when set.
  bool has_reference = false;
  double reference = 0.0;
};

// Renders a standalone line plot. Each series is reduced to at most
// `max_points` per-bucket min/max pairs. A comment block at the top carries
// n, min, max and mean of every series. Output is deterministic.
std::string render_svg(const PlotSpec& spec, std::size_t max_points = 1500);
void write_svg(const std::string& path, const PlotSpec& spec);

}  // namespace wecs::cli
