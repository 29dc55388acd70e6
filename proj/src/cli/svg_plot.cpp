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

#include "wecs/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "wecs/error.hpp"

namespace wecs::cli {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 450.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                               "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Keeps the first, last, and per-bucket extremes, in x order.
std::vector<std::size_t> decimate(const PlotSeries& s, std::size_t max_points) {
  const std::size_t n = std::min(s.x.size(), s.y.size());
  std::vector<std::size_t> idx;
  if (n <= max_points) {
    for (std::size_t i = 0; i < n; ++i) idx.push_back(i);
    return idx;
  }
  const std::size_t buckets = std::max<std::size_t>(1, max_points / 2);
  for (std::size_t b = 0; b < buckets; ++b) {
    const std::size_t lo = b * n / buckets;
    const std::size_t hi = (b + 1) * n / buckets;
    if (lo >= hi) continue;
    std::size_t i_min = lo;
    std::size_t i_max = lo;
    for (std::size_t i = lo; i < hi; ++i) {
      if (s.y[i] < s.y[i_min]) i_min = i;
      if (s.y[i] > s.y[i_max]) i_max = i;
    }
    idx.push_back(std::min(i_min, i_max));
    if (i_min != i_max) idx.push_back(std::max(i_min, i_max));
  }
  return idx;
}

}  // namespace

std::string render_svg(const PlotSpec& spec, std::size_t max_points) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -x_min;
  double y_min = x_min;
  double y_max = -x_min;
  for (const auto& s : spec.series) {
    for (double v : s.x) {
      if (std::isfinite(v)) x_min = std::min(x_min, v), x_max = std::max(x_max, v);
    }
    for (double v : s.y) {
      if (std::isfinite(v)) y_min = std::min(y_min, v), y_max = std::max(y_max, v);
    }
  }
  if (spec.has_reference) {
    y_min = std::min(y_min, spec.reference);
    y_max = std::max(y_max, spec.reference);
  }
  if (!std::isfinite(x_min)) x_min = 0.0, x_max = 1.0;
  if (!std::isfinite(y_min)) y_min = 0.0, y_max = 1.0;
  if (x_max <= x_min) x_max = x_min + 1.0;
  if (y_max <= y_min) {
    const double pad = std::max(1e-9, std::abs(y_min) * 0.05);
    y_min -= pad;
    y_max += pad;
  } else {
    const double pad = 0.05 * (y_max - y_min);
    y_min -= pad;
    y_max += pad;
  }
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_max - y) / (y_max - y_min) * plot_h; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<!-- data summary\n";
  for (const auto& s : spec.series) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    double sum = 0.0;
    for (double v : s.y) lo = std::min(lo, v), hi = std::max(hi, v), sum += v;
    const double mean = s.y.empty() ? 0.0 : sum / static_cast<double>(s.y.size());
    out += "  " + escape(s.label) + ": n=" + std::to_string(s.y.size()) +
           " min=" + num(s.y.empty() ? 0.0 : lo) + " max=" + num(s.y.empty() ? 0.0 : hi) +
           " mean=" + num(mean) + "\n";
  }
  out += "-->\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + px(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
         "font-size=\"16\">" + escape(spec.title) + "</text>\n";
  out += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" + px(plot_w) +
         "\" height=\"" + px(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x_min + (x_max - x_min) * k / 5.0;
    const double yv = y_min + (y_max - y_min) * k / 5.0;
    out += "<text x=\"" + px(sx(xv)) + "\" y=\"" + px(kTop + plot_h + 18) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" + num(xv) +
           "</text>\n";
    out += "<text x=\"" + px(kLeft - 6) + "\" y=\"" + px(sy(yv) + 4) +
           "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" + num(yv) +
           "</text>\n";
    out += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(sy(yv)) + "\" x2=\"" + px(kLeft + plot_w) +
           "\" y2=\"" + px(sy(yv)) + "\" stroke=\"#dddddd\"/>\n";
  }
  out += "<text x=\"" + px(kLeft + plot_w / 2) + "\" y=\"" + px(kHeight - 15) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(spec.x_label) + "</text>\n";
  out += "<text x=\"18\" y=\"" + px(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 18 " +
         px(kTop + plot_h / 2) + ")\">" + escape(spec.y_label) + "</text>\n";
  if (spec.has_reference) {
    out += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(sy(spec.reference)) + "\" x2=\"" +
           px(kLeft + plot_w) + "\" y2=\"" + px(sy(spec.reference)) +
           "\" stroke=\"black\" stroke-dasharray=\"6 4\"/>\n";
  }
  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const auto& s = spec.series[k];
    const char* color = kColors[k % (sizeof kColors / sizeof kColors[0])];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (std::size_t i : decimate(s, max_points)) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (!first) out += ' ';
      out += px(sx(s.x[i])) + "," + px(sy(s.y[i]));
      first = false;
    }
    out += "\"/>\n";
    const double ly = kTop + 14 + 14 * static_cast<double>(k);
    out += "<line x1=\"" + px(kLeft + 10) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" + px(kLeft + 30) +
           "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + px(kLeft + 35) + "\" y=\"" + px(ly) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + escape(s.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

void write_svg(const std::string& path, const PlotSpec& spec) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::kIo, "cannot write '" + path + "'");
  out << render_svg(spec);
  if (!out) fail(ErrorKind::kIo, "write failed for '" + path + "'");
}

}  // namespace wecs::cli
