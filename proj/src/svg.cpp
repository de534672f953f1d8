// Copyright 2026 The Randentropy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "randentropy/error.hpp"
#include "randentropy/io.hpp"

namespace randentropy {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 170.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fixed(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", v);
  return buffer;
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

std::string escape(const std::string& text) {
  std::string out;
  for (char ch : text) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    } else if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double delta = std::max(0.5, 0.1 * std::abs(hi));
      lo -= delta;
      hi += delta;
    }
  }
};

// Step of 1, 2 or 5 times a power of ten giving about `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  const double fraction = raw / magnitude;
  if (fraction <= 1.0) return magnitude;
  if (fraction <= 2.0) return 2.0 * magnitude;
  if (fraction <= 5.0) return 5.0 * magnitude;
  return 10.0 * magnitude;
}

void check_lengths(std::size_t a, std::size_t b, const std::string& what) {
  if (a != b) throw Error(ErrorCode::InvalidArgument, what + ": coordinate vectors differ in length");
}

}  // namespace

std::string svg_document(const PlotSpec& plot) {
  bool any_point = false;
  Range xr, yr;
  for (const auto& s : plot.series) {
    check_lengths(s.x.size(), s.y.size(), "series '" + s.label + "'");
    any_point = any_point || !s.x.empty();
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xr.include(s.x[i]);
      yr.include(s.y[i]);
    }
  }
  if (plot.band) {
    check_lengths(plot.band->x.size(), plot.band->lower.size(), "band");
    check_lengths(plot.band->x.size(), plot.band->upper.size(), "band");
    for (std::size_t i = 0; i < plot.band->x.size(); ++i) {
      xr.include(plot.band->x[i]);
      yr.include(plot.band->lower[i]);
      yr.include(plot.band->upper[i]);
    }
  }
  if (!any_point) throw Error(ErrorCode::InvalidArgument, "nothing to plot");
  xr.pad();
  yr.pad();

  const double x_step = nice_step(xr.hi - xr.lo, 8);
  const double y_step = nice_step(yr.hi - yr.lo, 6);
  const double x_lo = std::floor(xr.lo / x_step) * x_step;
  const double x_hi = std::ceil(xr.hi / x_step) * x_step;
  const double y_lo = std::floor(yr.lo / y_step) * y_step;
  const double y_hi = std::ceil(yr.hi / y_step) * y_step;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(kWidth) +
         "\" height=\"" + fixed(kHeight) + "\" viewBox=\"0 0 " + fixed(kWidth) + " " +
         fixed(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth) + "\" height=\"" + fixed(kHeight) +
         "\" fill=\"white\"/>\n";
  if (!plot.title.empty())
    svg += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"24.00\" text-anchor=\"middle\" font-size=\"15\">" +
           escape(plot.title) + "</text>\n";

  // grid and ticks
  svg += "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
  for (int i = 0; x_lo + i * x_step <= x_hi + 1e-9 * x_step; ++i) {
    const double x = px(x_lo + i * x_step);
    svg += "<line x1=\"" + fixed(x) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(x) +
           "\" y2=\"" + fixed(kTop + plot_h) + "\"/>\n";
  }
  for (int i = 0; y_lo + i * y_step <= y_hi + 1e-9 * y_step; ++i) {
    const double y = py(y_lo + i * y_step);
    svg += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(y) + "\" x2=\"" +
           fixed(kLeft + plot_w) + "\" y2=\"" + fixed(y) + "\"/>\n";
  }
  svg += "</g>\n<g text-anchor=\"middle\">\n";
  for (int i = 0; x_lo + i * x_step <= x_hi + 1e-9 * x_step; ++i)
    svg += "<text x=\"" + fixed(px(x_lo + i * x_step)) + "\" y=\"" + fixed(kTop + plot_h + 18) +
           "\">" + tick_label(x_lo + i * x_step) + "</text>\n";
  svg += "</g>\n<g text-anchor=\"end\">\n";
  for (int i = 0; y_lo + i * y_step <= y_hi + 1e-9 * y_step; ++i)
    svg += "<text x=\"" + fixed(kLeft - 6) + "\" y=\"" + fixed(py(y_lo + i * y_step) + 4) +
           "\">" + tick_label(y_lo + i * y_step) + "</text>\n";
  svg += "</g>\n";
  svg += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(plot_w) +
         "\" height=\"" + fixed(plot_h) + "\" fill=\"none\" stroke=\"black\"/>\n";
  svg += "<text x=\"" + fixed(kLeft + plot_w / 2) + "\" y=\"" + fixed(kHeight - 16) +
         "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  svg += "<text x=\"18.00\" y=\"" + fixed(kTop + plot_h / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18.00 " + fixed(kTop + plot_h / 2) +
         ")\">" + escape(plot.y_label) + "</text>\n";

  double legend_y = kTop + 10;
  const double legend_x = kLeft + plot_w + 16;
  if (plot.band && !plot.band->x.empty()) {
    std::string points;
    for (std::size_t i = 0; i < plot.band->x.size(); ++i)
      points += fixed(px(plot.band->x[i])) + "," + fixed(py(plot.band->upper[i])) + " ";
    for (std::size_t i = plot.band->x.size(); i-- > 0;)
      points += fixed(px(plot.band->x[i])) + "," + fixed(py(plot.band->lower[i])) +
                (i > 0 ? " " : "");
    svg += "<polygon points=\"" + points + "\" fill=\"" + kPalette[0] +
           "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    svg += "<rect x=\"" + fixed(legend_x) + "\" y=\"" + fixed(legend_y - 8) +
           "\" width=\"18.00\" height=\"10.00\" fill=\"" + kPalette[0] + "\" fill-opacity=\"0.2\"/>\n";
    svg += "<text x=\"" + fixed(legend_x + 24) + "\" y=\"" + fixed(legend_y + 2) + "\">" +
           escape(plot.band->label) + "</text>\n";
    legend_y += 20;
  }
  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    if (s.x.empty()) continue;
    const char* color = kPalette[k % std::size(kPalette)];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i)
      points += fixed(px(s.x[i])) + "," + fixed(py(s.y[i])) + (i + 1 < s.x.size() ? " " : "");
    svg += "<polyline points=\"" + points + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<line x1=\"" + fixed(legend_x) + "\" y1=\"" + fixed(legend_y - 3) + "\" x2=\"" +
           fixed(legend_x + 18) + "\" y2=\"" + fixed(legend_y - 3) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + fixed(legend_x + 24) + "\" y=\"" + fixed(legend_y + 2) + "\">" +
           escape(s.label) + "</text>\n";
    legend_y += 20;
  }
  svg += "</svg>\n";
  return svg;
}

void render_svg(const PlotSpec& plot, const std::filesystem::path& path) {
  write_text_file(path, svg_document(plot));
}

}  // namespace randentropy
