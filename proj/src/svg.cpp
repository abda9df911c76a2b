// Copyright 2026 The qpcsim Authors
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

#include "qpcsim/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "qpcsim/experiments.hpp"

namespace qpcsim {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 780.0;
constexpr double kTop = 20.0;
constexpr double kBottom = 545.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

struct Range {
  double lo = 0.0;
  double hi = 1.0;
};

Range with_margin(double lo, double hi) {
  if (!(hi > lo)) {  // constant data, including single-sample series
    lo -= 1.0;
    hi += 1.0;
  }
  const double margin = 0.05 * (hi - lo);
  return {lo - margin, hi + margin};
}

/// Round tick positions at a 1/2/5 step chosen to land 5-10 labels inside.
std::vector<double> nice_ticks(const Range& r) {
  const auto at_step = [&r](double step) {
    std::vector<double> ticks;
    double t = std::ceil(r.lo / step) * step;
    for (; t <= r.hi + 1e-9 * step; t += step) {
      ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    }
    return ticks;
  };

  // Largest 1/2/5-style step that still yields at least 5 ticks.
  const double exponent = std::floor(std::log10((r.hi - r.lo) / 5.0));
  std::vector<double> ticks;
  for (double mag = std::pow(10.0, exponent + 1); mag >= std::pow(10.0, exponent - 2);
       mag /= 10.0) {
    for (double m : {10.0, 5.0, 2.0, 1.0}) {
      ticks = at_step(m * mag);
      if (ticks.size() >= 5) break;
    }
    if (ticks.size() >= 5) break;
  }
  // Doubling a 1/2/5 step is still a round step; thin if we overshot 10.
  if (ticks.size() > 10) {
    std::vector<double> thinned;
    for (std::size_t i = 0; i < ticks.size(); i += 2) thinned.push_back(ticks[i]);
    ticks = thinned;
  }
  return ticks;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string render_svg_plot(const ScenarioResult& result, const PlotOptions& options) {
  std::vector<std::string> names = options.series;
  if (names.empty()) {
    for (const auto& [name, values] : result.columns) names.push_back(name);
  }
  if (names.empty()) throw std::invalid_argument("svg plot: no series selected");

  std::vector<const std::vector<double>*> series;
  for (const std::string& name : names) {
    const auto it = std::find_if(result.columns.begin(), result.columns.end(),
                                 [&](const auto& c) { return c.first == name; });
    if (it == result.columns.end()) {
      throw std::invalid_argument("svg plot: unknown series '" + name + "'");
    }
    series.push_back(&it->second);
  }
  if (result.axis.empty()) throw std::invalid_argument("svg plot: empty series");

  double x_lo = result.axis.front(), x_hi = result.axis.front();
  for (double v : result.axis) {
    x_lo = std::min(x_lo, v);
    x_hi = std::max(x_hi, v);
  }
  bool any_finite = false;
  double y_lo = 0.0, y_hi = 0.0;
  for (const auto* col : series) {
    for (double v : *col) {
      if (!std::isfinite(v)) continue;
      if (!any_finite) {
        y_lo = y_hi = v;
        any_finite = true;
      }
      y_lo = std::min(y_lo, v);
      y_hi = std::max(y_hi, v);
    }
  }
  if (!any_finite) throw std::invalid_argument("svg plot: no finite samples");

  const Range xr = with_margin(x_lo, x_hi);
  const Range yr = with_margin(y_lo, y_hi);
  const auto map_x = [&](double v) {
    return kLeft + (v - xr.lo) / (xr.hi - xr.lo) * (kRight - kLeft);
  };
  const auto map_y = [&](double v) {
    return kBottom - (v - yr.lo) / (yr.hi - yr.lo) * (kBottom - kTop);
  };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
         "viewBox=\"0 0 800 600\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
  svg += "<rect x=\"" + px(kLeft) + "\" y=\"" + px(kTop) + "\" width=\"" +
         px(kRight - kLeft) + "\" height=\"" + px(kBottom - kTop) +
         "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : nice_ticks(xr)) {
    const double x = map_x(t);
    svg += "<line x1=\"" + px(x) + "\" y1=\"" + px(kBottom) + "\" x2=\"" + px(x) +
           "\" y2=\"" + px(kBottom + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + px(x) + "\" y=\"" + px(kBottom + 18) +
           "\" text-anchor=\"middle\">" + xml_escape(tick_label(t)) + "</text>\n";
  }
  for (double t : nice_ticks(yr)) {
    const double y = map_y(t);
    svg += "<line x1=\"" + px(kLeft - 5) + "\" y1=\"" + px(y) + "\" x2=\"" + px(kLeft) +
           "\" y2=\"" + px(y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(y + 4) +
           "\" text-anchor=\"end\">" + xml_escape(tick_label(t)) + "</text>\n";
  }

  const std::string x_label = options.x_label.empty() ? result.axis_label : options.x_label;
  svg += "<text x=\"" + px((kLeft + kRight) / 2) + "\" y=\"" + px(kHeight - 12) +
         "\" text-anchor=\"middle\">" + xml_escape(x_label) + "</text>\n";
  if (!options.y_label.empty()) {
    svg += "<text transform=\"translate(16," + px((kTop + kBottom) / 2) +
           ") rotate(-90)\" text-anchor=\"middle\">" + xml_escape(options.y_label) +
           "</text>\n";
  }

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof kPalette / sizeof kPalette[0])];
    std::string points;
    auto flush = [&]() {
      if (!points.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t k = 0; k < result.axis.size(); ++k) {
      const double v = (*series[s])[k];
      if (!std::isfinite(v)) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += px(map_x(result.axis[k])) + "," + px(map_y(v));
    }
    flush();

    const double ly = kTop + 16 + 18.0 * static_cast<double>(s);
    svg += "<line x1=\"" + px(kRight - 150) + "\" y1=\"" + px(ly - 4) + "\" x2=\"" +
           px(kRight - 120) + "\" y2=\"" + px(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + px(kRight - 114) + "\" y=\"" + px(ly) + "\">" +
           xml_escape(names[s]) + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

void write_svg_plot(const ScenarioResult& result, const std::string& path,
                    const PlotOptions& options) {
  const std::string svg = render_svg_plot(result, options);
  std::ofstream file(path, std::ios::binary);
  if (!file) throw io_error("cannot open '" + path + "' for writing");
  file << svg;
  if (!file) throw io_error("failed while writing '" + path + "'");
}

}  // namespace qpcsim
