// Copyright 2026 The Newsdiv Authors.
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

#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "newsdiv/report.hpp"

namespace newsdiv {

/// Renders the radar comparison as a static SVG: one spoke per metric
/// axis, concentric grid rings, and one polygon per algorithm. Output is
/// deterministic (fixed-precision coordinates).
inline std::string radar_to_svg(const RadarReport& radar) {
  constexpr double kWidth = 720.0, kHeight = 560.0;
  constexpr double kCx = 270.0, kCy = 280.0, kRadius = 200.0;
  static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                   "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
  constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

  const std::size_t n_axes = radar.axes.size();
  const auto point = [&](std::size_t axis, double r) {
    const double angle = -1.5707963267948966 +
                         2.0 * 3.141592653589793 * static_cast<double>(axis) /
                             static_cast<double>(n_axes);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f,%.2f", kCx + r * std::cos(angle),
                  kCy + r * std::sin(angle));
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (int ring = 1; ring <= 4; ++ring) {
    svg << "  <circle cx=\"" << kCx << "\" cy=\"" << kCy << "\" r=\"" << kRadius * ring / 4.0
        << "\" fill=\"none\" stroke=\"#dddddd\"/>\n";
  }
  for (std::size_t axis = 0; axis < n_axes; ++axis) {
    const std::string tip = point(axis, kRadius);
    const auto comma = tip.find(',');
    svg << "  <line x1=\"" << kCx << "\" y1=\"" << kCy << "\" x2=\"" << tip.substr(0, comma)
        << "\" y2=\"" << tip.substr(comma + 1) << "\" stroke=\"#bbbbbb\"/>\n";
    const std::string anchor = point(axis, kRadius + 24.0);
    const auto c2 = anchor.find(',');
    svg << "  <text x=\"" << anchor.substr(0, c2) << "\" y=\"" << anchor.substr(c2 + 1)
        << "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">"
        << to_string(radar.axes[axis]) << "</text>\n";
  }

  std::size_t color = 0;
  for (const auto& name : radar.algorithms) {
    const auto& values = radar.values.at(name);
    std::string points;
    for (std::size_t axis = 0; axis < n_axes; ++axis) {
      if (axis > 0) points += " ";
      points += point(axis, kRadius * values[axis]);
    }
    svg << "  <polygon points=\"" << points << "\" fill=\"" << kPalette[color % kPaletteSize]
        << "\" fill-opacity=\"0.15\" stroke=\"" << kPalette[color % kPaletteSize]
        << "\" stroke-width=\"2\"/>\n";
    ++color;
  }

  double legend_y = 40.0;
  color = 0;
  for (const auto& name : radar.algorithms) {
    svg << "  <rect x=\"560\" y=\"" << legend_y - 11.0 << "\" width=\"14\" height=\"14\" fill=\""
        << kPalette[color % kPaletteSize] << "\"/>\n";
    svg << "  <text x=\"580\" y=\"" << legend_y
        << "\" font-family=\"sans-serif\" font-size=\"13\">" << name << "</text>\n";
    legend_y += 22.0;
    ++color;
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace newsdiv
