// Copyright 2026 The PGB Authors
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

#include "pgb/cli/svg.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "pgb/errors.h"

namespace pgb::cli {
namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 40.0;
constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#ff7f0e", "#9467bd", "#8c564b"};

std::string Escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '&':
        out += "&amp;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string Num(double v) {
  std::ostringstream ss;
  ss.precision(4);
  ss << std::fixed << v;
  std::string s = ss.str();
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

std::size_t Stride(std::size_t n, std::size_t max_points) {
  if (max_points == 0 || n <= max_points) return 1;
  return (n + max_points - 1) / max_points;
}

}  // namespace

std::string ScatterSvg(const std::string& title,
                       std::span<const toy::Point2> real,
                       std::span<const toy::Point2> sample,
                       std::span<const double> weights,
                       std::size_t max_points) {
  if (!weights.empty() && weights.size() != sample.size()) {
    throw ShapeError("scatter weights do not match the sample");
  }
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (auto set : {real, sample}) {
    for (const auto& p : set) {
      lo = std::min({lo, p.x1, p.x2});
      hi = std::max({hi, p.x1, p.x2});
    }
  }
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double span = hi - lo;
  lo -= 0.05 * span;
  hi += 0.05 * span;
  const double plot = kWidth - 2 * kMargin;
  auto sx = [&](double x) { return kMargin + (x - lo) / (hi - lo) * plot; };
  auto sy = [&](double y) {
    return kHeight - kMargin - (y - lo) / (hi - lo) * plot;
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << Escape(title)
      << "</text>\n";
  svg << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
      << plot << "\" height=\"" << plot
      << "\" fill=\"none\" stroke=\"#444\"/>\n";

  svg << "<g fill=\"#999\" fill-opacity=\"0.3\">\n";
  const std::size_t real_stride = Stride(real.size(), max_points);
  for (std::size_t i = 0; i < real.size(); i += real_stride) {
    svg << "<circle cx=\"" << Num(sx(real[i].x1)) << "\" cy=\""
        << Num(sy(real[i].x2)) << "\" r=\"1.2\"/>\n";
  }
  svg << "</g>\n";

  double max_w = 0.0;
  for (double w : weights) max_w = std::max(max_w, w);
  svg << "<g fill=\"" << kPalette[0] << "\">\n";
  const std::size_t stride = Stride(sample.size(), max_points);
  for (std::size_t i = 0; i < sample.size(); i += stride) {
    double opacity = 0.5;
    if (!weights.empty()) {
      if (weights[i] <= 0.0) continue;
      opacity = max_w > 0.0 ? std::max(0.05, weights[i] / max_w) : 0.5;
    }
    svg << "<circle cx=\"" << Num(sx(sample[i].x1)) << "\" cy=\""
        << Num(sy(sample[i].x2)) << "\" r=\"1.6\" fill-opacity=\""
        << Num(opacity) << "\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string BarChartSvg(const std::string& title,
                        const std::vector<std::string>& categories,
                        const std::vector<BarSeries>& series) {
  for (const auto& s : series) {
    if (s.values.size() != categories.size()) {
      throw ShapeError("bar series '" + s.name + "' has " +
                       std::to_string(s.values.size()) + " values for " +
                       std::to_string(categories.size()) + " categories");
    }
  }
  double top = 0.0;
  for (const auto& s : series) {
    for (double v : s.values) {
      if (std::isfinite(v)) top = std::max(top, v);
    }
  }
  if (top <= 0.0) top = 1.0;
  const double width = 640.0;
  const double height = 360.0;
  const double plot_w = width - 2 * kMargin;
  const double plot_h = height - 2 * kMargin - 20.0;
  const double base_y = kMargin + plot_h;
  const double group_w =
      categories.empty() ? plot_w : plot_w / static_cast<double>(categories.size());
  const double bar_w =
      series.empty() ? 0.0 : 0.8 * group_w / static_cast<double>(series.size());

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
      << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"14\">" << Escape(title)
      << "</text>\n";
  svg << "<line x1=\"" << kMargin << "\" y1=\"" << base_y << "\" x2=\""
      << kMargin + plot_w << "\" y2=\"" << base_y
      << "\" stroke=\"#444\"/>\n";
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = kMargin + c * group_w + 0.1 * group_w;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = series[s].values[c];
      const double h = std::isfinite(v) ? std::max(0.0, v) / top * plot_h : 0.0;
      svg << "<rect x=\"" << Num(gx + s * bar_w) << "\" y=\""
          << Num(base_y - h) << "\" width=\"" << Num(bar_w * 0.9)
          << "\" height=\"" << Num(h) << "\" fill=\""
          << kPalette[s % std::size(kPalette)] << "\"><title>"
          << Escape(series[s].name + " = " + Num(v)) << "</title></rect>\n";
    }
    svg << "<text x=\"" << Num(kMargin + (c + 0.5) * group_w) << "\" y=\""
        << base_y + 16 << "\" text-anchor=\"middle\" font-family=\"sans-serif\""
        << " font-size=\"11\">" << Escape(categories[c]) << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double lx = kMargin + s * 130.0;
    const double ly = height - 12.0;
    svg << "<rect x=\"" << lx << "\" y=\"" << ly - 9 << "\" width=\"10\" "
        << "height=\"10\" fill=\"" << kPalette[s % std::size(kPalette)]
        << "\"/>\n";
    svg << "<text x=\"" << lx + 14 << "\" y=\"" << ly
        << "\" font-family=\"sans-serif\" font-size=\"11\">"
        << Escape(series[s].name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace pgb::cli
