#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "folksonet/format.hpp"

namespace folksonet {

// Minimal line-plot writer. Output is plain SVG 1.1 markup (the .svgf report
// figures carry this content); every coordinate is formatted with fixed
// precision so re-rendering the same data is byte-identical.

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

namespace detail {

inline const char* series_color(std::size_t index) {
  static constexpr const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
  return colors[index % 4];
}

}  // namespace detail

inline std::string render_line_plot(const std::string& title, const std::string& x_label,
                                    const std::string& y_label,
                                    const std::vector<PlotSeries>& series) {
  constexpr double width = 640.0;
  constexpr double height = 480.0;
  constexpr double margin = 64.0;
  const double plot_w = width - 2.0 * margin;
  const double plot_h = height - 2.0 * margin;

  double x_min = 0.0, x_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool has_points = false;
  for (const auto& s : series) {
    for (const auto& [x, y] : s.points) {
      if (!has_points) {
        x_min = x_max = x;
        y_min = y_max = y;
        has_points = true;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  }
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  auto px = [&](double x) { return margin + (x - x_min) / (x_max - x_min) * plot_w; };
  auto py = [&](double y) { return height - margin - (y - y_min) / (y_max - y_min) * plot_h; };
  auto num = [](double v) { return format_double(v, 2); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
         "viewBox=\"0 0 640 480\">\n";
  svg += "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"480\" fill=\"white\"/>\n";
  svg += "  <text x=\"320\" y=\"28\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">" + title + "</text>\n";

  // axes
  svg += "  <line x1=\"" + num(margin) + "\" y1=\"" + num(height - margin) + "\" x2=\"" +
         num(width - margin) + "\" y2=\"" + num(height - margin) +
         "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg += "  <line x1=\"" + num(margin) + "\" y1=\"" + num(margin) + "\" x2=\"" + num(margin) +
         "\" y2=\"" + num(height - margin) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  for (int tick = 0; tick <= 4; ++tick) {
    const double fx = x_min + (x_max - x_min) * tick / 4.0;
    const double fy = y_min + (y_max - y_min) * tick / 4.0;
    svg += "  <line x1=\"" + num(px(fx)) + "\" y1=\"" + num(height - margin) + "\" x2=\"" +
           num(px(fx)) + "\" y2=\"" + num(height - margin + 5.0) + "\" stroke=\"black\"/>\n";
    svg += "  <text x=\"" + num(px(fx)) + "\" y=\"" + num(height - margin + 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"middle\">" +
           format_double(fx, 3) + "</text>\n";
    svg += "  <line x1=\"" + num(margin - 5.0) + "\" y1=\"" + num(py(fy)) + "\" x2=\"" +
           num(margin) + "\" y2=\"" + num(py(fy)) + "\" stroke=\"black\"/>\n";
    svg += "  <text x=\"" + num(margin - 8.0) + "\" y=\"" + num(py(fy) + 3.0) +
           "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">" +
           format_double(fy, 3) + "</text>\n";
  }

  svg += "  <text x=\"320\" y=\"" + num(height - 16.0) +
         "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" + x_label +
         "</text>\n";
  svg += "  <text x=\"18\" y=\"240\" font-family=\"sans-serif\" font-size=\"12\" "
         "text-anchor=\"middle\" transform=\"rotate(-90 18 240)\">" + y_label + "</text>\n";

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    if (!s.points.empty()) {
      std::string path = "  <polyline fill=\"none\" stroke=\"";
      path += detail::series_color(i);
      path += "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t p = 0; p < s.points.size(); ++p) {
        if (p > 0) path.push_back(' ');
        path += num(px(s.points[p].first)) + "," + num(py(s.points[p].second));
      }
      path += "\"/>\n";
      svg += path;
      for (const auto& [x, y] : s.points) {
        svg += "  <circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) +
               "\" r=\"2.5\" fill=\"" + detail::series_color(i) + "\"/>\n";
      }
    }
    // legend entry rendered even for an empty series
    const double ly = margin + 16.0 * static_cast<double>(i);
    svg += "  <rect x=\"" + num(width - margin - 130.0) + "\" y=\"" + num(ly - 8.0) +
           "\" width=\"10\" height=\"10\" fill=\"" + detail::series_color(i) + "\"/>\n";
    svg += "  <text x=\"" + num(width - margin - 114.0) + "\" y=\"" + num(ly + 1.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + s.label + "</text>\n";
  }

  svg += "</svg>\n";
  return svg;
}

}  // namespace folksonet
