#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qlimit::app {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Minimal line chart: log-scaled x axis with decade ticks, linear y axis and
// an optional horizontal threshold line.
struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::optional<double> threshold;
  std::string threshold_label;
  int width = 720;
  int height = 480;
};

// Renders an SVG 1.1 document. Non-positive x and non-finite values break the
// polyline instead of being drawn. Output depends only on the input values.
std::string render_svg(const LinePlot& plot);

}  // namespace qlimit::app
