#include "app/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace qlimit::app {

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
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

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// 1-2-5 step giving roughly `target` intervals over span.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  const double nice = f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0;
  return nice * mag;
}

constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"};
constexpr std::array<const char*, 4> kDashes = {"", "2,3", "8,4", "8,3,2,3"};

}  // namespace

std::string render_svg(const LinePlot& plot) {
  const double left = 70, right = 150, top = 40, bottom = 55;
  const double pw = plot.width - left - right;
  const double ph = plot.height - top - bottom;

  double lx_min = std::numeric_limits<double>::infinity(), lx_max = -lx_min;
  double y_min = lx_min, y_max = -lx_min;
  for (const auto& s : plot.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !std::isfinite(s.y[i])) continue;
      lx_min = std::min(lx_min, std::log10(s.x[i]));
      lx_max = std::max(lx_max, std::log10(s.x[i]));
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (!std::isfinite(lx_min)) {
    lx_min = 0.0;
    lx_max = 1.0;
    y_min = 0.0;
    y_max = 1.0;
  }
  if (plot.threshold) {
    y_min = std::min(y_min, *plot.threshold);
    y_max = std::max(y_max, *plot.threshold);
  }
  y_min = std::min(y_min, 0.0);
  if (lx_max <= lx_min) lx_max = lx_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double y_step = nice_step(y_max - y_min, 5);
  y_max = std::ceil(y_max / y_step) * y_step;
  y_min = std::floor(y_min / y_step) * y_step;

  const auto px = [&](double x) { return left + (std::log10(x) - lx_min) / (lx_max - lx_min) * pw; };
  const auto py = [&](double y) { return top + (y_max - y) / (y_max - y_min) * ph; };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << plot.width << "\" height=\""
     << plot.height << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<g font-family=\"sans-serif\" font-size=\"12\">\n";
  if (!plot.title.empty()) {
    os << "<text x=\"" << num(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
       << xml_escape(plot.title) << "</text>\n";
  }

  // Axes frame.
  os << "<rect x=\"" << num(left) << "\" y=\"" << num(top) << "\" width=\"" << num(pw) << "\" height=\""
     << num(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  // Decade ticks on x.
  for (int d = static_cast<int>(std::ceil(lx_min - 1e-9)); d <= static_cast<int>(std::floor(lx_max + 1e-9));
       ++d) {
    const double x = px(std::pow(10.0, d));
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(top + ph) << "\" x2=\"" << num(x) << "\" y2=\""
       << num(top + ph + 5) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(top) << "\" x2=\"" << num(x) << "\" y2=\""
       << num(top + ph) << "\" stroke=\"#dddddd\"/>\n";
    os << "<text x=\"" << num(x) << "\" y=\"" << num(top + ph + 18) << "\" text-anchor=\"middle\">1e" << d
       << "</text>\n";
  }
  for (double y = y_min; y <= y_max + 0.5 * y_step; y += y_step) {
    const double yy = py(y);
    os << "<line x1=\"" << num(left - 5) << "\" y1=\"" << num(yy) << "\" x2=\"" << num(left) << "\" y2=\""
       << num(yy) << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << num(left - 8) << "\" y=\"" << num(yy + 4) << "\" text-anchor=\"end\">"
       << tick_label(std::abs(y) < 1e-12 * y_step ? 0.0 : y) << "</text>\n";
  }
  os << "<text x=\"" << num(left + pw / 2) << "\" y=\"" << num(plot.height - 12.0)
     << "\" text-anchor=\"middle\">" << xml_escape(plot.x_label) << "</text>\n";
  os << "<text x=\"16\" y=\"" << num(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
     << num(top + ph / 2) << ")\">" << xml_escape(plot.y_label) << "</text>\n";

  if (plot.threshold) {
    const double yy = py(*plot.threshold);
    os << "<line x1=\"" << num(left) << "\" y1=\"" << num(yy) << "\" x2=\"" << num(left + pw) << "\" y2=\""
       << num(yy) << "\" stroke=\"#888888\" stroke-dasharray=\"6,4\"/>\n";
    if (!plot.threshold_label.empty()) {
      os << "<text x=\"" << num(left + pw - 4) << "\" y=\"" << num(yy - 4) << "\" text-anchor=\"end\" fill=\"#555555\">"
         << xml_escape(plot.threshold_label) << "</text>\n";
    }
  }

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const std::string style = std::string("fill=\"none\" stroke=\"") + kColors[k % kColors.size()] +
                              "\" stroke-width=\"1.5\"" +
                              (*kDashes[k % kDashes.size()]
                                   ? std::string(" stroke-dasharray=\"") + kDashes[k % kDashes.size()] + "\""
                                   : std::string());
    std::string pts;
    const auto flush = [&] {
      if (!pts.empty()) os << "<polyline " << style << " points=\"" << pts << "\"/>\n";
      pts.clear();
    };
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!(s.x[i] > 0.0) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += num(px(s.x[i])) + "," + num(py(s.y[i]));
    }
    flush();

    const double ly = top + 16.0 + 18.0 * static_cast<double>(k);
    const double lx = left + pw + 12.0;
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 30) << "\" y2=\""
       << num(ly) << "\" " << style << "/>\n";
    os << "<text x=\"" << num(lx + 36) << "\" y=\"" << num(ly + 4) << "\">" << xml_escape(s.label) << "</text>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace qlimit::app
