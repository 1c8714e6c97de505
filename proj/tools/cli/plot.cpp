#include "cli/plot.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cli/format.hpp"

namespace rncg::cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
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

/// Tick positions at a 1-2-5 step covering [lo, hi].
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

}  // namespace

std::string svg_plot(const std::vector<Series>& series, const PlotLabels& labels) {
  double xlo = std::numeric_limits<double>::infinity();
  double xhi = -xlo;
  double ylo = 0.0;
  double yhi = -xlo;
  for (const Series& s : series) {
    for (double x : s.xs) {
      if (!std::isfinite(x)) continue;
      xlo = std::min(xlo, x);
      xhi = std::max(xhi, x);
    }
    for (double y : s.ys) {
      if (!std::isfinite(y)) continue;
      ylo = std::min(ylo, y);
      yhi = std::max(yhi, y);
    }
  }
  if (!(xhi > xlo)) {
    xlo -= 1.0;
    xhi += 1.0;
  }
  if (!(yhi > ylo)) yhi = ylo + 1.0;
  yhi += 0.05 * (yhi - ylo);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xlo) / (xhi - xlo) * pw; };
  auto py = [&](double y) { return kTop + (yhi - y) / (yhi - ylo) * ph; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 420\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n";
  svg += "<text x=\"320\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(labels.title) + "</text>\n";

  for (double t : ticks(xlo, xhi)) {
    const std::string x = format_short(px(t), 6);
    svg += "<line x1=\"" + x + "\" y1=\"" + format_short(kTop + ph, 6) + "\" x2=\"" + x + "\" y2=\"" +
           format_short(kTop + ph + 5, 6) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + x + "\" y=\"" + format_short(kTop + ph + 18, 6) + "\" text-anchor=\"middle\">" +
           format_short(t) + "</text>\n";
  }
  for (double t : ticks(ylo, yhi)) {
    const std::string y = format_short(py(t), 6);
    svg += "<line x1=\"" + format_short(kLeft - 5, 6) + "\" y1=\"" + y + "\" x2=\"" + format_short(kLeft, 6) +
           "\" y2=\"" + y + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + format_short(kLeft - 8, 6) + "\" y=\"" + y + "\" text-anchor=\"end\" dy=\"4\">" +
           format_short(t) + "</text>\n";
  }
  svg += "<rect x=\"70\" y=\"40\" width=\"" + format_short(pw, 6) + "\" height=\"" + format_short(ph, 6) +
         "\" fill=\"none\" stroke=\"black\"/>\n";
  if (ylo < 0.0) {
    svg += "<line x1=\"70\" y1=\"" + format_short(py(0.0), 6) + "\" x2=\"" + format_short(kLeft + pw, 6) +
           "\" y2=\"" + format_short(py(0.0), 6) + "\" stroke=\"#888\" stroke-dasharray=\"2,3\"/>\n";
  }
  svg += "<text x=\"320\" y=\"412\" text-anchor=\"middle\">" + escape(labels.x) + "</text>\n";
  svg += "<text x=\"16\" y=\"225\" text-anchor=\"middle\" transform=\"rotate(-90 16 225)\">" + escape(labels.y) +
         "</text>\n";

  int legend_row = 0;
  for (const Series& s : series) {
    std::string points;
    const std::size_t n = std::min(s.xs.size(), s.ys.size());
    const double half = n > 1 ? 0.5 * (s.xs[1] - s.xs[0]) : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      if (s.steps && n > 1) {
        points += format_short(px(s.xs[i] - half), 6) + "," + format_short(py(s.ys[i]), 6) + " ";
        points += format_short(px(s.xs[i] + half), 6) + "," + format_short(py(s.ys[i]), 6) + " ";
      } else {
        points += format_short(px(s.xs[i]), 6) + "," + format_short(py(s.ys[i]), 6) + " ";
      }
    }
    if (!points.empty()) points.pop_back();
    svg += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"" +
           (s.dashed ? std::string(" stroke-dasharray=\"6,4\"") : std::string()) + " points=\"" + points + "\"/>\n";
    if (!s.label.empty()) {
      const std::string y = format_short(kTop + 14 + 16 * legend_row, 6);
      svg += "<line x1=\"" + format_short(kLeft + pw - 150, 6) + "\" y1=\"" + y + "\" x2=\"" +
             format_short(kLeft + pw - 130, 6) + "\" y2=\"" + y + "\" stroke=\"" + s.color + "\" stroke-width=\"2\"" +
             (s.dashed ? std::string(" stroke-dasharray=\"6,4\"") : std::string()) + "/>\n";
      svg += "<text x=\"" + format_short(kLeft + pw - 124, 6) + "\" y=\"" + y + "\" dy=\"4\">" + escape(s.label) +
             "</text>\n";
      ++legend_row;
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace rncg::cli
