#pragma once

#include <string>
#include <vector>

namespace rncg::cli {

struct Series {
  std::vector<double> xs;
  std::vector<double> ys;
  std::string label;
  std::string color = "#1f4e99";
  bool dashed = false;
  /// Draw as bars from y = 0 (histograms) instead of a polyline.
  bool steps = false;
};

struct PlotLabels {
  std::string title;
  std::string x;
  std::string y;
};

/// Minimal line plot: fixed 640x420 viewBox, axes with tick labels, legend.
std::string svg_plot(const std::vector<Series>& series, const PlotLabels& labels);

}  // namespace rncg::cli
