#include "rncg/histogram.hpp"

#include <algorithm>
#include <cmath>

#include "rncg/errors.hpp"
#include "rncg/quadrature.hpp"

namespace rncg {

SpectralHistogram SpectralHistogram::uniform(double lo, double hi, int bins) {
  if (bins < 1 || !(hi > lo)) throw ValidationError("histogram needs bins >= 1 and hi > lo");
  SpectralHistogram h;
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  return h;
}

void SpectralHistogram::add(double x) noexcept {
  ++total;
  if (x < lo) {
    ++underflow;
    return;
  }
  const auto i = static_cast<std::size_t>((x - lo) / bin_width());
  if (x >= hi || i >= counts.size()) {
    ++overflow;
    return;
  }
  ++counts[i];
}

void SpectralHistogram::merge(const SpectralHistogram& other) {
  if (other.lo != lo || other.hi != hi || other.counts.size() != counts.size()) {
    throw ValidationError("cannot merge histograms with different binning");
  }
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  underflow += other.underflow;
  overflow += other.overflow;
  total += other.total;
}

std::vector<double> SpectralHistogram::densities() const {
  std::vector<double> out(counts.size(), 0.0);
  if (total == 0) return out;
  const double scale = 1.0 / (static_cast<double>(total) * bin_width());
  for (std::size_t i = 0; i < counts.size(); ++i) out[i] = static_cast<double>(counts[i]) * scale;
  return out;
}

double SpectralHistogram::fraction_in(double a, double b) const {
  if (total == 0) return 0.0;
  const double width = bin_width();
  double sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double left = lo + width * static_cast<double>(i);
    const double overlap = std::min(b, left + width) - std::max(a, left);
    if (overlap > 0.0) sum += static_cast<double>(counts[i]) * overlap / width;
  }
  return sum / static_cast<double>(total);
}

double SpectralHistogram::cdf_at_edge(int i) const noexcept {
  if (total == 0) return 0.0;
  std::uint64_t below = underflow;
  for (int k = 0; k < i && k < bins(); ++k) below += counts[static_cast<std::size_t>(k)];
  return static_cast<double>(below) / static_cast<double>(total);
}

double SpectralHistogram::binned_moment(int k) const {
  if (total == 0) throw ValidationError("moment of an empty histogram");
  double sum = 0.0;
  std::uint64_t in_range = 0;
  for (int i = 0; i < bins(); ++i) {
    sum += static_cast<double>(counts[static_cast<std::size_t>(i)]) * std::pow(center(i), k);
    in_range += counts[static_cast<std::size_t>(i)];
  }
  return in_range == 0 ? 0.0 : sum / static_cast<double>(in_range);
}

double order_parameter(const SpectralHistogram& hist, double delta) {
  if (hist.total == 0) throw ValidationError("order parameter of an empty histogram");
  return hist.fraction_in(-delta, delta) / (2.0 * delta);
}

double order_parameter(const EquilibriumMeasure& mu, double delta) {
  double mass = 0.0;
  for (const Interval& cut : mu.support()) {
    const double lo = std::max(cut.lo, -delta);
    const double hi = std::min(cut.hi, delta);
    if (hi > lo) mass += quad::integrate_sqrt_edges([&](double x) { return density(mu, x); }, lo, hi, 128);
  }
  return mass / (2.0 * delta);
}

double ks_distance(const SpectralHistogram& hist, const std::function<double(double)>& cdf) {
  double worst = 0.0;
  for (int i = 0; i <= hist.bins(); ++i) {
    worst = std::max(worst, std::abs(hist.cdf_at_edge(i) - cdf(hist.edge(i))));
  }
  return worst;
}

std::function<double(double)> measure_cdf(const EquilibriumMeasure& mu, int nodes) {
  return [mu, nodes](double x) {
    double mass = 0.0;
    for (const Interval& cut : mu.support()) {
      if (x <= cut.lo) continue;
      const double hi = std::min(x, cut.hi);
      mass += quad::integrate_sqrt_edges([&](double s) { return density(mu, s); }, cut.lo, hi, nodes);
    }
    return mass;
  };
}

bool is_bimodal(const SpectralHistogram& hist, double dip_ratio, int smoothing) {
  const std::vector<double> raw = hist.densities();
  const int n = static_cast<int>(raw.size());
  std::vector<double> smooth(raw.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    int count = 0;
    for (int k = std::max(0, i - smoothing); k <= std::min(n - 1, i + smoothing); ++k) {
      sum += raw[static_cast<std::size_t>(k)];
      ++count;
    }
    smooth[static_cast<std::size_t>(i)] = sum / count;
  }
  // Highest peak on each side of the centre and the minimum between them.
  const int centre = n / 2;
  const auto left_peak = std::max_element(smooth.begin(), smooth.begin() + centre);
  const auto right_peak = std::max_element(smooth.begin() + centre, smooth.end());
  const auto dip = std::min_element(left_peak, right_peak + 1);
  const double smaller = std::min(*left_peak, *right_peak);
  return smaller > 0.0 && *dip < dip_ratio * smaller;
}

}  // namespace rncg
