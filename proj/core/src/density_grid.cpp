#include "rncg/density_grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rncg/errors.hpp"

namespace rncg {

void DensityGrid::validate() const {
  if (xs.size() != values.size()) throw ValidationError("density grid: xs and values differ in length");
  if (xs.size() < 2) throw ValidationError("density grid needs at least two points");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(values[i])) {
      throw ValidationError("density grid contains non-finite entries");
    }
    if (values[i] < 0.0) throw ValidationError("density grid has a negative value at x = " + std::to_string(xs[i]));
    if (i > 0 && !(xs[i] > xs[i - 1])) throw ValidationError("density grid abscissae must be strictly increasing");
  }
  if (meta.normalized) {
    const double mass = trapezoid_mass();
    if (std::abs(mass - 1.0) > 1e-6) {
      throw ValidationError("density grid tagged normalized has mass " + std::to_string(mass));
    }
  }
}

double DensityGrid::trapezoid_mass() const noexcept { return trapezoid_moment(0); }

double DensityGrid::trapezoid_moment(int k) const noexcept {
  double sum = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double left = values[i - 1] * std::pow(xs[i - 1], k);
    const double right = values[i] * std::pow(xs[i], k);
    sum += 0.5 * (xs[i] - xs[i - 1]) * (left + right);
  }
  return sum;
}

double DensityGrid::interpolate(double x) const noexcept {
  if (xs.empty() || x < xs.front() || x > xs.back()) return 0.0;
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.end()) return values.back();
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - t) * values[i - 1] + t * values[i];
}

std::vector<double> DensityGrid::cdf() const {
  std::vector<double> out(xs.size(), 0.0);
  for (std::size_t i = 1; i < xs.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * (xs[i] - xs[i - 1]) * (values[i - 1] + values[i]);
  }
  const double total = out.empty() ? 0.0 : out.back();
  if (total > 0.0) {
    for (double& v : out) v /= total;
  }
  return out;
}

DensityGrid DensityGrid::normalized() const {
  DensityGrid copy = *this;
  const double mass = trapezoid_mass();
  if (!(mass > 0.0)) throw ValidationError("cannot normalize a density grid with zero mass");
  for (double& v : copy.values) v /= mass;
  copy.meta.normalized = true;
  return copy;
}

std::vector<double> uniform_abscissae(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) throw ValidationError("grid needs points >= 2 and hi > lo");
  std::vector<double> xs(static_cast<std::size_t>(points));
  const double step = (hi - lo) / (points - 1);
  for (int i = 0; i < points; ++i) xs[static_cast<std::size_t>(i)] = lo + step * i;
  xs.back() = hi;
  return xs;
}

}  // namespace rncg
