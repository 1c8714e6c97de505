#include "rncg/dos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "rncg/errors.hpp"
#include "rncg/mcmc.hpp"
#include "rncg/quadrature.hpp"

namespace rncg {

namespace {

template <class F>
double adaptive_sqrt_edges(F&& f, double lo, double hi, int depth) {
  const double coarse = quad::integrate_sqrt_edges(f, lo, hi, 48);
  const double fine = quad::integrate_sqrt_edges(f, lo, hi, 96);
  if (depth == 0 || std::abs(fine - coarse) <= 1e-14 + 1e-12 * std::abs(fine)) return fine;
  const double mid = 0.5 * (lo + hi);
  return adaptive_sqrt_edges(f, lo, mid, depth - 1) + adaptive_sqrt_edges(f, mid, hi, depth - 1);
}

}  // namespace

double dos_density(const EquilibriumMeasure& mu, double omega) {
  const std::vector<Interval> cuts = mu.support();
  auto integrand = [&](double l) { return density(mu, omega - l) * density(mu, l); };
  double sum = 0.0;
  for (const Interval& p : cuts) {
    for (const Interval& q : cuts) {
      // l in p and omega - l in q.
      const double lo = std::max(p.lo, omega - q.hi);
      const double hi = std::min(p.hi, omega - q.lo);
      if (hi > lo) sum += adaptive_sqrt_edges(integrand, lo, hi, 8);
    }
  }
  return std::max(sum, 0.0);
}

DensityGrid dos_grid(const EquilibriumMeasure& mu, int points, unsigned threads) {
  if (points < 16) throw ValidationError("dos grid needs at least 16 points");
  const double edge = 2.0 * mu.outer_edge();
  DensityGrid grid;
  grid.xs = uniform_abscissae(-edge, edge, points);
  grid.values.assign(grid.xs.size(), 0.0);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  auto fill = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < grid.xs.size(); i += stride) grid.values[i] = dos_density(mu, grid.xs[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(fill, t, threads);
  fill(0, threads);
  for (std::thread& t : pool) t.join();

  grid.meta.quantity = "rho";
  grid.meta.g = mu.g;
  grid.meta.phase = to_string(mu.phase);
  grid.meta.lo = -edge;
  grid.meta.hi = edge;
  grid.meta.points = points;
  grid.meta.normalized = true;
  return grid;
}

InverseCdfSampler::InverseCdfSampler(const EquilibriumMeasure& mu, int knots) {
  if (knots < 8) throw ValidationError("inverse-CDF sampler needs at least 8 knots");
  const std::vector<Interval> cuts = mu.support();
  double total_length = 0.0;
  for (const Interval& c : cuts) total_length += c.hi - c.lo;
  for (const Interval& c : cuts) {
    const int n = std::max(4, static_cast<int>(knots * (c.hi - c.lo) / total_length));
    const double mid = 0.5 * (c.lo + c.hi);
    const double half = 0.5 * (c.hi - c.lo);
    for (int i = 0; i < n; ++i) {
      const double theta = std::numbers::pi * (static_cast<double>(i) / (n - 1) - 0.5);
      const double x = i == 0 ? c.lo : (i == n - 1 ? c.hi : mid + half * std::sin(theta));
      if (!xs_.empty() && x <= xs_.back()) continue;
      xs_.push_back(x);
    }
  }
  cdf_.assign(xs_.size(), 0.0);
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    cdf_[i] = cdf_[i - 1] + 0.5 * (xs_[i] - xs_[i - 1]) * (density(mu, xs_[i - 1]) + density(mu, xs_[i]));
  }
  const double total = cdf_.back();
  for (double& v : cdf_) v /= total;
}

double InverseCdfSampler::operator()(double u) const noexcept {
  if (u <= 0.0) return xs_.front();
  if (u >= 1.0) return xs_.back();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  const std::size_t i = static_cast<std::size_t>(it - cdf_.begin());
  const double span = cdf_[i] - cdf_[i - 1];
  const double t = span > 0.0 ? (u - cdf_[i - 1]) / span : 0.0;
  return xs_[i - 1] + t * (xs_[i] - xs_[i - 1]);
}

std::vector<double> sample_dirac_sums(const EquilibriumMeasure& mu, std::size_t samples, std::uint64_t seed) {
  const InverseCdfSampler quantile(mu);
  std::mt19937_64 rng(seed);
  std::vector<double> out(samples);
  for (double& w : out) {
    const double l1 = quantile(canonical_uniform(rng));
    const double l2 = quantile(canonical_uniform(rng));
    w = l1 + l2;
  }
  std::sort(out.begin(), out.end());
  return out;
}

double ks_distance(std::span<const double> sorted_samples, const DensityGrid& grid) {
  const std::vector<double> cdf = grid.cdf();
  const double n = static_cast<double>(sorted_samples.size());
  double worst = 0.0;
  std::size_t g = 0;
  for (std::size_t i = 0; i < sorted_samples.size(); ++i) {
    const double x = sorted_samples[i];
    while (g + 1 < grid.xs.size() && grid.xs[g + 1] <= x) ++g;
    double F;
    if (x <= grid.xs.front()) {
      F = 0.0;
    } else if (x >= grid.xs.back()) {
      F = 1.0;
    } else {
      // Exact integral of the linear interpolant up to x.
      const double x0 = grid.xs[g];
      const double dx = x - x0;
      const double slope = (grid.values[g + 1] - grid.values[g]) / (grid.xs[g + 1] - grid.xs[g]);
      const double partial = dx * (grid.values[g] + 0.5 * slope * dx);
      F = cdf[g] + partial / grid.trapezoid_mass();
    }
    worst = std::max({worst, std::abs(F - i / n), std::abs(F - (i + 1) / n)});
  }
  return worst;
}

}  // namespace rncg
