#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rncg/density_grid.hpp"
#include "rncg/equilibrium.hpp"

namespace rncg {

/// Density of states of the Dirac operator, rho(w) = int Psi(w - l) Psi(l) dl.
/// Psi is even, so the (1,0) and (0,1) forms coincide. Integrated panel by
/// panel over supp Psi n (w - supp Psi), each panel with the sine substitution
/// and adaptive bisection. Returns 0 when the panels are empty.
double dos_density(const EquilibriumMeasure& mu, double omega);

/// rho on `points` uniform abscissae over [-2E, 2E], E the outer support edge.
/// Throws ValidationError for points < 16.
DensityGrid dos_grid(const EquilibriumMeasure& mu, int points, unsigned threads = 0);

/// Inverse-CDF sampler of Psi: cumulative trapezoid on knots spaced uniformly
/// in angle on each cut, inverted by monotone linear interpolation.
class InverseCdfSampler {
 public:
  explicit InverseCdfSampler(const EquilibriumMeasure& mu, int knots = 4096);

  /// Quantile for u in [0, 1].
  double operator()(double u) const noexcept;

  const std::vector<double>& knots() const noexcept { return xs_; }
  const std::vector<double>& cdf() const noexcept { return cdf_; }

 private:
  std::vector<double> xs_;
  std::vector<double> cdf_;
};

/// Sorted samples of l + l' with l, l' drawn independently from Psi.
std::vector<double> sample_dirac_sums(const EquilibriumMeasure& mu, std::size_t samples, std::uint64_t seed);

/// Kolmogorov-Smirnov distance between sorted samples and the trapezoidal CDF of a grid.
double ks_distance(std::span<const double> sorted_samples, const DensityGrid& grid);

}  // namespace rncg
