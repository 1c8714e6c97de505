#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "rncg/equilibrium.hpp"

namespace rncg {

/// Uniform-bin histogram of sampled eigenvalues (or Dirac eigenvalues).
/// Values outside [lo, hi) are tallied in underflow / overflow and still
/// count towards `total`, so densities integrate to the in-range fraction.
struct SpectralHistogram {
  double lo = -3.0;
  double hi = 3.0;
  std::vector<std::uint64_t> counts;
  std::uint64_t underflow = 0;
  std::uint64_t overflow = 0;
  std::uint64_t total = 0;

  static SpectralHistogram uniform(double lo, double hi, int bins);

  void add(double x) noexcept;
  void merge(const SpectralHistogram& other);

  int bins() const noexcept { return static_cast<int>(counts.size()); }
  double bin_width() const noexcept { return (hi - lo) / static_cast<double>(counts.size()); }
  double edge(int i) const noexcept { return lo + bin_width() * i; }
  double center(int i) const noexcept { return lo + bin_width() * (i + 0.5); }

  /// counts / (total * bin_width).
  std::vector<double> densities() const;
  /// Fraction of all samples in [a, b], bins treated as uniformly filled.
  double fraction_in(double a, double b) const;
  /// Empirical CDF at bin edge i (i = 0..bins).
  double cdf_at_edge(int i) const noexcept;
  /// Sample mean of x^k, using bin centres.
  double binned_moment(int k) const;
};

/// Central density: fraction of mass in [-delta, delta] divided by 2 delta.
/// Throws ValidationError for an empty histogram.
double order_parameter(const SpectralHistogram& hist, double delta = 0.1);
/// Same quantity for an analytic density.
double order_parameter(const EquilibriumMeasure& mu, double delta = 0.1);

/// sup over bin edges |F_hist - F|.
double ks_distance(const SpectralHistogram& hist, const std::function<double(double)>& cdf);

/// CDF of an equilibrium measure, x -> int_{-inf}^x Psi.
std::function<double(double)> measure_cdf(const EquilibriumMeasure& mu, int nodes = 128);

/// True if the smoothed density has a peak on each side of the bin range
/// centre and dips below dip_ratio times the smaller peak between them.
bool is_bimodal(const SpectralHistogram& hist, double dip_ratio = 0.8, int smoothing = 5);

}  // namespace rncg
