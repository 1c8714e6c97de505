#pragma once

#include <string>
#include <vector>

namespace rncg {

/// Sampled density on an increasing abscissa grid: the exchange format for
/// equilibrium densities and Dirac density-of-states curves.
struct DensityGrid {
  struct Meta {
    std::string quantity = "psi";  // "psi" or "rho"
    double g = 0.0;
    std::string phase;
    double lo = 0.0;
    double hi = 0.0;
    int points = 0;
    bool normalized = false;
  };

  std::vector<double> xs;
  std::vector<double> values;
  Meta meta;

  /// Throws ValidationError on size mismatch, non-increasing xs, non-finite or
  /// negative values, or (when tagged normalized) mass off by more than 1e-6.
  void validate() const;

  double trapezoid_mass() const noexcept;
  /// Trapezoidal moment int x^k f(x) dx.
  double trapezoid_moment(int k) const noexcept;
  /// Piecewise-linear interpolant, zero outside [xs.front(), xs.back()].
  double interpolate(double x) const noexcept;
  /// Cumulative trapezoid, normalized so the last entry is 1.
  std::vector<double> cdf() const;
  /// Copy rescaled to unit trapezoidal mass and tagged normalized.
  DensityGrid normalized() const;
};

/// Uniform grid of `points` abscissae on [lo, hi] (endpoints included).
std::vector<double> uniform_abscissae(double lo, double hi, int points);

}  // namespace rncg
