#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rncg/density_grid.hpp"
#include "rncg/equilibrium.hpp"
#include "rncg/model.hpp"

namespace rncg {

/// Right-hand side of the saddle-point equation, A x + B x^3, with
/// A = 2g + c_sym m2 and B = 4.
struct SaddleCoefficients {
  double A = 0.0;
  double B = 4.0;
  double c_sym = 6.0;
};

SaddleCoefficients saddle_coefficients(const ModelSpec& spec, double m2) noexcept;

/// Polynomial in z; coeffs[q] multiplies z^q.
struct ResiduePolynomial {
  std::array<double, 6> coeffs{};

  double operator()(double z) const noexcept;
  std::complex<double> operator()(std::complex<double> z) const noexcept;
};

/// One monomial (num/den) a^{2k} b^{2j} z^q of a residue polynomial.
struct ResidueTerm {
  std::int64_t num = 0;
  std::int64_t den = 1;
  int k = 0;
  int j = 0;
  int q = 0;
};

/// Exact terms of Res[s^alpha / (sqrt((s^2-a^2)(s^2-b^2)) (s - z)), infinity],
/// i.e. the coefficient of 1/s in the large-s expansion. The coefficients come
/// from the binomial series binom(-1/2, k)(-1)^k = C(2k, k) / 4^k.
/// Throws DomainError unless 1 <= alpha <= 7.
std::vector<ResidueTerm> residue_series_terms(int alpha);

/// Numerical evaluation of residue_series_terms at (a, b).
ResiduePolynomial residue_at_infinity(int alpha, double a, double b);

/// (1 / 2 pi i) times the contour integral of s^alpha / (sqrt((s^2-a^2)(s^2-b^2)) (s - z))
/// over the circle |s| = radius, by the trapezoidal rule. Needs radius > max(a, |z|).
std::complex<double> residue_by_contour(int alpha, double a, double b, std::complex<double> z, double radius,
                                        int nodes = 2048);

/// Coefficient of w^{2n} in sqrt((1 - a^2 w^2)(1 - b^2 w^2)).
double sqrt_product_coefficient(int n, double a, double b);

/// Which side of the real axis a boundary value is taken from.
enum class Side { None, Upper, Lower };

/// Resolvent W(z) = int Psi(s) / (s - z) ds in closed form.
///   one cut: -[A z + B z^3 - (A + 2Ba^2 + B z^2) sqrt(z^2 - 4a^2)]
///   two cuts: -[A z + B z^3 - B z sqrt((z^2 - a^2)(z^2 - b^2))]
/// with the branch fixed by W(z) ~ -1/z at infinity. For z on (or within
/// 1e-12 of) the support a side must be given; otherwise BranchAmbiguityError.
std::complex<double> stieltjes(const EquilibriumMeasure& mu, std::complex<double> z, Side side = Side::None);

/// The defining integral of W evaluated by quadrature over the support.
std::complex<double> stieltjes_quadrature(const EquilibriumMeasure& mu, std::complex<double> z, int nodes = 2048);

/// P.V. int Psi(s) / (s - x) ds by singularity subtraction on the cut that
/// contains x, plus the regular contribution of the other cut. Does not use
/// the closed-form resolvent. Throws DomainError unless x is interior to the support.
double principal_value_transform(const EquilibriumMeasure& mu, double x, int nodes = 256);

/// P.V. int Psi(y)/(x - y) dy - (A x + B x^3) with A = 2 spec.g + c_sym m2(mu).
double saddle_residual(const EquilibriumMeasure& mu, const ModelSpec& spec, double x);

struct ConditionResiduals {
  double r0 = 0.0;  // j = 0 moment condition, zero by symmetry
  double r1 = 0.0;  // a^2 + b^2 + 2A/B
  double r2 = 0.0;  // (2B/16)(a^2 - b^2)^2 - 1
};

/// Two-cut moment and normalization conditions evaluated through residues.
/// Throws DomainError unless 0 <= b < a.
ConditionResiduals condition_residuals(double a, double b, const SaddleCoefficients& coeffs);

/// Second moment of the two-cut density from the residue at infinity,
/// (2B/32)(a^2 - b^2)^2 (a^2 + b^2).
double two_cut_second_moment_residue(double a, double b, double B);

/// Energy functional
///   int V dmu + int int U dmu dmu - int int log|s - t| dmu dmu
/// for a density given on a grid (piecewise-linear). The logarithmic term is
/// evaluated through the Chebyshev expansion of log|u - v| on the hull of the
/// support, truncated after `modes` terms.
/// Throws ValidationError for negative values or |mass - 1| > 1e-6.
double energy(const DensityGrid& grid, const ActionCoefficients& coeffs, int modes = 256);
double energy(const DensityGrid& grid, const ModelSpec& spec, int modes = 256);

/// Same functional for a density given as a function on a list of intervals;
/// each interval is integrated with square-root edge substitution.
double energy(const std::function<double(double)>& density, std::span<const Interval> support,
              const ActionCoefficients& coeffs, int modes = 256);

/// int int log|s - t| f(s) f(t) ds dt (the bare logarithmic self-energy).
double log_self_energy(const std::function<double(double)>& density, std::span<const Interval> support,
                       int modes = 256);

}  // namespace rncg
