#pragma once

#include <functional>
#include <vector>

#include "rncg/model.hpp"

namespace rncg {

/// Phase of the large-N eigenvalue distribution as a function of g.
enum class Phase { OneCut, TwoCut, Critical };

/// Shape of the support used to represent a measure.
enum class CutShape { OneCut, TwoCut };

const char* to_string(Phase phase) noexcept;

struct Interval {
  double lo;
  double hi;
};

struct CriticalPoint {
  double g_c;
  double a_c;
};

/// Closed-form equilibrium density of the symmetric quartic problem.
///
/// One cut:  Psi(x) = (1/pi) (A + 2 B a^2 + B x^2) sqrt(4a^2 - x^2) on [-2a, 2a].
/// Two cuts: Psi(x) = norm_coeff |x| sqrt((x^2 - b^2)(a^2 - x^2)) on [-a,-b] u [b,a],
///           with norm_coeff = 8 / (pi (a^2 - b^2)^2) fixed by unit mass.
///
/// Values are immutable once built and safe to share between threads.
struct EquilibriumMeasure {
  CutShape shape = CutShape::OneCut;
  Phase phase = Phase::OneCut;
  double a = 0.0;
  double b = 0.0;
  double A = 0.0;
  double B = 4.0;
  double norm_coeff = 0.0;
  double g = 0.0;
  double c_sym = 6.0;
  /// False only for the one-cut branch continued below g_c (plotting override).
  bool nonnegative = true;

  /// General one-cut density with coefficients (A, B) and support [-2a, 2a].
  /// Throws DomainError if a <= 0.
  static EquilibriumMeasure one_cut(double A, double B, double a);
  /// Two-cut density on [-a,-b] u [b,a]; A is set from the odd moment
  /// condition A = -B (a^2 + b^2) / 2. Throws DomainError unless 0 <= b < a.
  static EquilibriumMeasure two_cut(double a, double b, double B = 4.0);

  std::vector<Interval> support() const;
  /// Largest |x| in the support: 2a (one cut) or a (two cuts).
  double outer_edge() const noexcept;
  /// Polynomial factor at x = 0, A + 2 B a^2 (one cut only). Negative below g_c.
  double central_coefficient() const noexcept { return A + 2.0 * B * a * a; }
};

/// (g_c, a_c) for the given interaction coefficient; the defaults reproduce
/// g_c = -5 sqrt(2)/2 and a_c = 8^(-1/4).
CriticalPoint critical_constants(double c_sym = 6.0) noexcept;

/// One-cut endpoint relation g(a) = [1/(2a^2) - 12 a^2 - c_sym (8a^6 + a^2)] / 2,
/// which is g = -24a^6 - 9a^2 + 1/(4a^2) for c_sym = 6. Strictly decreasing in a.
double coupling_from_endpoint(double a, double c_sym = 6.0);

/// Unique a > 0 with coupling_from_endpoint(a) = g; bisection then Newton.
/// Throws NumericalError if the residual does not reach tol * max(1, |g|).
double solve_endpoint_one_cut(double g, double tol = 1e-12, double c_sym = 6.0);

/// Two-cut endpoints (a, b) with a^2 = m2 + sqrt(2)/2, b^2 = m2 - sqrt(2)/2 and
/// m2 = -2g/(4 + c_sym) (m2 = -g/5 for c_sym = 6).
/// Throws DomainError for g > g_c.
std::pair<double, double> endpoints_two_cut(double g, double c_sym = 6.0);

Phase classify_phase(double g, double c_sym = 6.0) noexcept;

struct SolveOptions {
  double tol = 1e-12;
  /// Return the one-cut formula even below g_c, where it dips negative.
  bool one_cut_override = false;
};

/// Equilibrium measure for coupling g; identical for both model kinds since
/// the odd moments vanish. The saddle variant selects c_sym.
EquilibriumMeasure solve(double g, const ModelSpec& spec, const SolveOptions& options = {});
EquilibriumMeasure solve(double g, double c_sym = 6.0, const SolveOptions& options = {});

/// Explicit branches, used to compare the two representations at g_c.
EquilibriumMeasure solve_one_cut(double g, double c_sym = 6.0, double tol = 1e-12);
EquilibriumMeasure solve_two_cut(double g, double c_sym = 6.0);

/// Psi(x). Zero outside the support.
double density(const EquilibriumMeasure& mu, double x) noexcept;

/// int f(x) Psi(x) dx, with square-root edges removed by substitution on each cut.
double integrate_against(const EquilibriumMeasure& mu, const std::function<double(double)>& f,
                         int nodes = 256);

double total_mass(const EquilibriumMeasure& mu, int nodes = 256);

/// k-th moment. Odd k returns exactly 0; even k uses closed forms: Catalan
/// numbers for one cut, and for two cuts the semicircle law in u = x^2 with
/// centre -A/B and radius (a^2 - b^2)/2.
double moment(const EquilibriumMeasure& mu, int k);

/// Moment by quadrature regardless of shape (odd k included).
double moment_quadrature(const EquilibriumMeasure& mu, int k, int nodes = 256);

/// Catalan-number moment C_{k/2} (6k/(k+4) B a^{k+4} + a^k) for even k; 0 for odd k.
/// Valid when the Plemelj side condition 1/a = 2Aa + 6Ba^3 holds.
double catalan_moment(double a, double B, int k);

/// Catalan number C_n.
double catalan_number(int n);

/// (1/pi)(A + 2Ba^2 + Bx^2) sqrt(4a^2 - x^2)_+ ; throws DomainError if the
/// polynomial factor goes negative on [-2a, 2a].
double general_one_cut_density(double A, double B, double a, double x);

/// |1/a - 2Aa - 6Ba^3|, the Stieltjes-asymptotics side condition.
double plemelj_side_condition_residual(double A, double B, double a) noexcept;

}  // namespace rncg
