#include "rncg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rncg/errors.hpp"
#include "rncg/quadrature.hpp"

namespace rncg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kCriticalTolerance = 1e-14;
constexpr double kQuarticCoefficient = 4.0;

double two_cut_norm(double a, double b) {
  const double gap = a * a - b * b;
  return 8.0 / (kPi * gap * gap);
}

// dg/da for the one-cut endpoint relation.
double coupling_derivative(double a, double c_sym) {
  return 0.5 * (-1.0 / (a * a * a) - 24.0 * a - c_sym * (48.0 * std::pow(a, 5) + 2.0 * a));
}

}  // namespace

const char* to_string(Phase phase) noexcept {
  switch (phase) {
    case Phase::OneCut:
      return "OneCut";
    case Phase::TwoCut:
      return "TwoCut";
    case Phase::Critical:
      return "Critical";
  }
  return "?";
}

EquilibriumMeasure EquilibriumMeasure::one_cut(double A, double B, double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("one-cut endpoint a must be positive");
  EquilibriumMeasure mu;
  mu.shape = CutShape::OneCut;
  mu.phase = Phase::OneCut;
  mu.a = a;
  mu.b = 0.0;
  mu.A = A;
  mu.B = B;
  mu.norm_coeff = 1.0 / kPi;
  const double edge_value = A + 6.0 * B * a * a;
  mu.nonnegative = mu.central_coefficient() >= 0.0 && edge_value >= 0.0;
  return mu;
}

EquilibriumMeasure EquilibriumMeasure::two_cut(double a, double b, double B) {
  if (!(b >= 0.0) || !(b < a) || !std::isfinite(a)) {
    throw DomainError("two-cut endpoints need 0 <= b < a");
  }
  EquilibriumMeasure mu;
  mu.shape = CutShape::TwoCut;
  mu.phase = Phase::TwoCut;
  mu.a = a;
  mu.b = b;
  mu.B = B;
  mu.A = -0.5 * B * (a * a + b * b);
  mu.norm_coeff = two_cut_norm(a, b);
  return mu;
}

std::vector<Interval> EquilibriumMeasure::support() const {
  if (shape == CutShape::OneCut) return {{-2.0 * a, 2.0 * a}};
  return {{-a, -b}, {b, a}};
}

double EquilibriumMeasure::outer_edge() const noexcept {
  return shape == CutShape::OneCut ? 2.0 * a : a;
}

CriticalPoint critical_constants(double c_sym) noexcept {
  // Psi(0) = 0 gives 1/(2a^2) = 4a^2, a^4 = 1/8; at that point b = 0 on the
  // two-cut side, m2 = sqrt(2)/2 = -2g/(4 + c_sym).
  return {-(4.0 + c_sym) * kSqrt2 / 4.0, std::pow(2.0, -0.75)};
}

double coupling_from_endpoint(double a, double c_sym) {
  if (!(a > 0.0)) throw DomainError("coupling_from_endpoint requires a > 0");
  const double a2 = a * a;
  const double m2 = 8.0 * a2 * a2 * a2 + a2;
  return 0.5 * (0.5 / a2 - 12.0 * a2 - c_sym * m2);
}

double solve_endpoint_one_cut(double g, double tol, double c_sym) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (!std::isfinite(g)) throw DomainError("coupling g must be finite");
  double lo = 1e-6;
  double hi = 10.0;
  for (int i = 0; i < 40 && coupling_from_endpoint(lo, c_sym) < g; ++i) lo *= 0.1;
  for (int i = 0; i < 40 && coupling_from_endpoint(hi, c_sym) > g; ++i) hi *= 2.0;
  const double target = tol * std::max(1.0, std::abs(g));
  if (coupling_from_endpoint(lo, c_sym) < g || coupling_from_endpoint(hi, c_sym) > g) {
    throw NumericalError("could not bracket the one-cut endpoint for g = " + std::to_string(g),
                         std::abs(coupling_from_endpoint(hi, c_sym) - g));
  }
  // Bisection until the bracket is narrow, then Newton safeguarded by it.
  while (hi - lo > 1e-3 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (coupling_from_endpoint(mid, c_sym) > g) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double a = 0.5 * (lo + hi);
  double residual = coupling_from_endpoint(a, c_sym) - g;
  for (int iter = 0; iter < 100; ++iter) {
    if (residual > 0.0) {
      lo = a;
    } else {
      hi = a;
    }
    double next = a - residual / coupling_derivative(a, c_sym);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - a);
    a = next;
    residual = coupling_from_endpoint(a, c_sym) - g;
    if (std::abs(residual) <= target && step <= 1e-15 * a) break;
    if (step == 0.0) break;
  }
  if (std::abs(residual) > target) {
    throw NumericalError("one-cut endpoint solve did not converge for g = " + std::to_string(g),
                         residual);
  }
  return a;
}

std::pair<double, double> endpoints_two_cut(double g, double c_sym) {
  const CriticalPoint crit = critical_constants(c_sym);
  if (g > crit.g_c + kCriticalTolerance) {
    throw DomainError("g = " + std::to_string(g) + " lies above g_c = " + std::to_string(crit.g_c) +
                      "; the support is a single cut, use the one-cut solution");
  }
  // At the critical coupling take the outer edge from a_c so that it carries
  // the same bits as the one-cut edge 2 a_c; sqrt(edge - x) would otherwise
  // turn a one-ulp difference into a 1e-8 discrepancy near the edge.
  if (std::abs(g - crit.g_c) <= kCriticalTolerance) return {2.0 * crit.a_c, 0.0};
  const double m2 = -2.0 * g / (4.0 + c_sym);
  const double a2 = m2 + 0.5 * kSqrt2;
  const double b2 = std::max(0.0, m2 - 0.5 * kSqrt2);
  return {std::sqrt(a2), std::sqrt(b2)};
}

Phase classify_phase(double g, double c_sym) noexcept {
  const double g_c = critical_constants(c_sym).g_c;
  if (std::abs(g - g_c) <= kCriticalTolerance) return Phase::Critical;
  return g > g_c ? Phase::OneCut : Phase::TwoCut;
}

EquilibriumMeasure solve_one_cut(double g, double c_sym, double tol) {
  const Phase phase = classify_phase(g, c_sym);
  const double a = phase == Phase::Critical ? critical_constants(c_sym).a_c
                                            : solve_endpoint_one_cut(g, tol, c_sym);
  const double B = kQuarticCoefficient;
  // A from the side condition 1/a = 2Aa + 6Ba^3; it equals 2g + c_sym m2.
  EquilibriumMeasure mu = EquilibriumMeasure::one_cut(0.5 / (a * a) - 3.0 * B * a * a, B, a);
  mu.phase = phase;
  mu.g = g;
  mu.c_sym = c_sym;
  return mu;
}

EquilibriumMeasure solve_two_cut(double g, double c_sym) {
  const auto [a, b] = endpoints_two_cut(g, c_sym);
  EquilibriumMeasure mu = EquilibriumMeasure::two_cut(a, b, kQuarticCoefficient);
  // Same value up to rounding; taken from m2 = -2g/(4 + c_sym) so that m2 = -A/B is exact.
  const double m2 = -2.0 * g / (4.0 + c_sym);
  mu.A = 2.0 * g + c_sym * m2;
  mu.phase = classify_phase(g, c_sym);
  mu.g = g;
  mu.c_sym = c_sym;
  return mu;
}

EquilibriumMeasure solve(double g, double c_sym, const SolveOptions& options) {
  if (!std::isfinite(g)) throw DomainError("coupling g must be finite");
  const Phase phase = classify_phase(g, c_sym);
  if (phase == Phase::TwoCut && !options.one_cut_override) return solve_two_cut(g, c_sym);
  return solve_one_cut(g, c_sym, options.tol);
}

EquilibriumMeasure solve(double g, const ModelSpec& spec, const SolveOptions& options) {
  spec.validate();
  return solve(g, interaction_coefficient(spec.variant), options);
}

double density(const EquilibriumMeasure& mu, double x) noexcept {
  if (mu.shape == CutShape::OneCut) {
    const double r2 = 4.0 * mu.a * mu.a - x * x;
    if (r2 <= 0.0) return 0.0;
    return (mu.central_coefficient() + mu.B * x * x) * std::sqrt(r2) / kPi;
  }
  const double x2 = x * x;
  const double inner = x2 - mu.b * mu.b;
  const double outer = mu.a * mu.a - x2;
  if (inner <= 0.0 || outer <= 0.0) return 0.0;
  return mu.norm_coeff * std::abs(x) * std::sqrt(inner * outer);
}

double integrate_against(const EquilibriumMeasure& mu, const std::function<double(double)>& f,
                         int nodes) {
  double sum = 0.0;
  for (const Interval& cut : mu.support()) {
    sum += quad::integrate_sqrt_edges([&](double x) { return f(x) * density(mu, x); }, cut.lo, cut.hi,
                                      nodes);
  }
  return sum;
}

double total_mass(const EquilibriumMeasure& mu, int nodes) {
  return integrate_against(mu, [](double) { return 1.0; }, nodes);
}

double catalan_number(int n) {
  if (n < 0) throw DomainError("Catalan number index must be nonnegative");
  double c = 1.0;
  for (int i = 0; i < n; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return c;
}

double catalan_moment(double a, double B, int k) {
  if (k < 0) throw DomainError("moment order must be nonnegative");
  if (k % 2 == 1) return 0.0;
  const double kk = static_cast<double>(k);
  return catalan_number(k / 2) * (6.0 * kk / (kk + 4.0) * B * std::pow(a, k + 4) + std::pow(a, k));
}

double moment_quadrature(const EquilibriumMeasure& mu, int k, int nodes) {
  if (k < 0) throw DomainError("moment order must be nonnegative");
  if (mu.shape == CutShape::TwoCut) {
    // u = x^2 folds the two cuts onto [b^2, a^2]; the remaining weight
    // sqrt((u - b^2)(a^2 - u)) is handled by the sine substitution.
    if (k % 2 == 1) {
      return integrate_against(mu, [k](double x) { return std::pow(x, k); }, nodes);
    }
    const double lo = mu.b * mu.b;
    const double hi = mu.a * mu.a;
    const int half_k = k / 2;
    return mu.norm_coeff *
           quad::integrate_sqrt_edges(
               [&](double u) { return std::pow(u, half_k) * std::sqrt(std::max(0.0, (u - lo) * (hi - u))); },
               lo, hi, nodes);
  }
  return integrate_against(mu, [k](double x) { return std::pow(x, k); }, nodes);
}

double moment(const EquilibriumMeasure& mu, int k) {
  if (k < 0) throw DomainError("moment order must be nonnegative");
  if (k % 2 == 1) return 0.0;
  if (mu.shape == CutShape::TwoCut) {
    // In u = x^2 the two-cut density is a unit semicircle law centred at
    // (a^2 + b^2)/2 = -A/B with radius (a^2 - b^2)/2, whose even moments are C_j / 4^j.
    const int l = k / 2;
    const double centre = -mu.A / mu.B;
    const double radius = 0.5 * (mu.a * mu.a - mu.b * mu.b);
    double sum = 0.0;
    double binom = 1.0;  // binom(l, 2j)
    for (int j = 0; 2 * j <= l; ++j) {
      if (j > 0) binom *= static_cast<double>((l - 2 * j + 2) * (l - 2 * j + 1)) / ((2 * j - 1) * (2 * j));
      sum += binom * std::pow(centre, l - 2 * j) * std::pow(radius, 2 * j) * catalan_number(j) /
             std::pow(4.0, j);
    }
    return sum;
  }
  // Semicircle moments int x^{2l} sqrt(4a^2 - x^2) dx = 2 pi a^{2l+2} C_l applied
  // to both terms of the polynomial factor. Reduces to catalan_moment when the
  // side condition holds.
  const int l = k / 2;
  return 2.0 * catalan_number(l) * mu.central_coefficient() * std::pow(mu.a, k + 2) +
         2.0 * catalan_number(l + 1) * mu.B * std::pow(mu.a, k + 4);
}

double general_one_cut_density(double A, double B, double a, double x) {
  if (!(a > 0.0)) throw DomainError("one-cut endpoint a must be positive");
  const double at_center = A + 2.0 * B * a * a;
  const double at_edge = A + 6.0 * B * a * a;
  if (std::min(at_center, at_edge) < 0.0) {
    throw DomainError("invalid parameters: (A + 2Ba^2 + Bx^2) is negative on the support");
  }
  const double r2 = 4.0 * a * a - x * x;
  if (r2 <= 0.0) return 0.0;
  return (at_center + B * x * x) * std::sqrt(r2) / kPi;
}

double plemelj_side_condition_residual(double A, double B, double a) noexcept {
  return std::abs(1.0 / a - 2.0 * A * a - 6.0 * B * a * a * a);
}

}  // namespace rncg
