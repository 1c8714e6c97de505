#pragma once

#include <cmath>
#include <numbers>
#include <vector>

namespace rncg::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached n-point rule (thread-safe); nodes in increasing order.
const GaussRule& gauss_legendre(int n);

/// int_lo^hi f(x) dx with plain Gauss-Legendre.
template <class F>
double integrate(F&& f, double lo, double hi, int n = 256) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

/// int_lo^hi f(x) dx after x = mid + half sin(theta). The Jacobian cos(theta)
/// cancels square-root behaviour at both ends, so integrands such as
/// p(x) sqrt((hi - x)(x - lo)) are integrated to spectral accuracy.
template <class F>
double integrate_sqrt_edges(F&& f, double lo, double hi, int n = 256) {
  const GaussRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  constexpr double quarter_turn = 0.5 * std::numbers::pi;
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double theta = quarter_turn * rule.nodes[i];
    sum += rule.weights[i] * std::cos(theta) * f(mid + half * std::sin(theta));
  }
  return quarter_turn * half * sum;
}

}  // namespace rncg::quad
