#include <doctest.h>

#include <cmath>
#include <numbers>

#include <rncg/quadrature.hpp>

using namespace rncg;

TEST_CASE("Gauss-Legendre rule") {
  for (int n : {1, 2, 5, 16, 64, 256}) {
    const quad::GaussRule& r = quad::gauss_legendre(n);
    REQUIRE(r.nodes.size() == static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double w : r.weights) sum += w;
    CHECK(sum == doctest::Approx(2.0).epsilon(1e-14));
    for (std::size_t i = 1; i < r.nodes.size(); ++i) CHECK(r.nodes[i] > r.nodes[i - 1]);
  }
  // Exact for degree 2n - 1.
  const double v = quad::integrate([](double x) { return std::pow(x, 9) + 3.0 * std::pow(x, 8); }, -1.0, 2.0, 5);
  CHECK(v == doctest::Approx((std::pow(2.0, 10) - 1.0) / 10.0 + (std::pow(2.0, 9) + 1.0) / 3.0).epsilon(1e-13));
}

TEST_CASE("sine substitution removes square-root edges") {
  // int_{-1}^{1} sqrt(1 - x^2) dx = pi / 2.
  const double plain = quad::integrate([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0, 64);
  const double sub = quad::integrate_sqrt_edges([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0, 64);
  CHECK(std::abs(sub - std::numbers::pi / 2) < 1e-14);
  CHECK(std::abs(plain - std::numbers::pi / 2) > 1e-6);
}
