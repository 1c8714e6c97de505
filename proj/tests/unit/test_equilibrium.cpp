#include <doctest.h>

#include <cmath>
#include <numbers>

#include <rncg/density_grid.hpp>
#include <rncg/equilibrium.hpp>
#include <rncg/errors.hpp>

#include "oracles.hpp"

using namespace rncg;

namespace {

const double kGc = -5.0 * std::numbers::sqrt2 / 2.0;

/// Frozen high-precision values (30-digit arithmetic, independent of the library).
constexpr double kG0EndpointSquared = 0.161177358699947782038481923736;
constexpr double kG0SecondMoment = 0.194674063847655252887356190197;
constexpr double kG0FourthMoment = 0.0681530132975585691135985257574;
constexpr double kG0SixthMoment = 0.0287670798687652916944572100339;
constexpr double kCouplingAt03 = 1.95028177777777777777777777778;

double quad_moment(const EquilibriumMeasure& mu, int k) {
  double sum = 0.0;
  for (const Interval& cut : mu.support()) {
    sum += oracle::simpson_sqrt_edges([&](double x) { return std::pow(x, k) * density(mu, x); }, cut.lo, cut.hi,
                                      4000);
  }
  return sum;
}

}  // namespace

TEST_CASE("critical constants") {
  const CriticalPoint c = critical_constants();
  CHECK(std::abs(c.g_c - kGc) <= 1e-15);
  CHECK(std::abs(c.g_c + 3.5355339059) < 1e-10);
  CHECK(std::abs(c.a_c - std::pow(8.0, -0.25)) <= 1e-16);
  CHECK(std::abs(c.a_c - 0.5946035575) < 1e-10);
  CHECK(std::abs(coupling_from_endpoint(c.a_c) - c.g_c) <= 1e-12);

  const CriticalPoint s = critical_constants(12.0);
  CHECK(std::abs(s.g_c + 4.0 * std::numbers::sqrt2) <= 1e-14);
  CHECK(std::abs(coupling_from_endpoint(s.a_c, 12.0) - s.g_c) <= 1e-12);
}

TEST_CASE("coupling from endpoint") {
  CHECK(std::abs(coupling_from_endpoint(0.3) - kCouplingAt03) <= 1e-14);
  CHECK(coupling_from_endpoint(1e-4) > 1e6);
  CHECK_THROWS_AS(coupling_from_endpoint(0.0), DomainError);
  CHECK_THROWS_AS(coupling_from_endpoint(-1.0), DomainError);
  double prev = coupling_from_endpoint(0.05);
  for (double a = 0.1; a < 3.0; a += 0.05) {
    const double g = coupling_from_endpoint(a);
    CHECK(g < prev);
    prev = g;
  }
}

TEST_CASE("one-cut endpoint solve") {
  CHECK(std::abs(solve_endpoint_one_cut(kGc, 1e-12) - std::pow(8.0, -0.25)) <= 1e-12);

  // Brute-force oracle: 96 u^2 + 36 u - 1 = 0 in u = a^4, by bisection.
  const double u = oracle::bisect([](double v) { return 96.0 * v * v + 36.0 * v - 1.0; }, 0.0, 1.0);
  const double a0 = solve_endpoint_one_cut(0.0, 1e-12);
  CHECK(std::abs(96.0 * std::pow(a0, 8) + 36.0 * std::pow(a0, 4) - 1.0) < 1e-12);
  CHECK(std::abs(a0 * a0 - std::sqrt(u)) <= 1e-13);
  CHECK(std::abs(a0 * a0 - kG0EndpointSquared) <= 1e-13);
  CHECK(std::abs(a0 * a0 - 0.161178) < 1e-6);

  CHECK(std::abs(solve_endpoint_one_cut(kCouplingAt03, 1e-12) - 0.3) <= 1e-12);
  CHECK(std::abs(solve_endpoint_one_cut(1.95027, 1e-12) - 0.3) < 1e-6);
  CHECK_THROWS_AS(solve_endpoint_one_cut(0.0, 0.0), DomainError);

  double prev = solve_endpoint_one_cut(-8.0);
  for (double g = -7.5; g <= 4.0; g += 0.5) {
    const double a = solve_endpoint_one_cut(g);
    CHECK(a < prev);
    prev = a;
  }
}

TEST_CASE("two-cut endpoints") {
  const auto [a, b] = endpoints_two_cut(-5.0);
  CHECK(std::abs(a * a - (1.0 + std::numbers::sqrt2 / 2)) <= 1e-12);
  CHECK(std::abs(b * b - (1.0 - std::numbers::sqrt2 / 2)) <= 1e-12);
  CHECK(std::abs(a * a - 1.7071068) < 1e-7);
  CHECK(std::abs(b * b - 0.2928932) < 1e-7);
  const auto [ac, bc] = endpoints_two_cut(kGc);
  CHECK(bc == 0.0);
  CHECK(std::abs(ac * ac - std::numbers::sqrt2) <= 1e-15);
  CHECK(std::abs(ac - 2.0 * critical_constants().a_c) <= 1e-15);
  CHECK_THROWS_AS(endpoints_two_cut(0.0), DomainError);

  const auto [sa, sb] = endpoints_two_cut(-8.0, 12.0);
  CHECK(std::abs(sa * sa - (1.0 + std::numbers::sqrt2 / 2)) <= 1e-12);
  CHECK(std::abs(sb * sb - (1.0 - std::numbers::sqrt2 / 2)) <= 1e-12);
}

TEST_CASE("phase classification") {
  CHECK(classify_phase(0.0) == Phase::OneCut);
  CHECK(classify_phase(-5.0) == Phase::TwoCut);
  CHECK(classify_phase(kGc) == Phase::Critical);
  CHECK(classify_phase(kGc + 1e-13) == Phase::OneCut);
  CHECK(classify_phase(-5.0, 12.0) == Phase::OneCut);
}

TEST_CASE("solve") {
  const EquilibriumMeasure g0 = solve(0.0);
  CHECK(g0.phase == Phase::OneCut);
  CHECK(std::abs(g0.a * g0.a - kG0EndpointSquared) <= 1e-13);
  CHECK(std::abs(moment(g0, 2) - kG0SecondMoment) <= 1e-13);
  CHECK(std::abs(moment(g0, 2) - (8.0 * std::pow(g0.a, 6) + g0.a * g0.a)) <= 1e-14);
  CHECK(std::abs(g0.A - (2.0 * 0.0 + 6.0 * moment(g0, 2))) <= 1e-12);
  CHECK(g0.B == 4.0);

  const EquilibriumMeasure g5 = solve(-5.0);
  CHECK(g5.phase == Phase::TwoCut);
  CHECK(std::abs(moment(g5, 2) - 1.0) <= 1e-12);
  CHECK(std::abs(g5.norm_coeff - 4.0 / std::numbers::pi) <= 1e-15);
  CHECK(std::abs(g5.A - (2.0 * -5.0 + 6.0 * 1.0)) <= 1e-12);

  ModelSpec s01;
  s01.kind = ModelKind::TypeZeroOne;
  const EquilibriumMeasure other = solve(-5.0, s01);
  CHECK(other.a == g5.a);
  CHECK(other.b == g5.b);

  ModelSpec sym;
  sym.variant = SaddleVariant::SymmetrizedSaddle;
  const EquilibriumMeasure s8 = solve(-8.0, sym);
  CHECK(s8.phase == Phase::TwoCut);
  CHECK(std::abs(moment(s8, 2) - 1.0) <= 1e-12);
  CHECK(solve(-5.0, sym).phase == Phase::OneCut);
  CHECK(std::abs(moment(solve(0.0, sym), 2) - (8.0 * std::pow(solve(0.0, sym).a, 6) + std::pow(solve(0.0, sym).a, 2))) <=
        1e-14);

  // One-cut branch continued below g_c is available only on request and is flagged.
  SolveOptions opt;
  opt.one_cut_override = true;
  const EquilibriumMeasure dip = solve(-5.0, 6.0, opt);
  CHECK(dip.shape == CutShape::OneCut);
  CHECK_FALSE(dip.nonnegative);
  CHECK(density(dip, 0.0) < 0.0);
  CHECK(solve(-5.0).nonnegative);
}

TEST_CASE("density values") {
  CHECK(std::abs(density(solve_one_cut(kGc), 0.0)) <= 1e-14);
  const EquilibriumMeasure g5 = solve(-5.0);
  CHECK(density(g5, g5.a) == 0.0);
  CHECK(density(g5, -g5.a) == 0.0);
  CHECK(density(g5, g5.b) == 0.0);
  CHECK(density(g5, 0.0) == 0.0);
  CHECK(std::abs(density(g5, 1.0) - 2.0 * std::numbers::sqrt2 / std::numbers::pi) <= 1e-15);
  CHECK(std::abs(density(g5, 1.0) - 0.900316) < 1e-6);
  CHECK(density(solve(0.0), 5.0) == 0.0);
}

TEST_CASE("unit mass across both phases") {
  for (int i = 0; i < 60; ++i) {
    const double g = -8.0 + 12.0 * i / 59.0;
    for (double c : {6.0, 12.0}) {
      const EquilibriumMeasure mu = solve(g, c);
      CHECK(std::abs(total_mass(mu) - 1.0) <= 1e-10);
      double mass = 0.0;
      for (const Interval& cut : mu.support()) {
        mass += oracle::simpson_sqrt_edges([&](double x) { return density(mu, x); }, cut.lo, cut.hi, 2000);
      }
      CHECK(std::abs(mass - 1.0) <= 1e-10);
    }
  }
}

TEST_CASE("nonnegativity on a fine grid") {
  for (double g : {4.0, 1.0, 0.0, -2.0, -3.5, kGc, -4.0, -6.0, -8.0}) {
    const EquilibriumMeasure mu = solve(g);
    for (double x : uniform_abscissae(-1.1 * mu.outer_edge(), 1.1 * mu.outer_edge(), 10000)) {
      CHECK(density(mu, x) >= -1e-14);
    }
  }
}

TEST_CASE("moments") {
  const EquilibriumMeasure g0 = solve(0.0);
  CHECK(moment(g0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(moment(g0, 3) == 0.0);
  CHECK(moment(solve(-5.0), 5) == 0.0);
  CHECK(std::abs(moment(g0, 4) - kG0FourthMoment) <= 1e-14);
  CHECK(std::abs(moment(g0, 4) - 2.0 * (12.0 * std::pow(g0.a, 8) + std::pow(g0.a, 4))) <= 1e-14);
  CHECK(std::abs(moment(g0, 6) - kG0SixthMoment) <= 1e-14);

  for (double g : {0.0, 1.0, 2.5, -2.0, -5.0, -7.0}) {
    const EquilibriumMeasure mu = solve(g);
    for (int k : {0, 2, 4, 6}) {
      CHECK(std::abs(moment(mu, k) - quad_moment(mu, k)) <= 1e-9);
      CHECK(std::abs(moment(mu, k) - moment_quadrature(mu, k, 512)) <= 1e-12);
      if (mu.shape == CutShape::OneCut) CHECK(std::abs(moment(mu, k) - catalan_moment(mu.a, mu.B, k)) <= 1e-12);
    }
  }
  const EquilibriumMeasure g5 = solve(-5.0);
  CHECK(std::abs(moment(g5, 2) - 1.0) <= 1e-12);
  CHECK(std::abs(moment(g5, 4) - 1.125) <= 1e-12);
  CHECK(std::abs(moment(g5, 6) - 1.375) <= 1e-12);
  CHECK(std::abs(moment(g5, 2) + g5.A / g5.B) <= 1e-12);
  CHECK(catalan_number(0) == 1.0);
  CHECK(catalan_number(5) == 42.0);
}

TEST_CASE("continuity at the critical coupling") {
  const EquilibriumMeasure one = solve_one_cut(kGc);
  const EquilibriumMeasure two = solve_two_cut(kGc);
  CHECK(std::abs(2.0 * critical_constants().a_c - std::pow(2.0, 0.25)) <= 1e-15);
  CHECK(std::abs(two.a - one.outer_edge()) <= 1e-15);
  double sup = 0.0;
  double closed = 0.0;
  for (double x : uniform_abscissae(-one.outer_edge(), one.outer_edge(), 10000)) {
    const double ref = 4.0 / std::numbers::pi * x * x * std::sqrt(std::max(0.0, std::numbers::sqrt2 - x * x));
    sup = std::max(sup, std::abs(density(one, x) - density(two, x)));
    closed = std::max({closed, std::abs(density(one, x) - ref), std::abs(density(two, x) - ref)});
  }
  CHECK(sup <= 1e-8);
  CHECK(closed <= 1e-6);
  const EquilibriumMeasure via_solve = solve(kGc);
  CHECK(via_solve.phase == Phase::Critical);
}

TEST_CASE("square-root vanishing at the edges") {
  const EquilibriumMeasure g0 = solve(0.0);
  const double e = g0.outer_edge();
  const double r1 = density(g0, e - 1e-6) / std::sqrt(1e-6);
  const double r2 = density(g0, e - 1e-8) / std::sqrt(1e-8);
  CHECK(std::abs(r1 / r2 - 1.0) < 1e-3);
  const EquilibriumMeasure g5 = solve(-5.0);
  for (double edge : {g5.a, g5.b}) {
    const double side = edge == g5.a ? -1.0 : 1.0;
    const double q1 = density(g5, edge + side * 1e-6) / std::sqrt(1e-6);
    const double q2 = density(g5, edge + side * 1e-8) / std::sqrt(1e-8);
    CHECK(std::abs(q1 / q2 - 1.0) < 1e-3);
  }
}

TEST_CASE("general one-cut density") {
  const double a = 0.7;
  CHECK(std::abs(general_one_cut_density(0.5 / (a * a), 0.0, a, 0.0) - 1.0 / (std::numbers::pi * a)) <= 1e-15);
  const EquilibriumMeasure g0 = solve(0.0);
  for (double x : uniform_abscissae(-0.8, 0.8, 33)) {
    CHECK(std::abs(general_one_cut_density(g0.A, g0.B, g0.a, x) - density(g0, x)) <= 1e-15);
  }
  for (double g : {3.0, 0.0, -2.0, -3.0}) {
    const EquilibriumMeasure mu = solve(g);
    CHECK(plemelj_side_condition_residual(mu.A, mu.B, mu.a) <= 1e-10);
  }
  CHECK_THROWS_AS(general_one_cut_density(-10.0, 4.0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(general_one_cut_density(1.0, 4.0, 0.0, 0.0), DomainError);
}
