#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <rncg/dos.hpp>
#include <rncg/equilibrium.hpp>
#include <rncg/errors.hpp>
#include <rncg/mcmc.hpp>

#include "oracles.hpp"

using namespace rncg;

namespace {

SamplerConfig small_config(double g, ModelKind kind = ModelKind::TypeOneZero) {
  SamplerConfig cfg;
  cfg.N = 16;
  cfg.spec.g = g;
  cfg.spec.kind = kind;
  cfg.sweeps = 4000;
  cfg.burnin = 500;
  cfg.seed = 99;
  return cfg;
}

double exact_action(const std::vector<double>& l, const ActionCoefficients& c) {
  return oracle::direct_action(l, c.v2, c.v4, c.u11, c.u13, c.u22);
}

std::function<double(double)> grid_cdf(const DensityGrid& grid) {
  const std::vector<double> cdf = grid.cdf();
  return [xs = grid.xs, cdf](double x) {
    if (x <= xs.front()) return 0.0;
    if (x >= xs.back()) return 1.0;
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return cdf[i - 1] + t * (cdf[i] - cdf[i - 1]);
  };
}

}  // namespace

TEST_CASE("configuration validation") {
  SamplerConfig cfg = small_config(-1.0);
  CHECK_NOTHROW(cfg.validate());
  cfg.N = 1;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  CHECK_THROWS_AS(init_chain(cfg), ValidationError);
  cfg = small_config(-1.0);
  cfg.burnin = cfg.sweeps;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = small_config(-1.0);
  cfg.thin = 0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  cfg = small_config(-1.0);
  cfg.target_acceptance = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

TEST_CASE("chain initialization") {
  SamplerConfig cfg = small_config(-1.0);
  cfg.N = 2;
  const ChainState a = init_chain(cfg);
  const ChainState b = init_chain(cfg);
  REQUIRE(a.lambdas.size() == 2);
  CHECK(a.lambdas[0] != a.lambdas[1]);
  CHECK(a.lambdas == b.lambdas);
  cfg.seed = 100;
  CHECK(init_chain(cfg).lambdas != a.lambdas);

  cfg.N = 64;
  const ChainState c = init_chain(cfg);
  std::vector<double> sorted = c.lambdas;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(sorted.front() > -1.5);
  CHECK(sorted.back() < 1.5);
  const PowerSums fresh = power_sums(c.lambdas);
  for (int m = 0; m < 4; ++m) CHECK(c.power[m] == doctest::Approx(fresh[m]).epsilon(1e-12));
}

TEST_CASE("action differences match the exact action") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (ModelKind kind : {ModelKind::TypeOneZero, ModelKind::TypeZeroOne}) {
    for (double g : {-5.0, -1.0, 0.5}) {
      ModelSpec spec;
      spec.kind = kind;
      spec.g = g;
      const ActionCoefficients coeffs = ActionCoefficients::from_spec(spec);
      for (int n : {2, 5, 16}) {
        SamplerConfig cfg = small_config(g, kind);
        cfg.N = n;
        cfg.seed = static_cast<std::uint64_t>(n) * 31u;
        ChainState state = init_chain(cfg);
        for (int trial = 0; trial < 10; ++trial) {
          const std::size_t k = static_cast<std::size_t>(trial % n);
          const double proposal = u(rng);
          std::vector<double> moved = state.lambdas;
          moved[k] = proposal;
          const double exact = exact_action(moved, coeffs) - exact_action(state.lambdas, coeffs);
          const double fast = proposal_delta_action(state, k, proposal, coeffs);
          CHECK(std::abs(fast - exact) <= 1e-9 * std::max(1.0, std::abs(exact)));
          CHECK(std::abs(exact - (action_eigenvalues(moved, coeffs) - action_eigenvalues(state.lambdas, coeffs))) <=
                1e-9 * std::max(1.0, std::abs(exact)));
        }
        if (n > 1) {
          CHECK(std::isinf(proposal_delta_action(state, 0, state.lambdas[1], coeffs)));
        }
      }
    }
  }
}

TEST_CASE("zero action change is always accepted") {
  SamplerConfig cfg = small_config(-1.0);
  ChainState state = init_chain(cfg);
  const std::vector<double> before = state.lambdas;
  state.step_width = 0.0;
  CHECK(metropolis_sweep(state, ActionCoefficients::from_spec(cfg.spec)) == cfg.N);
  CHECK(state.lambdas == before);
  CHECK(state.accepted == static_cast<std::uint64_t>(cfg.N));
  CHECK(state.proposed == static_cast<std::uint64_t>(cfg.N));
}

TEST_CASE("cached power sums stay coherent") {
  SamplerConfig cfg = small_config(-5.0);
  ChainState state = init_chain(cfg);
  for (int s = 0; s < 300; ++s) {
    state = metropolis_sweep(std::move(state), cfg.spec, cfg.N);
    if (s % 50 == 0 || s == 299) {
      const PowerSums fresh = power_sums(state.lambdas);
      for (int m = 0; m < 4; ++m) {
        CHECK(std::abs(state.power[m] - fresh[m]) <= 1e-9 * std::max(1.0, std::abs(fresh[m])));
      }
    }
  }
  CHECK(state.sweeps_done == 300);
}

TEST_CASE("runs are reproducible") {
  const SamplerConfig cfg = small_config(-2.0);
  const RunResult a = run(cfg);
  const RunResult b = run(cfg);
  CHECK(a.eigenvalues.counts == b.eigenvalues.counts);
  CHECK(a.diagnostics.m2 == b.diagnostics.m2);
  CHECK(a.final_state.lambdas == b.final_state.lambdas);
  SamplerConfig other = cfg;
  other.seed = 1234;
  CHECK(run(other).eigenvalues.counts != a.eigenvalues.counts);
  CHECK(a.eigenvalues.total ==
        static_cast<std::uint64_t>(cfg.N) * static_cast<std::uint64_t>(cfg.sweeps - cfg.burnin));
  CHECK(a.diagnostics.recorded_configs == static_cast<std::uint64_t>(cfg.sweeps - cfg.burnin));
}

TEST_CASE("Gaussian ensemble reproduces the semicircle") {
  SamplerConfig cfg;
  cfg.N = 32;
  cfg.sweeps = 12000;
  cfg.burnin = 2000;
  cfg.seed = 17;
  cfg.action_override = ActionCoefficients::gaussian();
  const RunResult r = run(cfg);
  const auto semicircle = measure_cdf(EquilibriumMeasure::one_cut(1.0, 0.0, std::numbers::sqrt2 / 2));
  CHECK(ks_distance(r.eigenvalues, semicircle) <= 0.05);
  CHECK(r.diagnostics.acceptance_rate >= 0.2);
  CHECK(r.diagnostics.acceptance_rate <= 0.6);
  CHECK(std::abs(r.diagnostics.m2 - 0.5) <= 0.05);
  CHECK_FALSE(r.diagnostics.centered);
}

TEST_CASE("one cut at g = -1, two cuts at g = -5") {
  SamplerConfig cfg;
  cfg.N = 32;
  cfg.sweeps = 8000;
  cfg.burnin = 1000;
  cfg.seed = 2;
  cfg.spec.g = -1.0;
  const RunResult weak = run(cfg);
  cfg.spec.g = -5.0;
  const RunResult strong = run(cfg);
  CHECK_FALSE(is_bimodal(weak.eigenvalues));
  CHECK(is_bimodal(strong.eigenvalues));
  CHECK(strong.diagnostics.order_parameter < 0.2 * weak.diagnostics.order_parameter);
  for (const RunResult* r : {&weak, &strong}) {
    CHECK(r->diagnostics.acceptance_rate >= 0.2);
    CHECK(r->diagnostics.acceptance_rate <= 0.6);
  }
}

TEST_CASE("odd moments vanish at g = -1") {
  for (ModelKind kind : {ModelKind::TypeOneZero, ModelKind::TypeZeroOne}) {
    SamplerConfig cfg = small_config(-1.0, kind);
    cfg.sweeps = 20000;
    cfg.burnin = 2000;
    const RunDiagnostics d = run(cfg).diagnostics;
    CHECK(std::abs(d.m3) <= 3.0 * d.m3_stderr);
    if (kind == ModelKind::TypeOneZero) CHECK(std::abs(d.m1) <= 3.0 * d.m1_stderr);
    CHECK(d.centered == (kind == ModelKind::TypeZeroOne));
  }
}

TEST_CASE("shift invariance of the (0,1) action") {
  SamplerConfig cfg = small_config(-1.0, ModelKind::TypeZeroOne);
  CHECK(cfg.shift_invariant());
  cfg.action_override = ActionCoefficients::gaussian();
  CHECK_FALSE(cfg.shift_invariant());
  CHECK_FALSE(small_config(-1.0).shift_invariant());

  ModelSpec spec;
  spec.kind = ModelKind::TypeZeroOne;
  spec.g = -2.0;
  const ActionCoefficients c = ActionCoefficients::from_spec(spec);
  std::vector<double> l{-0.7, 0.1, 0.4, 1.2};
  std::vector<double> shifted = l;
  for (double& x : shifted) x += 0.37;
  CHECK(std::abs(action_eigenvalues(l, c) - action_eigenvalues(shifted, c)) <= 1e-12);
}

TEST_CASE("Dirac spectrum") {
  std::vector<double> plus = dirac_spectrum(std::vector<double>{1.0, -1.0}, ModelKind::TypeOneZero);
  std::sort(plus.begin(), plus.end());
  CHECK(plus == std::vector<double>{-2.0, 0.0, 0.0, 2.0});

  const std::vector<double> l{0.3, -0.8, 1.1};
  const std::vector<double> minus = dirac_spectrum(l, ModelKind::TypeZeroOne);
  REQUIRE(minus.size() == 9);
  int zeros = 0;
  for (double w : minus) zeros += w == 0.0 ? 1 : 0;
  CHECK(zeros == 3);
  for (std::size_t j = 0; j < 3; ++j) {
    for (std::size_t k = 0; k < 3; ++k) CHECK(minus[j * 3 + k] == l[j] - l[k]);
  }
}

TEST_CASE("Dirac histogram follows the convolution density") {
  SamplerConfig cfg;
  cfg.N = 32;
  cfg.sweeps = 6000;
  cfg.burnin = 1000;
  cfg.seed = 4;
  cfg.spec.g = -1.0;
  cfg.record_dirac = true;
  const RunResult r = run(cfg);
  REQUIRE(r.dirac.has_value());
  CHECK(r.dirac->total == static_cast<std::uint64_t>(cfg.N * cfg.N) * 5000u);
  const DensityGrid rho = dos_grid(solve(-1.0, 12.0), 1024);
  CHECK(ks_distance(*r.dirac, grid_cdf(rho)) <= 0.05);
}

TEST_CASE("batch means") {
  const std::vector<double> flat(100, 2.5);
  const auto [mean, err] = batch_means(flat);
  CHECK(mean == 2.5);
  CHECK(err == 0.0);
  std::vector<double> alternating;
  for (int i = 0; i < 400; ++i) alternating.push_back(i % 2 == 0 ? 1.0 : -1.0);
  CHECK(batch_means(alternating).first == doctest::Approx(0.0));
}

TEST_CASE("sweeps") {
  SamplerConfig tmpl = small_config(0.0);
  tmpl.sweeps = 1500;
  tmpl.burnin = 300;
  const std::vector<double> one{-1.0};
  const SweepReport single = sweep(one, tmpl);
  REQUIRE(single.rows.size() == 1);
  CHECK(single.rows[0].g == -1.0);
  CHECK(single.rows[0].seed == derive_seed(tmpl.seed, 0));

  const std::vector<double> gs{-6.0, -4.5, -3.0, -1.5};
  const SweepReport serial = sweep(gs, tmpl, 1);
  const SweepReport parallel = sweep(gs, tmpl, 4);
  REQUIRE(serial.rows.size() == 4);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    CHECK(serial.rows[i].g == gs[i]);
    CHECK(serial.rows[i].m2 == parallel.rows[i].m2);
    CHECK(serial.rows[i].order_parameter == parallel.rows[i].order_parameter);
  }
  CHECK(serial.g_c_paper == doctest::Approx(-5.0 * std::numbers::sqrt2 / 2));
  CHECK(serial.g_c_symmetrized == doctest::Approx(-4.0 * std::numbers::sqrt2));
  CHECK(serial.rows[0].m2_paper == doctest::Approx(6.0 / 5.0));
  CHECK(serial.rows[0].m2_symmetrized == doctest::Approx(6.0 / 8.0));
  CHECK((serial.better_variant == "paper" || serial.better_variant == "symmetrized"));

  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
}
