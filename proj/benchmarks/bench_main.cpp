#include <benchmark/benchmark.h>

#include <numbers>

#include <rncg/dos.hpp>
#include <rncg/equilibrium.hpp>
#include <rncg/mcmc.hpp>
#include <rncg/saddle.hpp>

namespace {

void BM_Solve(benchmark::State& state) {
  const double g = state.range(0) == 0 ? 0.0 : -5.0;
  for (auto _ : state) benchmark::DoNotOptimize(rncg::solve(g));
}
BENCHMARK(BM_Solve)->Arg(0)->Arg(1);

void BM_SaddleResidual(benchmark::State& state) {
  const rncg::EquilibriumMeasure mu = rncg::solve(-5.0);
  rncg::ModelSpec spec;
  spec.g = -5.0;
  for (auto _ : state) benchmark::DoNotOptimize(rncg::saddle_residual(mu, spec, 1.0));
}
BENCHMARK(BM_SaddleResidual);

void BM_DosGrid(benchmark::State& state) {
  const rncg::EquilibriumMeasure mu = rncg::solve(-5.0 * std::numbers::sqrt2 / 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(rncg::dos_grid(mu, static_cast<int>(state.range(0)), 1));
}
BENCHMARK(BM_DosGrid)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_Energy(benchmark::State& state) {
  const rncg::EquilibriumMeasure mu = rncg::solve(0.0, 12.0);
  rncg::ModelSpec spec;
  const auto coeffs = rncg::ActionCoefficients::from_spec(spec);
  const auto support = mu.support();
  const auto f = [&](double x) { return rncg::density(mu, x); };
  for (auto _ : state) {
    benchmark::DoNotOptimize(rncg::energy(f, support, coeffs, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_Energy)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

/// One Metropolis sweep (N proposals) of the (1,0) model at g = -5.
void BM_MetropolisSweep(benchmark::State& state) {
  rncg::SamplerConfig cfg;
  cfg.N = static_cast<int>(state.range(0));
  cfg.spec.g = -5.0;
  rncg::ChainState chain = rncg::init_chain(cfg);
  const rncg::ActionCoefficients coeffs = cfg.action();
  for (auto _ : state) benchmark::DoNotOptimize(rncg::metropolis_sweep(chain, coeffs));
  state.SetItemsProcessed(state.iterations() * cfg.N);
}
BENCHMARK(BM_MetropolisSweep)->Arg(16)->Arg(32)->Arg(64)->Arg(128);

}  // namespace
BENCHMARK_MAIN();
