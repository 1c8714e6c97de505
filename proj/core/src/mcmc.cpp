#include "rncg/mcmc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "rncg/equilibrium.hpp"
#include "rncg/errors.hpp"

namespace rncg {

void SamplerConfig::validate() const {
  spec.validate();
  if (N < 2) throw ValidationError("sampler needs N >= 2");
  if (sweeps < 1 || burnin < 0 || burnin >= sweeps) throw ValidationError("sampler needs 0 <= burnin < sweeps");
  if (thin < 1) throw ValidationError("thin must be >= 1");
  if (bins < 1 || dirac_bins < 1) throw ValidationError("histograms need at least one bin");
  if (!(hist_hi > hist_lo) || !(dirac_hi > dirac_lo)) throw ValidationError("histogram range is empty");
  if (!(target_acceptance > 0.0 && target_acceptance < 1.0)) {
    throw ValidationError("target acceptance must lie in (0, 1)");
  }
}

ActionCoefficients SamplerConfig::action() const noexcept {
  return action_override ? *action_override : ActionCoefficients::from_spec(spec);
}

bool SamplerConfig::shift_invariant() const noexcept {
  return !action_override && spec.kind == ModelKind::TypeZeroOne;
}

void ChainState::refresh_power_sums() noexcept { power = power_sums(lambdas); }

double canonical_uniform(std::mt19937_64& rng) noexcept {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept {
  std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ChainState init_chain(const SamplerConfig& cfg) {
  cfg.validate();
  ChainState state;
  state.rng.seed(cfg.seed);
  const auto n = static_cast<std::size_t>(cfg.N);
  const double spacing = 2.0 / static_cast<double>(n - 1);
  const double jitter = spacing / std::sqrt(static_cast<double>(n));
  state.lambdas.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    state.lambdas[i] = -1.0 + spacing * static_cast<double>(i) + jitter * (canonical_uniform(state.rng) - 0.5);
  }
  state.step_width = 0.5 / std::sqrt(static_cast<double>(n));
  state.refresh_power_sums();
  return state;
}

double proposal_delta_action(const ChainState& state, std::size_t k, double new_value,
                             const ActionCoefficients& c) noexcept {
  const std::vector<double>& l = state.lambdas;
  const double x = l[k];
  const double y = new_value;
  const double n = static_cast<double>(l.size());

  const double x2 = x * x;
  const double y2 = y * y;
  const double d1 = y - x;
  const double d2 = y2 - x2;
  const double d3 = y2 * y - x2 * x;
  const double d4 = y2 * y2 - x2 * x2;
  const auto& p = state.power;

  const double dV = n * (c.v2 * d2 + c.v4 * d4);
  const double dU = c.u11 * d1 * (2.0 * p[0] + d1) + c.u13 * (p[0] * d3 + d1 * p[2] + d1 * d3) +
                    c.u22 * d2 * (2.0 * p[1] + d2);

  // -2 sum_j log|(y - l_j)/(x - l_j)|, accumulated as a product with the
  // binary exponent split off to stay in range.
  double mantissa = 1.0;
  long exponent = 0;
  for (std::size_t j = 0; j < l.size(); ++j) {
    if (j == k) continue;
    const double num = y - l[j];
    if (num == 0.0) return std::numeric_limits<double>::infinity();
    mantissa *= std::abs(num / (x - l[j]));
    if ((j & 15U) == 15U) {
      int e = 0;
      mantissa = std::frexp(mantissa, &e);
      exponent += e;
    }
  }
  const double log_ratio = std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
  return dV + dU - 2.0 * log_ratio;
}

int metropolis_sweep(ChainState& state, const ActionCoefficients& coeffs) {
  const std::size_t n = state.lambdas.size();
  int accepted = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double proposal = state.lambdas[k] + state.step_width * (canonical_uniform(state.rng) - 0.5);
    const double u = canonical_uniform(state.rng);
    ++state.proposed;
    const double dS = proposal_delta_action(state, k, proposal, coeffs);
    if (!(dS <= 0.0 || u < std::exp(-dS))) continue;
    const double x = state.lambdas[k];
    const double x2 = x * x;
    const double y2 = proposal * proposal;
    state.power[0] += proposal - x;
    state.power[1] += y2 - x2;
    state.power[2] += y2 * proposal - x2 * x;
    state.power[3] += y2 * y2 - x2 * x2;
    state.lambdas[k] = proposal;
    ++state.accepted;
    ++accepted;
  }
  if (++state.sweeps_done % kPowerSumRefreshInterval == 0) state.refresh_power_sums();
  return accepted;
}

ChainState metropolis_sweep(ChainState state, const ModelSpec& spec, int N) {
  if (static_cast<std::size_t>(N) != state.lambdas.size()) throw ValidationError("N does not match the chain");
  metropolis_sweep(state, ActionCoefficients::from_spec(spec));
  return state;
}

std::vector<double> dirac_spectrum(std::span<const double> lambdas, ModelKind kind) {
  const double sign = kind == ModelKind::TypeOneZero ? 1.0 : -1.0;
  std::vector<double> out;
  out.reserve(lambdas.size() * lambdas.size());
  for (double lj : lambdas) {
    for (double lk : lambdas) out.push_back(lj + sign * lk);
  }
  return out;
}

std::vector<double> dirac_spectrum(const ChainState& state, const ModelSpec& spec) {
  return dirac_spectrum(state.lambdas, spec.kind);
}

std::pair<double, double> batch_means(std::span<const double> series, int batches) {
  if (series.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(series.size());
  const std::size_t per = series.size() / static_cast<std::size_t>(std::max(batches, 2));
  if (per == 0) return {mean, 0.0};
  const std::size_t nb = series.size() / per;
  std::vector<double> means(nb, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t i = 0; i < per; ++i) means[b] += series[b * per + i];
    means[b] /= static_cast<double>(per);
  }
  double grand = 0.0;
  for (double m : means) grand += m;
  grand /= static_cast<double>(nb);
  double var = 0.0;
  for (double m : means) var += (m - grand) * (m - grand);
  var /= static_cast<double>(nb - 1);
  return {mean, std::sqrt(var / static_cast<double>(nb))};
}

RunResult run(const SamplerConfig& cfg) {
  cfg.validate();
  const ActionCoefficients coeffs = cfg.action();
  RunResult result{SpectralHistogram::uniform(cfg.hist_lo, cfg.hist_hi, cfg.bins), std::nullopt, {}, init_chain(cfg)};
  if (cfg.record_dirac) result.dirac = SpectralHistogram::uniform(cfg.dirac_lo, cfg.dirac_hi, cfg.dirac_bins);
  ChainState& state = result.final_state;
  const double n = static_cast<double>(cfg.N);

  // Robbins-Monro style multiplicative adaptation, burn-in only.
  for (int sweep = 0; sweep < cfg.burnin; ++sweep) {
    const double rate = metropolis_sweep(state, coeffs) / n;
    const double gain = 1.0 / std::sqrt(1.0 + sweep / 10.0);
    state.step_width = std::clamp(state.step_width * std::exp(gain * (rate - cfg.target_acceptance)), 1e-8, 10.0);
  }

  const std::uint64_t accepted_before = state.accepted;
  const std::uint64_t proposed_before = state.proposed;
  std::vector<double> m1s;
  std::vector<double> m2s;
  std::vector<double> m3s;
  const bool center = cfg.center_flat_direction && cfg.shift_invariant();
  for (int sweep = cfg.burnin; sweep < cfg.sweeps; ++sweep) {
    metropolis_sweep(state, coeffs);
    if ((sweep - cfg.burnin + 1) % cfg.thin != 0) continue;
    const double mean = state.power[0] / n;
    const double shift = center ? mean : 0.0;
    for (double x : state.lambdas) result.eigenvalues.add(x - shift);
    if (result.dirac) {
      for (double w : dirac_spectrum(state.lambdas, cfg.spec.kind)) result.dirac->add(w);
    }
    m1s.push_back(mean);
    if (center) {
      const double second = state.power[1] / n;
      m2s.push_back(second - mean * mean);
      m3s.push_back(state.power[2] / n - 3.0 * mean * second + 2.0 * mean * mean * mean);
    } else {
      m2s.push_back(state.power[1] / n);
      m3s.push_back(state.power[2] / n);
    }
  }
  state.refresh_power_sums();

  RunDiagnostics& d = result.diagnostics;
  const auto proposed = state.proposed - proposed_before;
  d.acceptance_rate = proposed == 0 ? 0.0 : static_cast<double>(state.accepted - accepted_before) / proposed;
  d.step_width = state.step_width;
  d.recorded_configs = m2s.size();
  std::tie(d.m1, d.m1_stderr) = batch_means(m1s);
  std::tie(d.m2, d.m2_stderr) = batch_means(m2s);
  std::tie(d.m3, d.m3_stderr) = batch_means(m3s);
  d.centered = center;
  d.order_parameter = result.eigenvalues.total == 0 ? 0.0 : order_parameter(result.eigenvalues);
  return result;
}

SweepReport sweep(std::span<const double> g_values, const SamplerConfig& tmpl, unsigned threads) {
  tmpl.validate();
  SweepReport report;
  report.rows.resize(g_values.size());
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(g_values.size(), 1)));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < g_values.size(); i = next++) {
      SamplerConfig cfg = tmpl;
      cfg.spec.g = g_values[i];
      cfg.seed = derive_seed(tmpl.seed, i);
      const RunResult r = run(cfg);
      SweepRow& row = report.rows[i];
      row.g = g_values[i];
      row.seed = cfg.seed;
      row.order_parameter = r.diagnostics.order_parameter;
      row.m1 = r.diagnostics.m1;
      row.m1_stderr = r.diagnostics.m1_stderr;
      row.m2 = r.diagnostics.m2;
      row.m2_stderr = r.diagnostics.m2_stderr;
      row.acceptance_rate = r.diagnostics.acceptance_rate;
      row.bimodal = is_bimodal(r.eigenvalues);
      row.m2_paper = moment(solve(row.g, 6.0), 2);
      row.m2_symmetrized = moment(solve(row.g, 12.0), 2);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();

  report.g_c_paper = critical_constants(6.0).g_c;
  report.g_c_symmetrized = critical_constants(12.0).g_c;
  for (const SweepRow& row : report.rows) {
    report.paper_m2_error += (row.m2 - row.m2_paper) * (row.m2 - row.m2_paper);
    report.symmetrized_m2_error += (row.m2 - row.m2_symmetrized) * (row.m2 - row.m2_symmetrized);
  }
  report.better_variant = report.paper_m2_error <= report.symmetrized_m2_error ? "paper" : "symmetrized";

  // Steepest increase of the order parameter with g, i.e. fastest drop as g decreases.
  std::vector<std::size_t> order(report.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t l, std::size_t r) { return report.rows[l].g < report.rows[r].g; });
  if (order.size() == 1) {
    report.transition_estimate = report.rows[0].g;
    report.transition_lo = report.transition_hi = report.rows[0].g;
  }
  double steepest = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < order.size(); ++i) {
    const SweepRow& lo = report.rows[order[i - 1]];
    const SweepRow& hi = report.rows[order[i]];
    if (hi.g == lo.g) continue;
    const double slope = (hi.order_parameter - lo.order_parameter) / (hi.g - lo.g);
    if (slope > steepest) {
      steepest = slope;
      report.transition_estimate = 0.5 * (lo.g + hi.g);
      report.transition_lo = lo.g;
      report.transition_hi = hi.g;
    }
  }

  report.crossing_estimate = std::numeric_limits<double>::quiet_NaN();
  if (!order.empty()) {
    const double threshold = 0.1 * report.rows[order.back()].order_parameter;
    for (std::size_t i = order.size() - 1; i > 0; --i) {
      const SweepRow& lo = report.rows[order[i - 1]];
      const SweepRow& hi = report.rows[order[i]];
      if (lo.order_parameter <= threshold && hi.order_parameter > threshold) {
        const double t = (threshold - lo.order_parameter) / (hi.order_parameter - lo.order_parameter);
        report.crossing_estimate = lo.g + t * (hi.g - lo.g);
        break;
      }
    }
  }
  return report;
}

}  // namespace rncg
