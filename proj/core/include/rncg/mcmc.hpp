#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "rncg/histogram.hpp"
#include "rncg/model.hpp"

namespace rncg {

struct SamplerConfig {
  int N = 32;
  ModelSpec spec;
  /// Total sweeps including burn-in.
  int sweeps = 20000;
  int burnin = 2000;
  std::uint64_t seed = 1;
  double target_acceptance = 0.4;
  int thin = 1;

  /// Replaces the model action, e.g. ActionCoefficients::gaussian().
  std::optional<ActionCoefficients> action_override;

  double hist_lo = -3.0;
  double hist_hi = 3.0;
  int bins = 200;

  /// Also histogram the N^2 Dirac eigenvalues of every recorded configuration.
  bool record_dirac = false;
  double dirac_lo = -6.0;
  double dirac_hi = 6.0;
  int dirac_bins = 400;

  /// The (0,1) action only depends on eigenvalue differences, so tr H performs
  /// an unbounded random walk. When set, such chains record eigenvalues
  /// relative to their mean; the chain itself is unchanged.
  bool center_flat_direction = true;

  /// Throws ValidationError on N < 2, burnin >= sweeps, thin < 1, bins < 1 or
  /// target_acceptance outside (0, 1).
  void validate() const;
  ActionCoefficients action() const noexcept;
  /// True when the action is invariant under a common shift of all eigenvalues.
  bool shift_invariant() const noexcept;
};

/// One Metropolis chain over the eigenvalues of H.
struct ChainState {
  std::vector<double> lambdas;
  PowerSums power{};
  std::mt19937_64 rng;
  std::uint64_t accepted = 0;
  std::uint64_t proposed = 0;
  std::uint64_t sweeps_done = 0;
  double step_width = 0.1;

  /// Recompute the cached power sums from the eigenvalues.
  void refresh_power_sums() noexcept;
};

/// Sweeps between full recomputations of the cached power sums.
inline constexpr std::uint64_t kPowerSumRefreshInterval = 10000;

/// Uniform double in [0, 1) from the top 53 bits of the generator.
double canonical_uniform(std::mt19937_64& rng) noexcept;

/// Evenly spaced eigenvalues on [-1, 1] with seeded jitter of relative size 1/sqrt(N).
ChainState init_chain(const SamplerConfig& cfg);

/// Exact action change for moving eigenvalue k to new_value, O(N).
/// Returns +infinity if new_value coincides with another eigenvalue.
double proposal_delta_action(const ChainState& state, std::size_t k, double new_value,
                             const ActionCoefficients& coeffs) noexcept;

/// N single-site random-walk proposals accepted with probability min(1, exp(-dS)).
/// Returns the number accepted.
int metropolis_sweep(ChainState& state, const ActionCoefficients& coeffs);
ChainState metropolis_sweep(ChainState state, const ModelSpec& spec, int N);

struct RunDiagnostics {
  double acceptance_rate = 0.0;  // measurement phase only
  double step_width = 0.0;
  std::uint64_t recorded_configs = 0;
  double m1 = 0.0, m1_stderr = 0.0;
  double m2 = 0.0, m2_stderr = 0.0;
  double m3 = 0.0, m3_stderr = 0.0;
  double order_parameter = 0.0;
  /// Whether recorded eigenvalues were centred (see center_flat_direction).
  bool centered = false;
};

struct RunResult {
  SpectralHistogram eigenvalues;
  std::optional<SpectralHistogram> dirac;
  RunDiagnostics diagnostics;
  ChainState final_state;
};

/// Burn-in with step-width adaptation towards target_acceptance, then
/// measurement sweeps with the step frozen and every `thin`-th configuration
/// recorded. Deterministic for a fixed config.
RunResult run(const SamplerConfig& cfg);

/// Dirac eigenvalues l_j + l_k for (1,0) and l_j - l_k for (0,1), all N^2 pairs.
std::vector<double> dirac_spectrum(std::span<const double> lambdas, ModelKind kind);
std::vector<double> dirac_spectrum(const ChainState& state, const ModelSpec& spec);

/// Mean and batch-means standard error of a correlated series.
std::pair<double, double> batch_means(std::span<const double> series, int batches = 20);

struct SweepRow {
  double g = 0.0;
  std::uint64_t seed = 0;
  double order_parameter = 0.0;
  double m1 = 0.0;
  double m1_stderr = 0.0;
  double m2 = 0.0;
  double m2_stderr = 0.0;
  double m2_paper = 0.0;        // large-N prediction, c_sym = 6
  double m2_symmetrized = 0.0;  // large-N prediction, c_sym = 12
  double acceptance_rate = 0.0;
  bool bimodal = false;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  /// Midpoint of the g-interval where the order parameter falls fastest as g decreases.
  double transition_estimate = 0.0;
  /// The g-interval containing that drop.
  double transition_lo = 0.0;
  double transition_hi = 0.0;
  /// Largest g at which the order parameter falls to 10% of its value at the
  /// largest g (linear interpolation between rows); NaN if it never does.
  double crossing_estimate = 0.0;
  double g_c_paper = 0.0;
  double g_c_symmetrized = 0.0;
  /// Sum over rows of (m2 - prediction)^2 for each variant.
  double paper_m2_error = 0.0;
  double symmetrized_m2_error = 0.0;
  std::string better_variant;
};

/// Independent chain per g (seed derived from the template seed and the row
/// index), run on up to `threads` workers and merged in input order.
SweepReport sweep(std::span<const double> g_values, const SamplerConfig& tmpl, unsigned threads = 0);

/// splitmix64 step used to derive per-chain seeds.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) noexcept;

}  // namespace rncg
