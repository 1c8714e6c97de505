#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cli/manifest.hpp"

namespace rncg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;

/// Where a command puts its files: <dir>/<stem><suffix>.
class OutputSet {
 public:
  OutputSet(std::filesystem::path dir, std::string stem);

  void write(const std::string& suffix, std::string_view contents);
  std::filesystem::path path(const std::string& suffix) const;

  const std::filesystem::path& dir() const noexcept { return dir_; }
  const std::string& stem() const noexcept { return stem_; }
  const std::vector<std::string>& written() const noexcept { return written_; }

 private:
  std::filesystem::path dir_;
  std::string stem_;
  std::vector<std::string> written_;
};

struct Outcome {
  int exit_code = kExitOk;
  /// Printed to stdout with --json.
  Json summary = Json::object();
  /// Printed to stdout otherwise.
  std::string text;
  std::optional<std::uint64_t> seed;
};

struct SolveParams {
  double g = 0.0;
  std::string variant = "paper";
  bool one_cut = false;
};

struct DensityParams {
  double g = 0.0;
  std::string variant = "paper";
  std::optional<double> xmin;
  std::optional<double> xmax;
  int points = 1001;
  std::string format = "both";
  bool one_cut = false;
};

struct DosParams {
  double g = 0.0;
  std::string variant = "paper";
  int points = 2048;
  std::string format = "both";
  std::uint64_t mc_samples = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
};

struct SampleParams {
  std::string model = "10";
  int N = 32;
  double g = -1.0;
  int sweeps = 20000;
  int burnin = 2000;
  std::uint64_t seed = 1;
  int thin = 1;
  int bins = 200;
  double hist_lo = -3.0;
  double hist_hi = 3.0;
  double target_acceptance = 0.4;
  bool dirac = false;
  bool gaussian = false;
  std::string format = "both";
};

struct SweepParams {
  double gmin = -6.0;
  double gmax = -1.0;
  int steps = 11;
  std::string model = "10";
  int N = 32;
  int sweeps = 20000;
  int burnin = 2000;
  std::uint64_t seed = 1;
  int thin = 1;
  int bins = 200;
  unsigned threads = 0;
  std::string format = "both";
};

struct CheckParams {
  double g = 0.0;
  std::string variant = "paper";
  double tol_scale = 1.0;
};

Outcome cmd_solve(const SolveParams& p, OutputSet& out);
Outcome cmd_density(const DensityParams& p, OutputSet& out);
Outcome cmd_dos(const DosParams& p, OutputSet& out);
Outcome cmd_sample(const SampleParams& p, OutputSet& out);
Outcome cmd_sweep(const SweepParams& p, OutputSet& out);
Outcome cmd_check(const CheckParams& p, OutputSet& out);

}  // namespace rncg::cli
