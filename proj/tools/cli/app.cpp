#include "cli/app.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <type_traits>

#include <CLI11.hpp>
#include <rncg/errors.hpp>
#include <rncg/version.hpp>

#include "cli/commands.hpp"
#include "cli/format.hpp"
#include "cli/manifest.hpp"

namespace rncg::cli {

namespace {

template <class T>
struct is_optional : std::false_type {};
template <class T>
struct is_optional<std::optional<T>> : std::true_type {};

/// Options of one subcommand together with getters for their parsed values,
/// so the full parameter map (defaults included) can go into the manifest.
class ParamSet {
 public:
  explicit ParamSet(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* option(const std::string& name, T& var, const std::string& help) {
    CLI::Option* opt = app_->add_option("--" + name, var, help);
    if constexpr (!is_optional<T>::value) opt->capture_default_str();
    getters_.emplace_back(name, [&var]() -> Json {
      if constexpr (is_optional<T>::value) {
        return var ? Json(*var) : Json(nullptr);
      } else {
        return Json(var);
      }
    });
    return opt;
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& help) {
    getters_.emplace_back(name, [&var]() { return Json(var); });
    return app_->add_flag("--" + name, var, help);
  }

  Json values() const {
    Json j = Json::object();
    for (const auto& [name, get] : getters_) j[name] = get();
    return j;
  }

  CLI::App* app() const noexcept { return app_; }

 private:
  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<Json()>>> getters_;
};

struct Common {
  std::string out_dir;
  std::string stem;
  bool json = false;
};

void add_common(CLI::App* sub, Common& common) {
  const char* env = std::getenv(kOutDirEnv);
  common.out_dir = env && *env ? env : ".";
  sub->add_option("--out", common.out_dir, std::string("Output directory (default $") + kOutDirEnv + " or .)")
      ->capture_default_str();
  sub->add_flag("--json", common.json, "Print a single JSON object on stdout");
}

const std::vector<std::string> kFormats{"csv", "svg", "both"};
const std::vector<std::string> kVariants{"paper", "symmetrized"};
const std::vector<std::string> kModels{"10", "01"};

/// Compares the listed outputs of two runs byte for byte.
Json compare_outputs(const std::vector<std::string>& names, const std::filesystem::path& original,
                     const std::filesystem::path& replayed, bool& identical) {
  Json files = Json::array();
  identical = true;
  for (const std::string& name : names) {
    bool same = false;
    std::string reason;
    try {
      same = read_file(original / name) == read_file(replayed / name);
      if (!same) reason = "contents differ";
    } catch (const std::exception& e) {
      reason = e.what();
    }
    identical = identical && same;
    Json f{{"file", name}, {"identical", same}};
    if (!reason.empty()) f["reason"] = reason;
    files.push_back(f);
  }
  return files;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equilibrium measures, phase transition and Dirac density of states for quartic bitracial "
               "matrix models",
               "rncg"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Common common;
  SolveParams solve_p;
  DensityParams density_p;
  DosParams dos_p;
  SampleParams sample_p;
  SweepParams sweep_p;
  CheckParams check_p;
  std::string manifest_path;
  bool no_compare = false;

  std::vector<std::unique_ptr<ParamSet>> sets;
  auto make = [&](const std::string& name, const std::string& help) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, common);
    sets.push_back(std::make_unique<ParamSet>(sub));
    ParamSet& ps = *sets.back();
    ps.option("stem", common.stem, "File name stem for outputs (default: the command name)");
    return &ps;
  };

  {
    ParamSet& ps = *make("solve", "Solve for the equilibrium measure at coupling g");
    ps.option("g", solve_p.g, "Coupling constant")->required();
    ps.option("variant", solve_p.variant, "Saddle variant")->check(CLI::IsMember(kVariants));
    ps.flag("one-cut-override", solve_p.one_cut, "Use the one-cut formula below g_c");
  }
  {
    ParamSet& ps = *make("density", "Tabulate and plot the equilibrium density");
    ps.option("g", density_p.g, "Coupling constant")->required();
    ps.option("variant", density_p.variant, "Saddle variant")->check(CLI::IsMember(kVariants));
    ps.option("xmin", density_p.xmin, "Left end of the grid (default -1.1 x outer edge)");
    ps.option("xmax", density_p.xmax, "Right end of the grid (default 1.1 x outer edge)");
    ps.option("points", density_p.points, "Grid points");
    ps.option("format", density_p.format, "csv, svg or both")->check(CLI::IsMember(kFormats));
    ps.flag("one-cut-override", density_p.one_cut, "Plot the one-cut formula below g_c (dips negative)");
  }
  {
    ParamSet& ps = *make("dos", "Tabulate and plot the Dirac density of states");
    ps.option("g", dos_p.g, "Coupling constant")->required();
    ps.option("variant", dos_p.variant, "Saddle variant")->check(CLI::IsMember(kVariants));
    ps.option("points", dos_p.points, "Grid points (>= 16)");
    ps.option("format", dos_p.format, "csv, svg or both")->check(CLI::IsMember(kFormats));
    ps.option("mc-samples", dos_p.mc_samples, "Monte Carlo convolution samples for a KS cross-check (0 = off)");
    ps.option("seed", dos_p.seed, "Seed for the Monte Carlo cross-check");
    ps.option("threads", dos_p.threads, "Worker threads (0 = hardware)");
  }
  {
    ParamSet& ps = *make("sample", "Metropolis sampling of the finite-N eigenvalue ensemble");
    ps.option("model", sample_p.model, "10 or 01")->check(CLI::IsMember(kModels));
    ps.option("N", sample_p.N, "Matrix size");
    ps.option("g", sample_p.g, "Coupling constant");
    ps.option("sweeps", sample_p.sweeps, "Total sweeps including burn-in");
    ps.option("burnin", sample_p.burnin, "Burn-in sweeps (step adaptation)");
    ps.option("seed", sample_p.seed, "Chain seed");
    ps.option("thin", sample_p.thin, "Record every thin-th configuration");
    ps.option("bins", sample_p.bins, "Histogram bins");
    ps.option("hist-lo", sample_p.hist_lo, "Histogram lower edge");
    ps.option("hist-hi", sample_p.hist_hi, "Histogram upper edge");
    ps.option("target-acceptance", sample_p.target_acceptance, "Acceptance rate targeted during burn-in");
    ps.flag("dirac", sample_p.dirac, "Also histogram the Dirac eigenvalues");
    ps.flag("gaussian", sample_p.gaussian, "Replace the action by V = x^2, U = 0");
    ps.option("format", sample_p.format, "csv, svg or both")->check(CLI::IsMember(kFormats));
  }
  {
    ParamSet& ps = *make("sweep", "Order parameter and m2 across a range of g");
    ps.option("gmin", sweep_p.gmin, "Smallest coupling");
    ps.option("gmax", sweep_p.gmax, "Largest coupling");
    ps.option("steps", sweep_p.steps, "Number of couplings");
    ps.option("model", sweep_p.model, "10 or 01")->check(CLI::IsMember(kModels));
    ps.option("N", sweep_p.N, "Matrix size");
    ps.option("sweeps", sweep_p.sweeps, "Total sweeps per chain including burn-in");
    ps.option("burnin", sweep_p.burnin, "Burn-in sweeps");
    ps.option("seed", sweep_p.seed, "Base seed; chain seeds are derived per row");
    ps.option("thin", sweep_p.thin, "Record every thin-th configuration");
    ps.option("bins", sweep_p.bins, "Histogram bins");
    ps.option("threads", sweep_p.threads, "Worker threads (0 = hardware)");
    ps.option("format", sweep_p.format, "csv, svg or both")->check(CLI::IsMember(kFormats));
  }
  {
    ParamSet& ps = *make("check", "Run the invariant suite at coupling g");
    ps.option("g", check_p.g, "Coupling constant")->required();
    ps.option("variant", check_p.variant, "Saddle variant")->check(CLI::IsMember(kVariants));
    ps.option("tol-scale", check_p.tol_scale, "Multiplier applied to every tolerance");
  }
  CLI::App* replay = app.add_subcommand("replay", "Rerun a command from its manifest and compare outputs");
  replay->add_option("manifest", manifest_path, "Manifest file")->required()->check(CLI::ExistingFile);
  replay->add_option("--out", common.out_dir, "Output directory (default <manifest dir>/replay)");
  replay->add_flag("--json", common.json, "Print a single JSON object on stdout");
  replay->add_flag("--no-compare", no_compare, "Only rerun; skip the byte comparison");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kExitOk;
    }
    err << "rncg: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();

  try {
    if (sub == replay) {
      const std::filesystem::path mpath(manifest_path);
      const RunManifest m = RunManifest::load(mpath);
      const std::filesystem::path original = mpath.has_parent_path() ? mpath.parent_path() : ".";
      const std::filesystem::path target = replay->count("--out") ? std::filesystem::path(common.out_dir)
                                                                  : original / "replay";
      if (std::filesystem::weakly_canonical(target) == std::filesystem::weakly_canonical(original)) {
        throw ValidationError("replay output directory must differ from the manifest's directory");
      }
      std::vector<std::string> rerun = m.replay_args();
      rerun.insert(rerun.end(), {"--out", target.string()});
      std::ostringstream sink;
      const int code = run(rerun, sink, err);
      Json summary{{"command", m.command}, {"replay_dir", target.string()}, {"exit_code", code}};
      bool identical = code == kExitOk || (m.command == "check" && code == kExitFailure);
      if (!no_compare) {
        bool same = false;
        summary["files"] = compare_outputs(m.outputs, original, target, same);
        identical = identical && same;
        summary["identical"] = identical;
      }
      if (common.json) {
        out << summary.dump() << "\n";
      } else {
        if (summary.contains("files")) {
          for (const Json& f : summary["files"]) {
            out << (f["identical"].get<bool>() ? "same    " : "DIFFERS ") << f["file"].get<std::string>() << "\n";
          }
        }
        out << "replayed " << m.command << " into " << target.string() << "\n";
      }
      if (code != kExitOk && !(m.command == "check" && code == kExitFailure)) return code;
      return no_compare || identical ? kExitOk : kExitFailure;
    }

    if (common.stem.empty()) common.stem = command;
    OutputSet outputs(common.out_dir, common.stem);
    Outcome outcome;
    if (command == "solve") {
      outcome = cmd_solve(solve_p, outputs);
    } else if (command == "density") {
      outcome = cmd_density(density_p, outputs);
    } else if (command == "dos") {
      outcome = cmd_dos(dos_p, outputs);
    } else if (command == "sample") {
      outcome = cmd_sample(sample_p, outputs);
    } else if (command == "sweep") {
      outcome = cmd_sweep(sweep_p, outputs);
    } else {
      outcome = cmd_check(check_p, outputs);
    }

    const auto set = std::find_if(sets.begin(), sets.end(), [&](const auto& ps) { return ps->app() == sub; });
    RunManifest m;
    m.command = command;
    m.parameters = (*set)->values();
    m.seed = outcome.seed;
    m.version = kVersion;
    m.timestamp = iso8601_now();
    m.outputs = outputs.written();
    m.argv = {"rncg"};
    m.argv.insert(m.argv.end(), args.begin(), args.end());
    const std::string manifest_name = outputs.stem() + ".manifest.json";
    m.write(outputs.path(".manifest.json"));

    if (common.json) {
      Json summary = outcome.summary;
      summary["command"] = command;
      summary["outputs"] = m.outputs;
      summary["manifest"] = manifest_name;
      summary["exit_code"] = outcome.exit_code;
      out << summary.dump() << "\n";
    } else {
      out << outcome.text;
      out << "wrote";
      for (const std::string& f : m.outputs) out << " " << f;
      out << " " << manifest_name << " in " << outputs.dir().string() << "\n";
    }
    return outcome.exit_code;
  } catch (const NumericalError& e) {
    err << "rncg " << command << ": numerical error: " << e.what() << " (residual " << format_double(e.residual())
        << ")\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "rncg " << command << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "rncg " << command << ": " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace rncg::cli
