#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <sstream>

#include <rncg/dos.hpp>
#include <rncg/equilibrium.hpp>
#include <rncg/errors.hpp>
#include <rncg/histogram.hpp>
#include <rncg/mcmc.hpp>
#include <rncg/saddle.hpp>

#include "cli/format.hpp"
#include "cli/plot.hpp"

namespace rncg::cli {

namespace {

bool wants_csv(const std::string& format) { return format == "csv" || format == "both"; }
bool wants_svg(const std::string& format) { return format == "svg" || format == "both"; }

double c_sym_of(const std::string& variant) { return interaction_coefficient(parse_variant(variant)); }

Json measure_json(const EquilibriumMeasure& mu) {
  const CriticalPoint crit = critical_constants(mu.c_sym);
  Json j;
  j["g"] = mu.g;
  j["c_sym"] = mu.c_sym;
  j["phase"] = to_string(mu.phase);
  j["cuts"] = mu.shape == CutShape::OneCut ? 1 : 2;
  j["a"] = mu.a;
  j["b"] = mu.b;
  j["m2"] = moment(mu, 2);
  j["A"] = mu.A;
  j["B"] = mu.B;
  j["norm_coeff"] = mu.norm_coeff;
  j["outer_edge"] = mu.outer_edge();
  j["nonnegative"] = mu.nonnegative;
  j["g_c"] = crit.g_c;
  j["a_c"] = crit.a_c;
  return j;
}

/// Plain-text rendering of a flat JSON object, one "key: value" per line.
std::string as_text(const Json& j) {
  std::ostringstream ss;
  for (const auto& [key, value] : j.items()) {
    if (value.is_number_float()) {
      ss << key << ": " << format_double(value.get<double>()) << '\n';
    } else if (value.is_string()) {
      ss << key << ": " << value.get<std::string>() << '\n';
    } else {
      ss << key << ": " << value.dump() << '\n';
    }
  }
  return ss.str();
}

std::function<double(double)> grid_cdf(const DensityGrid& grid) {
  auto cdf = std::make_shared<std::vector<double>>(grid.cdf());
  auto xs = std::make_shared<std::vector<double>>(grid.xs);
  return [cdf, xs](double x) {
    if (x <= xs->front()) return 0.0;
    if (x >= xs->back()) return 1.0;
    const auto it = std::upper_bound(xs->begin(), xs->end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs->begin());
    const double t = (x - (*xs)[i - 1]) / ((*xs)[i] - (*xs)[i - 1]);
    return (*cdf)[i - 1] + t * ((*cdf)[i] - (*cdf)[i - 1]);
  };
}

SamplerConfig sampler_config(const std::string& model, int N, int sweeps, int burnin, std::uint64_t seed,
                             int thin, int bins) {
  SamplerConfig cfg;
  cfg.spec.kind = parse_model_kind(model);
  cfg.N = N;
  cfg.sweeps = sweeps;
  cfg.burnin = burnin;
  cfg.seed = seed;
  cfg.thin = thin;
  cfg.bins = bins;
  return cfg;
}

}  // namespace

OutputSet::OutputSet(std::filesystem::path dir, std::string stem) : dir_(std::move(dir)), stem_(std::move(stem)) {}

std::filesystem::path OutputSet::path(const std::string& suffix) const { return dir_ / (stem_ + suffix); }

void OutputSet::write(const std::string& suffix, std::string_view contents) {
  write_atomic(path(suffix), contents);
  written_.push_back(stem_ + suffix);
}

Outcome cmd_solve(const SolveParams& p, OutputSet& out) {
  SolveOptions opts;
  opts.one_cut_override = p.one_cut;
  const EquilibriumMeasure mu = solve(p.g, c_sym_of(p.variant), opts);
  Json record = measure_json(mu);
  record["variant"] = p.variant;
  out.write(".json", record.dump(2) + "\n");
  Outcome o;
  o.summary = record;
  o.text = as_text(record);
  return o;
}

Outcome cmd_density(const DensityParams& p, OutputSet& out) {
  if (p.points < 2) throw ValidationError("density grid needs at least 2 points");
  SolveOptions opts;
  opts.one_cut_override = p.one_cut;
  const EquilibriumMeasure mu = solve(p.g, c_sym_of(p.variant), opts);
  const double edge = mu.outer_edge();
  const double lo = p.xmin.value_or(-1.1 * edge);
  const double hi = p.xmax.value_or(1.1 * edge);
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw ValidationError("density grid needs xmin < xmax");

  const std::vector<double> xs = uniform_abscissae(lo, hi, p.points);
  std::vector<double> ys(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = density(mu, xs[i]);

  if (wants_csv(p.format)) {
    CsvTable table({"x", "psi"});
    for (std::size_t i = 0; i < xs.size(); ++i) table.add_numbers({xs[i], ys[i]});
    out.write(".csv", table.str());
  }
  if (wants_svg(p.format)) {
    Series s{xs, ys, "g = " + format_short(p.g, 6) + " (" + to_string(mu.phase) + ")"};
    out.write(".svg", svg_plot({s}, {"Equilibrium density", "x", "psi(x)"}));
  }

  double min_value = 0.0;
  for (double y : ys) min_value = std::min(min_value, y);
  Outcome o;
  o.summary = measure_json(mu);
  o.summary["variant"] = p.variant;
  o.summary["xmin"] = lo;
  o.summary["xmax"] = hi;
  o.summary["points"] = p.points;
  o.summary["psi_at_zero"] = density(mu, 0.0);
  o.summary["min_value"] = min_value;
  o.text = as_text(o.summary);
  return o;
}

Outcome cmd_dos(const DosParams& p, OutputSet& out) {
  const EquilibriumMeasure mu = solve(p.g, c_sym_of(p.variant));
  const DensityGrid grid = dos_grid(mu, p.points, p.threads);

  if (wants_csv(p.format)) {
    CsvTable table({"omega", "rho"});
    for (std::size_t i = 0; i < grid.xs.size(); ++i) table.add_numbers({grid.xs[i], grid.values[i]});
    out.write(".csv", table.str());
  }
  if (wants_svg(p.format)) {
    Series s{grid.xs, grid.values, "g = " + format_short(p.g, 6)};
    out.write(".svg", svg_plot({s}, {"Dirac density of states", "omega", "rho(omega)"}));
  }

  Outcome o;
  o.summary["g"] = p.g;
  o.summary["variant"] = p.variant;
  o.summary["phase"] = to_string(mu.phase);
  o.summary["points"] = p.points;
  o.summary["mass"] = grid.trapezoid_mass();
  o.summary["second_moment"] = grid.trapezoid_moment(2);
  o.summary["twice_m2"] = 2.0 * moment(mu, 2);
  o.summary["rho_at_zero"] = dos_density(mu, 0.0);
  if (p.mc_samples > 0) {
    const std::vector<double> samples = sample_dirac_sums(mu, p.mc_samples, p.seed);
    o.summary["mc_samples"] = p.mc_samples;
    o.summary["mc_ks_distance"] = ks_distance(samples, grid);
    o.seed = p.seed;
  }
  o.text = as_text(o.summary);
  return o;
}

Outcome cmd_sample(const SampleParams& p, OutputSet& out) {
  SamplerConfig cfg = sampler_config(p.model, p.N, p.sweeps, p.burnin, p.seed, p.thin, p.bins);
  cfg.spec.g = p.g;
  cfg.hist_lo = p.hist_lo;
  cfg.hist_hi = p.hist_hi;
  cfg.target_acceptance = p.target_acceptance;
  cfg.record_dirac = p.dirac;
  if (p.gaussian) cfg.action_override = ActionCoefficients::gaussian();
  const RunResult r = run(cfg);
  const RunDiagnostics& d = r.diagnostics;

  Outcome o;
  o.seed = p.seed;
  Json& s = o.summary;
  s["model"] = to_string(cfg.spec.kind);
  s["g"] = p.g;
  s["N"] = p.N;
  s["gaussian"] = p.gaussian;
  s["acceptance_rate"] = d.acceptance_rate;
  s["step_width"] = d.step_width;
  s["recorded_configs"] = d.recorded_configs;
  s["centered"] = d.centered;
  s["m1"] = d.m1;
  s["m1_stderr"] = d.m1_stderr;
  s["m2"] = d.m2;
  s["m2_stderr"] = d.m2_stderr;
  s["m3"] = d.m3;
  s["m3_stderr"] = d.m3_stderr;
  s["order_parameter"] = d.order_parameter;
  s["bimodal"] = is_bimodal(r.eigenvalues);

  std::vector<double> centers(static_cast<std::size_t>(r.eigenvalues.bins()));
  for (int i = 0; i < r.eigenvalues.bins(); ++i) centers[static_cast<std::size_t>(i)] = r.eigenvalues.center(i);
  const std::vector<double> dens = r.eigenvalues.densities();
  std::vector<Series> series{{centers, dens, "sampled", "#444444", false, true}};

  std::optional<EquilibriumMeasure> better;
  if (p.gaussian) {
    const EquilibriumMeasure semi = EquilibriumMeasure::one_cut(1.0, 0.0, std::numbers::sqrt2 / 2.0);
    s["ks_semicircle"] = ks_distance(r.eigenvalues, measure_cdf(semi));
    std::vector<double> ys(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) ys[i] = density(semi, centers[i]);
    series.push_back({centers, ys, "semicircle", "#c0392b"});
  } else {
    const EquilibriumMeasure paper = solve(p.g, 6.0);
    const EquilibriumMeasure sym = solve(p.g, 12.0);
    const double ks_paper = ks_distance(r.eigenvalues, measure_cdf(paper));
    const double ks_sym = ks_distance(r.eigenvalues, measure_cdf(sym));
    s["ks_paper"] = ks_paper;
    s["ks_symmetrized"] = ks_sym;
    s["better_variant"] = ks_paper <= ks_sym ? "paper" : "symmetrized";
    better = ks_paper <= ks_sym ? paper : sym;
    std::vector<double> yp(centers.size());
    std::vector<double> ys(centers.size());
    for (std::size_t i = 0; i < centers.size(); ++i) {
      yp[i] = density(paper, centers[i]);
      ys[i] = density(sym, centers[i]);
    }
    series.push_back({centers, yp, "c_sym = 6", "#c0392b"});
    series.push_back({centers, ys, "c_sym = 12", "#1f4e99", true});
  }

  if (wants_csv(p.format)) {
    CsvTable table({"center", "density", "count"});
    for (std::size_t i = 0; i < centers.size(); ++i) {
      table.add_row({format_double(centers[i]), format_double(dens[i]), std::to_string(r.eigenvalues.counts[i])});
    }
    out.write(".csv", table.str());
  }
  if (wants_svg(p.format)) {
    out.write(".svg", svg_plot(series, {"Sampled eigenvalue density", "lambda", "density"}));
  }

  if (r.dirac) {
    const SpectralHistogram& h = *r.dirac;
    if (better) {
      const DensityGrid rho = dos_grid(*better, 2048);
      s["dirac_ks_dos"] = ks_distance(h, grid_cdf(rho));
    }
    if (wants_csv(p.format)) {
      CsvTable table({"center", "density", "count"});
      const std::vector<double> dd = h.densities();
      for (int i = 0; i < h.bins(); ++i) {
        table.add_row({format_double(h.center(i)), format_double(dd[static_cast<std::size_t>(i)]),
                       std::to_string(h.counts[static_cast<std::size_t>(i)])});
      }
      out.write("_dirac.csv", table.str());
    }
  }

  Json diagnostics = s;
  out.write(".json", diagnostics.dump(2) + "\n");
  o.text = as_text(s);
  return o;
}

Outcome cmd_sweep(const SweepParams& p, OutputSet& out) {
  if (p.steps < 1) throw ValidationError("sweep needs steps >= 1");
  if (!(p.gmin <= p.gmax)) throw ValidationError("sweep needs gmin <= gmax");
  if (p.steps == 1 && p.gmin != p.gmax) throw ValidationError("a single-step sweep needs gmin == gmax");
  std::vector<double> gs(static_cast<std::size_t>(p.steps));
  for (int i = 0; i < p.steps; ++i) {
    gs[static_cast<std::size_t>(i)] = p.steps == 1 ? p.gmin : p.gmin + (p.gmax - p.gmin) * i / (p.steps - 1);
  }
  const SamplerConfig tmpl = sampler_config(p.model, p.N, p.sweeps, p.burnin, p.seed, p.thin, p.bins);
  const SweepReport report = sweep(gs, tmpl, p.threads);

  std::vector<double> g_col;
  std::vector<double> op_col;
  std::vector<double> m2_col;
  std::vector<double> m2p_col;
  std::vector<double> m2s_col;
  CsvTable table({"g", "seed", "order_parameter", "m1", "m1_stderr", "m2", "m2_stderr", "m2_paper",
                  "m2_symmetrized", "acceptance_rate", "bimodal"});
  for (const SweepRow& row : report.rows) {
    table.add_row({format_double(row.g), std::to_string(row.seed), format_double(row.order_parameter),
                   format_double(row.m1), format_double(row.m1_stderr), format_double(row.m2),
                   format_double(row.m2_stderr), format_double(row.m2_paper), format_double(row.m2_symmetrized),
                   format_double(row.acceptance_rate), row.bimodal ? "1" : "0"});
    g_col.push_back(row.g);
    op_col.push_back(row.order_parameter);
    m2_col.push_back(row.m2);
    m2p_col.push_back(row.m2_paper);
    m2s_col.push_back(row.m2_symmetrized);
  }
  if (wants_csv(p.format)) out.write(".csv", table.str());
  if (wants_svg(p.format)) {
    double top = 0.0;
    for (double v : op_col) top = std::max(top, v);
    const std::vector<Series> op_plot{
        {g_col, op_col, "order parameter", "#444444"},
        {{report.g_c_paper, report.g_c_paper}, {0.0, top}, "g_c, c_sym = 6", "#c0392b", true},
        {{report.g_c_symmetrized, report.g_c_symmetrized}, {0.0, top}, "g_c, c_sym = 12", "#1f4e99", true}};
    out.write(".svg", svg_plot(op_plot, {"Central density across g", "g", "order parameter"}));
    const std::vector<Series> m2_plot{{g_col, m2_col, "sampled m2", "#444444"},
                                      {g_col, m2p_col, "c_sym = 6", "#c0392b", true},
                                      {g_col, m2s_col, "c_sym = 12", "#1f4e99", true}};
    out.write("_m2.svg", svg_plot(m2_plot, {"Second moment across g", "g", "m2"}));
  }

  Outcome o;
  o.seed = p.seed;
  Json& s = o.summary;
  s["model"] = to_string(tmpl.spec.kind);
  s["rows"] = report.rows.size();
  s["transition_estimate"] = report.transition_estimate;
  s["transition_lo"] = report.transition_lo;
  s["transition_hi"] = report.transition_hi;
  s["crossing_estimate"] = report.crossing_estimate;
  s["g_c_paper"] = report.g_c_paper;
  s["g_c_symmetrized"] = report.g_c_symmetrized;
  s["paper_g_c_in_window"] = report.g_c_paper >= report.transition_lo && report.g_c_paper <= report.transition_hi;
  s["symmetrized_g_c_in_window"] =
      report.g_c_symmetrized >= report.transition_lo && report.g_c_symmetrized <= report.transition_hi;
  s["paper_m2_error"] = report.paper_m2_error;
  s["symmetrized_m2_error"] = report.symmetrized_m2_error;
  s["better_variant"] = report.better_variant;
  out.write(".json", s.dump(2) + "\n");
  o.text = table.str() + as_text(s);
  return o;
}

Outcome cmd_check(const CheckParams& p, OutputSet& out) {
  if (!(p.tol_scale > 0.0)) throw ValidationError("tol-scale must be positive");
  const double c_sym = c_sym_of(p.variant);
  ModelSpec spec;
  spec.g = p.g;
  spec.variant = parse_variant(p.variant);
  const EquilibriumMeasure mu = solve(p.g, c_sym);
  const CriticalPoint crit = critical_constants(c_sym);

  Json checks = Json::array();
  bool all_pass = true;
  auto record = [&](const std::string& name, double value, double tol) {
    const bool pass = std::isfinite(value) && value <= tol * p.tol_scale;
    all_pass = all_pass && pass;
    checks.push_back({{"name", name}, {"value", value}, {"tolerance", tol * p.tol_scale}, {"pass", pass}});
  };

  record("normalization", std::abs(total_mass(mu) - 1.0), 1e-10);

  double nonneg = 0.0;
  for (double x : uniform_abscissae(-mu.outer_edge(), mu.outer_edge(), 10000)) {
    nonneg = std::max(nonneg, -density(mu, x));
  }
  record("nonnegativity", nonneg, 1e-14);

  double moment_err = 0.0;
  for (int k : {0, 2, 4, 6}) {
    moment_err = std::max(moment_err, std::abs(moment(mu, k) - moment_quadrature(mu, k, 512)));
  }
  if (mu.shape == CutShape::TwoCut) {
    moment_err = std::max(moment_err, std::abs(moment(mu, 2) + 2.0 * p.g / (4.0 + c_sym)));
  } else {
    moment_err = std::max(moment_err, std::abs(moment(mu, 2) - catalan_moment(mu.a, mu.B, 2)));
  }
  record("moments", moment_err, 1e-9);

  if (mu.shape == CutShape::OneCut) {
    record("side_condition", plemelj_side_condition_residual(mu.A, mu.B, mu.a), 1e-10);
  } else {
    const ConditionResiduals r = condition_residuals(mu.a, mu.b, saddle_coefficients(spec, moment(mu, 2)));
    record("moment_conditions", std::max({std::abs(r.r0), std::abs(r.r1), std::abs(r.r2)}), 1e-12);
  }

  double saddle = 0.0;
  double pv_vs_resolvent = 0.0;
  for (const Interval& cut : mu.support()) {
    for (int i = 1; i <= 10; ++i) {
      const double x = cut.lo + (cut.hi - cut.lo) * i / 11.0;
      saddle = std::max(saddle, std::abs(saddle_residual(mu, spec, x)));
      pv_vs_resolvent = std::max(pv_vs_resolvent, std::abs(principal_value_transform(mu, x) -
                                                           stieltjes(mu, x, Side::Upper).real()));
    }
  }
  record("saddle_residual", saddle, 1e-8);
  record("principal_value_vs_resolvent", pv_vs_resolvent, 1e-8);

  const double edge = mu.outer_edge();
  double resolvent = 0.0;
  for (std::complex<double> z : {std::complex<double>(0.3 * edge, 0.4), std::complex<double>(1.4 * edge, -0.25),
                                 std::complex<double>(-0.7 * edge, 0.15), std::complex<double>(3.0 * edge, 0.0)}) {
    resolvent = std::max(resolvent, std::abs(stieltjes(mu, z) - stieltjes_quadrature(mu, z)));
  }
  record("resolvent_vs_quadrature", resolvent, 1e-8);

  const double ra = edge;
  const double rb = mu.shape == CutShape::TwoCut ? mu.b : 0.5 * edge;
  const std::complex<double> z(0.4 * edge, 0.3 * edge);
  double residue = 0.0;
  for (int alpha = 1; alpha <= 7; ++alpha) {
    const std::complex<double> series = residue_at_infinity(alpha, ra, rb)(z);
    residue = std::max(residue, std::abs(series - residue_by_contour(alpha, ra, rb, z, 3.0 * ra)));
  }
  record("residue_table", residue, 1e-9);

  // Continuity at the critical coupling: both branches against each other and
  // against the closed form (4/pi) x^2 sqrt(sqrt2 - x^2).
  {
    const EquilibriumMeasure one = solve_one_cut(crit.g_c, c_sym);
    const EquilibriumMeasure two = solve_two_cut(crit.g_c, c_sym);
    double diff = 0.0;
    double closed_diff = 0.0;
    for (double x : uniform_abscissae(-2.0 * crit.a_c, 2.0 * crit.a_c, 10000)) {
      const double closed = 4.0 / std::numbers::pi * x * x * std::sqrt(std::max(0.0, std::numbers::sqrt2 - x * x));
      diff = std::max(diff, std::abs(density(one, x) - density(two, x)));
      closed_diff = std::max({closed_diff, std::abs(density(one, x) - closed), std::abs(density(two, x) - closed)});
    }
    record("critical_continuity", diff, 1e-8);
    record("critical_closed_form", closed_diff, 1e-6);
  }

  Outcome o;
  o.exit_code = all_pass ? kExitOk : kExitFailure;
  o.summary["g"] = p.g;
  o.summary["variant"] = p.variant;
  o.summary["phase"] = to_string(mu.phase);
  o.summary["tol_scale"] = p.tol_scale;
  o.summary["passed"] = all_pass;
  o.summary["checks"] = checks;
  out.write(".json", o.summary.dump(2) + "\n");

  std::ostringstream ss;
  for (const Json& c : checks) {
    ss << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << " "
       << format_double(c["value"].get<double>()) << " <= " << format_double(c["tolerance"].get<double>()) << '\n';
  }
  ss << (all_pass ? "all checks passed\n" : "some checks failed\n");
  o.text = ss.str();
  return o;
}

}  // namespace rncg::cli
