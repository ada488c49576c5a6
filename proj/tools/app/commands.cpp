#include "app/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <sstream>

#include "app/output.hpp"
#include "app/svg_plot.hpp"
#include "qlimit/errors.hpp"
#include "qlimit/observables.hpp"
#include "qlimit/open_system.hpp"
#include "qlimit/parallel.hpp"
#include "qlimit/presets.hpp"
#include "qlimit/spectra.hpp"

#ifndef QLIMIT_PRESET_DIR
#define QLIMIT_PRESET_DIR "presets"
#endif

namespace qlimit::app {

std::filesystem::path default_preset_dir() {
  if (const char* env = std::getenv("QLIMIT_PRESET_DIR"); env && *env) return env;
  return QLIMIT_PRESET_DIR;
}

namespace {

constexpr double kHalf = 0.5;
constexpr double kAuditTolerance = 1e-8;

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// Model selection shared by `criterion` and `scan`.

struct ModelFlags {
  std::string model;
  std::string preset;
  std::string preset_dir;
  double mass = 1.0;
  double omega = 1.0;
  double width = 1.0;
  double reduced_mass = 1.0;
  int charge_number = 1;
  double charge = 1.0;
  double depth = 1.0;
  double range = 1.0;
  double anharmonicity = 10.0;
  double length_scale = 1.0;
  double lambda = 0.0;
  std::vector<CLI::Option*> param_options;
};

void add_model_flags(CLI::App& cmd, ModelFlags& f) {
  cmd.add_option("--model", f.model, "harmonic | box | hydrogenoid | morse | quartic")
      ->check(CLI::IsMember({"harmonic", "box", "hydrogenoid", "morse", "quartic"}));
  cmd.add_option("--preset", f.preset, "preset name (looked up in the preset directory) or file path");
  cmd.add_option("--preset-dir", f.preset_dir, "directory holding <name>.conf presets");
  f.param_options = {
      cmd.add_option("--mass", f.mass, "particle mass (harmonic, box, morse)"),
      cmd.add_option("--omega", f.omega, "angular frequency (harmonic, morse, quartic)"),
      cmd.add_option("--width", f.width, "box width"),
      cmd.add_option("--reduced-mass", f.reduced_mass, "hydrogenoid reduced mass"),
      cmd.add_option("--Z", f.charge_number, "hydrogenoid charge number"),
      cmd.add_option("--charge", f.charge, "hydrogenoid elementary charge"),
      cmd.add_option("--depth", f.depth, "morse well depth D"),
      cmd.add_option("--alpha", f.range, "morse range parameter"),
      cmd.add_option("--anharmonicity", f.anharmonicity, "morse anharmonicity"),
      cmd.add_option("--length-scale", f.length_scale, "morse period length scale (dimensionless)"),
      cmd.add_option("--lambda", f.lambda, "quartic nonlinearity"),
  };
}

struct ResolvedModel {
  ModelParams model;
  std::string units = "hbar=1";
  std::vector<std::pair<std::string, std::string>> parameters;
};

ResolvedModel resolve_model(const ModelFlags& f) {
  ResolvedModel r;
  if (!f.preset.empty()) {
    for (const auto* opt : f.param_options) {
      if (opt->count() > 0) throw InvalidArgument("model parameter flags cannot be combined with --preset");
    }
    const auto dir = f.preset_dir.empty() ? default_preset_dir() : std::filesystem::path(f.preset_dir);
    const Preset p = find_preset(f.preset, dir);
    if (!f.model.empty() && f.model != model_name(p.model)) {
      throw InvalidArgument("--model " + f.model + " does not match preset model " +
                            std::string(model_name(p.model)));
    }
    r.model = p.model;
    r.units = "atomic (converted from " + std::string(to_string(p.units)) + ")";
    r.parameters.emplace_back("model", std::string(model_name(p.model)));
    r.parameters.emplace_back("preset", p.name);
    for (const auto& [k, v] : p.raw) r.parameters.emplace_back(k, fmt(v));
    return r;
  }
  if (f.model.empty()) throw InvalidArgument("either --model or --preset is required");
  r.parameters.emplace_back("model", f.model);
  const auto add = [&](const char* k, double v) { r.parameters.emplace_back(k, fmt(v)); };
  if (f.model == "harmonic") {
    r.model = Harmonic{f.mass, f.omega};
    add("mass", f.mass);
    add("omega", f.omega);
  } else if (f.model == "box") {
    r.model = Box{f.mass, f.width};
    add("mass", f.mass);
    add("width", f.width);
  } else if (f.model == "hydrogenoid") {
    r.model = Hydrogenoid{f.reduced_mass, f.charge_number, f.charge};
    add("reduced_mass", f.reduced_mass);
    r.parameters.emplace_back("charge_number", std::to_string(f.charge_number));
    add("elementary_charge", f.charge);
  } else if (f.model == "morse") {
    r.model = Morse{f.depth, f.range, f.anharmonicity, f.mass, f.length_scale, f.omega};
    add("depth", f.depth);
    add("range", f.range);
    add("anharmonicity", f.anharmonicity);
    add("mass", f.mass);
    add("length_scale", f.length_scale);
    add("omega", f.omega);
  } else {
    r.model = Quartic{f.omega, f.lambda};
    add("omega", f.omega);
    add("lambda", f.lambda);
  }
  validate(r.model);
  return r;
}

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  return Format::Table;
}

std::vector<Column> criterion_columns(const std::string& units) {
  return {{"n", ""},
          {"energy", "E (" + units + ")"},
          {"period", "t (" + units + ")"},
          {"delta_energy", "E (" + units + ")"},
          {"delta_period", "t (" + units + ")"},
          {"y_over_hbar", "hbar"},
          {"resolvable", ""},
          {"verdict", ""}};
}

std::vector<Cell> criterion_row(const CriterionPoint& p) {
  return {std::int64_t{p.n}, p.energy,   p.period, p.delta_energy, p.delta_period,
          p.y,               p.resolvable, std::string(to_string(p.verdict))};
}

// ---------------------------------------------------------------------------

struct CommonTimeFlags {
  int b = 1;
  double kappa = 1.0;
  double omega = 1.0;
  double lambda = 0.0;
  std::string grid = "log:0.001:100:200";
  double eps = 1e-10;
  std::size_t max_terms = SeriesTolerance{}.max_terms;
  std::string out = "-";
  std::string format = "csv";
};

void add_time_flags(CLI::App& cmd, CommonTimeFlags& f, int default_b, double default_omega,
                    double default_lambda) {
  f.b = default_b;
  f.omega = default_omega;
  f.lambda = default_lambda;
  cmd.add_option("--b", f.b, "initial Fock index")->capture_default_str();
  cmd.add_option("--kappa", f.kappa, "diffusion constant")->capture_default_str();
  cmd.add_option("--omega", f.omega, "oscillator frequency")->capture_default_str();
  cmd.add_option("--lambda", f.lambda, "quartic nonlinearity")->capture_default_str();
  cmd.add_option("--grid", f.grid, "kappa*t grid, log:START:STOP:POINTS")->capture_default_str();
  cmd.add_option("--eps", f.eps, "relative tolerance of the series tails")->capture_default_str();
  cmd.add_option("--max-terms", f.max_terms, "series term cap")->capture_default_str();
  cmd.add_option("--out", f.out, "output file, '-' for stdout")->capture_default_str();
  cmd.add_option("--format", f.format, "csv | json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

DiffusiveConfig make_config(const CommonTimeFlags& f) {
  DiffusiveConfig cfg;
  cfg.b = f.b;
  cfg.kappa = f.kappa;
  cfg.omega = f.omega;
  cfg.lambda = f.lambda;
  cfg.tol.rel_eps = f.eps;
  cfg.tol.max_terms = f.max_terms;
  cfg.validate();
  return cfg;
}

RunManifest time_manifest(const std::string& command, const CommonTimeFlags& f, const DiffusiveConfig& cfg) {
  RunManifest m;
  m.command = command;
  m.parameters = {{"b", std::to_string(cfg.b)},
                  {"kappa", fmt(cfg.kappa)},
                  {"omega", fmt(cfg.omega)},
                  {"lambda", fmt(cfg.lambda)},
                  {"grid", f.grid}};
  m.tolerances = cfg.tol;
  m.timestamp = iso8601_now();
  return m;
}

// ---------------------------------------------------------------------------

int cmd_criterion(const ModelFlags& mf, int n, const std::string& format, const std::string& out_path,
                  std::ostream& out, std::ostream& err) {
  const ResolvedModel rm = resolve_model(mf);
  const CriterionPoint pt = criterion_point(rm.model, n);
  const Format fm = parse_format(format);
  if (fm == Format::Table) {
    std::ostringstream os;
    os << "model          " << model_name(rm.model) << "\n"
       << "units          " << rm.units << "\n"
       << "n              " << pt.n << "\n"
       << "E_n            " << fmt(pt.energy) << "\n"
       << "tau_n          " << fmt(pt.period) << "\n"
       << "dE_n           " << fmt(pt.delta_energy) << "\n"
       << "dtau_n         " << fmt(pt.delta_period) << "\n"
       << "y/hbar         " << fmt(pt.y) << "\n"
       << "threshold      0.5\n"
       << "verdict        " << to_string(pt.verdict) << "\n";
    if (out_path.empty() || out_path == "-") {
      out << os.str();
    } else {
      write_text_file(out_path, os.str());
    }
  } else {
    RunManifest m;
    m.command = "criterion";
    m.parameters = rm.parameters;
    m.parameters.emplace_back("n", std::to_string(n));
    m.timestamp = iso8601_now();
    Table t;
    t.columns = criterion_columns(rm.units);
    t.rows.push_back(criterion_row(pt));
    emit(out_path, fm, m, t, out);
  }
  if (pt.verdict == Verdict::PeriodBlind) {
    err << "criterion: period-blind model, the classical period does not depend on the energy "
           "so y(n) = 0 carries no information about the spectrum\n";
    return kExitBadArguments;
  }
  return kExitOk;
}

int cmd_scan(const ModelFlags& mf, std::optional<int> n_min, std::optional<int> n_max, const std::string& format,
             const std::string& out_path, std::ostream& out) {
  const ResolvedModel rm = resolve_model(mf);
  const int lo = n_min.value_or(min_level(rm.model) + 1);
  const int hi = n_max ? *n_max : max_level(rm.model).value_or(50);
  const ScanResult scan = threshold_scan(rm.model, lo, hi);

  RunManifest m;
  m.command = "scan";
  m.parameters = rm.parameters;
  m.parameters.emplace_back("n_min", std::to_string(lo));
  m.parameters.emplace_back("n_max", std::to_string(hi));
  m.timestamp = iso8601_now();

  Table t;
  t.columns = criterion_columns(rm.units);
  for (const auto& p : scan.points) t.rows.push_back(criterion_row(p));
  t.footer.emplace_back("first_unresolvable",
                        scan.first_unresolvable ? std::to_string(*scan.first_unresolvable) : "none");
  std::string crossings;
  for (int c : scan.crossings) crossings += (crossings.empty() ? "" : " ") + std::to_string(c);
  t.footer.emplace_back("crossings", crossings.empty() ? "none" : crossings);
  const bool all_unresolvable = std::all_of(scan.points.begin(), scan.points.end(),
                                            [](const CriterionPoint& p) { return p.verdict == Verdict::Unresolvable; });
  t.footer.emplace_back("all_unresolvable", all_unresolvable ? "true" : "false");
  for (const auto& note : scan.notes) t.footer.emplace_back("note", note);
  emit(out_path, format == "json" ? Format::Json : Format::Csv, m, t, out);
  return kExitOk;
}

int cmd_evolve(const CommonTimeFlags& f, std::size_t print_n_max, std::ostream& out) {
  const DiffusiveConfig cfg = make_config(f);
  std::vector<double> kts = LogGrid::parse(f.grid).values();
  kts.insert(kts.begin(), 0.0);

  std::vector<FockDistribution> snaps(kts.size());
  parallel_for(kts.size(), [&](std::size_t i) { snaps[i] = distribution(cfg, kts[i] / cfg.kappa); });

  RunManifest m = time_manifest("evolve", f, cfg);
  m.parameters.emplace_back("print_n_max", std::to_string(print_n_max));
  Table t;
  t.columns = {{"kt", ""}, {"n", ""}, {"weight", ""}, {"trace", ""}, {"tail_bound", ""}, {"n_cut", ""}};
  double worst = 0.0;
  for (std::size_t i = 0; i < kts.size(); ++i) {
    const auto& d = snaps[i];
    const double trace = d.trace();
    worst = std::max(worst, std::abs(trace - 1.0));
    const std::size_t last = std::min(d.n_cut, print_n_max);
    for (std::size_t n = 0; n <= last; ++n) {
      t.rows.push_back({kts[i], static_cast<std::int64_t>(n), d.weights[n], trace, d.tail_bound,
                        static_cast<std::int64_t>(d.n_cut)});
    }
  }
  t.footer.emplace_back("max_trace_error", fmt(worst));
  emit(f.out, f.format == "json" ? Format::Json : Format::Csv, m, t, out);
  return kExitOk;
}

int cmd_fidelity(const CommonTimeFlags& f, std::ostream& out) {
  const DiffusiveConfig cfg = make_config(f);
  if (cfg.b < 1) throw InvalidArgument("fidelity: --b must be >= 1");
  DiffusiveConfig prev = cfg;
  prev.b = cfg.b - 1;
  const auto kts = LogGrid::parse(f.grid).values();

  struct Row {
    double overlap, closed, surv, pur_b, pur_a;
  };
  std::vector<Row> rows(kts.size());
  parallel_for(kts.size(), [&](std::size_t i) {
    const double t = kts[i] / cfg.kappa;
    rows[i] = {fidelity_overlap(cfg, prev, t), fidelity_closed_form(cfg, t), survival(cfg, t), purity(cfg, t),
               purity(prev, t)};
  });

  Table t;
  t.columns = {{"kt", ""},          {"F_overlap", ""},  {"F_closed_form", ""}, {"abs_diff", ""},
               {"survival_b", ""}, {"purity_b", ""},   {"purity_bm1", ""}};
  double worst = 0.0;
  for (std::size_t i = 0; i < kts.size(); ++i) {
    const auto& r = rows[i];
    const double d = std::abs(r.overlap - r.closed);
    worst = std::max(worst, d);
    t.rows.push_back({kts[i], r.overlap, r.closed, d, r.surv, r.pur_b, r.pur_a});
  }
  t.footer.emplace_back("closed_form_max_abs_diff", fmt(worst));
  t.footer.emplace_back("closed_form_audit", worst <= kAuditTolerance
                                                 ? "agree (triple series equals the trace overlap within 1e-8)"
                                                 : "mismatch (trace overlap is authoritative)");
  emit(f.out, f.format == "json" ? Format::Json : Format::Csv, time_manifest("fidelity", f, cfg), t, out);
  return kExitOk;
}

std::vector<Column> ymean_columns() {
  return {{"kt", ""},         {"mean_n_b", ""},      {"mean_n_bm1", ""},   {"mean_h0_b", "E"},
          {"mean_h0_bm1", "E"}, {"mean_tau_b", "t"},   {"mean_tau_bm1", "t"}, {"delta_energy", "E"},
          {"delta_period", "t"}, {"y_mean_over_hbar", "hbar"}, {"sign", ""},  {"resolvable", ""}};
}

int cmd_ymean(const CommonTimeFlags& f, std::ostream& out) {
  const DiffusiveConfig cfg = make_config(f);
  const auto kts = LogGrid::parse(f.grid).values();
  const auto pts = mean_y_series(cfg, kts);

  Table t;
  t.columns = ymean_columns();
  for (const auto& p : pts) {
    t.rows.push_back({p.kt, p.mean_n_b, p.mean_n_bm1, p.mean_h0_b, p.mean_h0_bm1, p.mean_tau_b, p.mean_tau_bm1,
                      p.delta_energy, p.delta_period, p.y_mean, std::int64_t{p.sign}, p.y_mean >= kHalf});
  }
  const double closed_dE = 0.5 * (cfg.omega + cfg.lambda * (2.0 * cfg.b - 1.0));
  t.footer.emplace_back("closed_system_delta_energy", fmt(closed_dE));
  std::string half = "none";
  if (!pts.empty()) {
    const double target = 0.5 * pts.front().y_mean;
    for (const auto& p : pts) {
      if (p.y_mean <= target) {
        half = fmt(p.kt);
        break;
      }
    }
  }
  t.footer.emplace_back("half_decay_kt_grid", half);
  emit(f.out, f.format == "json" ? Format::Json : Format::Csv, time_manifest("ymean", f, cfg), t, out);
  return kExitOk;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::filesystem::path> write_figure(const FigureOptions& o) {
  if (o.which < 1 || o.which > 4) throw InvalidArgument("figures: which must be 1, 2, 3 or 4");
  std::vector<int> levels = o.levels;
  if (levels.empty()) levels = o.which <= 2 ? std::vector<int>{1, 5, 10, 15} : std::vector<int>{2, 5, 10, 15};
  for (int b : levels) {
    if (b < 1) throw InvalidArgument("figures: every b must be >= 1");
  }
  const auto kts = o.grid.values();
  const double ratio = o.which == 3 ? 0.10 : 10.0;  // omega / (hbar lambda)

  DiffusiveConfig base;
  base.kappa = o.kappa;
  base.lambda = o.which >= 3 ? o.lambda : 0.0;
  base.omega = o.which >= 3 ? ratio * o.lambda : 1.0;
  base.tol = o.tol;
  base.validate();

  std::vector<std::vector<double>> values(levels.size(), std::vector<double>(kts.size()));
  parallel_for(levels.size() * kts.size(), [&](std::size_t idx) {
    const std::size_t k = idx / kts.size();
    const std::size_t i = idx % kts.size();
    DiffusiveConfig cfg = base;
    cfg.b = levels[k];
    const double t = kts[i] / cfg.kappa;
    switch (o.which) {
      case 1: {
        DiffusiveConfig prev = cfg;
        prev.b = cfg.b - 1;
        values[k][i] = fidelity_overlap(cfg, prev, t);
        break;
      }
      case 2:
        values[k][i] = survival(cfg, t);
        break;
      default:
        values[k][i] = mean_y_point(cfg, kts[i]).y_mean;
    }
  });

  static const char* const kNames[] = {"", "fidelity F(b,t) = Tr[rho(t,b) rho(t,b-1)]",
                                       "survival P_b(b,t)", "<y(b)>, omega/(hbar lambda) = 0.10",
                                       "<y(b)>, omega/(hbar lambda) = 10"};
  static const char* const kPrefix[] = {"", "F_b", "survival_b", "y_mean_b", "y_mean_b"};

  RunManifest m;
  m.command = "figures " + std::to_string(o.which);
  m.parameters = {{"kappa", fmt(base.kappa)}, {"omega", fmt(base.omega)}, {"lambda", fmt(base.lambda)},
                  {"grid", o.grid.to_string()}};
  std::string bs;
  for (int b : levels) bs += (bs.empty() ? "" : " ") + std::to_string(b);
  m.parameters.emplace_back("b", bs);
  m.tolerances = o.tol;
  m.timestamp = iso8601_now();

  Table t;
  t.columns.push_back({"kt", ""});
  for (int b : levels) t.columns.push_back({kPrefix[o.which] + std::to_string(b), o.which >= 3 ? "hbar" : ""});
  for (std::size_t i = 0; i < kts.size(); ++i) {
    std::vector<Cell> row{kts[i]};
    for (std::size_t k = 0; k < levels.size(); ++k) row.emplace_back(values[k][i]);
    t.rows.push_back(std::move(row));
  }

  LinePlot plot;
  plot.title = kNames[o.which];
  plot.x_label = "kappa t";
  plot.y_label = o.which == 1 ? "F(b,t)" : o.which == 2 ? "P_b(b,t)" : "<y(b)> / hbar";
  if (o.which >= 3) {
    plot.threshold = kHalf;
    plot.threshold_label = "hbar/2";
  }
  for (std::size_t k = 0; k < levels.size(); ++k) {
    plot.series.push_back({"b = " + std::to_string(levels[k]), kts, values[k]});
  }

  const auto stem = o.out_dir / ("fig" + std::to_string(o.which));
  const auto csv_path = stem.string() + ".csv";
  const auto svg_path = stem.string() + ".svg";
  std::ostringstream sink;
  emit(csv_path, Format::Csv, m, t, sink);
  write_text_file(svg_path, render_svg(plot));
  return {csv_path, csv_path + ".manifest.json", svg_path};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qlimit: classical resolvability of discrete spectra and their decay under a diffusive bath"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // criterion
  ModelFlags crit_flags;
  int crit_n = 2;
  std::string crit_format = "table";
  std::string crit_out = "-";
  auto* crit = app.add_subcommand("criterion", "y(n) = |dE_n dtau_n| for one level, compared with hbar/2");
  add_model_flags(*crit, crit_flags);
  crit->add_option("--n", crit_n, "quantum number")->required();
  crit->add_option("--format", crit_format, "table | csv | json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  crit->add_option("--out", crit_out, "output file, '-' for stdout");

  // scan
  ModelFlags scan_flags;
  std::optional<int> scan_min, scan_max;
  std::string scan_format = "csv";
  std::string scan_out = "-";
  auto* scan = app.add_subcommand("scan", "y(n) over a range of levels and the first unresolvable level");
  add_model_flags(*scan, scan_flags);
  scan->add_option("--n-min", scan_min, "first level (default: lowest with a neighbour)");
  scan->add_option("--n-max", scan_max, "last level (default: top bound level for morse, else 50)");
  scan->add_option("--format", scan_format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  scan->add_option("--out", scan_out, "output file, '-' for stdout");

  // evolve
  CommonTimeFlags evolve_flags;
  std::size_t print_n_max = 64;
  auto* evolve = app.add_subcommand("evolve", "Fock-basis weights P_b(n,t) on a kappa*t grid (plus t = 0)");
  add_time_flags(*evolve, evolve_flags, 0, 1.0, 0.0);
  evolve->add_option("--print-n-max", print_n_max, "largest n written per snapshot")->capture_default_str();

  // fidelity
  CommonTimeFlags fid_flags;
  auto* fid = app.add_subcommand("fidelity", "neighbour fidelity F(b,t), its series audit, survival and purity");
  add_time_flags(*fid, fid_flags, 1, 1.0, 0.0);

  // ymean
  CommonTimeFlags y_flags;
  auto* ymean = app.add_subcommand("ymean", "environment-averaged criterion <y(b)> on a kappa*t grid");
  add_time_flags(*ymean, y_flags, 2, 0.1, 1.0);

  // figures
  std::string fig_which;
  std::string fig_out = "figures";
  std::vector<int> fig_levels;
  std::string fig_grid = "log:0.001:100:200";
  double fig_kappa = 1.0;
  double fig_lambda = 1.0;
  double fig_eps = 1e-10;
  auto* figs = app.add_subcommand("figures", "CSV + SVG analogs of the fidelity, survival and <y(b)> figures");
  figs->add_option("which", fig_which, "1 | 2 | 3 | 4 | all")
      ->required()
      ->check(CLI::IsMember({"1", "2", "3", "4", "all"}));
  figs->add_option("--out", fig_out, "output directory")->capture_default_str();
  figs->add_option("--b", fig_levels, "initial Fock indices (default 1 5 10 15 or 2 5 10 15)");
  figs->add_option("--grid", fig_grid, "kappa*t grid, log:START:STOP:POINTS")->capture_default_str();
  figs->add_option("--kappa", fig_kappa, "diffusion constant")->capture_default_str();
  figs->add_option("--lambda", fig_lambda, "nonlinearity for figures 3-4")->capture_default_str();
  figs->add_option("--eps", fig_eps, "relative tolerance of the series tails")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadArguments;
  }

  try {
    if (*crit) return cmd_criterion(crit_flags, crit_n, crit_format, crit_out, out, err);
    if (*scan) return cmd_scan(scan_flags, scan_min, scan_max, scan_format, scan_out, out);
    if (*evolve) return cmd_evolve(evolve_flags, print_n_max, out);
    if (*fid) return cmd_fidelity(fid_flags, out);
    if (*ymean) return cmd_ymean(y_flags, out);
    if (*figs) {
      std::vector<int> which;
      if (fig_which == "all") {
        which = {1, 2, 3, 4};
      } else {
        which = {std::stoi(fig_which)};
      }
      for (int w : which) {
        FigureOptions o;
        o.which = w;
        o.out_dir = fig_out;
        o.levels = fig_levels;
        o.grid = LogGrid::parse(fig_grid);
        o.kappa = fig_kappa;
        o.lambda = fig_lambda;
        o.tol.rel_eps = fig_eps;
        for (const auto& p : write_figure(o)) out << p.string() << "\n";
      }
      return kExitOk;
    }
  } catch (const NonConvergent& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergent;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitBadArguments;
  }
  return kExitBadArguments;
}

}  // namespace qlimit::app
