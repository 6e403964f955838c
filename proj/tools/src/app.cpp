#include "hillband/cli/app.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "hillband/cli/arc_document.hpp"
#include "hillband/cli/config.hpp"
#include "hillband/cli/parse.hpp"
#include "hillband/cli/plot.hpp"
#include "hillband/errors.hpp"
#include "hillband/identities.hpp"
#include "hillband/perturbation.hpp"

namespace hillband::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommandContext {
  std::ostream& out;
  std::ostream& err;
  ToolConfig config;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw IoError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------- disc

struct DiscArgs {
  int L = 1;
  std::string v = "0";
  std::string E = "0";
  std::string method = "chebyshev";
};

int cmd_disc(CommandContext& ctx, const DiscArgs& a) {
  const cplx v = parse_complex(a.v);
  const cplx E = parse_complex(a.E);
  const DiscriminantModel model(a.L, v);
  const Potential pot = Potential::sparse(a.L, v);
  std::optional<cplx> cheb, transfer;
  if (a.method != "transfer") cheb = model.eval(E);
  if (a.method != "chebyshev") transfer = discriminant_via_transfer(pot, E);
  if (cheb) ctx.out << "chebyshev " << format_complex(*cheb) << "\n";
  if (transfer) ctx.out << "transfer  " << format_complex(*transfer) << "\n";
  if (cheb && transfer) ctx.out << fmt::format("diff      {}\n", std::abs(*cheb - *transfer));
  return kExitOk;
}

// ---------------------------------------------------------------- arcs

struct ArcsArgs {
  int L = 1;
  std::string v = "0";
  int kappa_steps = 257;
  std::string out;
  std::string format = "json";
  std::optional<int> threads;
  std::optional<int> refine_levels;
  std::optional<double> merge_tolerance;
};

int cmd_arcs(CommandContext& ctx, const ArcsArgs& a) {
  if (a.kappa_steps < 2) throw std::invalid_argument("--kappa-steps must be >= 2");
  ArcOptions opts = ctx.config.arcs;
  if (a.threads) opts.threads = *a.threads;
  if (a.refine_levels) opts.refine_levels = *a.refine_levels;
  if (a.merge_tolerance) opts.merge_tolerance = *a.merge_tolerance;
  const DiscriminantModel model(a.L, parse_complex(a.v));
  const std::vector<double> grid = uniform_kappa_grid(a.kappa_steps);
  const ArcTrace trace = trace_arcs(model, grid, opts);
  const ArcDocument doc = make_arc_document(model, a.kappa_steps, trace);
  const std::string text = a.format == "csv" ? to_csv(doc) : to_json(doc);
  if (a.out.empty()) {
    ctx.out << text;
  } else {
    write_file(a.out, text);
    ctx.out << "components " << doc.component_count << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------- bands

struct BandsArgs {
  int L = 1;
  std::string v = "0";
};

int cmd_bands(CommandContext& ctx, const BandsArgs& a) {
  const cplx v = parse_complex(a.v);
  if (v.imag() != 0.0) throw DegenerateInput("bands: v must be real");
  const DiscriminantModel model(a.L, v);
  const BandStructure bands = v == cplx{0.0} ? free_band() : real_bands(model, ctx.config.arcs.solver);
  ctx.out << "k gamma_k beta_k\n";
  for (std::size_t k = 0; k < bands.intervals.size(); ++k) {
    ctx.out << fmt::format("{} {:.15g} {:.15g}\n", k, bands.intervals[k].lower, bands.intervals[k].upper);
  }
  return kExitOk;
}

// ---------------------------------------------------------------- plot

struct PlotArgs {
  int L = 1;
  std::string v = "0";
  std::string out;
  std::optional<std::string> region;
  std::optional<int> grid;
  std::string kappa;
  std::string levels = "2,-2";
  bool arcs = false;
  bool alpha = false;
  bool beta = false;
  std::optional<int> threads;
};

int cmd_plot(CommandContext& ctx, const PlotArgs& a) {
  const cplx v = parse_complex(a.v);
  PlotSpec spec;
  spec.region = default_region(v);
  if (a.region) {
    const std::vector<double> r = parse_real_list(*a.region);
    if (r.size() != 4) throw std::invalid_argument("--region expects x_min,x_max,y_min,y_max");
    spec.region = {r[0], r[1], r[2], r[3]};
  }
  spec.grid = a.grid.value_or(ctx.config.plot_grid);
  if (!a.kappa.empty()) spec.kappa_levels = parse_real_list(a.kappa);
  if (!a.levels.empty() && a.kappa.empty()) {
    for (double level : parse_real_list(a.levels)) {
      if (!(level >= -2.0 && level <= 2.0)) throw std::invalid_argument("--levels values must lie in [-2, 2]");
      spec.kappa_levels.push_back(level == 2.0 ? 0.0 : level == -2.0 ? std::numbers::pi : std::acos(level / 2.0));
    }
  }
  spec.arcs = a.arcs;
  spec.nodes_alpha = a.alpha;
  spec.nodes_beta = a.beta;
  spec.validate();
  ArcOptions opts = ctx.config.arcs;
  if (a.threads) opts.threads = *a.threads;
  const PlotData data = build_plot(DiscriminantModel(a.L, v), spec, opts);
  write_file(a.out, render_svg(data));
  ctx.out << fmt::format("wrote {} ({} level curves, {} Im-zero segments)\n", a.out, data.level_curves.size(),
                         data.imag_zero.size());
  return kExitOk;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  int L_max = 40;
  std::string v_list = "1,2i,0.5-0.3i,-3";
  bool inject_sign_error = false;
};

struct Worst {
  std::string name;
  int cases = 0;
  int failures = 0;
  double scaled = 0.0;  // abs_error / (1 + |closed_form|)
  std::string where;

  void add(const IdentityResult& r, const std::string& label) {
    ++cases;
    const double s = r.abs_error / (1.0 + std::abs(r.closed_form));
    if (!r.holds(1e-10)) ++failures;
    if (s >= scaled) {
      scaled = s;
      where = label;
    }
  }
};

int cmd_verify(CommandContext& ctx, const VerifyArgs& a) {
  if (a.L_max < 1) throw std::invalid_argument("--L-max must be >= 1");
  const std::vector<cplx> vs = parse_complex_list(a.v_list);
  Worst integral, parseval, trace;
  integral.name = "integral";
  parseval.name = "parseval";
  trace.name = "power_trace";
  for (int L = 1; L <= a.L_max; ++L) {
    for (cplx v : vs) {
      const std::string label = fmt::format("L={} v={}", L, format_complex(v));
      const DiscriminantModel model(L, v);
      IdentityResult ir = integral_of_discriminant(model);
      if (a.inject_sign_error) {
        // negative control: integrate 2T_L + vU_{L-1} instead of 2T_L - vU_{L-1}
        ir.computed = integrate_discriminant(DiscriminantModel(L, -v), (L + 3) / 2);
        ir.abs_error = std::abs(ir.computed - ir.closed_form);
      }
      integral.add(ir, label);
      parseval.add(parseval_norm(model), label);
    }
  }
  const std::vector<cplx> trace_points{2.0, -2.0, {0.5, 0.5}, {0.0, 1.9}, {-1.2, 0.3}, {1.0, -0.7}};
  for (int n = 1; n <= a.L_max; ++n) {
    for (cplx E : trace_points) trace.add(power_trace_identity(n, E), fmt::format("n={} E={}", n, format_complex(E)));
  }
  ctx.out << "identity     cases  failures  worst_scaled_error  at\n";
  bool ok = true;
  const Worst* worst = &integral;
  for (const Worst* w : {&integral, &parseval, &trace}) {
    ctx.out << fmt::format("{:<12} {:>5}  {:>8}  {:>18.3e}  {}\n", w->name, w->cases, w->failures, w->scaled, w->where);
    ok = ok && w->failures == 0;
    if (w->scaled > worst->scaled) worst = w;
  }
  ctx.out << fmt::format("worst {} {:.3e} at {}\n", worst->name, worst->scaled, worst->where);
  ctx.out << (ok ? "PASS" : "FAIL") << " (tolerance 1e-10 * (1 + |closed form|))\n";
  return ok ? kExitOk : kExitIdentityFailure;
}

// ---------------------------------------------------------------- approx

struct ApproxArgs {
  std::string regime = "small";
  int L = 1;
  int index = 1;
  std::string v = "0";
  double kappa = std::numbers::pi / 2.0;
  int steps = 5;
  bool compare_printed = false;
};

int cmd_approx(CommandContext& ctx, const ApproxArgs& a) {
  const Regime regime = a.regime == "large" ? Regime::LargeV : Regime::SmallV;
  const cplx v = parse_complex(a.v);
  const SolverOptions& solver = ctx.config.arcs.solver;
  const ApproxReport r = approximation_error_report(regime, a.L, a.index, v, a.kappa, solver);
  ctx.out << fmt::format("regime    {}\nL         {}\nindex     {}\nv         {}\nkappa     {}\n", to_string(regime),
                         a.L, a.index, format_complex(v), a.kappa);
  ctx.out << "approx    " << format_complex(r.approx) << "\n";
  ctx.out << "numeric   " << format_complex(r.numeric) << "\n";
  ctx.out << fmt::format("abs_error {:.6e}\n", r.abs_error);
  if (r.warning) ctx.out << "warning   " << *r.warning << "\n";
  if (a.compare_printed && regime == Regime::LargeV) {
    const cplx printed = large_v_floquet_approx(a.L, a.index, v, a.kappa, CoefficientForm::Printed);
    ctx.out << "printed   " << format_complex(printed) << "\n";
    ctx.out << fmt::format("printed_abs_error {:.6e}\n", std::abs(printed - r.numeric));
  }
  ctx.out << fmt::format("{:<4} {:<24} {:<14} {}\n", "m", "v", "abs_error", "ratio");
  const auto rows = error_ratio_table(regime, a.L, a.index, v, a.kappa, a.steps, solver);
  for (std::size_t m = 0; m < rows.size(); ++m) {
    ctx.out << fmt::format("{:<4} {:<24} {:<14.6e} {}\n", m, format_complex(rows[m].impurity), rows[m].abs_error,
                           rows[m].ratio ? fmt::format("{:.4f}", *rows[m].ratio) : std::string("-"));
  }
  return kExitOk;
}

std::optional<std::string> config_path_from_env() {
  if (const char* p = std::getenv("HILLBAND_CONFIG"); p != nullptr && *p != '\0') return std::string(p);
  return std::nullopt;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hill discriminant and spectra of sparse periodic Schroedinger operators", "hillband"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value file overriding solver settings (else $HILLBAND_CONFIG)");

  DiscArgs disc;
  auto* c_disc = app.add_subcommand("disc", "evaluate the discriminant");
  c_disc->add_option("--L", disc.L, "period")->required()->check(CLI::PositiveNumber);
  c_disc->add_option("--v", disc.v, "impurity, e.g. 0+2i");
  c_disc->add_option("--E", disc.E, "energy, e.g. 1.5-0.2i");
  c_disc->add_option("--method", disc.method)->check(CLI::IsMember({"chebyshev", "transfer", "both"}));

  ArcsArgs arcs;
  auto* c_arcs = app.add_subcommand("arcs", "trace spectral arcs over kappa in [0, pi]");
  c_arcs->add_option("--L", arcs.L)->required()->check(CLI::PositiveNumber);
  c_arcs->add_option("--v", arcs.v);
  c_arcs->add_option("--kappa-steps", arcs.kappa_steps, "base grid points (>= 2)");
  c_arcs->add_option("--out", arcs.out, "output file (stdout when omitted)");
  c_arcs->add_option("--format", arcs.format)->check(CLI::IsMember({"json", "csv"}));
  c_arcs->add_option("--threads", arcs.threads)->check(CLI::PositiveNumber);
  c_arcs->add_option("--refine-levels", arcs.refine_levels)->check(CLI::NonNegativeNumber);
  c_arcs->add_option("--merge-tolerance", arcs.merge_tolerance);

  BandsArgs bands;
  auto* c_bands = app.add_subcommand("bands", "real band edges for real v");
  c_bands->add_option("--L", bands.L)->required()->check(CLI::PositiveNumber);
  c_bands->add_option("--v", bands.v);

  PlotArgs plot;
  auto* c_plot = app.add_subcommand("plot", "SVG of level curves, Im Delta = 0 and arcs");
  c_plot->add_option("--L", plot.L)->required()->check(CLI::PositiveNumber);
  c_plot->add_option("--v", plot.v);
  c_plot->add_option("--out", plot.out, "SVG file")->required();
  c_plot->add_option("--region", plot.region, "x_min,x_max,y_min,y_max");
  c_plot->add_option("--grid", plot.grid, "cells per axis (>= 16)");
  c_plot->add_option("--kappa", plot.kappa, "comma-separated kappa values in [0, pi]");
  c_plot->add_option("--levels", plot.levels, "comma-separated values of 2 cos kappa (ignored with --kappa)");
  c_plot->add_flag("--arcs", plot.arcs, "overlay traced arcs");
  c_plot->add_flag("--alpha-nodes", plot.alpha, "mark alpha_j");
  c_plot->add_flag("--beta-nodes", plot.beta, "mark beta_k");
  c_plot->add_option("--threads", plot.threads)->check(CLI::PositiveNumber);

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify", "check the exact identities on a parameter grid");
  c_verify->add_option("--L-max", verify.L_max);
  c_verify->add_option("--v", verify.v_list, "comma-separated impurities");
  c_verify->add_flag("--inject-sign-error", verify.inject_sign_error)->group("");

  ApproxArgs approx;
  auto* c_approx = app.add_subcommand("approx", "first-order Floquet approximations against the solver");
  c_approx->add_option("--regime", approx.regime)->check(CLI::IsMember({"small", "large"}));
  c_approx->add_option("--L", approx.L)->required()->check(CLI::PositiveNumber);
  c_approx->add_option("--index", approx.index, "alpha index j (small) or beta index k (large)");
  c_approx->add_option("--v", approx.v);
  c_approx->add_option("--kappa", approx.kappa)->check(CLI::Range(0.0, std::numbers::pi));
  c_approx->add_option("--steps", approx.steps, "rows of the error-ratio table")->check(CLI::PositiveNumber);
  c_approx->add_flag("--compare-printed", approx.compare_printed, "also report the printed large-v coefficients");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  CommandContext ctx{out, err, {}};
  try {
    const std::optional<std::string> path = config_path.empty() ? config_path_from_env() : config_path;
    if (path) apply_config(ctx.config, read_key_values(*path));

    if (c_disc->parsed()) return cmd_disc(ctx, disc);
    if (c_arcs->parsed()) return cmd_arcs(ctx, arcs);
    if (c_bands->parsed()) return cmd_bands(ctx, bands);
    if (c_plot->parsed()) return cmd_plot(ctx, plot);
    if (c_verify->parsed()) return cmd_verify(ctx, verify);
    if (c_approx->parsed()) return cmd_approx(ctx, approx);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ConfigIoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::logic_error& e) {
    // invalid_argument, out_of_range, DegenerateInput, ConfigSyntaxError
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hillband::cli
