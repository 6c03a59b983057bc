#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "paretolab/closed_form.hpp"
#include "paretolab/dirichlet.hpp"
#include "paretolab/error.hpp"
#include "paretolab/estimators.hpp"
#include "paretolab/experiments.hpp"
#include "paretolab/io.hpp"
#include "paretolab/log_grid.hpp"
#include "paretolab/model.hpp"
#include "paretolab/montecarlo.hpp"

namespace paretolab::cli {

namespace {

using nlohmann::json;

struct ParamArgs {
  double p = 0.6;
  double gamma = 0.5;
  double kappa = 1.2;
};

void add_param_flags(CLI::App* sub, ParamArgs& a, bool required) {
  auto* p = sub->add_option("--p", a.p, "win probability, 0 < p < 1");
  auto* g = sub->add_option("--gamma", a.gamma, "wagered fraction, gamma > 0");
  auto* k = sub->add_option("--kappa", a.kappa, "dissipative coefficient, kappa >= 1");
  if (required) {
    p->required();
    g->required();
    k->required();
  }
}

ModelParams params_of(const ParamArgs& a, std::ostream& err) {
  auto params = validate_params(a.p, a.gamma, a.kappa);
  if (params.low_p_warning()) err << "warning: p <= 1/2, bets have no positive expected gain\n";
  return params;
}

std::optional<double> parse_auto(const std::string& text, const char* flag) {
  if (text == "auto") return std::nullopt;
  try {
    return parse_double(text);
  } catch (const Error&) {
    throw Error(ErrorKind::Parse, std::string(flag) + " expects a number or 'auto'");
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(parse_double(cell));
  return out;
}

void emit(const std::optional<std::string>& path, const std::string& content, std::ostream& out) {
  if (path) write_text_file(*path, content);
  else out << content;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"paretolab: dissipative multiplicative wealth model and its Pareto tails"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  // exponent
  ParamArgs ex;
  bool ex_json = false;
  auto* exponent = app.add_subcommand("exponent", "characteristic roots and Pareto exponent");
  add_param_flags(exponent, ex, true);
  exponent->add_flag("--json", ex_json, "emit JSON instead of aligned text");

  // sweep
  ParamArgs sw;
  std::string sw_param = "kappa";
  double sw_from = 1.0, sw_to = 2.0;
  int sw_steps = 11;
  std::optional<std::string> sw_out;
  auto* sweep = app.add_subcommand("sweep", "alpha along one parameter, CSV value,alpha");
  add_param_flags(sweep, sw, false);
  sweep->add_option("--param", sw_param, "p, gamma or kappa")->required();
  sweep->add_option("--from", sw_from)->required();
  sweep->add_option("--to", sw_to)->required();
  sweep->add_option("--steps", sw_steps, "points, endpoints included");
  sweep->add_option("--out", sw_out, "CSV path (default stdout)");

  // solve
  ParamArgs so;
  int so_m = 8;
  double so_xmin = 1.0, so_xmax = 1e6, so_scale = 1.0;
  std::string so_branch = "sound", so_mod;
  std::optional<std::string> so_out;
  auto* solve = app.add_subcommand("solve", "invariant density on the log grid + residual JSON");
  add_param_flags(solve, so, true);
  solve->add_option("--m", so_m, "cells per lambda");
  solve->add_option("--x-min", so_xmin);
  solve->add_option("--x-max", so_xmax);
  solve->add_option("--branch", so_branch, "sound (x^rho0) or growing (x^rho1)");
  solve->add_option("--modulation", so_mod, "m comma-separated positive values (default 1)");
  solve->add_option("--scale", so_scale);
  solve->add_option("--out", so_out, "grid CSV path");

  // stability
  ParamArgs st;
  std::string st_xc = "auto", st_xmax = "auto";
  int st_steps = 40, st_m = 8;
  double st_xmin = 1.0;
  bool st_diag = false;
  std::optional<std::string> st_json, st_csv;
  auto* stability = app.add_subcommand("stability", "confiscation experiment");
  add_param_flags(stability, st, true);
  stability->add_option("--xc", st_xc, "threshold or 'auto' (top 10% of tail mass)");
  stability->add_option("--steps", st_steps);
  stability->add_option("--m", st_m);
  stability->add_option("--x-min", st_xmin);
  stability->add_option("--x-max", st_xmax, "grid top or 'auto'");
  stability->add_flag("--diagnostic", st_diag, "allow kappa = 1");
  stability->add_option("--json-out", st_json, "report JSON path (default stdout)");
  stability->add_option("--csv-out", st_csv, "per-step CSV path");

  // mc
  ParamArgs mc;
  std::optional<std::string> mc_config, mc_samples;
  McConfig mcc;
  bool mc_no_tail = false;
  auto* mcmd = app.add_subcommand("mc", "agent Monte Carlo with kill/reinjection");
  add_param_flags(mcmd, mc, false);
  mcmd->add_option("--config", mc_config, "multi-class mix JSON instead of --p/--gamma/--kappa");
  mcmd->add_option("--agents", mcc.n_agents);
  mcmd->add_option("--steps", mcc.n_steps);
  mcmd->add_option("--burn-in", mcc.burn_in);
  mcmd->add_option("--seed", mcc.seed);
  mcmd->add_option("--reinject-at", mcc.reinject_at);
  mcmd->add_option("--hill-k", mcc.hill_k, "order statistics (0 = 1% of agents)");
  mcmd->add_flag("--no-tail", mc_no_tail, "simulate only");
  mcmd->add_option("--samples-out", mc_samples, "samples CSV path");

  // multiclass
  std::string mu_config;
  int mu_grid_steps = 0, mu_m = 8;
  auto* multi = app.add_subcommand("multiclass", "tail root of the multi-class Dirichlet polynomial");
  multi->add_option("--config", mu_config, "mix JSON")->required();
  multi->add_option("--grid-steps", mu_grid_steps, "also iterate a bump on the grid (commensurate mixes)");
  multi->add_option("--m", mu_m, "cells per smallest lambda for --grid-steps");

  // equivalence
  ParamArgs eq;
  double eq_x0 = 1.0;
  auto* equiv = app.add_subcommand("equivalence", "summable tail <=> alpha > 1 <=> kappa > 1");
  add_param_flags(equiv, eq, true);
  equiv->add_option("--x0", eq_x0);

  std::vector<const char*> cargv;
  for (const auto& a : argv) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*exponent) {
      const auto params = params_of(ex, err);
      const auto r = pareto_exponent(params);
      const auto j = to_json(params, r);
      if (ex_json) {
        out << dump(j);
      } else {
        for (const char* key : {"p", "gamma", "kappa", "lambda", "a", "b", "x1", "x2", "rho0", "rho1", "alpha"}) {
          char line[64];
          std::snprintf(line, sizeof line, "%-7s%s\n", key, format_double(j[key].get<double>()).c_str());
          out << line;
        }
      }
    } else if (*sweep) {
      const auto params = params_of(sw, err);
      const auto rows = exponent_sweep(params, parse_sweep_param(sw_param), sw_from, sw_to, sw_steps);
      std::ostringstream csv;
      csv << "value,alpha\n";
      for (const auto& r : rows) csv << format_double(r.value) << ',' << format_double(r.alpha) << '\n';
      emit(sw_out, csv.str(), out);
    } else if (*solve) {
      const auto params = params_of(so, err);
      const GridSpec spec{so_m, so_xmin, so_xmax};
      std::vector<double> mod = so_mod.empty() ? std::vector<double>(static_cast<std::size_t>(std::max(so_m, 0)), 1.0)
                                               : parse_list(so_mod);
      Branch branch = Branch::Decaying;
      if (so_branch == "growing") branch = Branch::Growing;
      else if (so_branch != "sound") throw Error(ErrorKind::Parse, "--branch expects sound or growing");
      const auto g = pareto_fixed_point(params, spec, mod, so_scale, branch);
      const auto r = pareto_exponent(params);
      if (so_out) {
        std::ostringstream csv;
        write_grid_csv(csv, g);
        write_text_file(*so_out, csv.str());
      }
      json j{{"residual", residual(g, params)},
             {"cells", g.size()},
             {"m", g.m},
             {"lambda", g.lambda},
             {"rho", branch == Branch::Decaying ? r.rho0 : r.rho1},
             {"alpha", r.alpha},
             {"discrete_l1", discrete_l1(g)}};
      out << dump(j);
    } else if (*stability) {
      const auto params = params_of(st, err);
      const auto xc_given = parse_auto(st_xc, "--xc");
      const double x_c = xc_given ? *xc_given : auto_confiscation_threshold(params, st_xmin);
      GridSpec spec{st_m, st_xmin, 0.0};
      if (const auto xmax = parse_auto(st_xmax, "--x-max")) spec.x_max = *xmax;
      else spec = auto_stability_grid(params, st_m, st_xmin, x_c);
      ConfiscationOptions opts;
      opts.allow_non_dissipative = st_diag;
      const auto rep = confiscation_experiment(params, spec, x_c, st_steps, opts);
      emit(st_json, dump(to_json(rep)), out);
      if (st_csv) {
        std::ostringstream csv;
        write_trace_csv(csv, rep.d, rep.ratios);
        write_text_file(*st_csv, csv.str());
      }
    } else if (*mcmd) {
      mcc.threads = default_thread_count();
      mcc.estimate_tail = !mc_no_tail;
      Dynamics dyn;
      json model;
      if (mc_config) {
        const auto mix = mix_from_json(json::parse(read_text_file(*mc_config)));
        dyn = make_dynamics(mix);
        model = to_json(mix);
      } else {
        const auto params = params_of(mc, err);
        dyn = make_dynamics(params);
        model = {{"p", params.p()}, {"gamma", params.gamma()}, {"kappa", params.kappa()}};
      }
      const auto res = run_mc(dyn, mcc);
      if (mc_samples) {
        std::ostringstream csv;
        write_samples_csv(csv, res.samples);
        write_text_file(*mc_samples, csv.str());
      }
      json j{{"model", model},
             {"agents", mcc.n_agents},
             {"steps", mcc.n_steps},
             {"burn_in", mcc.burn_in},
             {"seed", mcc.seed},
             {"reinject_at", mcc.reinject_at}};
      if (res.tail) {
        j["tail"] = to_json(*res.tail);
        json profile = json::array();
        for (const auto& t : res.hill_profile) profile.push_back(to_json(t));
        j["hill_profile"] = profile;
        j["threshold_in_source_region"] = res.threshold_in_source_region;
      }
      out << dump(j);
    } else if (*multi) {
      const auto mix = mix_from_json(json::parse(read_text_file(mu_config)));
      const auto root = find_tail_root(mix);
      json j{{"kappa", mix.kappa()},
             {"classes", mix.entries().size()},
             {"rho0", root.rho0},
             {"alpha", root.alpha},
             {"certificate", root.certificate},
             {"rho_min", root.rho_min},
             {"d_min", root.d_min}};
      j["rho_upper"] = root.rho_upper ? json(*root.rho_upper) : json(nullptr);
      if (mu_grid_steps > 0) {
        const auto g = multiclass_grid_tail(mix, mu_m, mu_grid_steps);
        j["grid"] = {{"steps", mu_grid_steps},
                     {"m", mu_m},
                     {"period_cells", g.period_cells},
                     {"alpha_hat", g.slope.alpha_hat},
                     {"relative_error", g.relative_error}};
      }
      out << dump(j);
    } else if (*equiv) {
      const auto params = params_of(eq, err);
      const auto e = equivalence_check(params, eq_x0);
      json j{{"tail_integral_converges", e.tail_integral_converges},
             {"alpha_above_one", e.alpha_above_one},
             {"dissipative", e.dissipative},
             {"agree", e.agree},
             {"rho0", e.rho0},
             {"alpha", e.alpha},
             {"tail_count", json_number(e.tail_count)},
             {"tail_wealth", json_number(e.tail_wealth)}};
      out << dump(j);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_numerical(e.kind()) ? kExitNumerical : kExitUsage;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace paretolab::cli
