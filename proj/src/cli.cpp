#include "lqdg/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "lqdg/altruistic.hpp"
#include "lqdg/config.hpp"
#include "lqdg/feedback.hpp"
#include "lqdg/flowcontrol.hpp"
#include "lqdg/indices.hpp"
#include "lqdg/openloop.hpp"
#include "lqdg/simulate.hpp"
#include "lqdg/social.hpp"
#include "lqdg/textio.hpp"

namespace lqdg::cli {

namespace {

// Flat key/value report; arrays expand to key_1..key_N in CSV mode and
// print bracketed in human mode.
class Report {
 public:
  void add(std::string key, double value) {
    items_.push_back({std::move(key), {value}, false, {}});
  }
  void add(std::string key, const std::vector<double>& values) {
    items_.push_back({std::move(key), values, true, {}});
  }
  void add_text(std::string key, std::string text) {
    items_.push_back({std::move(key), {}, false, std::move(text)});
  }

  void write_human(std::ostream& os) const {
    std::size_t width = 0;
    for (const auto& item : items_) width = std::max(width, item.key.size());
    for (const auto& item : items_) {
      os << item.key << std::string(width - item.key.size(), ' ') << " = ";
      if (!item.text.empty()) {
        os << item.text;
      } else if (item.is_array) {
        os << '[';
        for (std::size_t i = 0; i < item.values.size(); ++i) {
          if (i) os << ", ";
          os << format_number(item.values[i]);
        }
        os << ']';
      } else {
        os << format_number(item.values[0]);
      }
      os << '\n';
    }
  }

  void write_csv(std::ostream& os) const {
    os << "key,value\n";
    for (const auto& item : items_) {
      if (!item.text.empty()) {
        os << item.key << ',' << item.text << '\n';
      } else if (item.is_array) {
        for (std::size_t i = 0; i < item.values.size(); ++i) {
          os << item.key << '_' << (i + 1) << ','
             << format_number(item.values[i]) << '\n';
        }
      } else {
        os << item.key << ',' << format_number(item.values[0]) << '\n';
      }
    }
  }

 private:
  struct Item {
    std::string key;
    std::vector<double> values;
    bool is_array = false;
    std::string text;
  };
  std::vector<Item> items_;
};

struct CommonOptions {
  std::string config_path;
  std::string output_path;
  std::string format = "human";
  int n_cap = kDefaultNCap;
  double residual_tol = 1e-9;
  double monomial_tol = 1e-6;
};

// Routes the report to --output or the session stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) {
        throw ConfigError("cannot open output file: " + path);
      }
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

void emit(const Report& report, const CommonOptions& opts, std::ostream& out) {
  Sink sink(opts.output_path, out);
  if (opts.format == "csv") {
    report.write_csv(sink.get());
  } else {
    report.write_human(sink.get());
  }
}

FeedbackOptions feedback_options(const CommonOptions& opts) {
  FeedbackOptions fb;
  fb.n_cap = opts.n_cap;
  fb.residual_tol = opts.residual_tol;
  fb.monomial_tol = opts.monomial_tol;
  return fb;
}

void print_candidate_diagnostics(const FeedbackSolveResult& result,
                                 std::ostream& err) {
  err << "error: no feedback equilibrium certified\n";
  err << "candidates (" << result.candidates.size() << "):\n";
  for (const auto& cand : result.candidates) {
    err << "  eigenvalue " << format_number(cand.eigenvalue.real());
    if (cand.eigenvalue.imag() != 0.0) {
      err << (cand.eigenvalue.imag() > 0 ? "+" : "-")
          << format_number(std::abs(cand.eigenvalue.imag())) << "i";
    }
    err << ": " << (cand.accepted ? "accepted" : cand.rejection) << '\n';
  }
}

// Solves the feedback game, falling back to the fixed-point method when
// the player count exceeds the eigenproblem cap.
struct FeedbackOutcome {
  std::vector<FeedbackEquilibrium> equilibria;
  std::optional<FeedbackSolveResult> eigen_result;
  bool fixedpoint_only = false;
};

FeedbackOutcome solve_feedback(const Game& game, const DerivedParams& params,
                               const CommonOptions& opts, std::ostream& err) {
  FeedbackOutcome outcome;
  if (game.n() <= opts.n_cap) {
    outcome.eigen_result = solve_feedback_eigen(game, params, feedback_options(opts));
    for (const auto& warning : outcome.eigen_result->warnings) {
      err << "warning: " << warning << '\n';
    }
    outcome.equilibria = outcome.eigen_result->equilibria;
  } else {
    err << "warning: n = " << game.n() << " above the eigen cap " << opts.n_cap
        << "; using the fixed-point method, equilibrium multiplicity unverified\n";
    outcome.equilibria.push_back(solve_feedback_fixedpoint(game, params));
    outcome.fixedpoint_only = true;
  }
  return outcome;
}

void add_equilibrium(Report& report, const std::string& prefix,
                     const FeedbackEquilibrium& eq) {
  report.add(prefix + "lambda", eq.lambda);
  report.add(prefix + "k", eq.k);
  report.add(prefix + "p", eq.p);
  report.add(prefix + "gain", eq.gains);
  report.add(prefix + "closed_loop_pole", eq.closed_loop_pole);
  report.add(prefix + "cost", eq.costs);
  report.add(prefix + "weighted_cost", eq.weighted_cost);
  report.add(prefix + "residual", eq.residual);
}

int cmd_solve_fb(const CommonOptions& opts, std::ostream& out,
                 std::ostream& err) {
  const Game game = make_game(load_game_config(opts.config_path));
  const DerivedParams params = derive_params(game);
  const FeedbackOutcome outcome = solve_feedback(game, params, opts, err);
  if (outcome.equilibria.empty()) {
    print_candidate_diagnostics(*outcome.eigen_result, err);
    return 1;
  }
  Report report;
  report.add("n", game.n());
  report.add("equilibria", static_cast<double>(outcome.equilibria.size()));
  if (outcome.fixedpoint_only) report.add_text("method", "fixed-point");
  for (std::size_t i = 0; i < outcome.equilibria.size(); ++i) {
    const std::string prefix =
        outcome.equilibria.size() == 1 ? "" : "eq" + std::to_string(i + 1) + "_";
    add_equilibrium(report, prefix, outcome.equilibria[i]);
  }
  emit(report, opts, out);
  return 0;
}

int cmd_solve_ol(const CommonOptions& opts, std::ostream& out, std::ostream&) {
  const Game game = make_game(load_game_config(opts.config_path));
  const DerivedParams params = derive_params(game);
  const OpenLoopEquilibrium eq = solve_openloop(game, params);
  Report report;
  report.add("n", game.n());
  report.add("p_bar", eq.p_bar);
  report.add("xi", eq.xi);
  report.add("k_star", eq.k_star);
  report.add("decay_rate", eq.decay_rate);
  report.add("cost", eq.costs);
  report.add("weighted_cost", eq.weighted_cost);
  emit(report, opts, out);
  return 0;
}

int cmd_solve_social(const CommonOptions& opts, std::ostream& out,
                     std::ostream&) {
  const Game game = make_game(load_game_config(opts.config_path));
  const DerivedParams params = derive_params(game);
  const SocialOptimum opt = solve_social(game, params);
  Report report;
  report.add("n", game.n());
  report.add("k_hat", opt.k_hat);
  report.add("gain", opt.gains);
  report.add("closed_loop_pole", opt.closed_loop_pole);
  report.add("cost", opt.cost);
  emit(report, opts, out);
  return 0;
}

int cmd_indices(const CommonOptions& opts, std::optional<double> chi_target,
                std::ostream& out, std::ostream& err) {
  const Game game = make_game(load_game_config(opts.config_path));
  const DerivedParams params = derive_params(game);
  const FeedbackOutcome outcome = solve_feedback(game, params, opts, err);
  if (outcome.equilibria.empty()) {
    print_candidate_diagnostics(*outcome.eigen_result, err);
    return 1;
  }
  const OpenLoopEquilibrium ol = solve_openloop(game, params);
  const SocialOptimum social = solve_social(game, params);
  std::optional<MonomialMatrix> m_tilde;
  if (!outcome.fixedpoint_only) {
    m_tilde = build_m_tilde(params, game.a(), opts.n_cap);
  }
  const IndexReport index =
      compute_indices(game, params, outcome.equilibria, outcome.fixedpoint_only,
                      ol, social, m_tilde ? &*m_tilde : nullptr);

  Report report;
  report.add("n", game.n());
  report.add("rho_fb", index.rho_fb);
  if (index.rho_fb_is_lower_bound) {
    report.add_text("rho_fb_note", "lower bound (fixed-point path only)");
  }
  report.add("rho_ol", index.rho_ol);
  report.add("chi", index.chi);
  report.add("gersgorin_bound", index.bounds.gersgorin);
  if (index.bounds.spectral_radius) {
    report.add("spectral_radius", *index.bounds.spectral_radius);
  }
  if (index.bounds.spectral) {
    report.add("poa_bound_spectral", *index.bounds.spectral);
  }
  report.add("poa_bound_rowsum", index.bounds.rowsum);
  if (index.bounds.positive_drift) {
    report.add("poa_bound_positive_drift", *index.bounds.positive_drift);
  }
  if (index.bounds.zero_drift) {
    report.add("poa_bound_zero_drift", *index.bounds.zero_drift);
  }
  report.add("chi_lower_bound", index.chi_lower_bound);
  report.add("approx_p", index.approx.p_approx);
  report.add("approx_gain", index.approx.gain_approx);
  report.add("approx_j_star", index.approx.j_star_approx);
  report.add("approx_rho_fb", index.approx.rho_fb_approx);
  if (game.a() == 0.0) {
    report.add("approx_rho_fb_a0", index.approx.rho_fb_approx_a0);
  }
  report.add("cond_a_over_n", index.approx.a_over_n);
  report.add("cond_sigma_max_ratio", index.approx.sigma_max_ratio);
  report.add("cond_min_p_minus_i_margin", index.approx.min_p_minus_i_margin);
  if (chi_target) {
    const PoiDesignCheck check = poi_design_check(game, params, *chi_target);
    report.add("design_chi_target", *chi_target);
    report.add("design_lhs", check.lhs);
    report.add("design_rhs", check.rhs);
    report.add_text("design_satisfied", check.satisfied ? "yes" : "no");
  }
  emit(report, opts, out);
  return 0;
}

int cmd_poc(const CommonOptions& opts, std::ostream& out, std::ostream& err) {
  const GameConfig config = load_game_config(opts.config_path);
  if (!config.lambda) {
    throw ConfigError("poc needs a lambda matrix in the config file");
  }
  const Game game = make_game(config);
  const DerivedParams params = derive_params(game);
  const FeedbackOutcome outcome = solve_feedback(game, params, opts, err);
  if (outcome.equilibria.empty()) {
    print_candidate_diagnostics(*outcome.eigen_result, err);
    return 1;
  }
  const PoCReport poc =
      price_of_cooperation(game, params, *config.lambda, outcome.equilibria);
  Report report;
  report.add("n", game.n());
  report.add("gain", poc.altruistic.gains);
  report.add("k_tilde", poc.altruistic.k_tilde);
  report.add("actual_cost", poc.altruistic.actual_costs);
  report.add("closed_loop_pole", poc.altruistic.closed_loop_pole);
  report.add("iterations", poc.altruistic.iterations);
  report.add("residual", poc.altruistic.residual);
  report.add("baseline_cost", poc.baseline_costs);
  report.add("nu", poc.nu);
  report.add_text("note", "single-equilibrium PoC: numerator covers the one converged altruistic equilibrium");
  emit(report, opts, out);
  return 0;
}

int cmd_simulate(const CommonOptions& opts, const std::string& policy_name,
                 double horizon, double dt, const std::string& dump_path,
                 std::ostream& out, std::ostream& err) {
  const Game game = make_game(load_game_config(opts.config_path));
  const DerivedParams params = derive_params(game);

  PolicyProfile policy;
  std::vector<double> closed_form;
  if (policy_name == "fb") {
    const FeedbackOutcome outcome = solve_feedback(game, params, opts, err);
    if (outcome.equilibria.empty()) {
      print_candidate_diagnostics(*outcome.eigen_result, err);
      return 1;
    }
    policy = PolicyProfile::from_equilibrium(outcome.equilibria.front());
    closed_form = outcome.equilibria.front().costs;
  } else if (policy_name == "ol") {
    const OpenLoopEquilibrium eq = solve_openloop(game, params);
    policy = PolicyProfile::from_equilibrium(eq, game);
    closed_form = eq.costs;
  } else if (policy_name == "social") {
    const SocialOptimum opt = solve_social(game, params);
    policy = PolicyProfile::from_optimum(opt);
    closed_form = eval_linear_policy_costs(game, opt.gains);
  } else {
    throw ConfigError("unknown policy '" + policy_name + "' (use fb, ol, social)");
  }

  double pole = game.a();
  if (policy.kind == PolicyProfile::Kind::FeedbackLinear) {
    for (int i = 0; i < game.n(); ++i) pole += game.b()[i] * policy.gains[i];
  } else {
    pole = policy.decay_rate;
  }
  if (horizon <= 0.0) horizon = default_horizon(pole);
  if (dt <= 0.0) dt = default_step(pole);

  std::unique_ptr<std::ofstream> dump;
  if (!dump_path.empty()) {
    dump = std::make_unique<std::ofstream>(dump_path);
    if (!*dump) throw ConfigError("cannot open dump file: " + dump_path);
  }
  const SimulationResult result =
      simulate(game, policy, horizon, dt, dump.get());

  Report report;
  report.add("n", game.n());
  report.add("horizon", result.horizon);
  report.add("dt", result.step);
  report.add("terminal_state", result.terminal_state);
  report.add("per_player_cost", result.per_player_cost);
  report.add("truncation_estimate", result.truncation_estimate);
  std::vector<double> totals(game.n());
  std::vector<double> rel_err(game.n());
  for (int i = 0; i < game.n(); ++i) {
    totals[i] = result.total_cost(i);
    rel_err[i] = std::abs(totals[i] - closed_form[i]) / std::abs(closed_form[i]);
  }
  report.add("total_cost", totals);
  report.add("closed_form_cost", closed_form);
  report.add("relative_error", rel_err);
  emit(report, opts, out);
  return 0;
}

int cmd_sweep(const CommonOptions& opts, const std::string& param, int from,
              int to, const std::string& normalization, double factor,
              std::ostream& out, std::ostream&) {
  if (param != "N") {
    throw ConfigError("sweep supports only --param N");
  }
  if (from < 1 || to < from) {
    throw ConfigError("sweep needs 1 <= from <= to");
  }
  Normalization tag = Normalization::One;
  if (normalization == "one") {
    tag = Normalization::One;
  } else if (normalization == "one-over-n") {
    tag = Normalization::OneOverN;
  } else if (normalization == "sqrt-n") {
    tag = Normalization::SqrtN;
  } else if (normalization == "custom") {
    tag = Normalization::Custom;
  } else {
    throw ConfigError("unknown normalization '" + normalization + "'");
  }

  Dataset d;
  d.columns = {"n",    "f",        "lambda", "k",      "j_fb",
               "j_social", "j_ol", "rho_fb", "rho_ol", "chi"};
  for (int n = from; n <= to; ++n) {
    const Game game = build_normalized_flow_control(n, tag, factor);
    const DerivedParams params = derive_params(game);
    const FeedbackEquilibrium fb = solve_feedback_fixedpoint(game, params);
    const OpenLoopEquilibrium ol = solve_openloop(game, params);
    const SocialOptimum social = solve_social(game, params);
    const double rho_fb = price_of_anarchy_fb(game, {fb}, social);
    const double rho_ol = price_of_anarchy_ol(ol, social);
    d.rows.push_back({static_cast<double>(n), cost_scale(tag, n, factor),
                      fb.lambda, fb.k[0], fb.weighted_cost, social.cost,
                      ol.weighted_cost, rho_fb, rho_ol,
                      price_of_information(rho_ol, rho_fb)});
  }
  Sink sink(opts.output_path, out);
  write_csv(sink.get(), d);
  return 0;
}

int cmd_reproduce(const CommonOptions& opts, const std::string& target_name,
                  int n_max, std::ostream& out, std::ostream&) {
  const auto target = parse_reproduce_target(target_name);
  if (!target) {
    throw ConfigError("unknown reproduce target '" + target_name + "'");
  }
  const Dataset d = reproduce(*target, n_max);
  Sink sink(opts.output_path, out);
  write_csv(sink.get(), d);
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Solvers and efficiency indices for scalar N-player "
               "linear-quadratic differential games"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::optional<double> chi_target;
  std::string policy = "fb";
  double horizon = 0.0;
  double dt = 0.0;
  std::string dump_path;
  std::string param = "N";
  int from = 2, to = 30;
  std::string normalization = "one";
  double factor = 1.0;
  std::string target_name;
  int n_max = 50;

  const auto add_common = [&](CLI::App* cmd, bool needs_config) {
    auto* config_opt = cmd->add_option("--config", opts.config_path,
                                       "game config file");
    if (needs_config) config_opt->required();
    cmd->add_option("--output", opts.output_path, "write the report here");
    cmd->add_option("--format", opts.format, "human or csv")
        ->check(CLI::IsMember({"human", "csv"}));
    cmd->add_option("--n-cap", opts.n_cap,
                    "max players for the 2^N eigenproblem");
    cmd->add_option("--residual-tol", opts.residual_tol,
                    "Riccati residual acceptance tolerance");
    cmd->add_option("--monomial-tol", opts.monomial_tol,
                    "eigenvector monomial-consistency tolerance");
    return cmd;
  };

  auto* solve_fb = add_common(
      app.add_subcommand("solve-fb", "feedback Nash equilibria"), true);
  auto* solve_ol = add_common(
      app.add_subcommand("solve-ol", "open-loop Nash equilibrium"), true);
  auto* solve_social = add_common(
      app.add_subcommand("solve-social", "cooperative optimum"), true);
  auto* indices = add_common(
      app.add_subcommand("indices", "prices of anarchy and information, "
                                    "bounds, approximations"),
      true);
  indices->add_option("--chi-target", chi_target,
                      "check the PoI design condition for this target");
  auto* poc = add_common(
      app.add_subcommand("poc", "altruistic game and price of cooperation"),
      true);
  auto* sim = add_common(
      app.add_subcommand("simulate", "integrate a solved policy and "
                                     "cross-check its cost"),
      true);
  sim->add_option("--policy", policy, "fb, ol, or social");
  sim->add_option("--horizon", horizon, "integration horizon (default 20/|pole|)");
  sim->add_option("--dt", dt, "step size (default min(1e-3, 0.01/|pole|))");
  sim->add_option("--dump", dump_path, "write the trajectory CSV here");
  auto* sweep = add_common(
      app.add_subcommand("sweep", "flow-control family over a range of N"),
      false);
  sweep->add_option("--param", param, "swept parameter (only N)");
  sweep->add_option("--from", from, "first N")->required();
  sweep->add_option("--to", to, "last N")->required();
  sweep->add_option("--normalization", normalization,
                    "one, one-over-n, sqrt-n, or custom");
  sweep->add_option("--factor", factor, "factor for --normalization custom");
  auto* repro = add_common(
      app.add_subcommand("reproduce", "emit a table or figure dataset"), false);
  repro->add_option("--target", target_name, "table1, table2, fig_poi_vs_N, "
                    "fig_poa_vs_N, fig_normalized_poi, fig_normalized_poa, "
                    "fig_sqrtN_poi")
      ->required();
  repro->add_option("--n-max", n_max, "largest population size");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_fb->parsed()) return cmd_solve_fb(opts, out, err);
    if (solve_ol->parsed()) return cmd_solve_ol(opts, out, err);
    if (solve_social->parsed()) return cmd_solve_social(opts, out, err);
    if (indices->parsed()) return cmd_indices(opts, chi_target, out, err);
    if (poc->parsed()) return cmd_poc(opts, out, err);
    if (sim->parsed()) {
      return cmd_simulate(opts, policy, horizon, dt, dump_path, out, err);
    }
    if (sweep->parsed()) {
      return cmd_sweep(opts, param, from, to, normalization, factor, out, err);
    }
    if (repro->parsed()) return cmd_reproduce(opts, target_name, n_max, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace lqdg::cli
