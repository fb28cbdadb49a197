#include "lqdg/altruistic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lqdg {

namespace {

// Stabilizing best-response value coefficient for a scalar LQR with
// drift a_tilde, state weight state_w, control weight control_w.
double best_response_value(double a_tilde, double b, double state_w,
                           double control_w) {
  return control_w / (b * b) *
         (a_tilde + std::sqrt(a_tilde * a_tilde + state_w * b * b / control_w));
}

}  // namespace

AltruisticEquilibrium solve_altruistic_fb(const Game& game,
                                          const DerivedParams& /*params*/,
                                          const CooperationMatrix& lambda,
                                          const AltruisticOptions& options) {
  validate_cooperation(game, lambda);
  const int n = game.n();
  const auto& lam = lambda.lambda;

  std::vector<double> g(n, 0.0);
  int iterations = 0;
  double change = 0.0;
  bool converged = false;
  while (iterations < options.max_iterations) {
    ++iterations;
    change = 0.0;
    for (int i = 0; i < n; ++i) {
      double drift = game.a();
      double state_w = 0.0;
      for (int j = 0; j < n; ++j) {
        state_w += lam[i][j] * game.q()[j];
        if (j == i) continue;
        drift += game.b()[j] * g[j];
        state_w += lam[i][j] * game.r()[j] * g[j] * g[j];
      }
      const double control_w = lam[i][i] * game.r()[i];
      const double value =
          best_response_value(drift, game.b()[i], state_w, control_w);
      const double updated = -game.b()[i] * value / control_w;
      change = std::max(change, std::abs(updated - g[i]));
      g[i] = updated;
    }
    if (change <= options.gain_tol) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "best-response iteration did not converge in " << iterations
        << " sweeps; last gain change " << change << ", last gains (";
    for (int i = 0; i < n; ++i) msg << (i ? ", " : "") << g[i];
    msg << ")";
    throw NonConvergence(msg.str());
  }

  AltruisticEquilibrium eq;
  eq.gains = g;
  eq.iterations = iterations;
  eq.closed_loop_pole = game.a();
  for (int i = 0; i < n; ++i) eq.closed_loop_pole += game.b()[i] * g[i];
  if (!(eq.closed_loop_pole < 0.0)) {
    throw UnstableClosedLoop("altruistic fixed point is not stabilizing");
  }

  // Stationarity check with the best-response value coefficients: at a
  // fixed point, 2 K_i (a + sum_j b_j g_j) + sum_j lambda_i^j q_j
  //            + sum_j lambda_i^j r_j g_j^2 = 0.
  eq.k_tilde.resize(n);
  eq.actual_costs.resize(n);
  eq.residual = 0.0;
  const double x0_sq = game.x0() * game.x0();
  for (int i = 0; i < n; ++i) {
    double drift = game.a();
    double state_w = 0.0;
    double full_weight = 0.0;
    for (int j = 0; j < n; ++j) {
      state_w += lam[i][j] * game.q()[j];
      full_weight += lam[i][j] * (game.q()[j] + game.r()[j] * g[j] * g[j]);
      if (j != i) {
        drift += game.b()[j] * g[j];
        state_w += lam[i][j] * game.r()[j] * g[j] * g[j];
      }
    }
    const double control_w = lam[i][i] * game.r()[i];
    eq.k_tilde[i] = best_response_value(drift, game.b()[i], state_w, control_w);
    const double residual =
        2.0 * eq.k_tilde[i] * eq.closed_loop_pole + full_weight;
    eq.residual = std::max(eq.residual, std::abs(residual));
    eq.actual_costs[i] = (game.q()[i] + game.r()[i] * g[i] * g[i]) * x0_sq /
                         (-2.0 * eq.closed_loop_pole);
  }
  if (eq.residual > options.residual_tol) {
    std::ostringstream msg;
    msg << "stationarity residual " << eq.residual
        << " above tolerance at the converged point";
    throw NonConvergence(msg.str());
  }
  return eq;
}

PoCReport price_of_cooperation(
    const Game& game, const DerivedParams& params,
    const CooperationMatrix& lambda,
    const std::vector<FeedbackEquilibrium>& fb_equilibria) {
  if (fb_equilibria.empty()) {
    throw NoEquilibrium("price of cooperation needs the base game's equilibria");
  }
  PoCReport report;
  report.altruistic = solve_altruistic_fb(game, params, lambda);
  const int n = game.n();
  report.baseline_costs.assign(n, 0.0);
  for (const auto& eq : fb_equilibria) {
    for (int i = 0; i < n; ++i) {
      report.baseline_costs[i] = std::max(report.baseline_costs[i], eq.costs[i]);
    }
  }
  report.nu.resize(n);
  for (int i = 0; i < n; ++i) {
    report.nu[i] = report.altruistic.actual_costs[i] / report.baseline_costs[i];
  }
  return report;
}

}  // namespace lqdg
