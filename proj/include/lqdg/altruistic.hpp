#pragma once

#include <vector>

#include "lqdg/feedback.hpp"
#include "lqdg/game.hpp"

namespace lqdg {

/// Feedback equilibrium of the altruistic game in which Player i
/// minimizes sum_j lambda_i^j J_j instead of J_i.
struct AltruisticEquilibrium {
  std::vector<double> gains;
  std::vector<double> k_tilde;       // value coefficients of the altruistic costs
  std::vector<double> actual_costs;  // J_i under the altruistic profile
  double closed_loop_pole = 0.0;
  int iterations = 0;
  double residual = 0.0;             // max stationarity-system residual
};

struct AltruisticOptions {
  double gain_tol = 1e-12;
  int max_iterations = 10000;
  double residual_tol = 1e-10;
};

/// Gauss-Seidel best-response iteration: each player in turn solves the
/// scalar Riccati problem induced by the other players' current gains.
/// Convergence is not guaranteed; NonConvergence reports the last
/// gain-change norm instead of returning a result.
AltruisticEquilibrium solve_altruistic_fb(const Game& game,
                                          const DerivedParams& params,
                                          const CooperationMatrix& lambda,
                                          const AltruisticOptions& options = {});

/// Per-player cost ratios nu_i = J_i(altruistic) / max over the base
/// game's equilibria of J_i. The numerator covers the single converged
/// altruistic equilibrium.
struct PoCReport {
  std::vector<double> nu;
  AltruisticEquilibrium altruistic;
  std::vector<double> baseline_costs;
};

PoCReport price_of_cooperation(const Game& game, const DerivedParams& params,
                               const CooperationMatrix& lambda,
                               const std::vector<FeedbackEquilibrium>& fb_equilibria);

}  // namespace lqdg
