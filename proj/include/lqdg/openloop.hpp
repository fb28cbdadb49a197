#pragma once

#include <span>
#include <vector>

#include "lqdg/game.hpp"

namespace lqdg {

/// The unique open-loop Nash equilibrium, in closed form:
///   p_bar    = sqrt(a^2 + sigma_bar) + a,
///   xi_i     = q_i / (sqrt(a^2 + sigma_bar) - a),
///   u_i(t)   = -(b_i / r_i) xi_i exp(decay_rate t) x0.
struct OpenLoopEquilibrium {
  std::vector<double> xi;
  double p_bar = 0.0;
  std::vector<double> k_star;       // cost coefficients, J_i = k_i x0^2
  double decay_rate = 0.0;          // a - sum_j s_j xi_j, negative
  std::vector<double> costs;
  double k_mu = 0.0;                // sum_i mu_i k_i
  double weighted_cost = 0.0;       // k_mu x0^2
};

OpenLoopEquilibrium solve_openloop(const Game& game, const DerivedParams& params);

/// Control values u_i(t) under the open-loop equilibrium; t >= 0.
std::vector<double> openloop_control(const OpenLoopEquilibrium& eq,
                                     const Game& game, double t);

/// Residual of the defining equations at a candidate xi:
///   2 a xi_i + q_i - xi_i sum_j s_j xi_j.
std::vector<double> riccati_residual_ol(const Game& game,
                                        std::span<const double> xi);

}  // namespace lqdg
