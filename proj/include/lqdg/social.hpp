#pragma once

#include <vector>

#include "lqdg/game.hpp"

namespace lqdg {

/// Solution of the centralized problem min sum_i mu_i J_i:
///   k_hat = (a + sqrt(a^2 + q_bar b_bar)) / b_bar,
///   g_i   = -b_i k_hat / (mu_i r_i),  J = k_hat x0^2.
struct SocialOptimum {
  double k_hat = 0.0;
  std::vector<double> gains;
  double closed_loop_pole = 0.0;    // a - b_bar k_hat, negative
  double cost = 0.0;
};

SocialOptimum solve_social(const Game& game, const DerivedParams& params);

/// Open-loop form of the optimal control, u_i(t) = g_i exp(pole t) x0.
std::vector<double> social_control(const SocialOptimum& opt, const Game& game,
                                   double t);

}  // namespace lqdg
