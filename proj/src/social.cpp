#include "lqdg/social.hpp"

#include <cmath>

namespace lqdg {

SocialOptimum solve_social(const Game& game, const DerivedParams& params) {
  const int n = game.n();
  const double a = game.a();
  SocialOptimum opt;
  opt.k_hat = (a + std::sqrt(a * a + params.q_bar * params.b_bar)) / params.b_bar;
  opt.gains.resize(n);
  for (int i = 0; i < n; ++i) {
    opt.gains[i] = -game.b()[i] * opt.k_hat / (game.mu()[i] * game.r()[i]);
  }
  opt.closed_loop_pole = a - params.b_bar * opt.k_hat;
  opt.cost = opt.k_hat * game.x0() * game.x0();
  return opt;
}

std::vector<double> social_control(const SocialOptimum& opt, const Game& game,
                                   double t) {
  if (t < 0.0) {
    throw InvalidArgument("social control requested for negative time");
  }
  std::vector<double> u(game.n());
  const double envelope = std::exp(opt.closed_loop_pole * t) * game.x0();
  for (int i = 0; i < game.n(); ++i) u[i] = opt.gains[i] * envelope;
  return u;
}

}  // namespace lqdg
