#include "lqdg/openloop.hpp"

#include <cmath>

namespace lqdg {

OpenLoopEquilibrium solve_openloop(const Game& game,
                                   const DerivedParams& params) {
  const int n = game.n();
  const double a = game.a();
  const double root = std::sqrt(a * a + params.sigma_bar);

  OpenLoopEquilibrium eq;
  eq.p_bar = root + a;
  eq.xi.resize(n);
  eq.k_star.resize(n);
  eq.costs.resize(n);
  double coupling = 0.0;
  const double x0_sq = game.x0() * game.x0();
  for (int i = 0; i < n; ++i) {
    eq.xi[i] = game.q()[i] / (root - a);
    coupling += params.s[i] * eq.xi[i];
    const double denom_sq = (root - a) * (root - a);
    eq.k_star[i] =
        (game.q()[i] / 2.0 + params.sigma[i] * game.q()[i] / (2.0 * denom_sq)) /
        root;
    eq.costs[i] = eq.k_star[i] * x0_sq;
    eq.k_mu += game.mu()[i] * eq.k_star[i];
  }
  eq.decay_rate = a - coupling;
  eq.weighted_cost = eq.k_mu * x0_sq;
  return eq;
}

std::vector<double> openloop_control(const OpenLoopEquilibrium& eq,
                                     const Game& game, double t) {
  if (t < 0.0) {
    throw InvalidArgument("open-loop control requested for negative time");
  }
  const int n = game.n();
  std::vector<double> u(n);
  const double envelope = std::exp(eq.decay_rate * t) * game.x0();
  for (int i = 0; i < n; ++i) {
    u[i] = -(game.b()[i] / game.r()[i]) * eq.xi[i] * envelope;
  }
  return u;
}

std::vector<double> riccati_residual_ol(const Game& game,
                                        std::span<const double> xi) {
  const int n = game.n();
  double coupling = 0.0;
  for (int i = 0; i < n; ++i) {
    coupling += game.b()[i] * game.b()[i] / game.r()[i] * xi[i];
  }
  std::vector<double> res(n);
  for (int i = 0; i < n; ++i) {
    res[i] = 2.0 * game.a() * xi[i] + game.q()[i] - xi[i] * coupling;
  }
  return res;
}

}  // namespace lqdg
