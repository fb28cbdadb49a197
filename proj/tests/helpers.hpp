#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "lqdg/flowcontrol.hpp"
#include "lqdg/game.hpp"

namespace lqdg::testing {

inline Game flow(int n) { return build_flow_control(n); }

struct RandomGameOptions {
  int n_min = 1;
  int n_max = 6;
  bool zero_drift = false;
  double a_min = -1.0;
  double a_max = 1.0;
  double sigma_min = 0.1;
  double sigma_max = 10.0;
  bool random_weights = false;
};

/// Draws a validated game with sigma_i in the requested window by
/// sampling s_i and r_i and back-solving b_i and q_i.
inline Game random_game(std::mt19937& rng, const RandomGameOptions& opts = {}) {
  std::uniform_int_distribution<int> n_dist(opts.n_min, opts.n_max);
  std::uniform_real_distribution<double> a_dist(opts.a_min, opts.a_max);
  std::uniform_real_distribution<double> s_dist(0.25, 4.0);
  std::uniform_real_distribution<double> r_dist(0.5, 2.0);
  std::uniform_real_distribution<double> sigma_dist(opts.sigma_min,
                                                    opts.sigma_max);
  std::uniform_real_distribution<double> x0_dist(0.5, 2.0);
  std::bernoulli_distribution sign_dist(0.5);

  const int n = n_dist(rng);
  GameSpec spec;
  spec.a = opts.zero_drift ? 0.0 : a_dist(rng);
  spec.x0 = sign_dist(rng) ? x0_dist(rng) : -x0_dist(rng);
  spec.b.resize(n);
  spec.q.resize(n);
  spec.r.resize(n);
  for (int i = 0; i < n; ++i) {
    const double s = s_dist(rng);
    const double sigma = sigma_dist(rng);
    spec.r[i] = r_dist(rng);
    spec.b[i] = (sign_dist(rng) ? 1.0 : -1.0) * std::sqrt(s * spec.r[i]);
    spec.q[i] = sigma / s;
  }
  if (!opts.random_weights) {
    return validate_spec(std::move(spec));
  }
  std::uniform_real_distribution<double> w_dist(0.2, 1.0);
  std::vector<double> mu(n);
  double total = 0.0;
  for (double& w : mu) total += (w = w_dist(rng));
  for (double& w : mu) w /= total;
  // Renormalize exactly enough for the 1e-12 simplex check.
  double sum = 0.0;
  for (double w : mu) sum += w;
  mu.back() += 1.0 - sum;
  return validate_spec(std::move(spec), WeightVector{std::move(mu)});
}

}  // namespace lqdg::testing
