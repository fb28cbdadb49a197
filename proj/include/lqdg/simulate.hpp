#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "lqdg/game.hpp"

namespace lqdg {

struct FeedbackEquilibrium;
struct OpenLoopEquilibrium;
struct SocialOptimum;

/// A policy profile the integrator can play back: either stationary
/// linear state feedback u_i = gains[i] * x, or the exponential
/// open-loop form u_i(t) = amplitude[i] * exp(decay_rate * t).
struct PolicyProfile {
  enum class Kind { FeedbackLinear, OpenLoopExponential };

  Kind kind = Kind::FeedbackLinear;
  std::vector<double> gains;
  std::vector<double> amplitude;
  double decay_rate = 0.0;

  static PolicyProfile feedback(std::vector<double> gains);
  static PolicyProfile open_loop(std::vector<double> amplitude,
                                 double decay_rate);

  static PolicyProfile from_equilibrium(const FeedbackEquilibrium& eq);
  static PolicyProfile from_equilibrium(const OpenLoopEquilibrium& eq,
                                        const Game& game);
  static PolicyProfile from_optimum(const SocialOptimum& opt);
};

struct SimulationResult {
  double horizon = 0.0;
  double step = 0.0;
  std::vector<double> per_player_cost;     // integral over [0, horizon]
  double terminal_state = 0.0;
  std::vector<double> truncation_estimate; // analytic tail beyond horizon

  /// Infinite-horizon estimate for player i.
  double total_cost(int i) const {
    return per_player_cost[i] + truncation_estimate[i];
  }
};

/// Exact infinite-horizon cost of a stable linear feedback profile:
///   J_i = (q_i + r_i g_i^2) x0^2 / (-2 (a + sum_j b_j g_j)).
/// Throws UnstableClosedLoop when the closed-loop drift is nonnegative.
std::vector<double> eval_linear_policy_costs(const Game& game,
                                             std::span<const double> gains);

/// Classical fixed-step 4th-order integration of the state and the
/// running costs; the analytic tail past the horizon is added to
/// truncation_estimate. Throws UnstableClosedLoop when the state passes
/// 1e12 in magnitude or the tail integral diverges. When trajectory_csv
/// is given, writes rows t,x,u_1..u_N,running_cost_1..N.
SimulationResult simulate(const Game& game, const PolicyProfile& policy,
                          double horizon, double dt,
                          std::ostream* trajectory_csv = nullptr);

/// Defaults used by tests and the CLI, keyed to the closed-loop pole.
double default_horizon(double pole);
double default_step(double pole);

}  // namespace lqdg
