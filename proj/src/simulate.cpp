#include "lqdg/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "lqdg/feedback.hpp"
#include "lqdg/openloop.hpp"
#include "lqdg/social.hpp"
#include "lqdg/textio.hpp"

namespace lqdg {

PolicyProfile PolicyProfile::feedback(std::vector<double> gains) {
  PolicyProfile p;
  p.kind = Kind::FeedbackLinear;
  p.gains = std::move(gains);
  return p;
}

PolicyProfile PolicyProfile::open_loop(std::vector<double> amplitude,
                                       double decay_rate) {
  PolicyProfile p;
  p.kind = Kind::OpenLoopExponential;
  p.amplitude = std::move(amplitude);
  p.decay_rate = decay_rate;
  return p;
}

PolicyProfile PolicyProfile::from_equilibrium(const FeedbackEquilibrium& eq) {
  return feedback(eq.gains);
}

PolicyProfile PolicyProfile::from_equilibrium(const OpenLoopEquilibrium& eq,
                                              const Game& game) {
  std::vector<double> amp(game.n());
  for (int i = 0; i < game.n(); ++i) {
    amp[i] = -(game.b()[i] / game.r()[i]) * eq.xi[i] * game.x0();
  }
  return open_loop(std::move(amp), eq.decay_rate);
}

PolicyProfile PolicyProfile::from_optimum(const SocialOptimum& opt) {
  return feedback(opt.gains);
}

std::vector<double> eval_linear_policy_costs(const Game& game,
                                             std::span<const double> gains) {
  const int n = game.n();
  double pole = game.a();
  for (int i = 0; i < n; ++i) pole += game.b()[i] * gains[i];
  if (!(pole < 0.0)) {
    std::ostringstream msg;
    msg << "closed-loop drift " << pole << " is not negative";
    throw UnstableClosedLoop(msg.str());
  }
  std::vector<double> costs(n);
  const double x0_sq = game.x0() * game.x0();
  for (int i = 0; i < n; ++i) {
    costs[i] = (game.q()[i] + game.r()[i] * gains[i] * gains[i]) * x0_sq /
               (-2.0 * pole);
  }
  return costs;
}

namespace {

void controls_at(const Game& game, const PolicyProfile& policy, double t,
                 double x, std::vector<double>& u) {
  const int n = game.n();
  if (policy.kind == PolicyProfile::Kind::FeedbackLinear) {
    for (int i = 0; i < n; ++i) u[i] = policy.gains[i] * x;
  } else {
    const double envelope = std::exp(policy.decay_rate * t);
    for (int i = 0; i < n; ++i) u[i] = policy.amplitude[i] * envelope;
  }
}

// Tail of integral_T^inf c * exp(rate * (t - T)) dt; diverges unless the
// rate is negative or the coefficient vanishes.
double exp_tail(double coef, double rate, double scale) {
  if (std::abs(coef) <= 1e-14 * scale) return 0.0;
  if (!(rate < 0.0)) {
    throw UnstableClosedLoop(
        "infinite-horizon tail diverges: nonnegative exponent with "
        "non-vanishing coefficient");
  }
  return coef / (-rate);
}

std::vector<double> tail_estimate(const Game& game, const PolicyProfile& policy,
                                  double horizon, double x_T) {
  const int n = game.n();
  std::vector<double> tail(n);
  if (policy.kind == PolicyProfile::Kind::FeedbackLinear) {
    double pole = game.a();
    for (int i = 0; i < n; ++i) pole += game.b()[i] * policy.gains[i];
    for (int i = 0; i < n; ++i) {
      const double density =
          (game.q()[i] + game.r()[i] * policy.gains[i] * policy.gains[i]) *
          x_T * x_T;
      tail[i] = exp_tail(density, 2.0 * pole, std::max(1.0, x_T * x_T));
    }
    return tail;
  }

  // Open-loop continuation past the horizon:
  //   x(t) = c0 exp(a (t-T)) + B exp(d t),  B = sum_i b_i amp_i / (d - a).
  const double a = game.a();
  const double d = policy.decay_rate;
  if (std::abs(d - a) < 1e-14) {
    throw UnstableClosedLoop(
        "open-loop tail undefined: decay rate coincides with the drift");
  }
  double forcing = 0.0;
  for (int i = 0; i < n; ++i) forcing += game.b()[i] * policy.amplitude[i];
  const double B = forcing / (d - a);
  const double env_T = std::exp(d * horizon);
  const double c0 = x_T - B * env_T;
  const double scale = std::max({1.0, x_T * x_T, B * env_T * B * env_T});

  const double xx = exp_tail(c0 * c0, 2.0 * a, scale) +
                    exp_tail(2.0 * c0 * B * env_T, a + d, scale) +
                    exp_tail(B * B * env_T * env_T, 2.0 * d, scale);
  for (int i = 0; i < n; ++i) {
    const double amp_T = policy.amplitude[i] * env_T;
    tail[i] = game.q()[i] * xx +
              exp_tail(game.r()[i] * amp_T * amp_T, 2.0 * d, scale);
  }
  return tail;
}

}  // namespace

SimulationResult simulate(const Game& game, const PolicyProfile& policy,
                          double horizon, double dt,
                          std::ostream* trajectory_csv) {
  if (!(dt > 0.0) || horizon < dt) {
    throw InvalidArgument("simulate needs dt > 0 and horizon >= dt");
  }
  const int n = game.n();
  const long steps = std::lround(std::ceil(horizon / dt - 1e-9));
  const double h = horizon / static_cast<double>(steps);

  // State vector y = [x, c_1..c_N]; dc_i = q_i x^2 + r_i u_i^2.
  std::vector<double> y(n + 1, 0.0);
  y[0] = game.x0();
  std::vector<double> u(n), k1(n + 1), k2(n + 1), k3(n + 1), k4(n + 1),
      ytmp(n + 1);

  const auto derivative = [&](double t, const std::vector<double>& state,
                              std::vector<double>& dy) {
    const double x = state[0];
    controls_at(game, policy, t, x, u);
    double dx = game.a() * x;
    for (int i = 0; i < n; ++i) dx += game.b()[i] * u[i];
    dy[0] = dx;
    for (int i = 0; i < n; ++i) {
      dy[i + 1] = game.q()[i] * x * x + game.r()[i] * u[i] * u[i];
    }
  };

  const auto dump_row = [&](double t) {
    if (trajectory_csv == nullptr) return;
    std::ostream& os = *trajectory_csv;
    os << format_number(t) << ',' << format_number(y[0]);
    controls_at(game, policy, t, y[0], u);
    for (int i = 0; i < n; ++i) os << ',' << format_number(u[i]);
    for (int i = 0; i < n; ++i) os << ',' << format_number(y[i + 1]);
    os << '\n';
  };

  if (trajectory_csv != nullptr) {
    std::ostream& os = *trajectory_csv;
    os << "t,x";
    for (int i = 1; i <= n; ++i) os << ",u_" << i;
    for (int i = 1; i <= n; ++i) os << ",running_cost_" << i;
    os << '\n';
    dump_row(0.0);
  }

  double t = 0.0;
  for (long step = 0; step < steps; ++step) {
    derivative(t, y, k1);
    for (int i = 0; i <= n; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
    derivative(t + 0.5 * h, ytmp, k2);
    for (int i = 0; i <= n; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
    derivative(t + 0.5 * h, ytmp, k3);
    for (int i = 0; i <= n; ++i) ytmp[i] = y[i] + h * k3[i];
    derivative(t + h, ytmp, k4);
    for (int i = 0; i <= n; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    t = h * static_cast<double>(step + 1);
    if (std::abs(y[0]) > 1e12) {
      throw UnstableClosedLoop("state magnitude exceeded 1e12 during simulation");
    }
    dump_row(t);
  }

  SimulationResult result;
  result.horizon = horizon;
  result.step = h;
  result.terminal_state = y[0];
  result.per_player_cost.assign(y.begin() + 1, y.end());
  result.truncation_estimate =
      tail_estimate(game, policy, horizon, result.terminal_state);
  return result;
}

double default_horizon(double pole) { return 20.0 / std::abs(pole); }

double default_step(double pole) {
  return std::min(1e-3, 0.01 / std::abs(pole));
}

}  // namespace lqdg
