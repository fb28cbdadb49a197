#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lqdg/errors.hpp"

namespace lqdg {

/// Scalar N-player linear-quadratic differential game:
///   dx/dt = a x + sum_i b_i u_i,  x(0) = x0,
///   J_i   = integral of (q_i x^2 + r_i u_i^2) dt over [0, inf).
struct GameSpec {
  double a = 0.0;
  std::vector<double> b;
  std::vector<double> q;
  std::vector<double> r;
  double x0 = 1.0;
};

/// Positive weights mu_i summing to 1; weights the total cost J_mu.
struct WeightVector {
  std::vector<double> mu;
};

/// mu_i = 1/n for all players.
WeightVector equal_weights(std::size_t n);

/// Row i holds Player i's altruism weights lambda_i^j (nonnegative,
/// summing to 1, with lambda_i^i > 0).
struct CooperationMatrix {
  std::vector<std::vector<double>> lambda;
};

CooperationMatrix identity_cooperation(std::size_t n);

/// A spec/weight pair that passed validate_spec. Treat as immutable;
/// every solver in the library is a pure function of this data.
struct Game {
  GameSpec spec;
  WeightVector weights;

  int n() const { return static_cast<int>(spec.b.size()); }
  double a() const { return spec.a; }
  double x0() const { return spec.x0; }
  std::span<const double> b() const { return spec.b; }
  std::span<const double> q() const { return spec.q; }
  std::span<const double> r() const { return spec.r; }
  std::span<const double> mu() const { return weights.mu; }
};

/// Scalar quantities every solver keeps reusing, all derived from the spec:
/// s_i = b_i^2/r_i, sigma_i = s_i q_i, and the aggregates built from them.
struct DerivedParams {
  std::vector<double> s;
  std::vector<double> sigma;
  double sigma_bar = 0.0;   // sum_i sigma_i
  double sigma_max = 0.0;   // max_i sigma_i
  double q_bar = 0.0;       // sum_i mu_i q_i
  double b_bar = 0.0;       // sum_i b_i^2 / (mu_i r_i)
  double mu_s_max = 0.0;    // max_i mu_i / s_i
  double mu_s_min = 0.0;    // min_i mu_i / s_i
  double s_bullet = 0.0;    // sum_i s_i / min_j s_j
};

/// Simplex tolerance for user-supplied weights.
inline constexpr double kWeightSumTol = 1e-12;

/// Checks every model invariant and returns the validated bundle.
/// Throws ValidationError naming the offending field otherwise.
Game validate_spec(GameSpec spec, WeightVector mu);

/// Same, with default equal weights mu_i = 1/N.
Game validate_spec(GameSpec spec);

DerivedParams derive_params(const Game& game);

/// Validates a cooperation matrix against a game (shape, row sums,
/// nonnegativity, positive diagonal).
void validate_cooperation(const Game& game, const CooperationMatrix& lambda);

}  // namespace lqdg
