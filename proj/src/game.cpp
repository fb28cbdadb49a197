#include "lqdg/game.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lqdg {

namespace {

std::string at(const char* field, std::size_t i) {
  return std::string(field) + "[" + std::to_string(i) + "]";
}

}  // namespace

WeightVector equal_weights(std::size_t n) {
  return WeightVector{std::vector<double>(n, 1.0 / static_cast<double>(n))};
}

CooperationMatrix identity_cooperation(std::size_t n) {
  CooperationMatrix c;
  c.lambda.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) c.lambda[i][i] = 1.0;
  return c;
}

Game validate_spec(GameSpec spec, WeightVector mu) {
  const std::size_t n = spec.b.size();
  if (n == 0) {
    throw ValidationError(ValidationError::Code::LengthMismatch,
                          "game needs at least one player (b is empty)");
  }
  if (spec.q.size() != n || spec.r.size() != n) {
    throw ValidationError(
        ValidationError::Code::LengthMismatch,
        "b, q, r must have identical length; got b:" + std::to_string(n) +
            " q:" + std::to_string(spec.q.size()) +
            " r:" + std::to_string(spec.r.size()));
  }
  if (mu.mu.size() != n) {
    throw ValidationError(ValidationError::Code::LengthMismatch,
                          "mu has length " + std::to_string(mu.mu.size()) +
                              ", expected " + std::to_string(n));
  }
  if (spec.x0 == 0.0) {
    throw ValidationError(ValidationError::Code::ZeroInitialState,
                          "x0 must be nonzero");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (spec.b[i] == 0.0) {
      throw ValidationError(ValidationError::Code::ZeroGain,
                            at("b", i) + " must be nonzero");
    }
    if (!(spec.q[i] > 0.0)) {
      throw ValidationError(ValidationError::Code::NonPositiveWeight,
                            at("q", i) + " must be positive, got " +
                                std::to_string(spec.q[i]));
    }
    if (!(spec.r[i] > 0.0)) {
      throw ValidationError(ValidationError::Code::NonPositiveWeight,
                            at("r", i) + " must be positive, got " +
                                std::to_string(spec.r[i]));
    }
    if (!(mu.mu[i] > 0.0)) {
      throw ValidationError(ValidationError::Code::NonPositiveWeight,
                            at("mu", i) + " must be positive, got " +
                                std::to_string(mu.mu[i]));
    }
  }
  double sum = 0.0;
  for (double m : mu.mu) sum += m;
  if (std::abs(sum - 1.0) > kWeightSumTol) {
    throw ValidationError(ValidationError::Code::WeightSumMismatch,
                          "mu must sum to 1, got " + std::to_string(sum));
  }
  return Game{std::move(spec), std::move(mu)};
}

Game validate_spec(GameSpec spec) {
  const std::size_t n = spec.b.size();
  return validate_spec(std::move(spec), equal_weights(n));
}

DerivedParams derive_params(const Game& game) {
  const int n = game.n();
  DerivedParams d;
  d.s.resize(n);
  d.sigma.resize(n);
  d.mu_s_max = -std::numeric_limits<double>::infinity();
  d.mu_s_min = std::numeric_limits<double>::infinity();
  double s_min = std::numeric_limits<double>::infinity();
  double s_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double bi = game.b()[i];
    d.s[i] = bi * bi / game.r()[i];
    d.sigma[i] = d.s[i] * game.q()[i];
    d.sigma_bar += d.sigma[i];
    d.q_bar += game.mu()[i] * game.q()[i];
    d.b_bar += d.s[i] / game.mu()[i];
    d.mu_s_max = std::max(d.mu_s_max, game.mu()[i] / d.s[i]);
    d.mu_s_min = std::min(d.mu_s_min, game.mu()[i] / d.s[i]);
    s_min = std::min(s_min, d.s[i]);
    s_sum += d.s[i];
  }
  d.sigma_max = *std::max_element(d.sigma.begin(), d.sigma.end());
  d.s_bullet = s_sum / s_min;
  return d;
}

void validate_cooperation(const Game& game, const CooperationMatrix& lambda) {
  const std::size_t n = static_cast<std::size_t>(game.n());
  if (lambda.lambda.size() != n) {
    throw ValidationError(ValidationError::Code::LengthMismatch,
                          "lambda must have " + std::to_string(n) + " rows");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = lambda.lambda[i];
    if (row.size() != n) {
      throw ValidationError(ValidationError::Code::LengthMismatch,
                            at("lambda", i) + " must have " +
                                std::to_string(n) + " entries");
    }
    double sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] < 0.0) {
        throw ValidationError(ValidationError::Code::NonPositiveWeight,
                              at("lambda", i) + " has a negative entry");
      }
      sum += row[j];
    }
    if (std::abs(sum - 1.0) > kWeightSumTol) {
      throw ValidationError(ValidationError::Code::WeightSumMismatch,
                            at("lambda", i) + " must sum to 1, got " +
                                std::to_string(sum));
    }
    if (!(row[i] > 0.0)) {
      throw ValidationError(ValidationError::Code::ZeroSelfWeight,
                            at("lambda", i) + " needs a positive diagonal");
    }
  }
}

}  // namespace lqdg
