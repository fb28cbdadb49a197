#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "lqdg/feedback.hpp"

using namespace lqdg;

namespace {

// 12-digit anchors for the shared-bottleneck games.
constexpr double kLambda2 = 1.15470053838;   // 2/sqrt(3)
constexpr double kK2 = 0.577350269190;       // 1/sqrt(3)
constexpr double kLambda3 = 1.34164078650;   // 3/sqrt(5)
constexpr double kK3 = 0.447213595500;       // 1/sqrt(5)

Game hetero_sigma_game(double a, std::vector<double> sigma) {
  GameSpec spec;
  spec.a = a;
  const int n = static_cast<int>(sigma.size());
  spec.b.assign(n, 1.0);
  spec.r.assign(n, 1.0);
  spec.q = std::move(sigma);  // s_i = 1, so sigma_i = q_i
  spec.x0 = 1.0;
  return validate_spec(std::move(spec));
}

}  // namespace

TEST_CASE("Riccati residual at the known two-player equilibrium") {
  const Game game = testing::flow(2);
  const double k = 1.0 / std::sqrt(3.0);
  const auto res = riccati_residual_fb(game, std::vector<double>{k, k});
  CHECK(std::abs(res[0]) <= 1e-9);
  CHECK(std::abs(res[1]) <= 1e-9);

  const auto at_zero = riccati_residual_fb(game, std::vector<double>{0.0, 0.0});
  CHECK(at_zero[0] == 1.0);
  CHECK(at_zero[1] == 1.0);

  const auto perturbed =
      riccati_residual_fb(game, std::vector<double>{k + 1e-3, k + 1e-3});
  CHECK(std::max(std::abs(perturbed[0]), std::abs(perturbed[1])) > 1e-4);
}

TEST_CASE("eigen solver reproduces the 2-player flow-control equilibrium") {
  const Game game = testing::flow(2);
  const auto result = solve_feedback_eigen(game, derive_params(game));
  REQUIRE(result.equilibria.size() == 1);
  const auto& eq = result.equilibria.front();
  CHECK(eq.lambda == doctest::Approx(kLambda2).epsilon(1e-10));
  CHECK(eq.k[0] == doctest::Approx(kK2).epsilon(1e-10));
  CHECK(eq.k[1] == doctest::Approx(kK2).epsilon(1e-10));
  CHECK(eq.closed_loop_pole < 0.0);
  CHECK(eq.closed_loop_pole == doctest::Approx(-kLambda2).epsilon(1e-10));
  CHECK(eq.weighted_cost == doctest::Approx(kK2).epsilon(1e-10));
  CHECK(eq.gains[0] == doctest::Approx(-kK2).epsilon(1e-10));
  CHECK(eq.residual <= 1e-9);
  CHECK(result.warnings.empty());
}

TEST_CASE("eigen solver reproduces the 3-player flow-control equilibrium") {
  const Game game = testing::flow(3);
  const auto result = solve_feedback_eigen(game, derive_params(game));
  REQUIRE(result.equilibria.size() == 1);
  const auto& eq = result.equilibria.front();
  CHECK(eq.lambda == doctest::Approx(kLambda3).epsilon(1e-10));
  for (int i = 0; i < 3; ++i) {
    CHECK(eq.k[i] == doctest::Approx(kK3).epsilon(1e-10));
  }
  CHECK(eq.weighted_cost == doctest::Approx(kK3).epsilon(1e-10));
  // The accepted eigenvector is monomial: pair entries k_i k_j, triple
  // entry k_1 k_2 k_3.
  CHECK(eq.p[0] * eq.p[1] == doctest::Approx(0.2).epsilon(1e-9));
  CHECK(eq.p[0] * eq.p[1] * eq.p[2] == doctest::Approx(0.0894427191).epsilon(1e-8));
}

TEST_CASE("single player with unit parameters") {
  const Game game = testing::flow(1);
  const auto result = solve_feedback_eigen(game, derive_params(game));
  REQUIRE(result.equilibria.size() == 1);
  // lambda = sqrt(sigma) = sigma_max here; the filter must keep it.
  CHECK(result.equilibria[0].lambda == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.equilibria[0].k[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(result.equilibria[0].costs[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fixed point solves the symmetric family in closed form") {
  for (int n = 1; n <= 12; ++n) {
    const Game game = testing::flow(n);
    const auto eq = solve_feedback_fixedpoint(game, derive_params(game));
    const double expected_p = 1.0 / std::sqrt(2.0 * n - 1.0);
    for (int i = 0; i < n; ++i) {
      CHECK(std::abs(eq.p[i] - expected_p) <= 1e-12);
    }
    CHECK(std::abs((eq.lambda + game.a()) - n * expected_p) <= 1e-11);
    CHECK(eq.residual <= 1e-9);
  }
}

TEST_CASE("fixed point agrees with the eigen solver on the 2-player game") {
  const Game game = testing::flow(2);
  const DerivedParams params = derive_params(game);
  const auto fp = solve_feedback_fixedpoint(game, params);
  const auto eig = solve_feedback_eigen(game, params);
  REQUIRE(eig.equilibria.size() == 1);
  for (int i = 0; i < 2; ++i) {
    CHECK(std::abs(fp.k[i] - eig.equilibria[0].k[i]) <= 1e-9);
  }
}

TEST_CASE("fixed point on heterogeneous sigma with zero drift") {
  const Game game = hetero_sigma_game(0.0, {1.0, 4.0});
  const DerivedParams params = derive_params(game);
  const auto eq = solve_feedback_fixedpoint(game, params);
  CHECK(eq.residual <= 1e-9);
  const double y = eq.lambda;  // p_bar - a with a = 0
  for (int i = 0; i < 2; ++i) {
    const double recovered = y - std::sqrt(y * y - params.sigma[i]);
    CHECK(eq.p[i] == doctest::Approx(recovered).epsilon(1e-9));
  }
}

TEST_CASE("method agreement on randomized zero-drift games") {
  std::mt19937 rng(20240404);
  for (int trial = 0; trial < 40; ++trial) {
    const Game game = testing::random_game(rng, {.n_min = 2, .zero_drift = true});
    const DerivedParams params = derive_params(game);
    const auto fp = solve_feedback_fixedpoint(game, params);
    const auto eig = solve_feedback_eigen(game, params);
    REQUIRE(!eig.equilibria.empty());
    double best = 1e300;
    for (const auto& eq : eig.equilibria) {
      double diff = 0.0;
      for (int i = 0; i < game.n(); ++i) {
        diff = std::max(diff, std::abs(eq.k[i] - fp.k[i]));
      }
      best = std::min(best, diff);
    }
    CHECK(best <= 1e-8);
  }
}

TEST_CASE("zero drift yields exactly one equilibrium") {
  std::mt19937 rng(20240405);
  for (int trial = 0; trial < 40; ++trial) {
    const Game game = testing::random_game(rng, {.zero_drift = true});
    const auto result = solve_feedback_eigen(game, derive_params(game));
    CHECK(result.equilibria.size() == 1);
  }
}

TEST_CASE("equilibria scale correctly with the initial state") {
  std::mt19937 rng(20240406);
  const Game game = testing::random_game(rng, {.n_min = 3, .zero_drift = true});
  Game scaled = game;
  scaled.spec.x0 *= 3.0;
  const auto base = solve_feedback_eigen(game, derive_params(game));
  const auto big = solve_feedback_eigen(scaled, derive_params(scaled));
  REQUIRE(base.equilibria.size() == big.equilibria.size());
  REQUIRE(!base.equilibria.empty());
  for (std::size_t e = 0; e < base.equilibria.size(); ++e) {
    CHECK(big.equilibria[e].lambda ==
          doctest::Approx(base.equilibria[e].lambda).epsilon(1e-12));
    for (int i = 0; i < game.n(); ++i) {
      CHECK(big.equilibria[e].k[i] ==
            doctest::Approx(base.equilibria[e].k[i]).epsilon(1e-12));
      CHECK(big.equilibria[e].gains[i] ==
            doctest::Approx(base.equilibria[e].gains[i]).epsilon(1e-12));
      CHECK(big.equilibria[e].costs[i] ==
            doctest::Approx(9.0 * base.equilibria[e].costs[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("no bracket when the drift dominates every sigma") {
  const Game game = hetero_sigma_game(1.0, {0.01, 0.01});
  CHECK_THROWS_AS(solve_feedback_fixedpoint(game, derive_params(game)), NoBracket);
}

TEST_CASE("boundary root violates the uniqueness condition") {
  // a = (N-1) sqrt(sigma) puts the root exactly at the domain edge, where
  // p_{-i} equals a instead of exceeding it.
  const Game game = hetero_sigma_game(1.0, {1.0, 1.0});
  CHECK_THROWS_AS(solve_feedback_fixedpoint(game, derive_params(game)),
                  ConditionViolated);
}

TEST_CASE("asymmetric equilibria of a positive-drift game are certified") {
  // With a = 1 and equal small sigmas the symmetric branch disappears but
  // asymmetric stabilizing solutions remain; the eigen path must find
  // them and each must satisfy the Riccati system.
  const Game game = hetero_sigma_game(1.0, {0.01, 0.01});
  const auto result = solve_feedback_eigen(game, derive_params(game));
  CHECK(!result.equilibria.empty());
  for (const auto& eq : result.equilibria) {
    CHECK(eq.residual <= 1e-9);
    CHECK(eq.closed_loop_pole < 0.0);
  }
  for (std::size_t e = 1; e < result.equilibria.size(); ++e) {
    CHECK(result.equilibria[e - 1].weighted_cost >=
          result.equilibria[e].weighted_cost);
  }
}
