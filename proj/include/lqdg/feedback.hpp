#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "lqdg/game.hpp"
#include "lqdg/monomial.hpp"

namespace lqdg {

/// A stabilizing solution of the coupled algebraic Riccati system
///   2 (a - sum_j s_j k_j) k_i + q_i + s_i k_i^2 = 0
/// together with the quantities read off from it.
struct FeedbackEquilibrium {
  double lambda = 0.0;              // sum_i p_i - a
  std::vector<double> k;            // Riccati solutions, k_i > 0
  std::vector<double> p;            // p_i = s_i k_i
  std::vector<double> gains;        // g_i = -(b_i / r_i) k_i
  double closed_loop_pole = 0.0;    // a - sum_i s_i k_i, negative
  std::vector<double> costs;        // J_i = k_i x0^2
  double weighted_cost = 0.0;       // (sum_i mu_i k_i) x0^2
  double residual = 0.0;            // max |Riccati residual|
};

/// Fate of one eigenpair of the monomial matrix.
struct EigenCandidate {
  std::complex<double> eigenvalue;
  bool accepted = false;
  std::string rejection;            // empty when accepted
};

struct FeedbackSolveResult {
  /// Surviving equilibria, sorted by weighted cost descending.
  std::vector<FeedbackEquilibrium> equilibria;
  std::vector<EigenCandidate> candidates;
  std::vector<std::string> warnings;
};

struct FeedbackOptions {
  int n_cap = kDefaultNCap;
  double lambda_imag_tol = 1e-9;    // relative to eigenvalue magnitude
  double empty_entry_tol = 1e-10;   // on the unit-norm eigenvector
  double monomial_tol = 1e-6;
  double residual_tol = 1e-9;       // after one Newton polish
  double defective_tol = 1e-8;      // eigenvalue-gap warning threshold
};

/// Residual of the coupled Riccati system at a candidate k:
///   r_i = 2 (a - sum_j s_j k_j) k_i + q_i + s_i k_i^2.
std::vector<double> riccati_residual_fb(const Game& game,
                                        std::span<const double> k);

/// One Newton step on the coupled Riccati system from the given k.
/// Returns k unchanged when the Jacobian is singular.
std::vector<double> newton_polish_fb(const Game& game, std::vector<double> k);

/// Assembles a FeedbackEquilibrium from a candidate k (no acceptance
/// filters applied; residual and pole are reported as computed).
FeedbackEquilibrium feedback_equilibrium_from_k(const Game& game,
                                                const DerivedParams& params,
                                                std::vector<double> k);

/// Enumerates all eigenpairs of the monomial matrix and keeps those that
/// pass the acceptance chain: real positive eigenvalue, lambda^2 >=
/// sigma_max, real positive p_i, monomial-consistent eigenvector,
/// stabilizing closed loop, Riccati residual within tolerance after one
/// Newton polish. An empty equilibria list means the game has no
/// feedback NE that this method can certify.
FeedbackSolveResult solve_feedback_eigen(const Game& game,
                                         const DerivedParams& params,
                                         const FeedbackOptions& options = {});

/// Solves the scalar fixed-point equation in p_bar = sum_i p_i by
/// bracketing and bisection, then recovers p_i = (p_bar - a) -
/// sqrt((p_bar - a)^2 - sigma_i). Valid when a = 0, or when the
/// recovered solution satisfies p_{-i} > a for every player (checked a
/// posteriori; ConditionViolated otherwise). Throws NoBracket when the
/// fixed-point function never changes sign.
FeedbackEquilibrium solve_feedback_fixedpoint(const Game& game,
                                              const DerivedParams& params);

}  // namespace lqdg
