#pragma once

#include <optional>
#include <vector>

#include "lqdg/feedback.hpp"
#include "lqdg/game.hpp"
#include "lqdg/monomial.hpp"
#include "lqdg/openloop.hpp"
#include "lqdg/social.hpp"

namespace lqdg {

/// Large-population approximations of the feedback equilibrium, plus the
/// condition ratios they rest on (reported, never enforced).
struct LargeNApprox {
  std::vector<double> p_approx;     // sigma_i / sqrt(2 sigma_bar)
  std::vector<double> gain_approx;  // -sigma_i / (b_i sqrt(2 sigma_bar))
  double j_star_approx = 0.0;       // q_bar x0^2 / sqrt(2 sigma_bar)
  double rho_fb_approx = 0.0;       // q_bar / (k_hat sqrt(2 sigma_bar))
  double rho_fb_approx_a0 = 0.0;    // sqrt(q_bar b_bar / (2 sigma_bar))
  // Applicability report.
  double a_over_n = 0.0;
  double sigma_max_ratio = 0.0;         // sigma_max / sigma_bar
  double min_p_minus_i_margin = 0.0;    // min_i (p_{-i} - a) at p_approx
};

/// Upper bounds on the feedback PoA. The spectral entries need the
/// monomial matrix; the drift-sign bounds are present only for the drift
/// sign they cover.
struct PoABounds {
  double gersgorin = 0.0;                     // row-sum bound on the spectral radius
  std::optional<double> spectral_radius;
  std::optional<double> spectral;             // mu_s_max (rho(M) + a) / k_hat
  double rowsum = 0.0;                        // same with the row-sum surrogate
  std::optional<double> positive_drift;       // a > 0
  std::optional<double> zero_drift;           // a = 0
};

/// Row-sum (Gersgorin) bound on the spectral radius of the monomial
/// matrix, evaluated in closed form without building the matrix.
double gersgorin_bound(const DerivedParams& params, double a, int n);

double spectral_radius(const MonomialMatrix& m);

/// (1 + (N + sigma_max - 1)/(2a)) s_bullet; needs a > 0, else
/// BoundInapplicable.
double poa_bound_positive_drift(const DerivedParams& params, double a, int n);

/// mu_s_max sqrt(N) (N + sigma_max - 1) / (sqrt(q_bar mu_s_min)); needs
/// a = 0, else BoundInapplicable.
double poa_bound_zero_drift(const DerivedParams& params, double a, int n);

PoABounds poa_bounds(const Game& game, const DerivedParams& params,
                     const MonomialMatrix* m_tilde);

/// Worst-case weighted equilibrium cost over the social optimum,
/// max_k (sum_i mu_i k_i) / k_hat. Throws NoEquilibrium on an empty set.
double price_of_anarchy_fb(const Game& game,
                           const std::vector<FeedbackEquilibrium>& equilibria,
                           const SocialOptimum& social);

/// k_mu_star / k_hat; the open-loop equilibrium is unique.
double price_of_anarchy_ol(const OpenLoopEquilibrium& ol,
                           const SocialOptimum& social);

/// chi = rho_ol / rho_fb.
double price_of_information(double rho_ol, double rho_fb);

LargeNApprox large_population_approx(const Game& game,
                                     const DerivedParams& params,
                                     const SocialOptimum& social);

struct PoiDesignCheck {
  double lhs = 0.0;        // (sum_i mu_i q_i sigma_i) / (q_bar sigma_bar)
  double rhs = 0.0;        // sqrt(2) chi_target - 1
  bool satisfied = false;
};

/// Necessary condition for designing the game to keep chi below
/// chi_target; the target must lie in (sqrt(2)/2, sqrt(2)].
PoiDesignCheck poi_design_check(const Game& game, const DerivedParams& params,
                                double chi_target);

struct IndexReport {
  double rho_fb = 0.0;
  double rho_ol = 0.0;
  double chi = 0.0;
  /// True when only the fixed-point path ran (N above the eigen cap), so
  /// rho_fb reflects a single equilibrium rather than a certified worst case.
  bool rho_fb_is_lower_bound = false;
  PoABounds bounds;
  double chi_lower_bound = 0.0;     // k_mu_star / (mu_s_max (rho + a))
  LargeNApprox approx;
};

IndexReport compute_indices(const Game& game, const DerivedParams& params,
                            const std::vector<FeedbackEquilibrium>& equilibria,
                            bool fb_from_fixedpoint_only,
                            const OpenLoopEquilibrium& ol,
                            const SocialOptimum& social,
                            const MonomialMatrix* m_tilde);

}  // namespace lqdg
