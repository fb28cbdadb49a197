#include "lqdg/indices.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace lqdg {

double gersgorin_bound(const DerivedParams& params, double a, int n) {
  // Absolute row sums of the monomial matrix depend on a subset only
  // through its size and its sigma sum, so the maximum over subsets of a
  // given size is attained on the largest sigmas.
  std::vector<double> sigma = params.sigma;
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  double bound = static_cast<double>(n) + std::abs(a);  // empty-set row
  double prefix = 0.0;
  for (int m = 1; m <= n; ++m) {
    prefix += sigma[m - 1];
    const double row =
        (std::abs(a) + prefix + static_cast<double>(n - m)) / (2.0 * m - 1.0);
    bound = std::max(bound, row);
  }
  return bound;
}

double spectral_radius(const MonomialMatrix& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(m.entries,
                                             /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw SolverError("eigendecomposition failed while computing the spectral radius");
  }
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double poa_bound_positive_drift(const DerivedParams& params, double a, int n) {
  if (!(a > 0.0)) {
    throw BoundInapplicable("this PoA bound needs a positive drift");
  }
  return (1.0 + (static_cast<double>(n) + params.sigma_max - 1.0) / (2.0 * a)) *
         params.s_bullet;
}

double poa_bound_zero_drift(const DerivedParams& params, double a, int n) {
  if (a != 0.0) {
    throw BoundInapplicable("this PoA bound needs a zero drift");
  }
  return params.mu_s_max / (std::sqrt(params.q_bar) * std::sqrt(params.mu_s_min)) *
         std::sqrt(static_cast<double>(n)) *
         (static_cast<double>(n) + params.sigma_max - 1.0);
}

PoABounds poa_bounds(const Game& game, const DerivedParams& params,
                     const MonomialMatrix* m_tilde) {
  const double a = game.a();
  const double k_hat =
      (a + std::sqrt(a * a + params.q_bar * params.b_bar)) / params.b_bar;

  PoABounds bounds;
  bounds.gersgorin = gersgorin_bound(params, a, game.n());
  bounds.rowsum = params.mu_s_max * (bounds.gersgorin + a) / k_hat;
  if (m_tilde != nullptr) {
    bounds.spectral_radius = spectral_radius(*m_tilde);
    bounds.spectral = params.mu_s_max * (*bounds.spectral_radius + a) / k_hat;
  }
  if (a > 0.0) {
    bounds.positive_drift = poa_bound_positive_drift(params, a, game.n());
  } else if (a == 0.0) {
    bounds.zero_drift = poa_bound_zero_drift(params, a, game.n());
  }
  return bounds;
}

double price_of_anarchy_fb(const Game& game,
                           const std::vector<FeedbackEquilibrium>& equilibria,
                           const SocialOptimum& social) {
  if (equilibria.empty()) {
    throw NoEquilibrium("price of anarchy needs at least one feedback equilibrium");
  }
  double worst = 0.0;
  for (const auto& eq : equilibria) {
    double weighted = 0.0;
    for (int i = 0; i < game.n(); ++i) weighted += game.mu()[i] * eq.k[i];
    worst = std::max(worst, weighted / social.k_hat);
  }
  return worst;
}

double price_of_anarchy_ol(const OpenLoopEquilibrium& ol,
                           const SocialOptimum& social) {
  return ol.k_mu / social.k_hat;
}

double price_of_information(double rho_ol, double rho_fb) {
  if (!(rho_fb > 0.0)) {
    throw InvalidArgument("price of information needs rho_fb > 0");
  }
  return rho_ol / rho_fb;
}

LargeNApprox large_population_approx(const Game& game,
                                     const DerivedParams& params,
                                     const SocialOptimum& social) {
  const int n = game.n();
  const double root = std::sqrt(2.0 * params.sigma_bar);
  LargeNApprox approx;
  approx.p_approx.resize(n);
  approx.gain_approx.resize(n);
  double p_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    approx.p_approx[i] = params.sigma[i] / root;
    approx.gain_approx[i] = -params.sigma[i] / (game.b()[i] * root);
    p_sum += approx.p_approx[i];
  }
  approx.j_star_approx = params.q_bar * game.x0() * game.x0() / root;
  approx.rho_fb_approx = params.q_bar / (social.k_hat * root);
  approx.rho_fb_approx_a0 =
      std::sqrt(params.q_bar * params.b_bar / (2.0 * params.sigma_bar));
  approx.a_over_n = game.a() / static_cast<double>(n);
  approx.sigma_max_ratio = params.sigma_max / params.sigma_bar;
  double margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    margin = std::min(margin, p_sum - approx.p_approx[i] - game.a());
  }
  approx.min_p_minus_i_margin = margin;
  return approx;
}

PoiDesignCheck poi_design_check(const Game& game, const DerivedParams& params,
                                double chi_target) {
  const double sqrt2 = std::sqrt(2.0);
  if (!(chi_target > sqrt2 / 2.0) || !(chi_target <= sqrt2)) {
    std::ostringstream msg;
    msg << "chi target " << chi_target << " outside (sqrt(2)/2, sqrt(2)]";
    throw TargetOutOfRange(msg.str());
  }
  double weighted = 0.0;
  for (int i = 0; i < game.n(); ++i) {
    weighted += game.mu()[i] * game.q()[i] * params.sigma[i];
  }
  PoiDesignCheck check;
  check.lhs = weighted / (params.q_bar * params.sigma_bar);
  check.rhs = sqrt2 * chi_target - 1.0;
  check.satisfied = check.lhs <= check.rhs;
  return check;
}

IndexReport compute_indices(const Game& game, const DerivedParams& params,
                            const std::vector<FeedbackEquilibrium>& equilibria,
                            bool fb_from_fixedpoint_only,
                            const OpenLoopEquilibrium& ol,
                            const SocialOptimum& social,
                            const MonomialMatrix* m_tilde) {
  IndexReport report;
  report.rho_fb = price_of_anarchy_fb(game, equilibria, social);
  report.rho_ol = price_of_anarchy_ol(ol, social);
  report.chi = price_of_information(report.rho_ol, report.rho_fb);
  report.rho_fb_is_lower_bound = fb_from_fixedpoint_only;
  report.bounds = poa_bounds(game, params, m_tilde);
  const double radius = report.bounds.spectral_radius
                            ? *report.bounds.spectral_radius
                            : report.bounds.gersgorin;
  report.chi_lower_bound =
      ol.k_mu / (params.mu_s_max * (radius + game.a()));
  report.approx = large_population_approx(game, params, social);
  return report;
}

}  // namespace lqdg
