#include "lqdg/feedback.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

namespace lqdg {

namespace {

double weighted_k(const Game& game, std::span<const double> k) {
  double sum = 0.0;
  for (int i = 0; i < game.n(); ++i) sum += game.mu()[i] * k[i];
  return sum;
}

}  // namespace

std::vector<double> riccati_residual_fb(const Game& game,
                                        std::span<const double> k) {
  const int n = game.n();
  double coupling = 0.0;
  std::vector<double> s(n);
  for (int i = 0; i < n; ++i) {
    s[i] = game.b()[i] * game.b()[i] / game.r()[i];
    coupling += s[i] * k[i];
  }
  std::vector<double> res(n);
  for (int i = 0; i < n; ++i) {
    res[i] = 2.0 * (game.a() - coupling) * k[i] + game.q()[i] + s[i] * k[i] * k[i];
  }
  return res;
}

std::vector<double> newton_polish_fb(const Game& game, std::vector<double> k) {
  const int n = game.n();
  std::vector<double> s(n);
  double coupling = 0.0;
  for (int i = 0; i < n; ++i) {
    s[i] = game.b()[i] * game.b()[i] / game.r()[i];
    coupling += s[i] * k[i];
  }
  // J = diag(2(a - S) + 2 s_i k_i) - 2 k s^T, S = sum_j s_j k_j.
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd f(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      jac(i, j) = -2.0 * k[i] * s[j];
    }
    jac(i, i) += 2.0 * (game.a() - coupling) + 2.0 * s[i] * k[i];
    f(i) = 2.0 * (game.a() - coupling) * k[i] + game.q()[i] + s[i] * k[i] * k[i];
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jac);
  if (!lu.isInvertible()) return k;
  const Eigen::VectorXd step = lu.solve(-f);
  for (int i = 0; i < n; ++i) k[i] += step(i);
  return k;
}

FeedbackEquilibrium feedback_equilibrium_from_k(const Game& game,
                                                const DerivedParams& params,
                                                std::vector<double> k) {
  const int n = game.n();
  FeedbackEquilibrium eq;
  eq.k = std::move(k);
  eq.p.resize(n);
  eq.gains.resize(n);
  eq.costs.resize(n);
  double p_sum = 0.0;
  for (int i = 0; i < n; ++i) {
    eq.p[i] = params.s[i] * eq.k[i];
    p_sum += eq.p[i];
    eq.gains[i] = -(game.b()[i] / game.r()[i]) * eq.k[i];
    eq.costs[i] = eq.k[i] * game.x0() * game.x0();
  }
  eq.lambda = p_sum - game.a();
  eq.closed_loop_pole = game.a() - p_sum;
  eq.weighted_cost = weighted_k(game, eq.k) * game.x0() * game.x0();
  const auto res = riccati_residual_fb(game, eq.k);
  eq.residual = 0.0;
  for (double r : res) eq.residual = std::max(eq.residual, std::abs(r));
  return eq;
}

FeedbackSolveResult solve_feedback_eigen(const Game& game,
                                         const DerivedParams& params,
                                         const FeedbackOptions& options) {
  const int n = game.n();
  const MonomialMatrix m_tilde = build_m_tilde(params, game.a(), options.n_cap);
  const Eigen::Index dim = m_tilde.dim();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m_tilde.entries,
                                             /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    throw SolverError("eigendecomposition of the monomial matrix failed");
  }
  const Eigen::VectorXcd values = solver.eigenvalues();
  const Eigen::MatrixXcd vectors = solver.eigenvectors();

  FeedbackSolveResult result;
  result.candidates.resize(dim);

  // Near-coincident eigenvalues break the distinctness assumption behind
  // the eigenvector extraction, so warn and keep processing. Only
  // eigenvalues that could yield an equilibrium matter here; symmetric
  // games always repeat the zero and complex parts of the spectrum.
  const auto eligible = [&](Eigen::Index i) {
    const double scale = std::max(1.0, std::abs(values(i)));
    return std::abs(values(i).imag()) <= options.lambda_imag_tol * scale &&
           values(i).real() > 0.0 &&
           values(i).real() * values(i).real() >=
               params.sigma_max * (1.0 - 1e-9);
  };
  for (Eigen::Index i = 0; i < dim && result.warnings.empty(); ++i) {
    if (!eligible(i)) continue;
    for (Eigen::Index j = i + 1; j < dim; ++j) {
      if (eligible(j) &&
          std::abs(values(i) - values(j)) <= options.defective_tol) {
        std::ostringstream msg;
        msg << "near-repeated candidate eigenvalues " << values(i).real()
            << " and " << values(j).real() << " (gap <= "
            << options.defective_tol
            << "); equilibrium multiplicity may be unreliable";
        result.warnings.push_back(msg.str());
        break;
      }
    }
  }

  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    EigenCandidate& cand = result.candidates[idx];
    cand.eigenvalue = values(idx);
    const double lambda = values(idx).real();
    const double scale = std::max(1.0, std::abs(values(idx)));

    if (std::abs(values(idx).imag()) > options.lambda_imag_tol * scale) {
      cand.rejection = "complex eigenvalue";
      continue;
    }
    if (lambda <= 0.0) {
      cand.rejection = "nonpositive eigenvalue";
      continue;
    }
    // Real roots of p^2 - 2 lambda p + sigma_i = 0 require
    // lambda^2 >= sigma_i; any genuine solution satisfies this by AM-GM.
    if (lambda * lambda < params.sigma_max * (1.0 - 1e-9)) {
      cand.rejection = "eigenvalue below sqrt(sigma_max)";
      continue;
    }
    const Eigen::VectorXcd v = vectors.col(idx);
    if (std::abs(v(0)) < options.empty_entry_tol) {
      cand.rejection = "empty-set entry of the eigenvector is ~0";
      continue;
    }
    const Eigen::VectorXcd w = v / v(0);

    std::vector<double> p(n);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const std::complex<double> pi = w(Eigen::Index(1) << i);
      if (std::abs(pi.imag()) > options.lambda_imag_tol *
                                    std::max(1.0, std::abs(pi))) {
        cand.rejection = "complex p_" + std::to_string(i + 1);
        ok = false;
      } else if (pi.real() <= 0.0) {
        cand.rejection = "nonpositive p_" + std::to_string(i + 1);
        ok = false;
      } else {
        p[i] = pi.real();
      }
    }
    if (!ok) continue;

    // Monomial consistency: entry at each subset must equal the product
    // of its singleton entries.
    for (Eigen::Index mask = 3; mask < dim && ok; ++mask) {
      if (subset_size(static_cast<unsigned>(mask)) < 2) continue;
      const double expected = subset_product(p, static_cast<unsigned>(mask));
      const std::complex<double> entry = w(mask);
      if (std::abs(entry - std::complex<double>(expected)) >
          options.monomial_tol * std::max(1.0, std::abs(expected))) {
        cand.rejection = "eigenvector is not monomial at subset mask " +
                         std::to_string(mask);
        ok = false;
      }
    }
    if (!ok) continue;

    double p_sum = 0.0;
    for (double pi : p) p_sum += pi;
    if (!(game.a() - p_sum < 0.0)) {
      cand.rejection = "closed loop not stabilizing";
      continue;
    }

    std::vector<double> k(n);
    for (int i = 0; i < n; ++i) k[i] = p[i] / params.s[i];
    k = newton_polish_fb(game, std::move(k));

    FeedbackEquilibrium eq = feedback_equilibrium_from_k(game, params, std::move(k));
    if (eq.residual > options.residual_tol) {
      std::ostringstream msg;
      msg << "Riccati residual " << eq.residual << " after polish";
      cand.rejection = msg.str();
      continue;
    }
    if (!(eq.closed_loop_pole < 0.0)) {
      cand.rejection = "closed loop not stabilizing after polish";
      continue;
    }
    bool positive = true;
    for (double ki : eq.k) positive = positive && ki > 0.0;
    if (!positive) {
      cand.rejection = "nonpositive k after polish";
      continue;
    }

    // Polish can collapse two nearby candidates onto the same solution.
    bool duplicate = false;
    for (const auto& other : result.equilibria) {
      double diff = 0.0;
      for (int i = 0; i < n; ++i) {
        diff = std::max(diff, std::abs(other.k[i] - eq.k[i]));
      }
      if (diff <= 1e-10 * std::max(1.0, std::abs(eq.k[0]))) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) {
      cand.rejection = "duplicate of an already-accepted equilibrium";
      continue;
    }

    cand.accepted = true;
    result.equilibria.push_back(std::move(eq));
  }

  std::sort(result.equilibria.begin(), result.equilibria.end(),
            [](const FeedbackEquilibrium& lhs, const FeedbackEquilibrium& rhs) {
              return lhs.weighted_cost > rhs.weighted_cost;
            });
  return result;
}

FeedbackEquilibrium solve_feedback_fixedpoint(const Game& game,
                                              const DerivedParams& params) {
  const int n = game.n();
  const double a = game.a();
  double p_bar;

  if (n == 1) {
    // Single quadratic: p = a + sqrt(a^2 + sigma).
    p_bar = a + std::sqrt(a * a + params.sigma[0]);
  } else {
    const double sqrt_sigma_max = std::sqrt(params.sigma_max);
    const auto fixed_point_gap = [&](double pb) {
      double sum = 0.0;
      const double y = pb - a;
      for (double sig : params.sigma) {
        sum += std::sqrt(std::max(0.0, y * y - sig));
      }
      return (sum + a) / (n - 1) - y;
    };

    double lo = a + sqrt_sigma_max;
    double g_lo = fixed_point_gap(lo);
    if (g_lo > 0.0) {
      // The gap function is strictly increasing for p_bar - a > 0, so a
      // positive value at the domain edge rules out any real-radical root.
      std::ostringstream msg;
      msg << "fixed-point function has no sign change: value "
          << g_lo << " at p_bar = a + sqrt(sigma_max) = " << lo;
      throw NoBracket(msg.str());
    }
    double step = std::max(1.0, sqrt_sigma_max);
    double hi = lo + step;
    int grow = 0;
    while (fixed_point_gap(hi) < 0.0) {
      step *= 2.0;
      hi = lo + step;
      if (++grow > 200) {
        throw NoBracket("fixed-point bracket growth exhausted");
      }
    }
    for (int iter = 0; iter < 200; ++iter) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      (fixed_point_gap(mid) < 0.0 ? lo : hi) = mid;
    }
    p_bar = 0.5 * (lo + hi);
  }

  const double y = p_bar - a;
  std::vector<double> k(n);
  double p_sum = 0.0;
  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) {
    p[i] = y - std::sqrt(std::max(0.0, y * y - params.sigma[i]));
    p_sum += p[i];
    k[i] = p[i] / params.s[i];
  }

  if (a != 0.0) {
    for (int i = 0; i < n; ++i) {
      if (!(p_sum - p[i] > a)) {
        std::ostringstream msg;
        msg << "fixed-point solution violates p_{-" << (i + 1)
            << "} > a: " << (p_sum - p[i]) << " <= " << a;
        throw ConditionViolated(msg.str());
      }
    }
  }

  k = newton_polish_fb(game, std::move(k));
  FeedbackEquilibrium eq = feedback_equilibrium_from_k(game, params, std::move(k));
  if (!(eq.closed_loop_pole < 0.0)) {
    throw SolverError("fixed-point solution is not stabilizing");
  }
  return eq;
}

}  // namespace lqdg
