#include "lqdg/monomial.hpp"

#include <string>

namespace lqdg {

double subset_product(std::span<const double> values, unsigned mask) {
  double prod = 1.0;
  while (mask != 0) {
    const unsigned bit = mask & (mask - 1);
    prod *= values[std::countr_zero(mask ^ bit)];
    mask = bit;
  }
  return prod;
}

MonomialMatrix build_m_tilde(const DerivedParams& params, double a, int n_cap) {
  const int n = static_cast<int>(params.sigma.size());
  if (n > n_cap) {
    throw DimensionCap("n = " + std::to_string(n) +
                       " exceeds the eigenproblem cap " +
                       std::to_string(n_cap) + " (dimension 2^n)");
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  MonomialMatrix m;
  m.n_players = n;
  m.entries = Eigen::MatrixXd::Zero(dim, dim);

  // Empty set: lambda * 1 = sum_j p_j - a.
  m.entries(0, 0) = -a;
  for (int i = 0; i < n; ++i) m.entries(0, Eigen::Index(1) << i) = 1.0;

  for (unsigned mask = 1; mask < static_cast<unsigned>(dim); ++mask) {
    const double scale = 1.0 / (2.0 * subset_size(mask) - 1.0);
    for (int i = 0; i < n; ++i) {
      const unsigned bit = 1u << i;
      if (mask & bit) {
        m.entries(mask, mask ^ bit) = params.sigma[i] * scale;
      } else {
        m.entries(mask, mask | bit) = -scale;
      }
    }
    m.entries(mask, mask) = a * scale;
  }
  return m;
}

MonomialMatrix to_m(const MonomialMatrix& m_tilde,
                    const DerivedParams& params) {
  const Eigen::Index dim = m_tilde.dim();
  Eigen::VectorXd d(dim);
  for (Eigen::Index mask = 0; mask < dim; ++mask) {
    d(mask) = subset_product(params.s, static_cast<unsigned>(mask));
  }
  MonomialMatrix m;
  m.n_players = m_tilde.n_players;
  // s_i > 0 keeps D invertible.
  m.entries = d.cwiseInverse().asDiagonal() * m_tilde.entries * d.asDiagonal();
  return m;
}

}  // namespace lqdg
