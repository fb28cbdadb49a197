#pragma once

#include <Eigen/Dense>
#include <bit>
#include <span>

#include "lqdg/game.hpp"

namespace lqdg {

/// Default cap on N for the 2^N-dimensional eigenproblem.
inline constexpr int kDefaultNCap = 14;

/// Dense 2^N x 2^N matrix whose eigenvectors, when they carry monomial
/// structure, encode solutions of the coupled algebraic Riccati system.
/// Rows and columns are indexed by player subsets in bitmask order:
/// index 0 is the empty set, bit i set means player i+1 is in the subset.
struct MonomialMatrix {
  int n_players = 0;
  Eigen::MatrixXd entries;

  Eigen::Index dim() const { return entries.rows(); }
};

inline int subset_size(unsigned mask) { return std::popcount(mask); }

/// Product of values[i] over the players i in the subset mask (1 for the
/// empty set).
double subset_product(std::span<const double> values, unsigned mask);

/// Builds the monomial-vector matrix:
///   - empty-set row: -a on the diagonal, 1 at each singleton column;
///   - row for a nonempty subset S with |S| = m, scaled by 1/(2m-1):
///     sigma_i at column S\{i} for i in S, -1 at column S+{i} for i not
///     in S, a at column S.
/// Throws DimensionCap when the game is larger than n_cap.
MonomialMatrix build_m_tilde(const DerivedParams& params, double a,
                             int n_cap = kDefaultNCap);

/// Similarity transform D^{-1} M~ D with D = diag of subset products of
/// s_i; same spectrum, eigenvectors carry k-monomials instead of
/// p-monomials.
MonomialMatrix to_m(const MonomialMatrix& m_tilde, const DerivedParams& params);

}  // namespace lqdg
