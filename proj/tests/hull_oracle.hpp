#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <random>
#include <vector>

#include "equispectra/lp.hpp"
#include "equispectra/polar.hpp"

namespace equispectra::testing {

/// Diagonals of sampled conjugates g^T diag(lam) g together with every
/// permutation of lam: an inner approximation of the Schur-Horn polytope that
/// never consults a sorting argument.
inline std::vector<Eigen::VectorXd> conjugate_diagonals(const Eigen::VectorXd& lam, std::size_t conjugates,
                                                        std::uint64_t seed) {
  const auto n = lam.size();
  std::vector<Eigen::VectorXd> pts;
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd d = lam.asDiagonal();
  for (std::size_t k = 0; k < conjugates; ++k) {
    Eigen::MatrixXd g = random_orthogonal(static_cast<std::size_t>(n), rng);
    pts.push_back((g.transpose() * d * g).diagonal());
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  do {
    Eigen::VectorXd p(n);
    for (Eigen::Index i = 0; i < n; ++i) p[i] = lam[idx[static_cast<std::size_t>(i)]];
    pts.push_back(p);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return pts;
}

inline bool lp_membership_oracle(const std::vector<Eigen::VectorXd>& hull, const Eigen::VectorXd& y, double tol) {
  return hull_distance_l1(hull, y) <= tol;
}

}  // namespace equispectra::testing
