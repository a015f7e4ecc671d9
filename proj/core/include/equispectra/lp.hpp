#pragma once

#include <Eigen/Dense>

#include <vector>

namespace equispectra {

/// Dense tableau simplex for  min c^T x  s.t.  A x = b, x >= 0, with Bland's
/// rule. Sized for a few rows and a few thousand columns.
struct LpResult {
  bool feasible = false;
  bool bounded = true;
  double value = 0;
  Eigen::VectorXd x;
};

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

/// L1 distance from `target` to the convex hull of `points`.
double hull_distance_l1(const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& target);

inline bool in_convex_hull(const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& target,
                           double tol) {
  return hull_distance_l1(points, target) <= tol;
}

}  // namespace equispectra
