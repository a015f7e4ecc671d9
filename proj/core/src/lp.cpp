#include "equispectra/lp.hpp"

#include <cmath>
#include <limits>

#include "equispectra/error.hpp"

namespace equispectra {

namespace {

constexpr double kPivotEps = 1e-11;

// Simplex on a tableau whose last row holds reduced costs and whose last column
// holds the right-hand side; `basis` names the basic column of each row.
bool run_simplex(Eigen::MatrixXd& t, std::vector<Eigen::Index>& basis, Eigen::Index columns) {
  const Eigen::Index rows = t.rows() - 1;
  const Eigen::Index rhs = t.cols() - 1;
  for (int iter = 0; iter < 100000; ++iter) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < columns; ++j)
      if (t(rows, j) < -kPivotEps) {
        enter = j;
        break;
      }
    if (enter < 0) return true;
    Eigen::Index leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < rows; ++i)
      if (t(i, enter) > kPivotEps) {
        double ratio = t(i, rhs) / t(i, enter);
        if (ratio < best - 1e-14 || (std::abs(ratio - best) <= 1e-14 && basis[i] < basis[leave])) {
          best = ratio;
          leave = i;
        }
      }
    if (leave < 0) return false;
    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= rows; ++i)
      if (i != leave && t(i, enter) != 0) t.row(i) -= t(i, enter) * t.row(leave);
    basis[leave] = enter;
  }
  throw DomainError("simplex iteration limit reached");
}

}  // namespace

LpResult solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
  const Eigen::Index m = a.rows(), n = a.cols();
  if (b.size() != m || c.size() != n) throw DomainError("solve_standard_lp: shape mismatch");
  // phase one with one artificial per row
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<Eigen::Index> basis(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = b[i] < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = s * a.row(i);
    t(i, n + i) = 1;
    t(i, n + m) = s * b[i];
    basis[static_cast<std::size_t>(i)] = n + i;
  }
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) t(m, n + i) = 0;
  run_simplex(t, basis, n + m);
  LpResult out;
  if (-t(m, n + m) > 1e-9 * std::max(1.0, b.lpNorm<1>())) return out;
  out.feasible = true;

  // phase two: drop artificials from the pricing, keep them out of the basis
  Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(m + 1, n + 1);
  t2.topLeftCorner(m, n) = t.topLeftCorner(m, n);
  t2.col(n).head(m) = t.col(n + m).head(m);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[static_cast<std::size_t>(i)] >= n) {
      // degenerate artificial: pivot on any structural column, else the row is redundant
      Eigen::Index j = 0;
      while (j < n && std::abs(t2(i, j)) <= kPivotEps) ++j;
      if (j == n) continue;
      t2.row(i) /= t2(i, j);
      for (Eigen::Index r = 0; r < m; ++r)
        if (r != i) t2.row(r) -= t2(r, j) * t2.row(i);
      basis[static_cast<std::size_t>(i)] = j;
    }
  t2.row(m).head(n) = c.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index bj = basis[static_cast<std::size_t>(i)];
    if (bj < n && t2(m, bj) != 0) t2.row(m) -= t2(m, bj) * t2.row(i);
  }
  out.bounded = run_simplex(t2, basis, n);
  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::Index bj = basis[static_cast<std::size_t>(i)];
    if (bj < n) out.x[bj] = t2(i, n);
  }
  out.value = c.dot(out.x);
  return out;
}

double hull_distance_l1(const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& target) {
  if (points.empty()) return std::numeric_limits<double>::infinity();
  const Eigen::Index dim = target.size();
  const Eigen::Index k = static_cast<Eigen::Index>(points.size());
  // columns: lambda_1..k, s+ (dim), s- (dim)
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim + 1, k + 2 * dim);
  for (Eigen::Index j = 0; j < k; ++j) {
    if (points[static_cast<std::size_t>(j)].size() != dim) throw DomainError("hull point has wrong dimension");
    a.col(j).head(dim) = points[static_cast<std::size_t>(j)];
    a(dim, j) = 1;
  }
  for (Eigen::Index i = 0; i < dim; ++i) {
    a(i, k + i) = 1;
    a(i, k + dim + i) = -1;
  }
  Eigen::VectorXd b(dim + 1);
  b.head(dim) = target;
  b[dim] = 1;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + 2 * dim);
  c.tail(2 * dim).setOnes();
  LpResult r = solve_standard_lp(a, b, c);
  if (!r.feasible) throw DomainError("hull LP unexpectedly infeasible");
  return r.value;
}

}  // namespace equispectra
