#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "equispectra/exact_linalg.hpp"
#include "equispectra/polynomial.hpp"

namespace equispectra {

enum class PolarKind { Sym, Skew };

/// O(n) acting by conjugation on symmetric or on skew-symmetric n x n matrices.
/// The section is the diagonal matrices (Sym) or the block-diagonal matrices
/// diag([[0, t1], [-t1, 0]], ...) (Skew).
class PolarFamily {
 public:
  PolarFamily(PolarKind kind, std::size_t n);
  static PolarFamily sym(std::size_t n) { return {PolarKind::Sym, n}; }
  static PolarFamily skew(std::size_t n) { return {PolarKind::Skew, n}; }

  PolarKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  std::size_t section_dim() const { return kind_ == PolarKind::Sym ? n_ : n_ / 2; }
  std::size_t ambient_dim() const { return kind_ == PolarKind::Sym ? n_ * (n_ + 1) / 2 : n_ * (n_ - 1) / 2; }

 private:
  PolarKind kind_;
  std::size_t n_;
};

using SectionPoint = Eigen::VectorXd;

/// The matrix of the section corresponding to `s`.
Eigen::MatrixXd embed(const PolarFamily& family, const SectionPoint& s);

struct ProjectionResult {
  SectionPoint section;
  Eigen::MatrixXd g;  // A = g * embed(section) * g^T
};

/// Eigenvalues (Sym) or block values (Skew), non-increasing. Sym eigenvectors
/// are sign-normalized: the largest-magnitude entry of each column is positive,
/// ties resolved toward the last index.
ProjectionResult project_to_section(const PolarFamily& family, const Eigen::MatrixXd& a);

/// Distinct points of the Weyl-group orbit: permutations (Sym), signed
/// permutations (Skew). Section dimension at most 8.
std::vector<SectionPoint> weyl_orbit(const PolarFamily& family, const SectionPoint& s);

/// y is majorized by x.
bool majorization_check(const SectionPoint& y, const SectionPoint& x, double tol = 1e-9);

/// Y lies in the convex hull of the conjugation orbit of X.
bool orbitope_membership(const PolarFamily& family, const Eigen::MatrixXd& y, const Eigen::MatrixXd& x,
                         double tol = 1e-9);

struct ReducedProblem {
  SectionPoint objective;
  Eigen::MatrixXd g;
  std::size_t original_dim = 0;
  std::size_t reduced_dim = 0;
};

ReducedProblem reduce_linear_problem(const PolarFamily& family, const Eigen::MatrixXd& v);

template <class T>
struct OrbitLpSolution {
  T value{};
  std::vector<T> argmax;
  /// argmax[i] == lam[permutation[i]]
  std::vector<std::size_t> permutation;
};

/// max over permutations s of <c, s(lam)>, by pairing sorted orders.
template <class T>
OrbitLpSolution<T> solve_orbit_polytope_lp(const std::vector<T>& c, const std::vector<T>& lam) {
  if (c.size() != lam.size()) throw std::invalid_argument("solve_orbit_polytope_lp: length mismatch");
  const std::size_t n = c.size();
  std::vector<std::size_t> ci(n), li(n);
  std::iota(ci.begin(), ci.end(), 0);
  std::iota(li.begin(), li.end(), 0);
  std::stable_sort(ci.begin(), ci.end(), [&](std::size_t a, std::size_t b) { return c[b] < c[a]; });
  std::stable_sort(li.begin(), li.end(), [&](std::size_t a, std::size_t b) { return lam[b] < lam[a]; });
  OrbitLpSolution<T> out;
  out.argmax.assign(n, T{});
  out.permutation.assign(n, 0);
  out.value = T{};
  for (std::size_t k = 0; k < n; ++k) {
    out.permutation[ci[k]] = li[k];
    out.argmax[ci[k]] = lam[li[k]];
  }
  for (std::size_t i = 0; i < n; ++i) out.value += c[i] * out.argmax[i];
  return out;
}

/// Haar-distributed orthogonal matrix.
Eigen::MatrixXd random_orthogonal(std::size_t n, std::mt19937_64& rng);

struct ReductionReport {
  double reduced_value = 0;
  double sampled_max = 0;   // over random conjugates g^T diag(lam) g
  double aligned_value = 0; // at the conjugate aligned with v
  bool ok = false;
};

/// Compares the section LP with direct maximization of tr(v X) over sampled
/// orbit points of diag(lam).
ReductionReport reduction_equivalence_check(const Eigen::MatrixXd& v, const SectionPoint& lam, std::size_t trials,
                                            std::uint64_t seed);

/// A polynomial in T1..Tn, where Td stands for tr(A^d).
struct TracePolynomial {
  std::size_t n = 0;
  Polynomial poly;

  Rational evaluate(const RationalMatrix& a) const;
  double evaluate(const Eigen::MatrixXd& a) const;
};

/// Invariant extension of a symmetric polynomial in n variables to Sym^2(R^n).
/// Throws DomainError if p is not symmetric.
TracePolynomial chevalley_lift(const Polynomial& p);

/// The lift as a polynomial in the entries y_ij (i <= j) of a symmetric matrix.
Polynomial lift_to_entries(const TracePolynomial& lift);
std::vector<std::string> symmetric_entry_variables(std::size_t n);

struct RealZeroReport {
  bool ok = false;
  std::size_t directions_checked = 0;
  std::optional<RationalVector> witness;
};

/// Deterministic integer directions: the standard basis, then a Halton sequence
/// scaled to [-1000, 1000]^n.
std::vector<RationalVector> real_zero_directions(std::size_t n, std::size_t count);

/// Whether every restriction t -> p(u + t w) along the test directions has only
/// real zeros (exact Sturm counts). Throws DomainError unless p(u) > 0.
RealZeroReport real_zero_check(const Polynomial& p, const RationalVector& u, std::size_t directions);

struct HopfPointCertificate {
  Eigen::Vector3d point;
  double projection_hull_distance = 0;  // L1 distance to Pi(O)
  Rational segment_distance_sq;         // exact distance^2 to the segment +-(1, 0, 1)
};

struct HopfReport {
  std::size_t orbit_samples = 0;
  HopfPointCertificate witness;
  HopfPointCertificate base_point;
  HopfPointCertificate midpoint;
  /// L1 distance from the lift (i, 0) of the witness to the orbit hull in R^4.
  double lifted_witness_distance = 0;
  bool ok = false;
};

/// U(1) acting on C^2 = R^4 by e^{it}(z1, z2), orbit of (1, 1), section
/// {Im z2 = 0} with coordinates (Re z1, Im z1, Re z2).
HopfReport hopf_counterexample(std::size_t orbit_samples = 720, double tol = 1e-6);

}  // namespace equispectra
