#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "equispectra/error.hpp"
#include "equispectra/exact_linalg.hpp"
#include "equispectra/group.hpp"
#include "equispectra/polynomial.hpp"

namespace equispectra {

/// M(x) = M0 + x1 M1 + ... + xn Mn with symmetric rational d x d matrices.
class AffinePencil {
 public:
  AffinePencil() = default;
  /// `matrices` holds M0, ..., Mn; throws DomainError on shape or symmetry violations.
  AffinePencil(std::vector<std::string> variables, std::vector<RationalMatrix> matrices);
  /// Default variable names x1, ..., xn.
  static AffinePencil with_default_names(std::vector<RationalMatrix> matrices);
  /// Reads the coefficients of an affine polynomial matrix over `variables`.
  static AffinePencil from_polynomials(const PolynomialMatrix& m, std::vector<std::string> variables);

  std::size_t n() const { return variables_.size(); }
  std::size_t d() const { return matrices_.empty() ? 0 : matrices_.front().rows(); }
  const std::vector<std::string>& variables() const { return variables_; }
  const std::vector<RationalMatrix>& matrices() const { return matrices_; }
  const RationalMatrix& base() const { return matrices_.front(); }
  const RationalMatrix& coefficient(std::size_t i) const { return matrices_.at(i + 1); }

  PolynomialMatrix polynomial_matrix() const;
  /// The pencil x -> M(x + shift).
  AffinePencil translated(std::span<const Rational> shift) const;

  friend bool operator==(const AffinePencil&, const AffinePencil&) = default;

 private:
  std::vector<std::string> variables_;
  std::vector<RationalMatrix> matrices_;
};

RationalMatrix evaluate(const AffinePencil& p, std::span<const Rational> a);
Eigen::MatrixXd evaluate(const AffinePencil& p, std::span<const double> a);

Eigen::MatrixXd to_eigen(const RationalMatrix& m);

/// Minimum eigenvalue >= -tol * max(1, |A|). Throws DomainError when A is not
/// symmetric within the same relative tolerance.
bool psd_check(const Eigen::MatrixXd& a, double tol);

/// Fraction-free determinant over the polynomial ring (cofactors for d <= 4).
Polynomial determinant(const PolynomialMatrix& m);
PolynomialMatrix adjugate(const PolynomialMatrix& m);
Polynomial det_poly(const AffinePencil& p);
PolynomialMatrix adjugate_polys(const AffinePencil& p);

/// M(0) is not positive-semidefinite; w^T M(0) w < 0.
class NotPsd : public DomainError {
 public:
  NotPsd(const std::string& what, RationalVector witness)
      : DomainError(what), witness_(std::move(witness)) {}
  const RationalVector& witness() const { return witness_; }

 private:
  RationalVector witness_;
};

/// M(0) is singular along a direction where the pencil still varies, so 0 is
/// not a relative interior point of the PSD set.
class NotInterior : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A pencil whose base matrix M(0) is certified positive-definite.
struct BasedPencil {
  AffinePencil pencil;
  /// d x r rational congruence: reduced M(x) = Q^T M_in(x) Q.
  RationalMatrix congruence;
};

BasedPencil base_reduce(const AffinePencil& p);

/// Pencil [[0, y], [y^T, 0]] with y = U^T (x - v), U a rational basis of the
/// orthogonal complement of W. Its PSD set is span(W) + v.
AffinePencil subspace_pencil(const std::vector<RationalVector>& w_basis, const RationalVector& v,
                             std::vector<std::string> variables = {});

/// Largest t with M(t w) still PSD for a pencil with M(0) positive-definite;
/// nullopt when the ray never leaves the set.
std::optional<double> boundary_parameter(const AffinePencil& p, const Eigen::VectorXd& w);

/// Sample points for set comparisons: directions at several multiples of the
/// boundary parameter (inside, near the boundary, outside) mixed with plain
/// random points. Deterministic in the seed.
std::vector<Eigen::VectorXd> sample_points(const AffinePencil& p, std::size_t count, std::uint64_t seed);

/// Points on the boundary of the PSD set along random rays from 0.
std::vector<Eigen::VectorXd> boundary_points(const AffinePencil& p, std::size_t count, std::uint64_t seed);

struct InvarianceReport {
  bool invariant = true;
  std::size_t points = 0;
  std::optional<Eigen::VectorXd> witness_x;
  std::optional<GroupElement> witness_g;
};

/// False (with witness) as soon as PSD(M(x)) and PSD(M(g x)) differ at a sampled
/// pair. Passing is evidence, not proof.
InvarianceReport invariance_sample_check(const AffinePencil& p, const GroupSpec& g, std::size_t samples,
                                         double tol, std::uint64_t seed, std::size_t elements_per_point = 10);

}  // namespace equispectra
