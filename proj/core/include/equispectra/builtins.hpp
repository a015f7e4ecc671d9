#pragma once

#include <Eigen/Dense>

#include "equispectra/equivariant.hpp"
#include "equispectra/group.hpp"
#include "equispectra/pencil.hpp"

namespace equispectra::builtins {

/// [[1 + x1, -x2], [-x2, 1 - x1]]: the unit disk.
AffinePencil disk_pencil();

/// Leading 3 x 3 block of the real form of a 2 x 2 Hermitian matrix, over
/// (a11, a12, a22, b12).
AffinePencil hermitian_pencil();
/// The identity matrix in (a11, a12, a22, b12) coordinates: fixed by conjugation
/// and interior to the PSD cone.
RationalVector hermitian_shift();
/// Basis of the orbit span that makes the columns of B orthonormal.
std::vector<Polynomial> hermitian_basis();

/// Moment matrix [[l1, l2, l3], [l2, l3, l4], [l3, l4, l5]] of binary quartics.
AffinePencil quartic_pencil();
/// Moments of the uniform measure on the circle.
RationalVector quartic_center();
/// Rational congruence P' with P'^T M(l + center) P' = quartic_equivariant_pencil().
RationalMatrix quartic_congruence();
/// The published equivariant quartic pencil conjugated by diag(1, 1/sqrt2, 1/sqrt2),
/// which makes every entry rational.
AffinePencil quartic_equivariant_pencil();
/// The published pencil itself, with its sqrt(2) entries, in floating point.
Eigen::MatrixXd quartic_published_at(std::span<const double> l);
/// rho(g) on both cosets: diag(1, g(2t)) and diag(1, g(2t)) diag(1, 1, -1).
RingMatrix quartic_rho(const GroupSpec& o2);

struct QuarticVerification {
  bool congruence_exact = false;
  EquivarianceReport equivariance;
  SetEqualityReport rational_set;   // rescaled rational pencil vs moment pencil
  SetEqualityReport published_set;  // sqrt(2) pencil vs moment pencil
  bool ok() const { return congruence_exact && equivariance.ok && rational_set.ok() && published_set.ok(); }
};

QuarticVerification verify_quartic(std::size_t samples, double tol, std::uint64_t seed);

/// Stock pencil for a name in {"disk", "hermitian", "quartic"}.
AffinePencil pencil_by_name(std::string_view name);

}  // namespace equispectra::builtins
