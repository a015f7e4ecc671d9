#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "equispectra/group.hpp"
#include "equispectra/pencil.hpp"
#include "equispectra/polynomial.hpp"

namespace equispectra {

using RingMatrix = Matrix<RingElement>;

struct DefiningPolynomial {
  Polynomial p;        // p(0) = 1
  Polynomial det;      // det M(x)
  std::vector<Polynomial> kept;    // factors vanishing on the sampled boundary
  std::vector<Polynomial> pruned;  // factors of the square-free determinant that do not
  std::size_t boundary_points = 0;
  double max_residual = 0;         // max |p| over the boundary samples
};

/// Square-free determinant, split into coprime factors by gcds with the
/// adjugate entries and principal minors, keeping the factors that vanish on
/// numerically located boundary points. Throws StageError when the kept
/// product does not vanish on every boundary sample.
DefiningPolynomial defining_polynomial(const AffinePencil& p, std::uint64_t seed = 1,
                                       std::size_t boundary_samples = 50);

struct XiData {
  std::vector<Polynomial> xi;
  RationalVector v;
  Polynomial q;
  Polynomial p;
  /// Coordinate gcd divided out of adj(M) v.
  Polynomial divisor;
  std::size_t candidates_tried = 0;
};

/// Deterministic candidates for v: standard basis, signed pairs, then wider
/// small-integer vectors. Entries are unique up to sign.
std::vector<RationalVector> xi_candidates(std::size_t d, std::size_t limit = 100);

/// Among accepted standard-basis candidates the one with the lowest-degree xi
/// wins; otherwise the first accepted candidate of the full sequence.
XiData compute_xi(const AffinePencil& p, const Polynomial& defining);

/// M(x) xi(x) - q(x) p(x) v, entrywise; all zero for valid data.
std::vector<Polynomial> xi_residual(const AffinePencil& p, const XiData& xi);

struct OrbitSpanData {
  std::vector<Polynomial> F;  // basis of the span of the coordinates of xi(g^-1 x)
  RingMatrix B;               // d x m, B(g) F(x) = xi(g^-1 x)
  /// The coordinates of xi(g^-1 x), one vector per component.
  std::vector<std::vector<Polynomial>> pulled;
};

/// x -> A(g^-1) x substituted into xi and reduced; F is read off greedily from
/// the coefficient rows in (component, coordinate, g-monomial) order, unless a
/// `preferred` basis of the same span is given.
OrbitSpanData expand_orbit_span(const XiData& xi, const GroupSpec& g,
                                const std::vector<std::string>& variables,
                                const std::optional<std::vector<Polynomial>>& preferred = std::nullopt);

/// Entries of B(g) F(x) - xi(g^-1 x) after reduction; all zero for valid data.
bool orbit_span_identity(const OrbitSpanData& span, const GroupSpec& g);

struct EquivariantDescription {
  AffinePencil Mbar;
  RationalMatrix gram0;  // Mbar at the base point
  RingMatrix rho;        // g . B^k = sum_j rho_jk(g) B^j
  std::vector<Polynomial> F;
  RingMatrix B;
};

EquivariantDescription gram_pencil(const AffinePencil& p, const OrbitSpanData& span, const GroupSpec& g);

/// Plain Haar Gram matrix of the columns of B.
RationalMatrix haar_gram(const RingMatrix& b, const GroupSpec& g);

struct EquivarianceReport {
  bool ok = true;
  bool gram_preserved = true;
  std::string failure;  // first failing entry, empty on success
};

/// Exact check, modulo the relation, of rho^T gram0 rho = gram0 and
/// rho(g)^T Mbar(A(g) x) rho(g) = Mbar(x) on every component.
EquivarianceReport equivariance_check(const AffinePencil& mbar, const RationalMatrix& gram0, const RingMatrix& rho,
                                      const GroupSpec& g);

struct SetEqualityReport {
  std::size_t agree = 0;
  std::size_t total = 0;
  std::optional<Eigen::VectorXd> disagreement;
  bool ok() const { return agree == total; }
};

/// Compares PSD verdicts of two pencils over the same variables at sample points
/// drawn from `a`.
SetEqualityReport set_equality_check(const AffinePencil& a, const AffinePencil& b, std::size_t samples, double tol,
                                     std::uint64_t seed);

struct CheckVerdict {
  std::string name;
  std::string verdict;  // "pass", "fail" or "skipped"
  std::string detail;
};

struct StageTiming {
  std::string stage;
  double milliseconds = 0;
};

struct EquivariantizeOptions {
  std::optional<RationalVector> shift;  // G-fixed interior point of the PSD set
  std::optional<std::vector<Polynomial>> preferred_basis;
  std::size_t samples = 1000;
  std::size_t elements_per_point = 10;
  double tol = 1e-9;
  std::uint64_t seed = 1;
};

struct EquivariantizeResult {
  EquivariantDescription description;  // Mbar in the input coordinates
  XiData xi;
  DefiningPolynomial defining;
  BasedPencil based;
  std::optional<RationalVector> shift;
  std::vector<CheckVerdict> certificate;
  std::vector<StageTiming> timings;
  bool all_passed() const;
};

/// Full pipeline. Each failing stage raises StageError naming the stage.
EquivariantizeResult equivariantize(const AffinePencil& p, const GroupSpec& g, const EquivariantizeOptions& options);

/// Display-only float view L^-1 Mbar_i L^-T with gram0 = L L^T; the view is
/// the identity at the base point. Throws DomainError unless gram0 is
/// positive-definite.
std::vector<Eigen::MatrixXd> orthonormal_view(const AffinePencil& mbar, const RationalMatrix& gram0);

/// True when A(g) u = u holds exactly on every component.
bool is_fixed_point(const GroupSpec& g, const RationalVector& u);

}  // namespace equispectra
