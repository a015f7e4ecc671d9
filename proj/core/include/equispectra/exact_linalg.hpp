#pragma once

#include <optional>
#include <vector>

#include "equispectra/matrix.hpp"
#include "equispectra/rational.hpp"

namespace equispectra {

using RationalMatrix = Matrix<Rational>;
using RationalVector = std::vector<Rational>;

struct EchelonForm {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

EchelonForm rref(RationalMatrix a);
std::size_t rank(const RationalMatrix& a);

/// Indices of rows that are independent of all earlier rows, scanning in order.
std::vector<std::size_t> independent_rows(const RationalMatrix& a);

/// Some x with a·x = b, or nullopt when inconsistent.
std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b);

/// Basis of {x : a·x = 0}.
std::vector<RationalVector> nullspace(const RationalMatrix& a);

Rational determinant(RationalMatrix a);
std::optional<RationalMatrix> inverse(const RationalMatrix& a);

bool is_symmetric(const RationalMatrix& a);
/// All leading principal minors positive.
bool is_positive_definite(const RationalMatrix& a);
/// All principal minors nonnegative.
bool is_psd_exact(const RationalMatrix& a);

RationalMatrix identity_matrix(std::size_t n);

}  // namespace equispectra
