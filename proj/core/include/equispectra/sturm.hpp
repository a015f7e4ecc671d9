#pragma once

#include <vector>

#include "equispectra/polynomial.hpp"

namespace equispectra {

/// Dense univariate polynomial, coefficients from degree 0 upwards, trailing
/// zeros stripped.
using DenseUnivariate = std::vector<Rational>;

/// Converts a polynomial that uses at most one variable. Throws DomainError
/// otherwise.
DenseUnivariate to_dense(const Polynomial& p);

/// Number of distinct real roots, from a Sturm sequence evaluated at +-inf.
int count_distinct_real_roots(const DenseUnivariate& p);

/// True iff every complex root of p is real. Degree-0 input returns true;
/// throws DomainError on the zero polynomial.
bool sturm_all_roots_real(const Polynomial& p);

}  // namespace equispectra
