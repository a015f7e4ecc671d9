#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace equispectra {

/// Exact rational number. GMP keeps it canonical (lowest terms, positive
/// denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// num/den in lowest terms; the two-argument mpq_class constructor does not
/// canonicalize.
inline Rational make_rational(long num, long den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "num", "num/den" or a finite decimal such as "-0.125".
Rational parse_rational(std::string_view text);

/// "num" when the denominator is one, otherwise "num/den".
std::string to_string(const Rational& value);

inline int sign(const Rational& value) { return sgn(value); }

inline double to_double(const Rational& value) { return value.get_d(); }

/// Exact conversion of a finite double.
Rational from_double(double value);

}  // namespace equispectra
