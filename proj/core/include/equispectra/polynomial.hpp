#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "equispectra/rational.hpp"

namespace equispectra {

using Exponent = std::vector<std::uint32_t>;

/// Storage and printing order: ascending total degree, and inside one degree
/// descending lexicographic order in the declared variable order. The grlex
/// leading term is therefore the first term of the highest-degree block.
struct TermOrder {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

/// Total order used for leading terms: graded lexicographic.
bool grlex_less(const Exponent& a, const Exponent& b);

/// Exact multivariate polynomial over the rationals.
///
/// Each polynomial carries its own ordered variable list. Binary operations
/// on polynomials with different lists work over the merged list (variables of
/// the left operand first), so callers rarely need to align contexts by hand.
/// Equality is semantic: two polynomials are equal when their difference is
/// zero, whatever variable lists they were declared over.
class Polynomial {
 public:
  using Terms = std::map<Exponent, Rational, TermOrder>;

  Polynomial() = default;
  explicit Polynomial(std::vector<std::string> variables);
  Polynomial(std::vector<std::string> variables, Terms terms);

  static Polynomial constant(const Rational& c, std::vector<std::string> variables = {});
  static Polynomial variable(const std::string& name);
  static Polynomial variable(std::vector<std::string> variables, std::size_t index);
  static Polynomial monomial(std::vector<std::string> variables, Exponent exponent,
                             const Rational& coefficient = 1);

  const std::vector<std::string>& variables() const { return variables_; }
  std::size_t nvars() const { return variables_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;
  std::optional<std::size_t> index_of(std::string_view name) const;

  /// -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  int degree_in(std::string_view name) const;
  /// Variables that occur with a nonzero exponent, in declaration order.
  std::vector<std::string> used_variables() const;

  /// Terms containing var^power, with that exponent cleared.
  Polynomial coefficient_in(std::size_t var, std::uint32_t power) const;
  /// The grlex-largest term.
  std::pair<Exponent, Rational> leading_term() const;

  /// Re-expresses the polynomial over another variable list. Throws
  /// DomainError if a used variable is missing from the new list.
  Polynomial with_variables(std::vector<std::string> variables) const;
  /// Drops variables that do not occur.
  Polynomial trimmed() const;

  Polynomial derivative(std::size_t var) const;
  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& scalar);

  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  void add_term(const Exponent& e, const Rational& c);

  std::vector<std::string> variables_;
  Terms terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);
Polynomial operator*(const Polynomial& a, const Polynomial& b);
Polynomial operator*(Polynomial a, const Rational& s);
Polynomial operator*(const Rational& s, Polynomial a);
Polynomial pow(const Polynomial& p, std::uint32_t k);

/// Variables of `a` followed by the variables of `b` not already present.
std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b);

/// Parses expressions built from rationals, identifiers, + - * ^, parentheses
/// and division by constants. When `variables` is non-empty every identifier
/// must be declared there; otherwise variables are collected in order of
/// first appearance.
Polynomial parse_polynomial(std::string_view text, std::vector<std::string> variables = {});

/// Polynomial composition. Every used variable of `p` needs an image; the
/// result lives over the merged variable lists of the images (or `target`).
Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images,
                      std::optional<std::vector<std::string>> target = std::nullopt);

std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& q);
/// Exact quotient; throws NotDivisible when q does not divide p.
Polynomial exact_div(const Polynomial& p, const Polynomial& q);

/// Integer content one and positive grlex-leading coefficient. Zero stays zero.
Polynomial normalize(const Polynomial& p);

/// Normalized greatest common divisor; gcd(p, 0) = normalize(p).
Polynomial gcd(const Polynomial& p, const Polynomial& q);

/// p divided by gcd(p, dp/dx_1, ..., dp/dx_n), normalized. Throws on zero input.
Polynomial squarefree_part(const Polynomial& p);

}  // namespace equispectra
