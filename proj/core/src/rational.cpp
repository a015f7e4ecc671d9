#include "equispectra/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "equispectra/error.hpp"

namespace equispectra {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("invalid rational '" + std::string(text) + "'");
    Integer d(std::string(den), 10);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer(std::string(num), 10), d);
    value.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot);
    auto frac = s.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw ParseError("invalid decimal '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    value = Rational(digits, scale);
    value.canonicalize();
  } else {
    if (!all_digits(s)) throw ParseError("invalid rational '" + std::string(text) + "'");
    value = Rational(Integer(std::string(s), 10));
  }
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite double to a rational");
  Rational r(value);
  return r;
}

}  // namespace equispectra
