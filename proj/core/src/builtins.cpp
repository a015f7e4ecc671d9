#include "equispectra/builtins.hpp"

#include <cmath>

#include "equispectra/error.hpp"
#include "equispectra/parallel.hpp"

namespace equispectra::builtins {

namespace {

AffinePencil from_strings(const std::vector<std::vector<std::string>>& rows, std::vector<std::string> vars) {
  PolynomialMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = parse_polynomial(rows[i][j], vars);
  return AffinePencil::from_polynomials(m, std::move(vars));
}

const std::vector<std::string> kQuarticVars{"l1", "l2", "l3", "l4", "l5"};

}  // namespace

AffinePencil disk_pencil() {
  return from_strings({{"1 + x1", "-x2"}, {"-x2", "1 - x1"}}, {"x1", "x2"});
}

AffinePencil hermitian_pencil() {
  return from_strings({{"a11", "a12", "0"}, {"a12", "a22", "b12"}, {"0", "b12", "a11"}},
                      {"a11", "a12", "a22", "b12"});
}

RationalVector hermitian_shift() { return {1, 0, 1, 0}; }

std::vector<Polynomial> hermitian_basis() {
  const std::vector<std::string> vars{"a11", "a12", "a22", "b12"};
  return {parse_polynomial("1 + 1/2*a11 + 1/2*a22", vars), parse_polynomial("-a12", vars),
          parse_polynomial("-1/2*a11 + 1/2*a22", vars), parse_polynomial("b12", vars)};
}

AffinePencil quartic_pencil() {
  return from_strings({{"l1", "l2", "l3"}, {"l2", "l3", "l4"}, {"l3", "l4", "l5"}}, kQuarticVars);
}

RationalVector quartic_center() { return {Rational(3, 8), 0, Rational(1, 8), 0, Rational(3, 8)}; }

RationalMatrix quartic_congruence() { return RationalMatrix{{1, -1, 0}, {0, 0, -2}, {1, 1, 0}}; }

AffinePencil quartic_equivariant_pencil() {
  return from_strings({{"l1 + 2*l3 + l5 + 1", "l5 - l1", "-2*l2 - 2*l4"},
                       {"l5 - l1", "l1 - 2*l3 + l5 + 1/2", "2*l2 - 2*l4"},
                       {"-2*l2 - 2*l4", "2*l2 - 2*l4", "4*l3 + 1/2"}},
                      kQuarticVars);
}

Eigen::MatrixXd quartic_published_at(std::span<const double> l) {
  if (l.size() != 5) throw DomainError("quartic pencil takes five coordinates");
  const double r2 = std::sqrt(2.0);
  Eigen::MatrixXd m(3, 3);
  m << l[0] + 2 * l[2] + l[4] + 1, r2 * (l[4] - l[0]), -2 * r2 * (l[1] + l[3]),  //
      r2 * (l[4] - l[0]), 2 * l[0] - 4 * l[2] + 2 * l[4] + 1, 4 * (l[1] - l[3]),  //
      -2 * r2 * (l[1] + l[3]), 4 * (l[1] - l[3]), 8 * l[2] + 1;
  return m;
}

RingMatrix quartic_rho(const GroupSpec& o2) {
  const auto& coords = o2.coordinates();
  auto poly = [&](const char* text) { return o2.normal_form(parse_polynomial(text, coords)); };
  RingMatrix rho(3, 3);
  const char* rotation[3][3] = {{"1", "0", "0"}, {"0", "c^2 - s^2", "-2*c*s"}, {"0", "2*c*s", "c^2 - s^2"}};
  const char* reflection[3][3] = {{"1", "0", "0"}, {"0", "c^2 - s^2", "2*c*s"}, {"0", "2*c*s", "s^2 - c^2"}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) rho(i, j).components = {poly(rotation[i][j]), poly(reflection[i][j])};
  return rho;
}

QuarticVerification verify_quartic(std::size_t samples, double tol, std::uint64_t seed) {
  QuarticVerification out;
  const GroupSpec o2 = GroupSpec::builtin("quartic-o2");
  const AffinePencil moment = quartic_pencil().translated(quartic_center());
  const AffinePencil mbar = quartic_equivariant_pencil();
  const RationalMatrix p = quartic_congruence();

  out.congruence_exact = true;
  for (std::size_t k = 0; k <= mbar.n(); ++k)
    if (p.transpose() * moment.matrices()[k] * p != mbar.matrices()[k]) out.congruence_exact = false;

  out.equivariance = equivariance_check(mbar, mbar.base(), quartic_rho(o2), o2);
  out.rational_set = set_equality_check(mbar, moment, samples, tol, seed);

  auto points = sample_points(mbar, samples, seed);
  std::vector<char> same(samples, 0);
  parallel_for(samples, [&](std::size_t i) {
    std::span<const double> l(points[i].data(), points[i].size());
    same[i] = psd_check(quartic_published_at(l), tol) == psd_check(evaluate(moment, l), tol);
  });
  out.published_set.total = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    if (same[i]) ++out.published_set.agree;
    else if (!out.published_set.disagreement) out.published_set.disagreement = points[i];
  }
  return out;
}

AffinePencil pencil_by_name(std::string_view name) {
  if (name == "disk") return disk_pencil();
  if (name == "hermitian") return hermitian_pencil();
  if (name == "quartic") return quartic_pencil();
  throw ParseError("unknown builtin pencil '" + std::string(name) + "'");
}

}  // namespace equispectra::builtins
