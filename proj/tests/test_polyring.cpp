#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>

#include "equispectra/error.hpp"
#include "equispectra/polynomial.hpp"
#include "equispectra/rational.hpp"
#include "equispectra/sturm.hpp"
#include "test_support.hpp"

using namespace equispectra;
using equispectra::testing::P;
using equispectra::testing::random_polynomial;

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
  EXPECT_EQ(parse_rational("-0.125"), Rational(-1, 8));
  EXPECT_EQ(parse_rational(" 7 "), Rational(7));
  EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
  EXPECT_THROW(parse_rational("4/-2"), ParseError);
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(Rational, LowestTermsPositiveDenominator) {
  Rational r = parse_rational("-6/4");
  EXPECT_EQ(r.get_num(), -3);
  EXPECT_EQ(r.get_den(), 2);
}

TEST(Polynomial, CanonicalFormAndPrinting) {
  Polynomial a = P("x1^2 + x2 - x1^2 + 1/2*x2");
  EXPECT_EQ(a.to_string(), "3/2*x2");
  EXPECT_EQ(P("1 - x1^2 - x2^2").to_string(), "1 - x1^2 - x2^2");
  EXPECT_EQ(P("x2^2*x1", {"x1", "x2"}).to_string(), "x1*x2^2");
  EXPECT_EQ(P("x - x").to_string(), "0");
  for (const auto& [e, c] : P("(x+y)^3 - x^3").terms()) {
    EXPECT_NE(c, 0);
    EXPECT_EQ(e.size(), 2u);
  }
  EXPECT_EQ(P("(x+y)*(x-y)"), P("x^2 - y^2"));
  EXPECT_EQ(P("x", {"x", "y"}), P("x"));
}

TEST(Polynomial, ParseErrorsCarryPosition) {
  try {
    parse_polynomial("1 + * x");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_GT(e.column(), 0u);
  }
  EXPECT_THROW(parse_polynomial("x / y"), ParseError);
  EXPECT_THROW(parse_polynomial("z", {"x"}), ParseError);
}

TEST(Gcd, Examples) {
  EXPECT_EQ(gcd(P("x^2 - 1"), P("x^2 - 2*x + 1")), P("x - 1"));
  Polynomial p = P("-2*x^2 + 4*x*y");
  EXPECT_EQ(gcd(p, Polynomial()).to_string(), normalize(p).to_string());
  EXPECT_EQ(gcd(P("x*y"), P("x*z")), P("x"));
  EXPECT_EQ(gcd(Polynomial(), Polynomial()), Polynomial());
}

TEST(Gcd, Normalization) {
  Polynomial g = gcd(P("-6*x*y - 3*y"), P("4*x*y + 2*y"));
  EXPECT_EQ(g, P("2*x*y + y"));
  EXPECT_GT(g.leading_term().second, 0);
}

TEST(Gcd, SymmetryAndCommonFactor) {
  std::mt19937_64 rng(11);
  const std::vector<std::string> vars{"x", "y", "z"};
  for (int trial = 0; trial < 40; ++trial) {
    Polynomial p = random_polynomial(rng, vars, 3, 4);
    Polynomial q = random_polynomial(rng, vars, 3, 4);
    Polynomial h = random_polynomial(rng, vars, 2, 3);
    if (p.is_zero() || q.is_zero() || h.is_zero()) continue;
    Polynomial g = gcd(p, q);
    EXPECT_EQ(g, gcd(q, p));
    EXPECT_TRUE(try_divide(p, g).has_value());
    EXPECT_TRUE(try_divide(q, g).has_value());
    EXPECT_EQ(gcd(p * h, q * h), normalize(h * g)) << p.to_string() << " | " << q.to_string() << " | "
                                                    << h.to_string();
  }
}

TEST(SquarefreePart, Examples) {
  EXPECT_EQ(squarefree_part(P("(x-1)^2*(x+1)")), P("(x-1)*(x+1)"));
  EXPECT_EQ(squarefree_part(P("x^2 + y^2")), P("x^2 + y^2"));
  // normalized results carry a positive grlex-leading coefficient
  EXPECT_EQ(squarefree_part(P("(1 - x1^2 - x2^2)^3")), P("x1^2 + x2^2 - 1"));
  EXPECT_EQ(squarefree_part(P("(1+a)^2*(1+a-b^2)")), P("-(1+a)*(1+a-b^2)"));
  EXPECT_THROW(squarefree_part(Polynomial()), DomainError);
}

TEST(SquarefreePart, Idempotent) {
  std::mt19937_64 rng(5);
  const std::vector<std::string> vars{"x", "y"};
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial a = random_polynomial(rng, vars, 2, 3);
    Polynomial b = random_polynomial(rng, vars, 2, 3);
    if (a.is_zero() || b.is_zero() || a.is_constant() || b.is_constant()) continue;
    Polynomial p = a * a * b;
    Polynomial s = squarefree_part(p);
    EXPECT_EQ(squarefree_part(s), s);
    EXPECT_TRUE(try_divide(p, s).has_value());
  }
}

TEST(ExactDiv, Examples) {
  EXPECT_EQ(exact_div(P("x^2 - 1"), P("x - 1")), P("x + 1"));
  EXPECT_THROW(exact_div(P("x^2 + 1"), P("x - 1")), NotDivisible);
  Polynomial disk = P("1 - x1^2 - x2^2");
  EXPECT_EQ(exact_div(P("1 - x1") * disk, disk), P("1 - x1"));
  EXPECT_THROW(exact_div(P("x"), Polynomial()), DomainError);
}

TEST(Substitute, Examples) {
  std::map<std::string, Polynomial> rot{{"x1", P("c*x1 - s*x2")}};
  EXPECT_EQ(substitute(P("x1^2"), rot), P("c^2*x1^2 - 2*c*s*x1*x2 + s^2*x2^2"));
  Polynomial p = P("x1^3 - 2*x1*x2 + 5");
  EXPECT_EQ(substitute(p, {{"x1", P("x1")}, {"x2", P("x2")}}), p);
  std::map<std::string, Polynomial> pull{{"x1", P("c*x1 + s*x2")}, {"x2", P("-s*x1 + c*x2")}};
  Polynomial image = substitute(P("1 - x1"), pull);
  EXPECT_EQ(image, P("1 - c*x1 - s*x2"));
  EXPECT_TRUE(image.index_of("c").has_value());
  EXPECT_THROW(substitute(P("x1*x3"), rot), DomainError);
}

TEST(Substitute, RingHomomorphism) {
  std::mt19937_64 rng(3);
  const std::vector<std::string> vars{"x", "y"};
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial p = random_polynomial(rng, vars, 3, 4);
    Polynomial q = random_polynomial(rng, vars, 3, 4);
    std::map<std::string, Polynomial> images{{"x", random_polynomial(rng, {"u", "v"}, 2, 3)},
                                             {"y", random_polynomial(rng, {"u", "v"}, 2, 3)}};
    EXPECT_EQ(substitute(p * q, images), substitute(p, images) * substitute(q, images));
    EXPECT_EQ(substitute(p + q, images), substitute(p, images) + substitute(q, images));
  }
}

TEST(Sturm, Examples) {
  EXPECT_TRUE(sturm_all_roots_real(P("t^2 - 1")));
  EXPECT_FALSE(sturm_all_roots_real(P("t^2 + 1")));
  EXPECT_TRUE(sturm_all_roots_real(P("(t-2)^2*(t+3)")));
  EXPECT_TRUE(sturm_all_roots_real(P("7")));
  EXPECT_THROW(sturm_all_roots_real(Polynomial()), DomainError);
  EXPECT_THROW(sturm_all_roots_real(P("x*y")), DomainError);
  EXPECT_EQ(count_distinct_real_roots(to_dense(P("(t-1)*(t-2)*(t-3)*(t^2+1)"))), 3);
}

namespace {

// Companion-matrix eigenvalues; all real when every imaginary part is below 1e-9.
bool companion_all_real(const DenseUnivariate& p, double& min_gap) {
  const int n = static_cast<int>(p.size()) - 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  const double lead = p.back().get_d();
  for (int i = 0; i < n; ++i) c(0, i) = -p[n - 1 - i].get_d() / lead;
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  auto ev = es.eigenvalues();
  min_gap = 1e300;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) min_gap = std::min(min_gap, std::abs(ev[i] - ev[j]));
  for (int i = 0; i < n; ++i)
    if (std::abs(ev[i].imag()) > 1e-9) return false;
  return true;
}

}  // namespace

TEST(Sturm, AgreesWithCompanionOracle) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> coeff(-5, 5);
  std::uniform_int_distribution<int> degree(1, 6);
  int checked = 0;
  while (checked < 200) {
    const int deg = degree(rng);
    DenseUnivariate dense(deg + 1);
    for (auto& c : dense) c = coeff(rng);
    if (dense.back() == 0) continue;
    double gap = 0;
    bool oracle = companion_all_real(dense, gap);
    // nearly repeated roots blur the floating-point oracle; those are covered exactly elsewhere
    if (gap < 1e-4) continue;
    Polynomial p(std::vector<std::string>{"t"});
    for (int k = 0; k <= deg; ++k) p += Polynomial::monomial({"t"}, {static_cast<std::uint32_t>(k)}, dense[k]);
    EXPECT_EQ(sturm_all_roots_real(p), oracle) << p.to_string();
    ++checked;
  }
}
