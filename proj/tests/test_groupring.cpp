#include <gtest/gtest.h>

#include <complex>

#include "equispectra/error.hpp"
#include "equispectra/group.hpp"
#include "quadrature.hpp"
#include "test_support.hpp"

using namespace equispectra;
using equispectra::testing::P;
using equispectra::testing::random_polynomial;

namespace {

RingElement ring(const GroupSpec& g, const std::string& text) {
  return normal_form(g, parse_polynomial(text, g.coordinates()));
}

Polynomial nf(const GroupSpec& g, const std::string& text) { return ring(g, text).components.front(); }

double eval_double(const Polynomial& p, const std::vector<double>& point) {
  return p.evaluate(std::span<const double>(point.data(), point.size()));
}

// Rational points used as fixed translation elements.
std::vector<GroupElement> fixed_elements(const GroupSpec& g) {
  std::mt19937_64 rng(99);
  return g.sample_elements(rng, 10);
}

}  // namespace

TEST(NormalForm, SO2Examples) {
  GroupSpec g = GroupSpec::builtin("disk-so2");
  EXPECT_EQ(nf(g, "s^2 + c^2"), P("1"));
  EXPECT_EQ(nf(g, "s^3"), P("s - c^2*s"));
  EXPECT_LE(nf(g, "s^5*c + s^4").degree_in("s"), 1);
  EXPECT_THROW(normal_form(g, P("c*x1")), DomainError);
}

TEST(NormalForm, SU2Examples) {
  GroupSpec g = GroupSpec::builtin("hermitian-su2");
  EXPECT_EQ(nf(g, "t^2 - 1"), P("-x^2 - y^2 - s^2"));
  EXPECT_EQ(nf(g, "x^2 + y^2 + s^2 + t^2"), P("1"));
}

TEST(NormalForm, CanonicalOnCosets) {
  GroupSpec g = GroupSpec::builtin("hermitian-su2");
  std::mt19937_64 rng(7);
  const auto& vars = g.coordinates();
  Polynomial rel = g.relations().front();
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial e = random_polynomial(rng, vars, 4, 5);
    Polynomial k = random_polynomial(rng, vars, 2, 3);
    EXPECT_EQ(g.normal_form(e), g.normal_form(e + k * rel));
  }
}

TEST(Haar, ClosedFormExamples) {
  GroupSpec so2 = GroupSpec::builtin("disk-so2");
  GroupSpec su2 = GroupSpec::builtin("hermitian-su2");
  EXPECT_EQ(haar_integrate(so2, ring(so2, "1")), 1);
  EXPECT_EQ(haar_integrate(so2, ring(so2, "c^2")), Rational(1, 2));
  EXPECT_EQ(haar_integrate(so2, ring(so2, "c^4")), Rational(3, 8));
  EXPECT_EQ(haar_integrate(su2, ring(su2, "1")), 1);
  EXPECT_EQ(haar_integrate(su2, ring(su2, "x^2")), Rational(1, 4));
  EXPECT_EQ(haar_integrate(su2, ring(su2, "x^4")), Rational(1, 8));
  EXPECT_EQ(haar_integrate(su2, ring(su2, "x*y")), 0);
}

TEST(Haar, OracleValuesOfQuarticMoments) {
  using namespace equispectra::testing;
  EXPECT_NEAR(circle_average([](double c, double) { return c * c * c * c; }), 3.0 / 8, 1e-12);
  EXPECT_NEAR(sphere3_average([](double x, double, double, double) { return x * x * x * x; }), 1.0 / 8, 1e-10);
}

TEST(Haar, AgreesWithQuadratureOnRandomElements) {
  using namespace equispectra::testing;
  GroupSpec so2 = GroupSpec::builtin("disk-so2");
  GroupSpec su2 = GroupSpec::builtin("hermitian-su2");
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    RingElement a = normal_form(so2, random_polynomial(rng, so2.coordinates(), 6, 6));
    double exact = haar_integrate(so2, a).get_d();
    double numeric = circle_average([&](double c, double s) { return eval_double(a.components[0], {c, s}); });
    EXPECT_NEAR(exact, numeric, 1e-8);

    RingElement b = normal_form(su2, random_polynomial(rng, su2.coordinates(), 6, 6));
    exact = haar_integrate(su2, b).get_d();
    numeric = sphere3_average(
        [&](double x, double y, double s, double t) { return eval_double(b.components[0], {x, y, s, t}); }, 28);
    EXPECT_NEAR(exact, numeric, 1e-8);
  }
}

TEST(Haar, O2AveragesCosets) {
  GroupSpec o2 = GroupSpec::builtin("quartic-o2");
  RingElement e{{P("c^2", {"c", "s"}), P("3", {"c", "s"})}};
  EXPECT_EQ(haar_integrate(o2, e), Rational(7, 4));
}

TEST(Haar, FiniteGroupIsPlainAverage) {
  RationalMatrix flip{{0, 1}, {1, 0}};
  RationalMatrix id = RationalMatrix::identity(2, 0, 1);
  GroupSpec g = GroupSpec::finite({id, flip});
  RingElement e{{P("5"), P("-1")}};
  EXPECT_EQ(haar_integrate(g, e), Rational(2));
  EXPECT_THROW(GroupSpec::finite({flip}), DomainError);
  EXPECT_THROW(GroupSpec::finite({RationalMatrix{{2, 0}, {0, 1}}}), DomainError);
}

TEST(InverseSubstitute, Examples) {
  GroupSpec so2 = GroupSpec::builtin("disk-so2");
  GroupSpec su2 = GroupSpec::builtin("hermitian-su2");
  EXPECT_EQ(inverse_substitute(so2, ring(so2, "s")).components[0], P("-s"));
  EXPECT_EQ(inverse_substitute(so2, ring(so2, "c*s")).components[0], P("-c*s"));
  EXPECT_EQ(inverse_substitute(su2, ring(su2, "x + y")).components[0], P("x - y"));
}

TEST(InverseSubstitute, Involution) {
  std::mt19937_64 rng(23);
  for (const char* name : {"disk-so2", "quartic-o2", "hermitian-su2"}) {
    GroupSpec g = GroupSpec::builtin(name);
    for (int trial = 0; trial < 10; ++trial) {
      RingElement e;
      for (std::size_t k = 0; k < g.component_count(); ++k)
        e.components.push_back(g.normal_form(random_polynomial(rng, g.coordinates(), 4, 5)));
      EXPECT_EQ(inverse_substitute(g, inverse_substitute(g, e)), e) << name;
    }
  }
}

TEST(LeftTranslate, SO2Examples) {
  GroupSpec so2 = GroupSpec::builtin("disk-so2");
  EXPECT_EQ(left_translate(so2, ring(so2, "c")).blocks[0][0], P("c_g*c_h + s_g*s_h"));
  EXPECT_EQ(left_translate(so2, ring(so2, "1")).blocks[0][0], P("1"));
  EXPECT_EQ(left_translate(so2, ring(so2, "s")).blocks[0][0], P("c_g*s_h - s_g*c_h"));
}

TEST(LeftTranslate, HaarInvariance) {
  std::mt19937_64 rng(31);
  for (const char* name : {"disk-so2", "quartic-o2", "hermitian-su2"}) {
    GroupSpec g = GroupSpec::builtin(name);
    const auto elements = fixed_elements(g);
    const auto gvars = g.coordinates_with_suffix("_g");
    const auto hvars = g.coordinates_with_suffix("_h");
    const int trials = g.kind() == GroupKind::SU2 ? 15 : 100;
    for (int trial = 0; trial < trials; ++trial) {
      RingElement e;
      for (std::size_t k = 0; k < g.component_count(); ++k)
        e.components.push_back(g.normal_form(random_polynomial(rng, g.coordinates(), 4, 4)));
      const Rational expected = haar_integrate(g, e);
      TwoCopyElement lt = left_translate(g, e);
      for (const auto& el : elements) {
        std::map<std::string, Polynomial> images;
        for (std::size_t i = 0; i < gvars.size(); ++i) images[gvars[i]] = Polynomial::constant(el.coordinates[i]);
        for (std::size_t i = 0; i < hvars.size(); ++i) images[hvars[i]] = Polynomial::variable(g.coordinates()[i]);
        RingElement translated;
        for (std::size_t b = 0; b < g.component_count(); ++b)
          translated.components.push_back(
              g.normal_form(substitute(lt.blocks[el.component][b], images, g.coordinates())));
        EXPECT_EQ(haar_integrate(g, translated), expected) << name;
      }
    }
  }
}

TEST(GroupSpec, BuiltinActionsAreRepresentations) {
  for (const char* name : {"disk-so2", "quartic-o2", "hermitian-su2", "trivial:3"}) {
    GroupSpec g = GroupSpec::builtin(name);
    EXPECT_TRUE(g.is_representation()) << name;
  }
  EXPECT_TRUE(GroupSpec::builtin("disk-so2").is_orthogonal());
  EXPECT_FALSE(GroupSpec::builtin("hermitian-su2").is_orthogonal());
  EXPECT_FALSE(GroupSpec::builtin("quartic-o2").is_orthogonal());
  EXPECT_THROW(GroupSpec::builtin("nonsense"), ParseError);
}

TEST(GroupSpec, InverseMapTwiceIsIdentity) {
  for (const char* name : {"disk-so2", "quartic-o2", "hermitian-su2"}) {
    GroupSpec g = GroupSpec::builtin(name);
    std::mt19937_64 rng(5);
    for (const auto& el : g.sample_elements(rng, 20)) {
      GroupElement back = g.invert(g.invert(el));
      EXPECT_EQ(back.component, el.component);
      EXPECT_EQ(back.coordinates, el.coordinates);
    }
  }
}

TEST(GroupSpec, SamplesSatisfyRelation) {
  for (const char* name : {"disk-so2", "quartic-o2", "hermitian-su2"}) {
    GroupSpec g = GroupSpec::builtin(name);
    std::mt19937_64 rng(8);
    for (const auto& el : g.sample_elements(rng, 20))
      EXPECT_EQ(g.relations().front().evaluate(el.coordinates), 0) << name;
  }
}

TEST(GroupSpec, MultiplicationLawMatchesActionProduct) {
  for (const char* name : {"disk-so2", "quartic-o2", "hermitian-su2"}) {
    GroupSpec g = GroupSpec::builtin(name);
    std::mt19937_64 rng(12);
    auto xs = g.sample_elements(rng, 8);
    auto ys = g.sample_elements(rng, 8);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      const auto& law = g.product(xs[k].component, ys[k].component);
      RationalVector both = xs[k].coordinates;
      both.insert(both.end(), ys[k].coordinates.begin(), ys[k].coordinates.end());
      GroupElement prod{law.component, {}};
      for (const auto& f : law.coordinates) prod.coordinates.push_back(f.evaluate(both));
      EXPECT_EQ(g.action_at(prod), g.action_at(xs[k]) * g.action_at(ys[k])) << name;
    }
  }
}

TEST(GroupSpec, HermitianActionIsConjugation) {
  using C = std::complex<double>;
  GroupSpec g = GroupSpec::builtin("hermitian-su2");
  std::mt19937_64 rng(4);
  const double h[4] = {0.7, -1.3, 2.1, 0.4};  // a11, a12, a22, b12
  for (const auto& el : g.sample_elements(rng, 10)) {
    const double x = el.coordinates[0].get_d(), y = el.coordinates[1].get_d();
    const double s = el.coordinates[2].get_d(), t = el.coordinates[3].get_d();
    C m[2][2] = {{C(x, y), C(-s, t)}, {C(s, t), C(x, -y)}};
    C hm[2][2] = {{C(h[0], 0), C(h[1], h[3])}, {C(h[1], -h[3]), C(h[2], 0)}};
    C out[2][2] = {};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) out[i][j] += m[i][k] * hm[k][l] * std::conj(m[j][l]);
    const double expected[4] = {out[0][0].real(), out[0][1].real(), out[1][1].real(), out[0][1].imag()};
    RationalMatrix a = g.action_at(el);
    for (int i = 0; i < 4; ++i) {
      double v = 0;
      for (int j = 0; j < 4; ++j) v += a(i, j).get_d() * h[j];
      EXPECT_NEAR(v, expected[i], 1e-12);
    }
  }
}

TEST(GroupSpec, QuarticActionPullsBackMonomials) {
  GroupSpec g = GroupSpec::builtin("quartic-o2");
  std::mt19937_64 rng(6);
  const int px[5] = {4, 3, 2, 1, 0};
  auto mono = [&](int i, double x, double y) { return std::pow(x, px[i]) * std::pow(y, 4 - px[i]); };
  for (const auto& el : g.sample_elements(rng, 10)) {
    RationalMatrix a = g.action_at(el);
    const double c = el.coordinates[0].get_d(), s = el.coordinates[1].get_d();
    // element matrix: rotation, times diag(1, -1) on the reflection coset
    double m[2][2] = {{c, -s}, {s, c}};
    if (el.component == 1) m[0][1] = s, m[1][1] = -c;
    const double x = 0.37, y = -1.21;
    const double gx = m[0][0] * x + m[0][1] * y, gy = m[1][0] * x + m[1][1] * y;
    for (int i = 0; i < 5; ++i) {
      double rhs = 0;
      for (int j = 0; j < 5; ++j) rhs += a(i, j).get_d() * mono(j, x, y);
      EXPECT_NEAR(mono(i, gx, gy), rhs, 1e-10);
    }
  }
}
