// Acceptance suite: one pass/fail line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "equispectra/builtins.hpp"
#include "equispectra/equivariant.hpp"
#include "equispectra/polar.hpp"
#include "golden.hpp"
#include "hull_oracle.hpp"
#include "quadrature.hpp"
#include "test_support.hpp"

using namespace equispectra;
using equispectra::cli::Json;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

Polynomial P(const std::string& text, const std::vector<std::string>& vars) { return parse_polynomial(text, vars); }

bool pencil_equals(const AffinePencil& p, const std::vector<std::vector<std::string>>& literal) {
  PolynomialMatrix m = p.polynomial_matrix();
  if (m.rows() != literal.size()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != P(literal[i][j], p.variables())) return false;
  return true;
}

bool ring_matrix_equals(const RingMatrix& m, const GroupSpec& g, const std::vector<std::vector<std::string>>& literal) {
  if (m.rows() != literal.size()) return false;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != normal_form(g, P(literal[i][j], g.coordinates()))) return false;
  return true;
}

bool xi_identity_holds(const AffinePencil& based, const XiData& xi) {
  for (const auto& e : xi_residual(based, xi))
    if (!e.is_zero()) return false;
  return true;
}

RationalMatrix diagonal(const RationalVector& a) {
  RationalMatrix m(a.size(), a.size(), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) m(i, i) = a[i];
  return m;
}

EquivariantizeResult run_disk() { return equivariantize(builtins::disk_pencil(), GroupSpec::builtin("disk-so2"), {}); }

EquivariantizeResult run_hermitian() {
  EquivariantizeOptions o;
  o.shift = builtins::hermitian_shift();
  o.preferred_basis = builtins::hermitian_basis();
  return equivariantize(builtins::hermitian_pencil(), GroupSpec::builtin("hermitian-su2"), o);
}

void criterion_disk(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  GroupSpec so2 = GroupSpec::builtin("disk-so2");
  EquivariantizeResult r = run_disk();
  const double elapsed = seconds_since(start);
  Json doc = cli::golden_view(cli::equivariant_to_json(r, so2));
  o.require(cli::dump_document(doc) == cli::dump_document(cli::golden("disk")), "golden document differs");
  o.require(pencil_equals(r.description.Mbar, {{"1", "x1", "x2"}, {"x1", "1", "0"}, {"x2", "0", "1"}}),
            "Mbar differs from [[1,x1,x2],[x1,1,0],[x2,0,1]]");
  const std::vector<std::string> x{"x1", "x2"};
  o.require(r.description.F == std::vector<Polynomial>{P("1", x), P("-x1", x), P("-x2", x)}, "F differs");
  o.require(ring_matrix_equals(r.description.B, so2, {{"1", "c", "s"}, {"0", "s", "-c"}}), "B differs");
  o.require(r.all_passed(), "certificate failure");
  o.require(elapsed < 5, "runtime " + std::to_string(elapsed) + " s");
  o.detail << "runtime " << elapsed << " s";
}

void criterion_hermitian(Outcome& o) {
  const auto start = std::chrono::steady_clock::now();
  GroupSpec su2 = GroupSpec::builtin("hermitian-su2");
  EquivariantizeResult r = run_hermitian();
  const double elapsed = seconds_since(start);
  Json doc = cli::golden_view(cli::equivariant_to_json(r, su2));
  o.require(cli::dump_document(doc) == cli::dump_document(cli::golden("hermitian")), "golden document differs");
  const std::string tr = "1/2*a11 + 1/2*a22", df = "1/2*a11 - 1/2*a22";
  o.require(pencil_equals(r.description.Mbar, {{tr, "a12", df, "-b12"},
                                               {"a12", tr, "0", "0"},
                                               {df, "0", tr, "0"},
                                               {"-b12", "0", "0", tr}}),
            "Mbar differs from the published 4x4 matrix");
  o.require(r.all_passed(), "certificate failure");
  o.require(elapsed < 30, "runtime " + std::to_string(elapsed) + " s");
  o.detail << "runtime " << elapsed << " s";
}

void criterion_quartic(Outcome& o) {
  builtins::QuarticVerification q = builtins::verify_quartic(1000, 1e-8, 1);
  o.require(q.congruence_exact, "congruence to the moment pencil is not exact");
  o.require(q.equivariance.ok, "equivariance: " + q.equivariance.failure);
  o.require(q.published_set.ok(), "published pencil disagrees with the moment pencil");
  o.require(q.rational_set.ok(), "rescaled pencil disagrees with the moment pencil");
  o.detail << "published " << q.published_set.agree << "/" << q.published_set.total << ", rescaled "
           << q.rational_set.agree << "/" << q.rational_set.total << " at tol 1e-8";
}

void criterion_xi(Outcome& o) {
  std::size_t runs = 0;
  for (const auto& r : {run_disk(), run_hermitian()}) {
    o.require(xi_identity_holds(r.based.pencil, r.xi), "worked example");
    ++runs;
  }
  EquivariantizeResult again = equivariantize(run_disk().description.Mbar, GroupSpec::builtin("disk-so2"), {});
  o.require(xi_identity_holds(again.based.pencil, again.xi), "rerun on the disk output");
  ++runs;
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3, d = 2 + trial % 3;
    AffinePencil p = equispectra::testing::random_based_pencil(rng, n, d);
    EquivariantizeResult r = equivariantize(p, GroupSpec::trivial(n), {});
    o.require(xi_identity_holds(r.based.pencil, r.xi), "random pencil " + std::to_string(trial));
    ++runs;
  }
  o.detail << runs << " pipeline runs, zero remainder";
}

void criterion_haar(Outcome& o) {
  using equispectra::testing::circle_average;
  using equispectra::testing::sphere3_average;
  GroupSpec so2 = GroupSpec::builtin("disk-so2");
  GroupSpec su2 = GroupSpec::builtin("hermitian-su2");
  std::mt19937_64 rng(2024);
  double worst = 0;
  auto eval = [](const Polynomial& p, std::vector<double> pt) { return p.evaluate(std::span<const double>(pt)); };
  for (int trial = 0; trial < 50; ++trial) {
    RingElement a = normal_form(so2, equispectra::testing::random_polynomial(rng, so2.coordinates(), 6, 6));
    const double ea = haar_integrate(so2, a).get_d();
    const double na = circle_average([&](double c, double s) { return eval(a.components[0], {c, s}); });
    RingElement b = normal_form(su2, equispectra::testing::random_polynomial(rng, su2.coordinates(), 6, 6));
    const double eb = haar_integrate(su2, b).get_d();
    const double nb = sphere3_average(
        [&](double x, double y, double s, double t) { return eval(b.components[0], {x, y, s, t}); }, 28);
    worst = std::max({worst, std::abs(ea - na), std::abs(eb - nb)});
  }
  o.require(worst <= 1e-8, "quadrature gap " + std::to_string(worst));
  const Rational c4 = haar_integrate(so2, normal_form(so2, P("c^4", so2.coordinates())));
  const Rational x4 = haar_integrate(su2, normal_form(su2, P("x^4", su2.coordinates())));
  o.require(c4 == Rational(3, 8), "int c^4 = " + to_string(c4));
  o.require(x4 == Rational(1, 8), "int x^4 = " + to_string(x4));
  o.require(std::abs(circle_average([](double c, double) { return std::pow(c, 4); }) - 0.375) <= 1e-8,
            "oracle int c^4");
  o.require(std::abs(sphere3_average([](double x, double, double, double) { return std::pow(x, 4); }) - 0.125) <=
                1e-8,
            "oracle int x^4");
  o.detail << "100 elements, max gap " << worst << "; int c^4 = 3/8, int x^4 = 1/8";
}

void criterion_set_equality(Outcome& o) {
  EquivariantizeResult disk = run_disk();
  SetEqualityReport a = set_equality_check(builtins::disk_pencil(), disk.description.Mbar, 1000, 1e-9, 11);
  o.require(a.ok(), "disk sampling");
  EquivariantizeResult herm = run_hermitian();
  const RationalVector shift = builtins::hermitian_shift();
  SetEqualityReport b = set_equality_check(builtins::hermitian_pencil().translated(shift),
                                           herm.description.Mbar.translated(shift), 1000, 1e-9, 12);
  o.require(b.ok(), "hermitian sampling");
  const RationalVector edge{Rational(3, 5), Rational(4, 5)};
  RationalMatrix m = evaluate(builtins::disk_pencil(), std::span<const Rational>(edge));
  RationalMatrix mbar = evaluate(disk.description.Mbar, std::span<const Rational>(edge));
  o.require(is_psd_exact(m) && is_psd_exact(mbar), "(3/5, 4/5) is not PSD in both");
  o.require(determinant(m) == 0 && determinant(mbar) == 0, "(3/5, 4/5) is not on both boundaries");
  o.detail << "disk " << a.agree << "/" << a.total << ", hermitian " << b.agree << "/" << b.total
           << ", exact minors agree at (3/5, 4/5)";
}

void criterion_kostant(Outcome& o) {
  std::size_t agree = 0;
  std::size_t inside = 0;
  for (int i = 0; i < 100; ++i) {
    std::mt19937_64 rng(500 + i);
    const Eigen::Index n = 2 + i % 4;
    std::uniform_int_distribution<int> coeff(-6, 6);
    Eigen::VectorXd lam(n);
    for (Eigen::Index k = 0; k < n; ++k) lam[k] = coeff(rng);
    auto hull = equispectra::testing::conjugate_diagonals(lam, 5000, 900 + i);
    // half the targets are diagonals of conjugates (inside), half are pushed
    // past a vertex (outside)
    const Eigen::VectorXd center = Eigen::VectorXd::Constant(n, lam.mean());
    Eigen::VectorXd y;
    if (i % 2 == 0) {
      Eigen::MatrixXd g = random_orthogonal(static_cast<std::size_t>(n), rng);
      y = center + 0.95 * ((g.transpose() * lam.asDiagonal() * g).diagonal() - center);
    } else {
      y = center + 1.1 * (lam - center);
      y[0] += 0.05;
    }
    const bool oracle = equispectra::testing::lp_membership_oracle(hull, y, 1e-6);
    const bool sorted = majorization_check(y, lam);
    if (oracle == sorted) ++agree;
    if (sorted) ++inside;
  }
  o.require(agree == 100, std::to_string(100 - agree) + " disagreements with the LP oracle");
  std::size_t reduced_ok = 0;
  for (int i = 0; i < 50; ++i) {
    std::mt19937_64 rng(700 + i);
    std::uniform_int_distribution<int> coeff(-5, 5);
    const Eigen::Index n = 2 + i % 4;
    Eigen::MatrixXd v(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
      for (Eigen::Index b = a; b < n; ++b) v(a, b) = v(b, a) = coeff(rng);
    Eigen::VectorXd lam(n);
    for (Eigen::Index k = 0; k < n; ++k) lam[k] = coeff(rng);
    ReductionReport r = reduction_equivalence_check(v, lam, 5000, 800 + i);
    if (r.ok && r.reduced_value >= r.sampled_max - 1e-7) ++reduced_ok;
  }
  o.require(reduced_ok == 50, std::to_string(50 - reduced_ok) + " reduction failures");
  o.detail << agree << "/100 membership (" << inside << " inside), " << reduced_ok << "/50 reductions";
}

void criterion_rearrangement(Outcome& o) {
  std::mt19937_64 rng(61);
  std::uniform_int_distribution<int> coeff(-50, 50);
  std::size_t exact = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 6;
    std::vector<Rational> c(n), lam(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = coeff(rng), lam[i] = coeff(rng);
    auto sol = solve_orbit_polytope_lp(c, lam);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Rational> best;
    do {
      Rational v = 0;
      for (std::size_t i = 0; i < n; ++i) v += c[i] * lam[perm[i]];
      if (!best || v > *best) best = v;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (sol.value == *best) ++exact;
  }
  o.require(exact == 100, "mismatch against brute force");
  o.detail << exact << "/100 exact";
}

void criterion_rigid(Outcome& o) {
  std::mt19937_64 rng(71);
  std::size_t dets = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + trial % 3, d = 1 + trial % 4;
    AffinePencil p = equispectra::testing::random_based_pencil(rng, n, d);
    if (real_zero_check(det_poly(p), RationalVector(n), 100).ok) ++dets;
  }
  o.require(dets == 20, "determinant failed the real-zero check");

  // det diag(1 + x_i) * det diag(1 + sum - 2 x_i): symmetric and real-zero
  const std::vector<std::string> x{"x1", "x2", "x3"};
  Polynomial sum = P("x1 + x2 + x3", x), p = Polynomial::constant(1, x);
  for (std::size_t i = 0; i < 3; ++i) {
    const Polynomial xi = Polynomial::variable(x, i);
    p *= (Polynomial::constant(1, x) + xi) * (Polynomial::constant(1, x) + sum - Rational(2) * xi);
  }
  TracePolynomial lift = chevalley_lift(p);
  RealZeroReport lifted = real_zero_check(lift_to_entries(lift), RationalVector(6), 100);
  o.require(lifted.ok, "lift is not real-zero on Sym^2(R^3)");

  std::uniform_int_distribution<int> num(-9, 9), den(1, 7);
  std::size_t restricted = 0;
  for (int k = 0; k < 100; ++k) {
    RationalVector a{make_rational(num(rng), den(rng)), make_rational(num(rng), den(rng)),
                     make_rational(num(rng), den(rng))};
    if (lift.evaluate(diagonal(a)) == p.evaluate(std::span<const Rational>(a))) ++restricted;
  }
  o.require(restricted == 100, "restriction identity");
  o.detail << dets << "/20 determinants, lift " << lifted.directions_checked << " directions, restriction "
           << restricted << "/100 exact";
}

void criterion_hopf(Outcome& o) {
  std::ostringstream out, err;
  const int code = cli::run_check({"hopf", {}}, cli::GlobalOptions{}, out, err);
  HopfReport r = hopf_counterexample();
  o.require(code == cli::kSuccess, "check hopf exit code " + std::to_string(code));
  o.require(r.witness.projection_hull_distance <= 1e-6, "witness is not in the projection");
  o.require(r.witness.segment_distance_sq >= Rational(1, 4), "witness is within 0.5 of the section orbitope");
  o.detail << "hull distance " << r.witness.projection_hull_distance << ", exact distance^2 "
           << to_string(r.witness.segment_distance_sq);
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"disk golden run", criterion_disk},
      {"hermitian golden run", criterion_hermitian},
      {"quartic verification", criterion_quartic},
      {"xi identity", criterion_xi},
      {"haar oracle", criterion_haar},
      {"set equality", criterion_set_equality},
      {"kostant / schur-horn", criterion_kostant},
      {"rearrangement exactness", criterion_rearrangement},
      {"rigid convexity", criterion_rigid},
      {"hopf counterexample", criterion_hopf},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << i + 1 << " (" << criteria[i].first
              << "): " << o.detail.str() << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
