#include <benchmark/benchmark.h>

#include <random>

#include "equispectra/builtins.hpp"
#include "equispectra/equivariant.hpp"
#include "equispectra/polar.hpp"

using namespace equispectra;

namespace {

Polynomial power_of(const Polynomial& p, int k) {
  Polynomial out = Polynomial::constant(1, p.variables());
  for (int i = 0; i < k; ++i) out *= p;
  return out;
}

void BM_Gcd(benchmark::State& state) {
  const std::vector<std::string> x{"x", "y", "z"};
  const int k = static_cast<int>(state.range(0));
  Polynomial common = power_of(parse_polynomial("1 + x*y - z^2", x), k);
  Polynomial a = common * parse_polynomial("x + 2*y + 3", x);
  Polynomial b = common * parse_polynomial("x*z - y + 1", x);
  for (auto _ : state) benchmark::DoNotOptimize(gcd(a, b));
}
BENCHMARK(BM_Gcd)->DenseRange(1, 4);

void BM_HaarSU2(benchmark::State& state) {
  GroupSpec su2 = GroupSpec::builtin("hermitian-su2");
  const int deg = static_cast<int>(state.range(0));
  Polynomial e = power_of(parse_polynomial("1 + x + 2*y - s + t", su2.coordinates()), deg);
  for (auto _ : state) benchmark::DoNotOptimize(haar_integrate(su2, normal_form(su2, e)));
}
BENCHMARK(BM_HaarSU2)->DenseRange(2, 8, 2);

void BM_EquivariantizeDisk(benchmark::State& state) {
  AffinePencil p = builtins::disk_pencil();
  GroupSpec g = GroupSpec::builtin("disk-so2");
  for (auto _ : state) benchmark::DoNotOptimize(equivariantize(p, g, {}));
}
BENCHMARK(BM_EquivariantizeDisk)->Unit(benchmark::kMillisecond);

void BM_EquivariantizeHermitian(benchmark::State& state) {
  AffinePencil p = builtins::hermitian_pencil();
  GroupSpec g = GroupSpec::builtin("hermitian-su2");
  EquivariantizeOptions o;
  o.shift = builtins::hermitian_shift();
  o.preferred_basis = builtins::hermitian_basis();
  for (auto _ : state) benchmark::DoNotOptimize(equivariantize(p, g, o));
}
BENCHMARK(BM_EquivariantizeHermitian)->Unit(benchmark::kMillisecond);

void BM_OrbitPolytopeLp(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coeff(-100, 100);
  std::vector<Rational> c(static_cast<std::size_t>(state.range(0))), lam(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(rng), lam[i] = coeff(rng);
  for (auto _ : state) benchmark::DoNotOptimize(solve_orbit_polytope_lp(c, lam));
}
BENCHMARK(BM_OrbitPolytopeLp)->RangeMultiplier(4)->Range(4, 256);

void BM_ProjectToSection(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(2);
  Eigen::MatrixXd g = random_orthogonal(n, rng);
  Eigen::MatrixXd x = g.transpose() * Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(n), -1, 1).asDiagonal() * g;
  PolarFamily f(PolarKind::Sym, n);
  for (auto _ : state) benchmark::DoNotOptimize(project_to_section(f, x));
}
BENCHMARK(BM_ProjectToSection)->RangeMultiplier(2)->Range(4, 64);

void BM_RealZeroCheck(benchmark::State& state) {
  const std::vector<std::string> x{"x1", "x2", "x3"};
  Polynomial p = parse_polynomial("(1 + x1)*(1 + x2)*(1 + x3)", x);
  for (auto _ : state) benchmark::DoNotOptimize(real_zero_check(p, RationalVector(3), 100));
}
BENCHMARK(BM_RealZeroCheck)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
