#include "equispectra/polar.hpp"

#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "equispectra/error.hpp"
#include "equispectra/lp.hpp"
#include "equispectra/parallel.hpp"
#include "equispectra/sturm.hpp"

namespace equispectra {

PolarFamily::PolarFamily(PolarKind kind, std::size_t n) : kind_(kind), n_(n) {
  if (n < 2) throw DomainError("polar family needs n >= 2");
}

Eigen::MatrixXd embed(const PolarFamily& family, const SectionPoint& s) {
  if (static_cast<std::size_t>(s.size()) != family.section_dim())
    throw DomainError("section point has the wrong dimension");
  const auto n = static_cast<Eigen::Index>(family.n());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  if (family.kind() == PolarKind::Sym) {
    m.diagonal() = s;
  } else {
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      m(2 * k, 2 * k + 1) = s[k];
      m(2 * k + 1, 2 * k) = -s[k];
    }
  }
  return m;
}

namespace {

void require_square(const PolarFamily& family, const Eigen::MatrixXd& a) {
  const auto n = static_cast<Eigen::Index>(family.n());
  if (a.rows() != n || a.cols() != n) {
    std::ostringstream msg;
    msg << "expected a " << n << "x" << n << " matrix, got " << a.rows() << "x" << a.cols();
    throw DomainError(msg.str());
  }
}

void require_type(const PolarFamily& family, const Eigen::MatrixXd& a) {
  require_square(family, a);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double err = family.kind() == PolarKind::Sym ? (a - a.transpose()).cwiseAbs().maxCoeff()
                                                      : (a + a.transpose()).cwiseAbs().maxCoeff();
  if (err > 1e-10 * scale)
    throw DomainError(family.kind() == PolarKind::Sym ? "matrix is not symmetric" : "matrix is not skew-symmetric");
}

ProjectionResult project_sym(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (a + a.transpose()));
  if (es.info() != Eigen::Success) throw DomainError("symmetric eigensolver failed");
  const Eigen::Index n = a.rows();
  ProjectionResult out;
  out.section = es.eigenvalues().reverse();
  out.g = es.eigenvectors().rowwise().reverse();
  for (Eigen::Index j = 0; j < n; ++j) {
    auto col = out.g.col(j);
    const double top = col.cwiseAbs().maxCoeff();
    Eigen::Index pick = 0;
    for (Eigen::Index i = 0; i < n; ++i)
      if (std::abs(col[i]) >= top - 1e-12) pick = i;
    if (col[pick] < 0) col = -col;
  }
  return out;
}

ProjectionResult project_skew(const Eigen::MatrixXd& a) {
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  Eigen::RealSchur<Eigen::MatrixXd> schur(0.5 * (a - a.transpose()));
  if (schur.info() != Eigen::Success) throw DomainError("real Schur decomposition failed");
  const Eigen::MatrixXd& t = schur.matrixT();
  const Eigen::MatrixXd& u = schur.matrixU();
  const Eigen::Index n = a.rows();
  struct Block {
    double theta;
    Eigen::Index first, second;
  };
  std::vector<Block> pairs;
  std::vector<Eigen::Index> singles;
  for (Eigen::Index i = 0; i < n;) {
    if (i + 1 < n && std::abs(t(i + 1, i)) > 1e-14 * scale) {
      const double b = 0.5 * (t(i, i + 1) - t(i + 1, i));
      // swapping the two basis vectors flips the sign of the block
      pairs.push_back(b >= 0 ? Block{b, i, i + 1} : Block{-b, i + 1, i});
      i += 2;
    } else {
      singles.push_back(i);
      i += 1;
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Block& x, const Block& y) { return x.theta > y.theta; });
  const std::size_t m = static_cast<std::size_t>(n / 2);
  while (pairs.size() < m) {
    pairs.push_back({0.0, singles[singles.size() - 2], singles.back()});
    singles.resize(singles.size() - 2);
  }
  ProjectionResult out;
  out.section = SectionPoint(static_cast<Eigen::Index>(m));
  out.g = Eigen::MatrixXd(n, n);
  Eigen::Index col = 0;
  for (std::size_t k = 0; k < m; ++k) {
    out.section[static_cast<Eigen::Index>(k)] = pairs[k].theta;
    out.g.col(col++) = u.col(pairs[k].first);
    out.g.col(col++) = u.col(pairs[k].second);
  }
  for (auto s : singles) out.g.col(col++) = u.col(s);
  return out;
}

}  // namespace

ProjectionResult project_to_section(const PolarFamily& family, const Eigen::MatrixXd& a) {
  require_type(family, a);
  return family.kind() == PolarKind::Sym ? project_sym(a) : project_skew(a);
}

std::vector<SectionPoint> weyl_orbit(const PolarFamily& family, const SectionPoint& s) {
  const std::size_t m = family.section_dim();
  if (static_cast<std::size_t>(s.size()) != m) throw DomainError("section point has the wrong dimension");
  if (m > 8) throw DomainError("weyl_orbit: section dimension above the enumeration budget of 8");
  auto clean = [](double v) { return v == 0.0 ? 0.0 : v; };
  std::vector<double> base(s.data(), s.data() + s.size());
  std::set<std::vector<double>> seen;
  std::vector<SectionPoint> out;
  auto emit = [&](const std::vector<double>& p) {
    if (seen.insert(p).second) out.push_back(Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())));
  };
  if (family.kind() == PolarKind::Sym) {
    for (auto& v : base) v = clean(v);
    std::sort(base.begin(), base.end(), std::greater<>());
    do emit(base);
    while (std::prev_permutation(base.begin(), base.end()));
    return out;
  }
  for (auto& v : base) v = clean(std::abs(v));
  std::sort(base.begin(), base.end(), std::greater<>());
  do {
    for (unsigned long mask = 0; mask < (1UL << m); ++mask) {
      std::vector<double> p = base;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (1UL << i)) p[i] = clean(-p[i]);
      emit(p);
    }
  } while (std::prev_permutation(base.begin(), base.end()));
  return out;
}

bool majorization_check(const SectionPoint& y, const SectionPoint& x, double tol) {
  if (y.size() != x.size()) throw DomainError("majorization_check: length mismatch");
  std::vector<double> ys(y.data(), y.data() + y.size()), xs(x.data(), x.data() + x.size());
  std::sort(ys.begin(), ys.end(), std::greater<>());
  std::sort(xs.begin(), xs.end(), std::greater<>());
  double sy = 0, sx = 0;
  for (std::size_t k = 0; k < ys.size(); ++k) {
    sy += ys[k];
    sx += xs[k];
    if (sy > sx + tol) return false;
  }
  return std::abs(sy - sx) <= tol;
}

bool orbitope_membership(const PolarFamily& family, const Eigen::MatrixXd& y, const Eigen::MatrixXd& x,
                         double tol) {
  if (family.kind() != PolarKind::Sym) throw DomainError("orbitope_membership is implemented for the Sym family");
  return majorization_check(project_to_section(family, y).section, project_to_section(family, x).section, tol);
}

ReducedProblem reduce_linear_problem(const PolarFamily& family, const Eigen::MatrixXd& v) {
  ProjectionResult pr = project_to_section(family, v);
  ReducedProblem out;
  out.objective = std::move(pr.section);
  out.g = std::move(pr.g);
  out.original_dim = family.ambient_dim();
  out.reduced_dim = family.section_dim();
  return out;
}

Eigen::MatrixXd random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const auto k = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd z(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = 0; j < k; ++j) z(i, j) = gauss(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < k; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

ReductionReport reduction_equivalence_check(const Eigen::MatrixXd& v, const SectionPoint& lam, std::size_t trials,
                                            std::uint64_t seed) {
  const std::size_t n = static_cast<std::size_t>(lam.size());
  PolarFamily family = PolarFamily::sym(n);
  ReducedProblem reduced = reduce_linear_problem(family, v);
  std::vector<double> c(reduced.objective.data(), reduced.objective.data() + n);
  std::vector<double> l(lam.data(), lam.data() + n);
  auto lp = solve_orbit_polytope_lp(c, l);

  ReductionReport out;
  out.reduced_value = lp.value;
  const Eigen::MatrixXd d = lam.asDiagonal();
  std::vector<double> values(trials);
  parallel_for(trials, [&](std::size_t i) {
    std::mt19937_64 rng(task_seed(seed, i));
    Eigen::MatrixXd g = random_orthogonal(n, rng);
    values[i] = (v.transpose() * (g.transpose() * d * g)).trace();
  });
  out.sampled_max = values.empty() ? -INFINITY : *std::max_element(values.begin(), values.end());
  Eigen::VectorXd arg = Eigen::Map<const Eigen::VectorXd>(lp.argmax.data(), static_cast<Eigen::Index>(n));
  Eigen::MatrixXd aligned = reduced.g * arg.asDiagonal() * reduced.g.transpose();
  out.aligned_value = (v.transpose() * aligned).trace();
  const double best = std::max(out.sampled_max, out.aligned_value);
  out.ok = out.reduced_value >= out.sampled_max - 1e-7 && std::abs(out.reduced_value - best) <= 1e-6;
  return out;
}

namespace {

std::vector<std::string> trace_symbols(std::size_t n) {
  std::vector<std::string> t;
  for (std::size_t d = 1; d <= n; ++d) t.push_back("T" + std::to_string(d));
  return t;
}

template <class M, class S>
std::vector<S> power_traces(const M& a, std::size_t n, S zero) {
  std::vector<S> out;
  M power = a;
  for (std::size_t d = 1; d <= n; ++d) {
    if (d > 1) power = multiply(power, a, zero);
    S tr = zero;
    for (std::size_t i = 0; i < n; ++i) tr += power(i, i);
    out.push_back(tr);
  }
  return out;
}

}  // namespace

Rational TracePolynomial::evaluate(const RationalMatrix& a) const {
  if (a.rows() != n || a.cols() != n) throw DomainError("trace polynomial evaluated on a matrix of the wrong size");
  auto traces = power_traces(a, n, Rational(0));
  return poly.with_variables(trace_symbols(n)).evaluate(std::span<const Rational>(traces));
}

double TracePolynomial::evaluate(const Eigen::MatrixXd& a) const {
  if (static_cast<std::size_t>(a.rows()) != n || static_cast<std::size_t>(a.cols()) != n)
    throw DomainError("trace polynomial evaluated on a matrix of the wrong size");
  std::vector<double> traces;
  Eigen::MatrixXd power = a;
  for (std::size_t d = 1; d <= n; ++d) {
    if (d > 1) power = power * a;
    traces.push_back(power.trace());
  }
  return poly.with_variables(trace_symbols(n)).evaluate(std::span<const double>(traces));
}

TracePolynomial chevalley_lift(const Polynomial& p) {
  const std::size_t n = p.nvars();
  if (n == 0) throw DomainError("chevalley_lift needs at least one variable");
  const auto& x = p.variables();
  if (n >= 2) {
    std::map<std::string, Polynomial> swap, cycle;
    for (std::size_t i = 0; i < n; ++i) {
      swap[x[i]] = Polynomial::variable(x, i == 0 ? 1 : i == 1 ? 0 : i);
      cycle[x[i]] = Polynomial::variable(x, (i + 1) % n);
    }
    if (!(substitute(p, swap, x) == p) || !(substitute(p, cycle, x) == p))
      throw DomainError("chevalley_lift: '" + p.to_string() + "' is not symmetric");
  }

  std::vector<Polynomial> ex{Polynomial::constant(1, x)};
  for (std::size_t k = 1; k <= n; ++k) ex.push_back(Polynomial(x));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = std::min(i + 1, n); k >= 1; --k) ex[k] += Polynomial::variable(x, i) * ex[k - 1];

  // fundamental theorem: peel off lex-leading terms
  std::vector<std::string> evars;
  for (std::size_t k = 1; k <= n; ++k) evars.push_back("E" + std::to_string(k));
  Polynomial rest = p;
  Polynomial in_e(evars);
  while (!rest.is_zero()) {
    auto lead = rest.terms().begin();
    for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it)
      if (it->first > lead->first) lead = it;
    const Exponent a = lead->first;
    const Rational c = lead->second;
    Exponent b(n);
    Polynomial product = Polynomial::constant(c, x);
    for (std::size_t k = 0; k < n; ++k) {
      b[k] = a[k] - (k + 1 < n ? a[k + 1] : 0);
      product *= pow(ex[k + 1], b[k]);
    }
    in_e += Polynomial::monomial(evars, b, c);
    rest -= product;
  }

  // Newton: k e_k = sum_{i=1..k} (-1)^(i-1) e_{k-i} p_i
  const auto tv = trace_symbols(n);
  std::vector<Polynomial> et{Polynomial::constant(1, tv)};
  for (std::size_t k = 1; k <= n; ++k) {
    Polynomial acc(tv);
    for (std::size_t i = 1; i <= k; ++i) {
      Polynomial term = et[k - i] * Polynomial::variable(tv, i - 1);
      if (i % 2 == 0) term = -term;
      acc += term;
    }
    et.push_back(acc * Rational(1, static_cast<long>(k)));
  }
  std::map<std::string, Polynomial> images;
  for (std::size_t k = 0; k < n; ++k) images[evars[k]] = et[k + 1];
  return {n, substitute(in_e, images, tv)};
}

std::vector<std::string> symmetric_entry_variables(std::size_t n) {
  if (n > 9) throw DomainError("symmetric entry names support n <= 9");
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t j = i; j <= n; ++j) out.push_back("y" + std::to_string(i) + std::to_string(j));
  return out;
}

Polynomial lift_to_entries(const TracePolynomial& lift) {
  const std::size_t n = lift.n;
  const auto yv = symmetric_entry_variables(n);
  auto index = [n](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
  };
  Matrix<Polynomial> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = Polynomial::variable(yv, index(i, j));
  auto traces = power_traces(a, n, Polynomial(yv));
  const auto tv = trace_symbols(n);
  std::map<std::string, Polynomial> images;
  for (std::size_t d = 0; d < n; ++d) images[tv[d]] = traces[d];
  return substitute(lift.poly.with_variables(tv), images, yv);
}

std::vector<RationalVector> real_zero_directions(std::size_t n, std::size_t count) {
  static constexpr unsigned primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71};
  if (n > std::size(primes)) throw DomainError("real_zero_directions supports at most 20 variables");
  std::vector<RationalVector> out;
  for (std::size_t i = 0; i < n && out.size() < count; ++i) {
    RationalVector e(n);
    e[i] = 1;
    out.push_back(std::move(e));
  }
  for (unsigned long k = 1; out.size() < count; ++k) {
    RationalVector w(n);
    bool nonzero = false;
    for (std::size_t i = 0; i < n; ++i) {
      double h = 0, f = 1;
      for (unsigned long q = k; q > 0; q /= primes[i]) {
        f /= primes[i];
        h += f * static_cast<double>(q % primes[i]);
      }
      long v = std::lround(1000.0 * (2.0 * h - 1.0));
      w[i] = v;
      nonzero = nonzero || v != 0;
    }
    if (nonzero) out.push_back(std::move(w));
  }
  return out;
}

RealZeroReport real_zero_check(const Polynomial& p, const RationalVector& u, std::size_t directions) {
  const auto& x = p.variables();
  if (u.size() != x.size()) throw DomainError("real_zero_check: base point has the wrong dimension");
  const Rational at_u = p.evaluate(std::span<const Rational>(u));
  if (at_u <= 0) throw DomainError("real_zero_check: p(u) = " + to_string(at_u) + " is not positive");
  RealZeroReport out;
  const std::vector<std::string> tvar{"t"};
  const Polynomial t = Polynomial::variable(tvar, 0);
  for (const auto& w : real_zero_directions(x.size(), directions)) {
    std::map<std::string, Polynomial> line;
    for (std::size_t i = 0; i < x.size(); ++i) line[x[i]] = Polynomial::constant(u[i], tvar) + w[i] * t;
    ++out.directions_checked;
    if (!sturm_all_roots_real(substitute(p, line, tvar))) {
      out.witness = w;
      return out;
    }
  }
  out.ok = true;
  return out;
}

namespace {

HopfPointCertificate hopf_point(const std::vector<Eigen::VectorXd>& projected, const Eigen::Vector3d& point) {
  HopfPointCertificate out;
  out.point = point;
  out.projection_hull_distance = hull_distance_l1(projected, point);
  // exact distance to the segment s (1, 0, 1), s in [-1, 1]
  RationalVector w{from_double(point[0]), from_double(point[1]), from_double(point[2])};
  Rational s = (w[0] + w[2]) / 2;
  if (s > 1) s = 1;
  if (s < -1) s = -1;
  out.segment_distance_sq = (w[0] - s) * (w[0] - s) + w[1] * w[1] + (w[2] - s) * (w[2] - s);
  return out;
}

}  // namespace

HopfReport hopf_counterexample(std::size_t orbit_samples, double tol) {
  if (orbit_samples % 4 != 0) throw DomainError("hopf_counterexample: sample count must be divisible by 4");
  std::vector<Eigen::VectorXd> orbit, projected;
  for (std::size_t k = 0; k < orbit_samples; ++k) {
    const double t = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(orbit_samples);
    // exact values at the quarter turns keep the witness a sample point
    double c = std::cos(t), s = std::sin(t);
    if (k == orbit_samples / 4) c = 0, s = 1;
    Eigen::VectorXd p(4);
    p << c, s, c, s;
    orbit.push_back(p);
    projected.push_back(p.head(3));
  }
  HopfReport out;
  out.orbit_samples = orbit_samples;
  out.witness = hopf_point(projected, Eigen::Vector3d(0, 1, 0));
  out.base_point = hopf_point(projected, Eigen::Vector3d(1, 0, 1));
  out.midpoint = hopf_point(projected, Eigen::Vector3d(0, 0, 0));
  Eigen::VectorXd lifted(4);
  lifted << 0, 1, 0, 0;
  out.lifted_witness_distance = hull_distance_l1(orbit, lifted);
  const Rational quarter(1, 4);
  out.ok = out.witness.projection_hull_distance <= tol && out.witness.segment_distance_sq >= quarter &&
           out.lifted_witness_distance >= 0.5 && out.base_point.projection_hull_distance <= tol &&
           out.base_point.segment_distance_sq == 0 && out.midpoint.projection_hull_distance <= tol &&
           out.midpoint.segment_distance_sq == 0;
  return out;
}

}  // namespace equispectra
