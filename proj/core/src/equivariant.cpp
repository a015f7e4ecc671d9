#include "equispectra/equivariant.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "equispectra/error.hpp"
#include "equispectra/parallel.hpp"

namespace equispectra {

namespace {

// x -> A x substituted into p, over the combined variable list `target`.
Polynomial pull_back(const Polynomial& p, const PolynomialMatrix& a, const std::vector<std::string>& xvars,
                     const std::vector<std::string>& target) {
  std::map<std::string, Polynomial> images;
  for (std::size_t i = 0; i < xvars.size(); ++i) {
    Polynomial img(target);
    for (std::size_t j = 0; j < xvars.size(); ++j)
      if (!a(i, j).is_zero()) img += a(i, j) * Polynomial::variable(xvars[j]);
    images[xvars[i]] = img.with_variables(target);
  }
  return substitute(p.with_variables(xvars), images, target);
}

// A(g^-1) on component a, as polynomials in the coordinates of g.
PolynomialMatrix inverse_action(const GroupSpec& g, std::size_t a) {
  const auto& inv = g.inverse(a);
  std::map<std::string, Polynomial> images;
  for (std::size_t i = 0; i < g.coordinates().size(); ++i) images[g.coordinates()[i]] = inv.coordinates[i];
  return g.action(inv.component).map(
      [&](const Polynomial& p) { return substitute(p, images, g.coordinates()); });
}

// Splits a polynomial over (group coordinates ++ rest) into group-monomial blocks.
using Split = std::map<Exponent, std::map<Exponent, Rational, TermOrder>, TermOrder>;

Split split_terms(const Polynomial& p, std::size_t group_vars) {
  Split out;
  for (const auto& [e, c] : p.terms()) {
    Exponent ge(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(group_vars));
    Exponent xe(e.begin() + static_cast<std::ptrdiff_t>(group_vars), e.end());
    out[ge][xe] = c;
  }
  return out;
}

void check_disjoint(const std::vector<std::string>& coords, const std::vector<std::string>& xvars) {
  for (const auto& c : coords)
    if (std::find(xvars.begin(), xvars.end(), c) != xvars.end())
      throw DomainError("pencil variable '" + c + "' clashes with a group coordinate");
}

Polynomial zero_ring_element_poly(const GroupSpec& g) { return Polynomial(g.coordinates()); }

std::string describe(const Eigen::VectorXd& v) {
  std::ostringstream os;
  os << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ")";
  return os.str();
}

}  // namespace

DefiningPolynomial defining_polynomial(const AffinePencil& pencil, std::uint64_t seed, std::size_t boundary_samples) {
  const auto& vars = pencil.variables();
  DefiningPolynomial out;
  out.det = det_poly(pencil);
  if (out.det.is_zero()) throw StageError("defining_polynomial", "det M(x) vanishes identically");
  const Rational det0 = out.det.constant_term();
  if (det0 <= 0) throw StageError("defining_polynomial", "det M(0) is not positive");
  if (out.det.is_constant()) {
    out.p = Polynomial::constant(1, vars);
    return out;
  }
  const Polynomial sf = squarefree_part(out.det);

  // coprime splitting of the square-free determinant
  std::vector<Polynomial> splitters;
  PolynomialMatrix m = pencil.polynomial_matrix();
  const std::size_t d = pencil.d();
  for (unsigned long mask = 1; mask + 1 < (1UL << d); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < d; ++i)
      if (mask & (1UL << i)) idx.push_back(i);
    PolynomialMatrix sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = m(idx[i], idx[j]);
    splitters.push_back(determinant(sub));
  }
  PolynomialMatrix adj = adjugate_polys(pencil);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j) splitters.push_back(adj(i, j));

  std::vector<Polynomial> basis{sf};
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& h : splitters) {
      if (h.is_zero() || h.is_constant()) continue;
      std::vector<Polynomial> next;
      for (const auto& f : basis) {
        Polynomial g = gcd(f, h);
        if (g.total_degree() > 0 && g.total_degree() < f.total_degree()) {
          next.push_back(normalize(g));
          next.push_back(normalize(exact_div(f, g)));
        } else {
          next.push_back(f);
        }
      }
      basis = std::move(next);
    }

  auto points = boundary_points(pencil, boundary_samples, seed);
  out.boundary_points = points.size();
  auto scaled_value = [&](const Polynomial& f, const Eigen::VectorXd& x) {
    Polynomial fv = f.with_variables(vars);
    return fv.evaluate(std::span<const double>(x.data(), x.size())) / fv.constant_term().get_d();
  };

  Polynomial p = Polynomial::constant(1, vars);
  for (const auto& f : basis) {
    bool vanishes = points.empty();
    for (const auto& x : points)
      if (std::abs(scaled_value(f, x)) < 1e-7) {
        vanishes = true;
        break;
      }
    if (vanishes) {
      out.kept.push_back(f.with_variables(vars));
      p = p * f;
    } else {
      out.pruned.push_back(f.with_variables(vars));
    }
  }
  p = (p * (1 / p.constant_term())).with_variables(vars);
  for (const auto& x : points) out.max_residual = std::max(out.max_residual, std::abs(scaled_value(p, x)));
  if (out.max_residual >= 1e-7) {
    std::ostringstream os;
    os << "square-free determinant with pruning does not vanish on the sampled boundary (max |p| = "
       << out.max_residual << ")";
    throw StageError("defining_polynomial", os.str());
  }
  out.p = p;
  return out;
}

std::vector<RationalVector> xi_candidates(std::size_t d, std::size_t limit) {
  std::vector<RationalVector> out;
  std::set<RationalVector> seen;
  auto push = [&](RationalVector v) {
    if (out.size() >= limit) return;
    auto first = std::find_if(v.begin(), v.end(), [](const Rational& r) { return r != 0; });
    if (first == v.end()) return;
    if (*first < 0)
      for (auto& x : v) x = -x;
    if (seen.insert(v).second) out.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < d; ++i) {
    RationalVector e(d);
    e[i] = 1;
    push(e);
  }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (int s : {1, -1}) {
        RationalVector e(d);
        e[i] = 1;
        e[j] = s;
        push(e);
      }
  // all vectors with entries in [-r, r], by growing radius
  for (int radius = 1; radius <= 3 && out.size() < limit; ++radius) {
    RationalVector v(d, Rational(-radius));
    while (out.size() < limit) {
      push(v);
      std::size_t k = 0;
      while (k < d && v[k] == radius) v[k++] = -radius;
      if (k == d) break;
      v[k] += 1;
    }
  }
  return out;
}

XiData compute_xi(const AffinePencil& pencil, const Polynomial& defining) {
  const auto& vars = pencil.variables();
  const std::size_t d = pencil.d();
  const Polynomial det = det_poly(pencil);
  const PolynomialMatrix adj = adjugate_polys(pencil);
  const Polynomial p = defining.with_variables(vars);

  auto attempt = [&](const RationalVector& v) -> std::optional<XiData> {
    std::vector<Polynomial> w(d, Polynomial(vars));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (v[j] != 0) w[i] += adj(i, j) * v[j];
    Polynomial g;
    for (const auto& wi : w) g = gcd(g, wi);
    if (g.is_zero()) return std::nullopt;
    XiData out;
    out.v = v;
    out.p = p;
    out.divisor = g.with_variables(vars);
    Polynomial content;
    for (const auto& wi : w) {
      out.xi.push_back(exact_div(wi, g).with_variables(vars));
      content = gcd(content, out.xi.back());
    }
    if (gcd(content, p).total_degree() > 0) return std::nullopt;
    auto rest = try_divide(det, g);
    if (!rest) return std::nullopt;
    auto q = try_divide(*rest, p);
    if (!q) return std::nullopt;
    out.q = q->with_variables(vars);
    return out;
  };

  const auto candidates = xi_candidates(d);
  std::optional<XiData> best;
  int best_degree = 0;
  std::size_t tried = 0;
  for (std::size_t i = 0; i < candidates.size() && i < d; ++i) {
    ++tried;
    auto r = attempt(candidates[i]);
    if (!r) continue;
    int degree = 0;
    for (const auto& c : r->xi) degree = std::max(degree, c.total_degree());
    if (!best || degree < best_degree) {
      best = std::move(r);
      best_degree = degree;
    }
  }
  for (std::size_t i = d; !best && i < candidates.size(); ++i) {
    ++tried;
    best = attempt(candidates[i]);
  }
  if (!best)
    throw StageError("compute_xi", "no candidate v among the first " + std::to_string(candidates.size()) +
                                       " satisfies the coprimality and divisibility checks");
  best->candidates_tried = tried;
  return *best;
}

std::vector<Polynomial> xi_residual(const AffinePencil& pencil, const XiData& xi) {
  const auto& vars = pencil.variables();
  PolynomialMatrix m = pencil.polynomial_matrix();
  std::vector<Polynomial> out;
  for (std::size_t i = 0; i < pencil.d(); ++i) {
    Polynomial r(vars);
    for (std::size_t j = 0; j < pencil.d(); ++j) r += m(i, j) * xi.xi[j];
    r -= xi.q * xi.p * xi.v[i];
    out.push_back(r.with_variables(vars));
  }
  return out;
}

OrbitSpanData expand_orbit_span(const XiData& xi, const GroupSpec& g, const std::vector<std::string>& xvars,
                                const std::optional<std::vector<Polynomial>>& preferred) {
  const auto& coords = g.coordinates();
  check_disjoint(coords, xvars);
  if (g.n() != xvars.size()) throw StageError("expand_orbit_span", "group acts on the wrong dimension");
  const auto target = merge_variables(coords, xvars);
  const std::size_t k_count = g.component_count();
  const std::size_t d = xi.xi.size();

  OrbitSpanData out;
  out.pulled.resize(k_count);
  std::vector<std::vector<Split>> splits(k_count);
  std::set<Exponent, TermOrder> columns;
  for (std::size_t a = 0; a < k_count; ++a) {
    PolynomialMatrix ainv = inverse_action(g, a);
    for (std::size_t k = 0; k < d; ++k) {
      Polynomial pulled = g.normal_form(pull_back(xi.xi[k], ainv, xvars, target)).with_variables(target);
      out.pulled[a].push_back(pulled);
      splits[a].push_back(split_terms(pulled, coords.size()));
      for (const auto& [ge, xs] : splits[a].back())
        for (const auto& [xe, c] : xs) columns.insert(xe);
    }
  }
  std::vector<Polynomial> pref;
  if (preferred)
    for (const auto& f : *preferred) {
      pref.push_back(f.with_variables(xvars));
      for (const auto& [xe, c] : pref.back().terms()) columns.insert(xe);
    }
  std::map<Exponent, std::size_t, TermOrder> col_index;
  for (const auto& e : columns) col_index.emplace(e, col_index.size());
  auto row_of = [&](const std::map<Exponent, Rational, TermOrder>& xs) {
    RationalVector r(columns.size());
    for (const auto& [xe, c] : xs) r[col_index.at(xe)] = c;
    return r;
  };

  std::vector<RationalVector> rows;
  for (std::size_t a = 0; a < k_count; ++a)
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [ge, xs] : splits[a][k]) rows.push_back(row_of(xs));
  RationalMatrix all(rows.size(), columns.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < columns.size(); ++j) all(i, j) = rows[i][j];
  const auto chosen = independent_rows(all);
  const std::size_t m = chosen.size();
  if (m == 0) throw StageError("expand_orbit_span", "xi(g^-1 x) spans the zero space");

  RationalMatrix basis(m, columns.size());
  if (preferred) {
    if (pref.size() != m)
      throw StageError("expand_orbit_span", "preferred basis has " + std::to_string(pref.size()) +
                                                " elements but the span has dimension " + std::to_string(m));
    RationalMatrix stacked(2 * m, columns.size());
    for (std::size_t i = 0; i < m; ++i) {
      std::map<Exponent, Rational, TermOrder> xs(pref[i].terms().begin(), pref[i].terms().end());
      auto r = row_of(xs);
      for (std::size_t j = 0; j < columns.size(); ++j) {
        basis(i, j) = r[j];
        stacked(i, j) = all(chosen[i], j);
        stacked(m + i, j) = r[j];
      }
    }
    if (rank(basis) != m || rank(stacked) != m)
      throw StageError("expand_orbit_span", "preferred basis does not span the orbit span");
    out.F = pref;
  } else {
    for (std::size_t i = 0; i < m; ++i) {
      Polynomial f(xvars);
      std::size_t j = 0;
      for (const auto& e : columns) {
        basis(i, j) = all(chosen[i], j);
        if (basis(i, j) != 0) f += Polynomial::monomial(xvars, e, basis(i, j));
        ++j;
      }
      out.F.push_back(f);
    }
  }

  const RationalMatrix basis_t = basis.transpose();
  out.B = RingMatrix(d, m);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < m; ++j)
      out.B(k, j).components.assign(k_count, zero_ring_element_poly(g));
  for (std::size_t a = 0; a < k_count; ++a)
    for (std::size_t k = 0; k < d; ++k)
      for (const auto& [ge, xs] : splits[a][k]) {
        auto y = solve(basis_t, row_of(xs));
        if (!y) throw StageError("expand_orbit_span", "coefficient row outside the span of F");
        for (std::size_t j = 0; j < m; ++j)
          if ((*y)[j] != 0) out.B(k, j).components[a] += Polynomial::monomial(coords, ge, (*y)[j]);
      }
  return out;
}

bool orbit_span_identity(const OrbitSpanData& span, const GroupSpec& g) {
  for (std::size_t a = 0; a < span.pulled.size(); ++a)
    for (std::size_t k = 0; k < span.B.rows(); ++k) {
      Polynomial lhs;
      for (std::size_t j = 0; j < span.B.cols(); ++j) lhs += span.B(k, j).components[a] * span.F[j];
      if (!g.normal_form(lhs - span.pulled[a][k]).is_zero()) return false;
    }
  return true;
}

RationalMatrix haar_gram(const RingMatrix& b, const GroupSpec& g) {
  RationalMatrix out(b.cols(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = j; k < b.cols(); ++k) {
      std::vector<Polynomial> integrand(g.component_count(), zero_ring_element_poly(g));
      for (std::size_t a = 0; a < g.component_count(); ++a)
        for (std::size_t r = 0; r < b.rows(); ++r)
          integrand[a] += b(r, j).components[a] * b(r, k).components[a];
      out(j, k) = out(k, j) = haar_integrate_partial(g, integrand).constant_term();
    }
  return out;
}

namespace {

RingMatrix solve_rho(const RingMatrix& b, const GroupSpec& g) {
  const std::size_t d = b.rows(), m = b.cols(), kc = g.component_count();
  const std::size_t nc = g.coordinates().size();
  // rows of the linear system: (r, component of h, h-monomial)
  using Key = std::tuple<std::size_t, std::size_t, Exponent>;
  std::map<Key, std::size_t> keys;
  auto key_index = [&](const Key& key) { return keys.emplace(key, keys.size()).first->second; };
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t c = 0; c < kc; ++c)
        for (const Polynomial entry = b(r, j).components[c].with_variables(g.coordinates());
             const auto& [e, v] : entry.terms())
          key_index({r, c, e});

  std::vector<TwoCopyElement> translated;  // index r * m + k
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t k = 0; k < m; ++k) translated.push_back(left_translate(g, b(r, k)));
  const auto two = merge_variables(g.coordinates_with_suffix("_g"), g.coordinates_with_suffix("_h"));
  std::vector<std::vector<Split>> split(translated.size(), std::vector<Split>());
  for (std::size_t i = 0; i < translated.size(); ++i)
    for (std::size_t a = 0; a < kc; ++a)
      for (std::size_t c = 0; c < kc; ++c) {
        split[i].push_back(split_terms(translated[i].blocks[a][c].with_variables(two), nc));
        for (const auto& [ge, hs] : split[i].back())
          for (const auto& [he, v] : hs) key_index({i / m, c, he});
      }

  RationalMatrix system(keys.size(), m);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t c = 0; c < kc; ++c)
        for (const Polynomial entry = b(r, j).components[c].with_variables(g.coordinates());
             const auto& [e, v] : entry.terms())
          system(keys.at({r, c, e}), j) = v;

  RingMatrix rho(m, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k) rho(j, k).components.assign(kc, zero_ring_element_poly(g));
  for (std::size_t a = 0; a < kc; ++a)
    for (std::size_t k = 0; k < m; ++k) {
      std::set<Exponent, TermOrder> gmonomials;
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < kc; ++c)
          for (const auto& [ge, hs] : split[r * m + k][a * kc + c]) gmonomials.insert(ge);
      for (const auto& ge : gmonomials) {
        RationalVector rhs(keys.size());
        for (std::size_t r = 0; r < d; ++r)
          for (std::size_t c = 0; c < kc; ++c) {
            const auto& s = split[r * m + k][a * kc + c];
            auto it = s.find(ge);
            if (it == s.end()) continue;
            for (const auto& [he, v] : it->second) rhs[keys.at({r, c, he})] = v;
          }
        auto y = solve(system, rhs);
        if (!y) throw StageError("gram_pencil", "translated column of B leaves the span of the columns");
        for (std::size_t j = 0; j < m; ++j)
          if ((*y)[j] != 0) rho(j, k).components[a] += Polynomial::monomial(g.coordinates(), ge, (*y)[j]);
      }
    }
  return rho;
}

}  // namespace

EquivariantDescription gram_pencil(const AffinePencil& pencil, const OrbitSpanData& span, const GroupSpec& g) {
  const auto& xvars = pencil.variables();
  const auto& coords = g.coordinates();
  check_disjoint(coords, xvars);
  const auto target = merge_variables(coords, xvars);
  const std::size_t d = pencil.d(), m = span.B.cols(), kc = g.component_count();
  if (span.B.rows() != d) throw StageError("gram_pencil", "B has the wrong number of rows");

  const PolynomialMatrix mx = pencil.polynomial_matrix();
  std::vector<PolynomialMatrix> moved;  // M(A(g) x) per component
  for (std::size_t a = 0; a < kc; ++a)
    moved.push_back(mx.map([&](const Polynomial& p) {
      return g.normal_form(pull_back(p, g.action(a), xvars, target)).with_variables(target);
    }));
  RingMatrix binv(d, m);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t j = 0; j < m; ++j) binv(r, j) = inverse_substitute(g, span.B(r, j));

  // u[a][k][r] = sum_s M_a(r, s) B_{s k}(g^-1)
  std::vector<std::vector<std::vector<Polynomial>>> u(kc, std::vector<std::vector<Polynomial>>(m));
  parallel_for(kc * m, [&](std::size_t idx) {
    const std::size_t a = idx / m, k = idx % m;
    for (std::size_t r = 0; r < d; ++r) {
      Polynomial acc(target);
      for (std::size_t s = 0; s < d; ++s) acc += moved[a](r, s) * binv(s, k).components[a];
      u[a][k].push_back(g.normal_form(acc));
    }
  });

  PolynomialMatrix entries(m, m, Polynomial(xvars));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = j; k < m; ++k) pairs.emplace_back(j, k);
  parallel_for(pairs.size(), [&](std::size_t idx) {
    auto [j, k] = pairs[idx];
    std::vector<Polynomial> integrand;
    for (std::size_t a = 0; a < kc; ++a) {
      Polynomial acc(target);
      for (std::size_t r = 0; r < d; ++r) acc += binv(r, j).components[a] * u[a][k][r];
      integrand.push_back(acc);
    }
    Polynomial value = haar_integrate_partial(g, integrand).with_variables(xvars);
    entries(j, k) = entries(k, j) = value;
  });

  EquivariantDescription out;
  try {
    out.Mbar = AffinePencil::from_polynomials(entries, xvars);
  } catch (const DomainError& e) {
    throw StageError("gram_pencil", std::string("integrated pencil is not affine: ") + e.what());
  }
  out.gram0 = out.Mbar.base();
  out.F = span.F;
  out.B = span.B;
  out.rho = solve_rho(span.B, g);
  return out;
}

EquivarianceReport equivariance_check(const AffinePencil& mbar, const RationalMatrix& gram0, const RingMatrix& rho,
                                      const GroupSpec& g) {
  const auto& xvars = mbar.variables();
  const auto& coords = g.coordinates();
  check_disjoint(coords, xvars);
  const auto target = merge_variables(coords, xvars);
  const std::size_t m = mbar.d();
  EquivarianceReport report;
  if (rho.rows() != m || rho.cols() != m) {
    report.ok = report.gram_preserved = false;
    report.failure = "rho has the wrong size";
    return report;
  }
  const PolynomialMatrix mx = mbar.polynomial_matrix();
  const Polynomial zero(target);
  for (std::size_t a = 0; a < g.component_count(); ++a) {
    PolynomialMatrix r = rho.map([&](const RingElement& e) { return e.components.at(a).with_variables(target); });
    PolynomialMatrix rt = r.transpose();
    PolynomialMatrix g0 = gram0.map([&](const Rational& v) { return Polynomial::constant(v, target); });
    PolynomialMatrix lhs0 = multiply(multiply(rt, g0, zero), r, zero);
    PolynomialMatrix moved =
        mx.map([&](const Polynomial& p) { return g.normal_form(pull_back(p, g.action(a), xvars, target)); });
    PolynomialMatrix lhs = multiply(multiply(rt, moved, zero), r, zero);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        if (report.gram_preserved && !g.normal_form(lhs0(i, j) - g0(i, j)).is_zero()) {
          report.gram_preserved = report.ok = false;
          report.failure = "rho^T gram0 rho differs from gram0 on " + g.component_name(a) + " at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")";
          return report;
        }
        if (!g.normal_form(lhs(i, j) - mx(i, j)).is_zero()) {
          report.ok = false;
          report.failure = "rho^T Mbar(A(g)x) rho differs from Mbar(x) on " + g.component_name(a) + " at (" +
                           std::to_string(i) + "," + std::to_string(j) + ")";
          return report;
        }
      }
  }
  return report;
}

SetEqualityReport set_equality_check(const AffinePencil& a, const AffinePencil& b, std::size_t samples, double tol,
                                     std::uint64_t seed) {
  if (a.n() != b.n()) throw DomainError("set_equality_check: pencils live in different dimensions");
  auto points = sample_points(a, samples, seed);
  std::vector<char> same(samples, 0);
  parallel_for(samples, [&](std::size_t i) {
    std::span<const double> x(points[i].data(), points[i].size());
    same[i] = psd_check(evaluate(a, x), tol) == psd_check(evaluate(b, x), tol);
  });
  SetEqualityReport report;
  report.total = samples;
  for (std::size_t i = 0; i < samples; ++i) {
    if (same[i]) ++report.agree;
    else if (!report.disagreement) report.disagreement = points[i];
  }
  return report;
}

std::vector<Eigen::MatrixXd> orthonormal_view(const AffinePencil& mbar, const RationalMatrix& gram0) {
  if (gram0.rows() != mbar.d() || !is_positive_definite(gram0))
    throw DomainError("orthonormal_view: gram0 must be positive-definite of the pencil's size");
  const auto d = static_cast<Eigen::Index>(gram0.rows());
  Eigen::MatrixXd g(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) g(i, j) = gram0(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  const Eigen::MatrixXd l = llt.matrixL();
  std::vector<Eigen::MatrixXd> out;
  for (const auto& m : mbar.matrices()) {
    Eigen::MatrixXd a(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).get_d();
    const Eigen::MatrixXd half = l.triangularView<Eigen::Lower>().solve(a);
    out.push_back(l.triangularView<Eigen::Lower>().solve(half.transpose()).transpose());
  }
  return out;
}

bool is_fixed_point(const GroupSpec& g, const RationalVector& u) {
  if (u.size() != g.n()) return false;
  for (std::size_t a = 0; a < g.component_count(); ++a)
    for (std::size_t i = 0; i < g.n(); ++i) {
      Polynomial v = Polynomial::constant(-u[i], g.coordinates());
      for (std::size_t j = 0; j < g.n(); ++j) v += g.action(a)(i, j) * u[j];
      if (!g.normal_form(v).is_zero()) return false;
    }
  return true;
}

bool EquivariantizeResult::all_passed() const {
  return std::all_of(certificate.begin(), certificate.end(),
                     [](const CheckVerdict& v) { return v.verdict != "fail"; });
}

EquivariantizeResult equivariantize(const AffinePencil& input, const GroupSpec& g,
                                    const EquivariantizeOptions& options) {
  using Clock = std::chrono::steady_clock;
  EquivariantizeResult result;
  auto stage_start = Clock::now();
  auto finish = [&](const std::string& name) {
    auto now = Clock::now();
    result.timings.push_back({name, std::chrono::duration<double, std::milli>(now - stage_start).count()});
    stage_start = now;
  };
  auto pass = [&](std::string name, std::string detail = {}) {
    result.certificate.push_back({std::move(name), "pass", std::move(detail)});
  };

  if (g.n() != input.n())
    throw StageError("input", "group acts on R^" + std::to_string(g.n()) + " but the pencil has " +
                                  std::to_string(input.n()) + " variables");
  AffinePencil pencil = input;
  if (options.shift) {
    if (!is_fixed_point(g, *options.shift)) throw StageError("shift", "shift point is not fixed by the group");
    pencil = input.translated(*options.shift);
    result.shift = options.shift;
    pass("shift_fixed");
  }

  auto inv = invariance_sample_check(pencil, g, std::min<std::size_t>(options.samples, 500), options.tol,
                                     options.seed, options.elements_per_point);
  if (!inv.invariant)
    throw StageError("invariance", "PSD set is not invariant: sampled x = " + describe(*inv.witness_x) +
                                       " changes feasibility under " + g.component_name(inv.witness_g->component));
  pass("invariance", std::to_string(inv.points) + " points");
  finish("invariance");

  try {
    result.based = base_reduce(pencil);
  } catch (const NotPsd& e) {
    throw StageError("base_reduce", std::string(e.what()) + "; supply a group-fixed interior point as a shift");
  } catch (const NotInterior& e) {
    throw StageError("base_reduce", std::string(e.what()) + "; supply a group-fixed interior point as a shift");
  }
  const AffinePencil& based = result.based.pencil;
  if (based.d() == 0) throw StageError("base_reduce", "M(0) is zero; supply a group-fixed interior point as a shift");
  pass("base_positive_definite", "size " + std::to_string(based.d()));
  finish("base_reduce");

  result.defining = defining_polynomial(based, options.seed);
  pass("defining_polynomial", std::to_string(result.defining.boundary_points) + " boundary points");
  finish("defining_polynomial");

  result.xi = compute_xi(based, result.defining.p);
  for (const auto& r : xi_residual(based, result.xi))
    if (!r.is_zero()) throw StageError("compute_xi", "M xi != q p v");
  pass("xi_identity");
  finish("compute_xi");

  OrbitSpanData span = expand_orbit_span(result.xi, g, based.variables(), options.preferred_basis);
  if (!orbit_span_identity(span, g)) throw StageError("expand_orbit_span", "B(g) F(x) != xi(g^-1 x)");
  pass("orbit_span_identity", "dim V = " + std::to_string(span.F.size()));
  finish("expand_orbit_span");

  EquivariantDescription desc = gram_pencil(based, span, g);
  if (!is_positive_definite(desc.gram0)) throw StageError("gram_pencil", "gram0 is not positive-definite");
  pass("gram0_positive_definite");
  finish("gram_pencil");

  auto eq = equivariance_check(desc.Mbar, desc.gram0, desc.rho, g);
  if (!eq.ok) throw StageError("equivariance_check", eq.failure);
  pass("equivariance");
  finish("equivariance_check");

  auto set = set_equality_check(based, desc.Mbar, options.samples, options.tol, options.seed);
  // the reduced pencil and the shifted input share their PSD set
  auto input_set = set_equality_check(based, pencil, options.samples, options.tol, options.seed + 1);
  if (!set.ok() || !input_set.ok())
    throw StageError("set_equality_check",
                     "PSD verdicts differ at " + describe(set.ok() ? *input_set.disagreement : *set.disagreement));
  pass("set_equality", std::to_string(set.agree) + "/" + std::to_string(set.total));
  finish("set_equality_check");

  result.certificate.push_back(
      {"orthogonal_action", g.is_orthogonal() ? "pass" : "skipped", "informational; A(g^-1) used throughout"});
  if (options.shift) {
    RationalVector back(options.shift->size());
    for (std::size_t i = 0; i < back.size(); ++i) back[i] = -(*options.shift)[i];
    desc.Mbar = desc.Mbar.translated(back);
  }
  result.description = std::move(desc);
  return result;
}

}  // namespace equispectra
