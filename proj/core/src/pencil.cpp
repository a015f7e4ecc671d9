#include "equispectra/pencil.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "equispectra/parallel.hpp"

namespace equispectra {

AffinePencil::AffinePencil(std::vector<std::string> variables, std::vector<RationalMatrix> matrices)
    : variables_(std::move(variables)), matrices_(std::move(matrices)) {
  if (matrices_.size() != variables_.size() + 1)
    throw DomainError("pencil needs n + 1 matrices for n variables");
  const std::size_t d = matrices_.front().rows();
  for (const auto& m : matrices_) {
    if (m.rows() != d || m.cols() != d) throw DomainError("pencil matrices must all be d x d");
    if (!is_symmetric(m)) throw DomainError("pencil matrices must be symmetric");
  }
}

AffinePencil AffinePencil::with_default_names(std::vector<RationalMatrix> matrices) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i < matrices.size(); ++i) names.push_back("x" + std::to_string(i));
  return AffinePencil(std::move(names), std::move(matrices));
}

AffinePencil AffinePencil::from_polynomials(const PolynomialMatrix& m, std::vector<std::string> variables) {
  std::vector<RationalMatrix> mats(variables.size() + 1, RationalMatrix(m.rows(), m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Polynomial p = m(i, j).with_variables(variables);
      if (p.total_degree() > 1)
        throw DomainError("entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not affine: " +
                          p.to_string());
      for (const auto& [e, c] : p.terms()) {
        auto it = std::find(e.begin(), e.end(), 1u);
        mats[it == e.end() ? 0 : 1 + static_cast<std::size_t>(it - e.begin())](i, j) = c;
      }
    }
  return AffinePencil(std::move(variables), std::move(mats));
}

PolynomialMatrix AffinePencil::polynomial_matrix() const {
  PolynomialMatrix out(d(), d(), Polynomial(variables_));
  for (std::size_t i = 0; i < d(); ++i)
    for (std::size_t j = 0; j < d(); ++j) {
      Polynomial p = Polynomial::constant(matrices_[0](i, j), variables_);
      for (std::size_t k = 0; k < n(); ++k)
        if (matrices_[k + 1](i, j) != 0)
          p += Polynomial::variable(variables_, k) * matrices_[k + 1](i, j);
      out(i, j) = std::move(p);
    }
  return out;
}

AffinePencil AffinePencil::translated(std::span<const Rational> shift) const {
  auto mats = matrices_;
  mats[0] = evaluate(*this, shift);
  return AffinePencil(variables_, std::move(mats));
}

RationalMatrix evaluate(const AffinePencil& p, std::span<const Rational> a) {
  if (a.size() != p.n()) throw DomainError("evaluate: point has wrong dimension");
  RationalMatrix m = p.base();
  for (std::size_t k = 0; k < p.n(); ++k) {
    if (a[k] == 0) continue;
    const auto& mk = p.coefficient(k);
    for (std::size_t i = 0; i < p.d(); ++i)
      for (std::size_t j = 0; j < p.d(); ++j) m(i, j) += a[k] * mk(i, j);
  }
  return m;
}

Eigen::MatrixXd to_eigen(const RationalMatrix& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).get_d();
  return out;
}

Eigen::MatrixXd evaluate(const AffinePencil& p, std::span<const double> a) {
  if (a.size() != p.n()) throw DomainError("evaluate: point has wrong dimension");
  Eigen::MatrixXd m = to_eigen(p.base());
  for (std::size_t k = 0; k < p.n(); ++k) m += a[k] * to_eigen(p.coefficient(k));
  return m;
}

bool psd_check(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() != a.cols()) throw DomainError("psd_check: matrix is not square");
  if (a.size() == 0) return true;
  const double scale = std::max(1.0, a.lpNorm<Eigen::Infinity>());
  if ((a - a.transpose()).lpNorm<Eigen::Infinity>() > tol * scale)
    throw DomainError("psd_check: matrix is not symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double norm = std::max(1.0, ev.cwiseAbs().maxCoeff());
  return ev.minCoeff() >= -tol * norm;
}

namespace {

std::vector<std::string> matrix_variables(const PolynomialMatrix& m) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) vars = merge_variables(vars, m(i, j).variables());
  return vars;
}

PolynomialMatrix minor_matrix(const PolynomialMatrix& m, std::size_t row, std::size_t col) {
  PolynomialMatrix out(m.rows() - 1, m.cols() - 1);
  for (std::size_t i = 0, r = 0; i < m.rows(); ++i) {
    if (i == row) continue;
    for (std::size_t j = 0, c = 0; j < m.cols(); ++j) {
      if (j == col) continue;
      out(r, c++) = m(i, j);
    }
    ++r;
  }
  return out;
}

Polynomial cofactor_determinant(const PolynomialMatrix& m, const std::vector<std::string>& vars) {
  const std::size_t n = m.rows();
  if (n == 0) return Polynomial::constant(1, vars);
  if (n == 1) return m(0, 0).with_variables(vars);
  if (n == 2) return (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).with_variables(vars);
  Polynomial det(vars);
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Polynomial term = m(0, j) * cofactor_determinant(minor_matrix(m, 0, j), vars);
    if (j % 2 == 0) det += term;
    else det -= term;
  }
  return det;
}

Polynomial bareiss_determinant(PolynomialMatrix m, const std::vector<std::string>& vars) {
  const std::size_t n = m.rows();
  bool negate = false;
  Polynomial prev = Polynomial::constant(1, vars);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k).is_zero()) ++pivot;
      if (pivot == n) return Polynomial(vars);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(pivot, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = exact_div(m(i, j) * m(k, k) - m(i, k) * m(k, j), prev);
    prev = m(k, k);
  }
  Polynomial det = m(n - 1, n - 1).with_variables(vars);
  return negate ? -det : det;
}

}  // namespace

Polynomial determinant(const PolynomialMatrix& m) {
  if (!m.square()) throw DomainError("determinant of a non-square matrix");
  const auto vars = matrix_variables(m);
  if (m.rows() <= 4) return cofactor_determinant(m, vars);
  return bareiss_determinant(m, vars);
}

PolynomialMatrix adjugate(const PolynomialMatrix& m) {
  if (!m.square()) throw DomainError("adjugate of a non-square matrix");
  const auto vars = matrix_variables(m);
  const std::size_t n = m.rows();
  PolynomialMatrix adj(n, n, Polynomial(vars));
  if (n == 1) {
    adj(0, 0) = Polynomial::constant(1, vars);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Polynomial c = determinant(minor_matrix(m, j, i)).with_variables(vars);
      adj(i, j) = (i + j) % 2 == 0 ? c : -c;
    }
  return adj;
}

Polynomial det_poly(const AffinePencil& p) {
  return determinant(p.polynomial_matrix()).with_variables(p.variables());
}

PolynomialMatrix adjugate_polys(const AffinePencil& p) {
  return adjugate(p.polynomial_matrix()).map([&](const Polynomial& e) { return e.with_variables(p.variables()); });
}

BasedPencil base_reduce(const AffinePencil& p) {
  const std::size_t d = p.d();
  RationalMatrix a = p.base();
  RationalMatrix q = identity_matrix(d);
  auto swap_index = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < d; ++k) std::swap(a(i, k), a(j, k));
    for (std::size_t k = 0; k < d; ++k) std::swap(a(k, i), a(k, j));
    for (std::size_t k = 0; k < d; ++k) std::swap(q(k, i), q(k, j));
  };
  auto column = [&](std::size_t j) {
    RationalVector v(d);
    for (std::size_t k = 0; k < d; ++k) v[k] = q(k, j);
    return v;
  };

  std::size_t r = 0;
  for (; r < d; ++r) {
    std::size_t pivot = d;
    for (std::size_t i = r; i < d; ++i) {
      if (a(i, i) < 0) throw NotPsd("M(0) is not positive-semidefinite (negative pivot)", column(i));
      if (a(i, i) > 0 && pivot == d) pivot = i;
    }
    if (pivot == d) {
      // zero diagonal left: any nonzero off-diagonal entry certifies indefiniteness
      for (std::size_t i = r; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
          if (a(i, j) != 0) {
            RationalVector w(d);
            for (std::size_t k = 0; k < d; ++k) w[k] = q(k, i) - sgn(a(i, j)) * q(k, j);
            throw NotPsd("M(0) is not positive-semidefinite (zero pivot with coupling)", w);
          }
      break;
    }
    swap_index(r, pivot);
    for (std::size_t j = r + 1; j < d; ++j) {
      if (a(r, j) == 0) continue;
      Rational f = a(r, j) / a(r, r);
      for (std::size_t k = 0; k < d; ++k) a(k, j) -= f * a(k, r);
      for (std::size_t k = 0; k < d; ++k) a(j, k) -= f * a(r, k);
      for (std::size_t k = 0; k < d; ++k) q(k, j) -= f * q(k, r);
    }
  }

  std::vector<RationalMatrix> mats;
  for (std::size_t k = 0; k <= p.n(); ++k) {
    RationalMatrix full = q.transpose() * p.matrices()[k] * q;
    if (k > 0)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = r; j < d; ++j)
          if (full(i, j) != 0)
            throw NotInterior("M(0) is singular in a direction where the pencil varies; "
                              "translate the pencil to an interior point first");
    mats.push_back(full.block(0, 0, r, r));
  }
  BasedPencil out{AffinePencil(p.variables(), std::move(mats)), q.block(0, 0, d, r)};
  return out;
}

AffinePencil subspace_pencil(const std::vector<RationalVector>& w_basis, const RationalVector& v,
                             std::vector<std::string> variables) {
  const std::size_t n = v.size();
  if (variables.empty())
    for (std::size_t i = 1; i <= n; ++i) variables.push_back("x" + std::to_string(i));
  if (variables.size() != n) throw DomainError("subspace_pencil: variable count differs from dimension");
  RationalMatrix w(w_basis.size(), n);
  for (std::size_t i = 0; i < w_basis.size(); ++i) {
    if (w_basis[i].size() != n) throw DomainError("subspace_pencil: basis vector has wrong length");
    for (std::size_t j = 0; j < n; ++j) w(i, j) = w_basis[i][j];
  }
  if (rank(w) != w_basis.size()) throw DomainError("subspace_pencil: basis is linearly dependent");
  std::vector<RationalVector> u = w_basis.empty() ? std::vector<RationalVector>{} : nullspace(w);
  if (w_basis.empty())
    for (std::size_t i = 0; i < n; ++i) {
      RationalVector e(n);
      e[i] = 1;
      u.push_back(e);
    }
  const std::size_t k = u.size();
  std::vector<RationalMatrix> mats(n + 1, RationalMatrix(k + 1, k + 1));
  for (std::size_t a = 0; a < k; ++a) {
    Rational shift = 0;
    for (std::size_t j = 0; j < n; ++j) shift -= u[a][j] * v[j];
    mats[0](a, k) = mats[0](k, a) = shift;
    for (std::size_t j = 0; j < n; ++j) mats[j + 1](a, k) = mats[j + 1](k, a) = u[a][j];
  }
  return AffinePencil(std::move(variables), std::move(mats));
}

namespace {

struct PencilFloat {
  Eigen::MatrixXd base;
  std::vector<Eigen::MatrixXd> coefficients;
  bool based = false;
  Eigen::LLT<Eigen::MatrixXd> chol;
};

PencilFloat float_view(const AffinePencil& p) {
  PencilFloat f;
  f.base = to_eigen(p.base());
  for (std::size_t k = 0; k < p.n(); ++k) f.coefficients.push_back(to_eigen(p.coefficient(k)));
  f.based = p.d() > 0 && is_positive_definite(p.base());
  if (f.based) f.chol.compute(f.base);
  return f;
}

std::optional<double> ray_exit(const PencilFloat& f, const Eigen::VectorXd& w) {
  if (!f.based) return std::nullopt;
  const auto d = f.base.rows();
  Eigen::MatrixXd n = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < f.coefficients.size(); ++k) n += w[static_cast<Eigen::Index>(k)] * f.coefficients[k];
  // L^-1 N L^-T
  Eigen::MatrixXd c = f.chol.matrixL().solve(n);
  c = f.chol.matrixL().solve(c.transpose().eval());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (c + c.transpose()), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= -1e-14) return std::nullopt;
  return -1.0 / lmin;
}

Eigen::VectorXd gaussian_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (auto& x : v) x = normal(rng);
  return v;
}

Eigen::VectorXd unit_direction(std::mt19937_64& rng, std::size_t n) {
  Eigen::VectorXd v = gaussian_vector(rng, n);
  while (v.norm() < 1e-12) v = gaussian_vector(rng, n);
  return v / v.norm();
}

}  // namespace

std::optional<double> boundary_parameter(const AffinePencil& p, const Eigen::VectorXd& w) {
  return ray_exit(float_view(p), w);
}

std::vector<Eigen::VectorXd> sample_points(const AffinePencil& p, std::size_t count, std::uint64_t seed) {
  static constexpr double kFactors[] = {0.2, 0.5, 0.9, 0.99, 0.999, 1.001, 1.01, 1.1, 1.5, 3.0};
  static constexpr double kScales[] = {0.2, 1.0, 5.0};
  const PencilFloat f = float_view(p);
  std::vector<Eigen::VectorXd> out(count);
  parallel_for(count, [&](std::size_t i) {
    std::mt19937_64 rng(task_seed(seed, i));
    std::uniform_int_distribution<std::size_t> pick_factor(0, std::size(kFactors) - 1);
    std::uniform_int_distribution<std::size_t> pick_scale(0, std::size(kScales) - 1);
    if (p.n() == 0) {
      out[i] = Eigen::VectorXd();
      return;
    }
    if (f.based && i % 4 != 3) {
      Eigen::VectorXd w = unit_direction(rng, p.n());
      if (auto t = ray_exit(f, w)) {
        out[i] = w * (*t * kFactors[pick_factor(rng)]);
        return;
      }
      out[i] = w * (kScales[pick_scale(rng)] * 2.0);
      return;
    }
    out[i] = gaussian_vector(rng, p.n()) * kScales[pick_scale(rng)];
  });
  return out;
}

std::vector<Eigen::VectorXd> boundary_points(const AffinePencil& p, std::size_t count, std::uint64_t seed) {
  const PencilFloat f = float_view(p);
  std::vector<Eigen::VectorXd> out;
  if (!f.based || p.n() == 0) return out;
  std::mt19937_64 rng(seed);
  for (std::size_t attempt = 0; attempt < 20 * count && out.size() < count; ++attempt) {
    Eigen::VectorXd w = unit_direction(rng, p.n());
    if (auto t = ray_exit(f, w)) out.push_back(w * *t);
  }
  return out;
}

InvarianceReport invariance_sample_check(const AffinePencil& p, const GroupSpec& g, std::size_t samples,
                                         double tol, std::uint64_t seed, std::size_t elements_per_point) {
  if (g.n() != p.n()) throw DomainError("invariance check: group acts on R^" + std::to_string(g.n()) +
                                        " but the pencil lives on R^" + std::to_string(p.n()));
  auto points = sample_points(p, samples, seed);
  std::vector<std::optional<GroupElement>> failures(samples);
  parallel_for(samples, [&](std::size_t i) {
    std::mt19937_64 rng(task_seed(seed ^ 0x5bd1e995ULL, i));
    const Eigen::VectorXd& x = points[i];
    const bool inside = psd_check(evaluate(p, std::span<const double>(x.data(), x.size())), tol);
    for (const auto& el : g.sample_elements(rng, elements_per_point)) {
      Eigen::VectorXd y = to_eigen(g.action_at(el)) * x;
      if (psd_check(evaluate(p, std::span<const double>(y.data(), y.size())), tol) != inside) {
        failures[i] = el;
        return;
      }
    }
  });
  InvarianceReport report;
  report.points = samples;
  for (std::size_t i = 0; i < samples; ++i)
    if (failures[i]) {
      report.invariant = false;
      report.witness_x = points[i];
      report.witness_g = failures[i];
      break;
    }
  return report;
}

}  // namespace equispectra
