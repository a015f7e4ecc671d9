#include "equispectra/exact_linalg.hpp"

#include <stdexcept>

#include "equispectra/error.hpp"

namespace equispectra {

EchelonForm rref(RationalMatrix a) {
  EchelonForm out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < a.rows() && a(pivot, col) == 0) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != row)
      for (std::size_t j = 0; j < a.cols(); ++j) std::swap(a(pivot, j), a(row, j));
    Rational inv = 1 / a(row, col);
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) *= inv;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || a(i, col) == 0) continue;
      Rational f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= f * a(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(a);
  return out;
}

std::size_t rank(const RationalMatrix& a) { return rref(a).pivots.size(); }

std::vector<std::size_t> independent_rows(const RationalMatrix& a) {
  // Incremental elimination against the rows accepted so far.
  std::vector<RationalVector> basis;
  std::vector<std::size_t> lead;
  std::vector<std::size_t> chosen;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RationalVector r(a.row(i).begin(), a.row(i).end());
    for (std::size_t b = 0; b < basis.size(); ++b) {
      if (r[lead[b]] == 0) continue;
      Rational f = r[lead[b]];
      for (std::size_t j = 0; j < r.size(); ++j) r[j] -= f * basis[b][j];
    }
    std::size_t p = 0;
    while (p < r.size() && r[p] == 0) ++p;
    if (p == r.size()) continue;
    Rational inv = 1 / r[p];
    for (auto& x : r) x *= inv;
    // keep earlier basis rows reduced in the new pivot column
    for (auto& other : basis) {
      if (other[p] == 0) continue;
      Rational f = other[p];
      for (std::size_t j = 0; j < r.size(); ++j) other[j] -= f * r[j];
    }
    basis.push_back(std::move(r));
    lead.push_back(p);
    chosen.push_back(i);
  }
  return chosen;
}

std::optional<RationalVector> solve(const RationalMatrix& a, const RationalVector& b) {
  if (b.size() != a.rows()) throw DomainError("solve: right-hand side has wrong length");
  RationalMatrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  EchelonForm e = rref(std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  RationalVector x(a.cols());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  return x;
}

std::vector<RationalVector> nullspace(const RationalMatrix& a) {
  EchelonForm e = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(a.cols());
    v[free] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational determinant(RationalMatrix a) {
  if (!a.square()) throw DomainError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (a(i, col) == 0) continue;
      Rational f = a(i, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  return det;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& a) {
  if (!a.square()) throw DomainError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = 1;
  }
  EchelonForm e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

bool is_symmetric(const RationalMatrix& a) {
  if (!a.square()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (a(i, j) != a(j, i)) return false;
  return true;
}

bool is_positive_definite(const RationalMatrix& a) {
  if (!is_symmetric(a)) return false;
  for (std::size_t k = 1; k <= a.rows(); ++k)
    if (determinant(a.block(0, 0, k, k)) <= 0) return false;
  return true;
}

bool is_psd_exact(const RationalMatrix& a) {
  if (!is_symmetric(a)) return false;
  const std::size_t n = a.rows();
  if (n > 20) throw DomainError("is_psd_exact: matrix too large for principal-minor enumeration");
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1UL << i)) idx.push_back(i);
    RationalMatrix minor(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = 0; j < idx.size(); ++j) minor(i, j) = a(idx[i], idx[j]);
    if (determinant(std::move(minor)) < 0) return false;
  }
  return true;
}

RationalMatrix identity_matrix(std::size_t n) {
  return RationalMatrix::identity(n, Rational(0), Rational(1));
}

}  // namespace equispectra
