#include "equispectra/sturm.hpp"

#include "equispectra/error.hpp"

namespace equispectra {

namespace {

void strip(DenseUnivariate& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const DenseUnivariate& p) { return static_cast<int>(p.size()) - 1; }

DenseUnivariate derivative(const DenseUnivariate& p) {
  DenseUnivariate d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  strip(d);
  return d;
}

// Remainder of a divided by b (b nonzero).
DenseUnivariate remainder(DenseUnivariate a, const DenseUnivariate& b) {
  const int db = degree(b);
  while (degree(a) >= db && !a.empty()) {
    const int shift = degree(a) - db;
    Rational factor = a.back() / b.back();
    for (int k = 0; k <= db; ++k) a[k + shift] -= factor * b[k];
    a.pop_back();
    strip(a);
  }
  return a;
}

DenseUnivariate poly_gcd(DenseUnivariate a, DenseUnivariate b) {
  while (!b.empty()) {
    DenseUnivariate r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

DenseUnivariate quotient(DenseUnivariate a, const DenseUnivariate& b) {
  const int db = degree(b);
  if (degree(a) < db) return {};
  DenseUnivariate q(static_cast<std::size_t>(degree(a) - db + 1));
  while (!a.empty() && degree(a) >= db) {
    const int shift = degree(a) - db;
    Rational factor = a.back() / b.back();
    q[shift] = factor;
    for (int k = 0; k <= db; ++k) a[k + shift] -= factor * b[k];
    a.pop_back();
    strip(a);
  }
  strip(q);
  return q;
}

int sign_at_infinity(const DenseUnivariate& p, bool positive) {
  int s = sgn(p.back());
  if (!positive && degree(p) % 2 == 1) s = -s;
  return s;
}

int variations(const std::vector<DenseUnivariate>& seq, bool positive) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sign_at_infinity(p, positive);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

DenseUnivariate to_dense(const Polynomial& p) {
  auto used = p.used_variables();
  if (used.size() > 1) throw DomainError("expected a univariate polynomial, got '" + p.to_string() + "'");
  DenseUnivariate out(static_cast<std::size_t>(std::max(p.total_degree(), 0) + 1));
  std::size_t var = used.empty() ? 0 : *p.index_of(used.front());
  for (const auto& [e, c] : p.terms()) out[used.empty() ? 0 : e[var]] = c;
  strip(out);
  return out;
}

int count_distinct_real_roots(const DenseUnivariate& p) {
  if (p.empty()) throw DomainError("root count of the zero polynomial");
  if (degree(p) == 0) return 0;
  std::vector<DenseUnivariate> seq{p, derivative(p)};
  while (degree(seq.back()) > 0) {
    DenseUnivariate r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    seq.push_back(std::move(r));
  }
  return variations(seq, false) - variations(seq, true);
}

bool sturm_all_roots_real(const Polynomial& p) {
  DenseUnivariate dense = to_dense(p);
  if (dense.empty()) throw DomainError("sturm_all_roots_real of the zero polynomial");
  if (degree(dense) == 0) return true;
  DenseUnivariate g = poly_gcd(dense, derivative(dense));
  DenseUnivariate sf = degree(g) > 0 ? quotient(dense, g) : dense;
  return count_distinct_real_roots(sf) == degree(sf);
}

}  // namespace equispectra
