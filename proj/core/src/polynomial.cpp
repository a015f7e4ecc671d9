#include "equispectra/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include "equispectra/error.hpp"

namespace equispectra {

namespace {

std::uint32_t degree_of(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

}  // namespace

bool TermOrder::operator()(const Exponent& a, const Exponent& b) const {
  auto da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

bool grlex_less(const Exponent& a, const Exponent& b) {
  auto da = degree_of(a), db = degree_of(b);
  if (da != db) return da < db;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<std::string> merge_variables(const std::vector<std::string>& a,
                                         const std::vector<std::string>& b) {
  std::vector<std::string> out = a;
  for (const auto& v : b)
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  return out;
}

Polynomial::Polynomial(std::vector<std::string> variables) : variables_(std::move(variables)) {}

Polynomial::Polynomial(std::vector<std::string> variables, Terms terms)
    : variables_(std::move(variables)) {
  for (auto& [e, c] : terms) {
    if (e.size() != variables_.size()) throw DomainError("exponent length does not match variable count");
    if (c != 0) terms_.emplace(e, c);
  }
}

Polynomial Polynomial::constant(const Rational& c, std::vector<std::string> variables) {
  Polynomial p(std::move(variables));
  if (c != 0) p.terms_.emplace(Exponent(p.nvars(), 0), c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) { return variable({name}, 0); }

Polynomial Polynomial::variable(std::vector<std::string> variables, std::size_t index) {
  Exponent e(variables.size(), 0);
  e.at(index) = 1;
  return monomial(std::move(variables), std::move(e));
}

Polynomial Polynomial::monomial(std::vector<std::string> variables, Exponent exponent,
                                const Rational& coefficient) {
  Polynomial p(std::move(variables));
  if (exponent.size() != p.nvars()) throw DomainError("exponent length does not match variable count");
  if (coefficient != 0) p.terms_.emplace(std::move(exponent), coefficient);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && degree_of(terms_.begin()->first) == 0);
}

Rational Polynomial::constant_term() const { return coefficient(Exponent(nvars(), 0)); }

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::size_t> Polynomial::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i)
    if (variables_[i] == name) return i;
  return std::nullopt;
}

int Polynomial::total_degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(degree_of(terms_.rbegin()->first));
}

int Polynomial::degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return static_cast<int>(d);
}

int Polynomial::degree_in(std::string_view name) const {
  auto i = index_of(name);
  if (!i) return terms_.empty() ? -1 : 0;
  return degree_in(*i);
}

std::vector<std::string> Polynomial::used_variables() const {
  std::vector<bool> used(nvars(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < nvars(); ++i)
    if (used[i]) out.push_back(variables_[i]);
  return out;
}

Polynomial Polynomial::coefficient_in(std::size_t var, std::uint32_t power) const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[var] != power) continue;
    Exponent f = e;
    f[var] = 0;
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

std::pair<Exponent, Rational> Polynomial::leading_term() const {
  if (terms_.empty()) throw DomainError("leading term of the zero polynomial");
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (grlex_less(best->first, it->first)) best = it;
  return *best;
}

Polynomial Polynomial::with_variables(std::vector<std::string> variables) const {
  if (variables == variables_) return *this;
  std::vector<std::size_t> where(nvars());
  std::vector<bool> used(nvars(), false);
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) used[i] = true;
  for (std::size_t i = 0; i < nvars(); ++i) {
    auto it = std::find(variables.begin(), variables.end(), variables_[i]);
    if (it == variables.end()) {
      if (used[i]) throw DomainError("variable '" + variables_[i] + "' missing from target variable list");
      where[i] = variables.size();
    } else {
      where[i] = static_cast<std::size_t>(it - variables.begin());
    }
  }
  Polynomial out(std::move(variables));
  for (const auto& [e, c] : terms_) {
    Exponent f(out.nvars(), 0);
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i] != 0) f[where[i]] = e[i];
    out.terms_.emplace(std::move(f), c);
  }
  return out;
}

Polynomial Polynomial::trimmed() const { return with_variables(used_variables()); }

Polynomial Polynomial::derivative(std::size_t var) const {
  Polynomial out(variables_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent f = e;
    f[var] -= 1;
    out.add_term(f, c * e[var]);
  }
  return out;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != nvars()) throw DomainError("evaluation point has wrong dimension");
  Rational total = 0;
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(mpq_numref(pw.get_mpq_t()), point[i].get_num_mpz_t(), e[i]);
      mpz_pow_ui(mpq_denref(pw.get_mpq_t()), point[i].get_den_mpz_t(), e[i]);
      term *= pw;
    }
    total += term;
  }
  return total;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (point.size() != nvars()) throw DomainError("evaluation point has wrong dimension");
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.get_d();
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) term *= point[i];
    total += term;
  }
  return total;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.variables_ != variables_) {
    auto vars = merge_variables(variables_, other.variables_);
    *this = with_variables(vars);
    return *this += other.with_variables(std::move(vars));
  }
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  if (other.variables_ != variables_) {
    auto vars = merge_variables(variables_, other.variables_);
    *this = with_variables(vars);
    return *this -= other.with_variables(std::move(vars));
  }
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) {
  *this = *this * other;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= scalar;
  return *this;
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.variables() != b.variables()) {
    auto vars = merge_variables(a.variables(), b.variables());
    return a.with_variables(vars) * b.with_variables(vars);
  }
  Polynomial::Terms acc;
  const std::size_t n = a.nvars();
  Exponent e(n);
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = acc.try_emplace(e, ca * cb);
      if (!inserted) it->second += ca * cb;
    }
  }
  return Polynomial(a.variables(), std::move(acc));
}

Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }

Polynomial pow(const Polynomial& p, std::uint32_t k) {
  Polynomial result = Polynomial::constant(1, p.variables());
  Polynomial base = p;
  while (k > 0) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.variables_ == b.variables_) return a.terms_ == b.terms_;
  return (a - b).is_zero();
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::ostringstream mono;
    bool any = false;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (any) mono << '*';
      mono << variables_[i];
      if (e[i] > 1) mono << '^' << e[i];
      any = true;
    }
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (!any) {
      out << equispectra::to_string(mag);
    } else if (mag == 1) {
      out << mono.str();
    } else {
      out << equispectra::to_string(mag) << '*' << mono.str();
    }
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::vector<std::string> declared)
      : text_(text), declared_(!declared.empty()), vars_(std::move(declared)) {}

  Polynomial run() {
    Polynomial p = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return p.with_variables(vars_);
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg +
                         " in '" + std::string(text_) + "'",
                     1, pos_ + 1);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial acc = term();
    while (true) {
      if (accept('+')) {
        acc += term();
      } else if (accept('-')) {
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  Polynomial term() {
    Polynomial acc = unary();
    while (true) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        Polynomial d = unary();
        if (!d.is_constant() || d.is_zero()) fail("division by a non-constant or zero");
        acc *= Rational(1) / d.constant_term();
      } else {
        return acc;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a nonnegative integer exponent");
      auto k = std::stoul(std::string(text_.substr(start, pos_ - start)));
      return pow(base, static_cast<std::uint32_t>(k));
    }
    return base;
  }

  Polynomial primary() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Polynomial inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      return Polynomial::constant(parse_rational(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                     text_[pos_] == '_' || text_[pos_] == '.'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto it = std::find(vars_.begin(), vars_.end(), name);
      if (it == vars_.end()) {
        if (declared_) fail("undeclared variable '" + name + "'");
        vars_.push_back(name);
      }
      return Polynomial::variable(name);
    }
    fail("unexpected character '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  bool declared_;
  std::vector<std::string> vars_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::vector<std::string> variables) {
  return Parser(text, std::move(variables)).run();
}

// ---------------------------------------------------------------------------
// Substitution

Polynomial substitute(const Polynomial& p, const std::map<std::string, Polynomial>& images,
                      std::optional<std::vector<std::string>> target) {
  std::vector<std::string> vars;
  if (target) {
    vars = *target;
  } else {
    for (const auto& name : p.used_variables()) {
      auto it = images.find(name);
      if (it == images.end()) throw DomainError("substitute: no image for variable '" + name + "'");
      vars = merge_variables(vars, it->second.variables());
    }
  }
  const std::size_t n = p.nvars();
  std::vector<const Polynomial*> img(n, nullptr);
  std::vector<std::vector<Polynomial>> powers(n);
  for (std::size_t i = 0; i < n; ++i) {
    int deg = p.degree_in(i);
    if (deg <= 0) continue;
    auto it = images.find(p.variables()[i]);
    if (it == images.end())
      throw DomainError("substitute: no image for variable '" + p.variables()[i] + "'");
    powers[i].push_back(Polynomial::constant(1, vars));
    Polynomial base = it->second.with_variables(vars);
    for (int k = 1; k <= deg; ++k) powers[i].push_back(powers[i].back() * base);
  }
  Polynomial out(vars);
  for (const auto& [e, c] : p.terms()) {
    Polynomial term = Polynomial::constant(c, vars);
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] != 0) term = term * powers[i][e[i]];
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Division and gcd

std::optional<Polynomial> try_divide(const Polynomial& p, const Polynomial& q) {
  if (q.is_zero()) throw DomainError("division by the zero polynomial");
  auto vars = merge_variables(p.variables(), q.variables());
  Polynomial r = p.with_variables(vars);
  Polynomial d = q.with_variables(vars);
  Polynomial quotient(vars);
  const auto [lead_e, lead_c] = d.leading_term();
  while (!r.is_zero()) {
    auto [re, rc] = r.leading_term();
    Exponent qe(vars.size());
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (re[i] < lead_e[i]) return std::nullopt;
      qe[i] = re[i] - lead_e[i];
    }
    Polynomial t = Polynomial::monomial(vars, std::move(qe), rc / lead_c);
    quotient += t;
    r -= t * d;
  }
  return quotient;
}

Polynomial exact_div(const Polynomial& p, const Polynomial& q) {
  auto r = try_divide(p, q);
  if (!r) throw NotDivisible("'" + q.to_string() + "' does not divide '" + p.to_string() + "'");
  return *r;
}

Polynomial normalize(const Polynomial& p) {
  if (p.is_zero()) return p;
  Integer den_lcm = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  Integer num_gcd = 0;
  for (const auto& [e, c] : p.terms()) {
    Integer scaled = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational factor(den_lcm, num_gcd);
  factor.canonicalize();
  if (p.leading_term().second < 0) factor = -factor;
  return p * factor;
}

namespace {

Polynomial gcd_rec(const Polynomial& a, const Polynomial& b);

// Highest-index variable that occurs in a or b.
std::optional<std::size_t> main_variable(const Polynomial& a, const Polynomial& b) {
  for (std::size_t i = a.nvars(); i-- > 0;)
    if (a.degree_in(i) > 0 || b.degree_in(i) > 0) return i;
  return std::nullopt;
}

Polynomial content_in(const Polynomial& p, std::size_t var) {
  Polynomial g(p.variables());
  int d = p.degree_in(var);
  for (int k = d; k >= 0; --k) {
    Polynomial coeff = p.coefficient_in(var, static_cast<std::uint32_t>(k));
    if (coeff.is_zero()) continue;
    g = g.is_zero() ? normalize(coeff) : gcd_rec(g, coeff);
    if (g.is_constant()) return Polynomial::constant(1, p.variables());
  }
  return g;
}

Polynomial primitive_part(const Polynomial& p, std::size_t var) {
  return normalize(exact_div(p, content_in(p, var)));
}

Polynomial x_power(const std::vector<std::string>& vars, std::size_t var, std::uint32_t k) {
  Exponent e(vars.size(), 0);
  e[var] = k;
  return Polynomial::monomial(vars, std::move(e));
}

Polynomial pseudo_remainder(const Polynomial& a, const Polynomial& b, std::size_t var) {
  const int db = b.degree_in(var);
  const Polynomial lb = b.coefficient_in(var, static_cast<std::uint32_t>(db));
  Polynomial r = a;
  while (!r.is_zero()) {
    int dr = r.degree_in(var);
    if (dr < db) break;
    Polynomial lr = r.coefficient_in(var, static_cast<std::uint32_t>(dr));
    r = lb * r - lr * x_power(r.variables(), var, static_cast<std::uint32_t>(dr - db)) * b;
    r = normalize(r);
  }
  return r;
}

// Both inputs nonzero and over the same variables; result normalized.
Polynomial gcd_rec(const Polynomial& a, const Polynomial& b) {
  const auto& vars = a.variables();
  if (a.is_constant() || b.is_constant()) return Polynomial::constant(1, vars);
  auto main = main_variable(a, b);
  if (!main) return Polynomial::constant(1, vars);
  const std::size_t v = *main;
  int da = a.degree_in(v), db = b.degree_in(v);
  if (da == 0) return gcd_rec(a, content_in(b, v));
  if (db == 0) return gcd_rec(content_in(a, v), b);

  Polynomial ca = content_in(a, v);
  Polynomial cb = content_in(b, v);
  Polynomial c = gcd_rec(ca, cb);
  Polynomial pa = normalize(exact_div(a, ca));
  Polynomial pb = normalize(exact_div(b, cb));
  if (da < db) std::swap(pa, pb);

  Polynomial g(vars);
  while (true) {
    Polynomial r = pseudo_remainder(pa, pb, v);
    if (r.is_zero()) {
      g = pb;
      break;
    }
    if (r.degree_in(v) == 0) {
      g = Polynomial::constant(1, vars);
      break;
    }
    pa = std::move(pb);
    pb = primitive_part(r, v);
  }
  return normalize(c * primitive_part(g, v));
}

}  // namespace

Polynomial gcd(const Polynomial& p, const Polynomial& q) {
  auto vars = merge_variables(p.variables(), q.variables());
  Polynomial a = p.with_variables(vars);
  Polynomial b = q.with_variables(vars);
  if (a.is_zero()) return normalize(b);
  if (b.is_zero()) return normalize(a);
  return gcd_rec(a, b);
}

Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) throw DomainError("squarefree_part of the zero polynomial");
  Polynomial g = p;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (g.is_constant()) break;
    Polynomial d = p.derivative(i);
    if (!d.is_zero()) g = gcd(g, d);
  }
  if (g.is_constant()) return normalize(p);
  return normalize(exact_div(p, g));
}

}  // namespace equispectra
