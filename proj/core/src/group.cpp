#include "equispectra/group.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "equispectra/error.hpp"

namespace equispectra {

namespace {

Polynomial var(const std::string& name) { return Polynomial::variable(name); }

std::vector<Polynomial> vars_of(const std::vector<std::string>& names) {
  std::vector<Polynomial> out;
  for (const auto& n : names) out.push_back(var(n));
  return out;
}

// Integer double factorial for odd or even k >= -1.
Integer double_factorial(long k) {
  Integer r = 1;
  for (long i = k; i > 1; i -= 2) r *= i;
  return r;
}

PolynomialMatrix on_variables(const PolynomialMatrix& m, const std::vector<std::string>& vars) {
  return m.map([&](const Polynomial& p) { return p.with_variables(vars); });
}

PolynomialMatrix to_polynomial_matrix(const RationalMatrix& m, const std::vector<std::string>& vars) {
  return m.map([&](const Rational& r) { return Polynomial::constant(r, vars); });
}

ComponentMap renamed(const std::vector<Polynomial>& formulas, std::size_t component,
                     const std::vector<std::string>& vars) {
  ComponentMap out{component, {}};
  for (const auto& f : formulas) out.coordinates.push_back(f.with_variables(vars));
  return out;
}

// Rational point on the unit circle from a rational parameter (stereographic).
std::pair<Rational, Rational> circle_point(const Rational& u) {
  Rational d = 1 + u * u;
  return {Rational((1 - u * u) / d), Rational(2 * u / d)};
}

Rational random_rational(std::mt19937_64& rng, double lo, double hi, long den = 1000) {
  std::uniform_real_distribution<double> dist(lo, hi);
  Rational r(static_cast<long>(std::llround(dist(rng) * den)), den);
  r.canonicalize();
  return r;
}

bool is_identity(const PolynomialMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Polynomial& p = m(i, j);
      if (i == j ? !(p.is_constant() && p.constant_term() == 1) : !p.is_zero()) return false;
    }
  return true;
}

}  // namespace

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Finite: return "Finite";
    case GroupKind::SO2: return "SO2";
    case GroupKind::O2: return "O2";
    case GroupKind::SU2: return "SU2";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view text) {
  if (text == "Finite") return GroupKind::Finite;
  if (text == "SO2") return GroupKind::SO2;
  if (text == "O2") return GroupKind::O2;
  if (text == "SU2") return GroupKind::SU2;
  throw ParseError("unknown group kind '" + std::string(text) + "'");
}

std::vector<std::string> GroupSpec::coordinates_with_suffix(std::string_view suffix) const {
  std::vector<std::string> out;
  for (const auto& c : coordinates_) out.push_back(c + std::string(suffix));
  return out;
}

std::vector<Polynomial> GroupSpec::relations() const {
  if (coordinates_.empty()) return {};
  Polynomial r = Polynomial::constant(-1, coordinates_);
  for (std::size_t i = 0; i < coordinates_.size(); ++i)
    r += pow(Polynomial::variable(coordinates_, i), 2);
  return {r};
}

std::string GroupSpec::component_name(std::size_t component) const {
  switch (kind_) {
    case GroupKind::O2: return component == 0 ? "rotation" : "reflection";
    case GroupKind::Finite: return "element " + std::to_string(component);
    default: return "identity component";
  }
}

void GroupSpec::check_action_shapes() const {
  for (const auto& a : actions_)
    if (a.rows() != n_ || a.cols() != n_) throw DomainError("group action matrix must be n x n");
}

GroupSpec GroupSpec::so2(PolynomialMatrix action) {
  GroupSpec g;
  g.kind_ = GroupKind::SO2;
  g.n_ = action.rows();
  g.coordinates_ = {"c", "s"};
  g.actions_ = {on_variables(action, g.coordinates_)};
  g.check_action_shapes();
  Polynomial c = var("c"), s = var("s");
  g.inverses_ = {renamed({c, -s}, 0, g.coordinates_)};
  auto two = merge_variables(g.coordinates_with_suffix("_g"), g.coordinates_with_suffix("_h"));
  Polynomial cg = var("c_g"), sg = var("s_g"), ch = var("c_h"), sh = var("s_h");
  g.products_ = {renamed({cg * ch - sg * sh, sg * ch + cg * sh}, 0, two)};
  return g;
}

GroupSpec GroupSpec::o2(PolynomialMatrix rotation_action, RationalMatrix reflection_action) {
  GroupSpec g;
  g.kind_ = GroupKind::O2;
  g.n_ = rotation_action.rows();
  g.coordinates_ = {"c", "s"};
  auto rot = on_variables(rotation_action, g.coordinates_);
  g.reflection_ = reflection_action;
  auto refl = multiply(rot, to_polynomial_matrix(reflection_action, g.coordinates_),
                       Polynomial(g.coordinates_));
  g.actions_ = {rot, refl};
  g.check_action_shapes();
  Polynomial c = var("c"), s = var("s");
  g.inverses_ = {renamed({c, -s}, 0, g.coordinates_), renamed({c, s}, 1, g.coordinates_)};
  auto two = merge_variables(g.coordinates_with_suffix("_g"), g.coordinates_with_suffix("_h"));
  Polynomial cg = var("c_g"), sg = var("s_g"), ch = var("c_h"), sh = var("s_h");
  std::vector<Polynomial> add{cg * ch - sg * sh, sg * ch + cg * sh};
  std::vector<Polynomial> sub{cg * ch + sg * sh, sg * ch - cg * sh};
  g.products_ = {renamed(add, 0, two), renamed(add, 1, two), renamed(sub, 1, two), renamed(sub, 0, two)};
  return g;
}

GroupSpec GroupSpec::su2(PolynomialMatrix action) {
  GroupSpec g;
  g.kind_ = GroupKind::SU2;
  g.n_ = action.rows();
  g.coordinates_ = {"x", "y", "s", "t"};
  g.actions_ = {on_variables(action, g.coordinates_)};
  g.check_action_shapes();
  Polynomial x = var("x"), y = var("y"), s = var("s"), t = var("t");
  g.inverses_ = {renamed({x, -y, -s, -t}, 0, g.coordinates_)};
  auto two = merge_variables(g.coordinates_with_suffix("_g"), g.coordinates_with_suffix("_h"));
  Polynomial x1 = var("x_g"), y1 = var("y_g"), s1 = var("s_g"), t1 = var("t_g");
  Polynomial x2 = var("x_h"), y2 = var("y_h"), s2 = var("s_h"), t2 = var("t_h");
  // alpha = alpha1 alpha2 - conj(beta1) beta2, beta = beta1 alpha2 + conj(alpha1) beta2
  g.products_ = {renamed({x1 * x2 - y1 * y2 - s1 * s2 - t1 * t2,
                          x1 * y2 + y1 * x2 - s1 * t2 + t1 * s2,
                          s1 * x2 - t1 * y2 + x1 * s2 + y1 * t2,
                          s1 * y2 + t1 * x2 + x1 * t2 - y1 * s2},
                         0, two)};
  return g;
}

GroupSpec GroupSpec::finite(std::vector<RationalMatrix> elements) {
  if (elements.empty()) throw DomainError("finite group needs at least one element");
  GroupSpec g;
  g.kind_ = GroupKind::Finite;
  g.n_ = elements.front().rows();
  for (const auto& e : elements) {
    if (e.rows() != g.n_ || e.cols() != g.n_) throw DomainError("finite group elements must be n x n");
    if (e * e.transpose() != identity_matrix(g.n_))
      throw DomainError("finite group element is not orthogonal");
  }
  auto find = [&](const RationalMatrix& m) -> std::size_t {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i] == m) return i;
    throw DomainError("finite group is not closed under products and inverses");
  };
  const std::size_t k = elements.size();
  for (std::size_t a = 0; a < k; ++a) {
    g.actions_.push_back(to_polynomial_matrix(elements[a], {}));
    g.inverses_.push_back({find(elements[a].transpose()), {}});
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) g.products_.push_back({find(elements[a] * elements[b]), {}});
  g.elements_ = std::move(elements);
  return g;
}

GroupSpec GroupSpec::trivial(std::size_t n) { return finite({identity_matrix(n)}); }

Polynomial GroupSpec::normal_form(const Polynomial& e, std::string_view suffix) const {
  if (coordinates_.empty()) return e;
  const std::string last = coordinates_.back() + std::string(suffix);
  auto idx = e.index_of(last);
  if (!idx || e.degree_in(*idx) < 2) return e;
  Polynomial replacement = Polynomial::constant(1);
  for (std::size_t i = 0; i + 1 < coordinates_.size(); ++i)
    replacement -= pow(var(coordinates_[i] + std::string(suffix)), 2);
  replacement = replacement.with_variables(merge_variables(e.variables(), replacement.variables()));
  Polynomial out(replacement.variables());
  const Polynomial v = Polynomial::variable(out.variables(), *out.index_of(last));
  const int deg = e.degree_in(*idx);
  std::vector<Polynomial> powers{Polynomial::constant(1, out.variables())};
  for (int k = 1; k <= deg / 2; ++k) powers.push_back(powers.back() * replacement);
  for (int k = 0; k <= deg; ++k) {
    Polynomial part = e.coefficient_in(*idx, static_cast<std::uint32_t>(k));
    if (part.is_zero()) continue;
    Polynomial term = part * powers[static_cast<std::size_t>(k / 2)];
    if (k % 2 == 1) term = term * v;
    out += term;
  }
  return out.with_variables(e.variables());
}

Rational GroupSpec::monomial_moment(const Exponent& exponent) const {
  if (coordinates_.empty()) return 1;
  if (exponent.size() != coordinates_.size()) throw DomainError("moment exponent has wrong length");
  long total = 0;
  Integer num = 1;
  for (auto a : exponent) {
    if (a % 2 != 0) return 0;
    total += a;
    num *= double_factorial(static_cast<long>(a) - 1);
  }
  const long m = static_cast<long>(coordinates_.size());
  Rational r(num * double_factorial(m - 2), double_factorial(m + total - 2));
  r.canonicalize();
  return r;
}

Polynomial GroupSpec::integrate_component(const Polynomial& e, std::string_view suffix) const {
  if (coordinates_.empty()) return e;
  std::vector<std::optional<std::size_t>> where;
  std::vector<bool> is_coord(e.nvars(), false);
  for (const auto& c : coordinates_) {
    auto i = e.index_of(c + std::string(suffix));
    where.push_back(i);
    if (i) is_coord[*i] = true;
  }
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < e.nvars(); ++i)
    if (!is_coord[i]) rest.push_back(e.variables()[i]);
  Polynomial::Terms acc;
  for (const auto& [ex, coeff] : e.terms()) {
    Exponent g(coordinates_.size(), 0);
    for (std::size_t k = 0; k < where.size(); ++k)
      if (where[k]) g[k] = ex[*where[k]];
    Rational m = monomial_moment(g);
    if (m == 0) continue;
    Exponent r;
    for (std::size_t i = 0; i < e.nvars(); ++i)
      if (!is_coord[i]) r.push_back(ex[i]);
    auto [it, inserted] = acc.try_emplace(r, coeff * m);
    if (!inserted) it->second += coeff * m;
  }
  return Polynomial(rest, std::move(acc));
}

bool GroupSpec::is_representation() const {
  for (std::size_t a = 0; a < component_count(); ++a) {
    const auto& inv = inverse(a);
    std::map<std::string, Polynomial> images;
    for (std::size_t i = 0; i < coordinates_.size(); ++i) images[coordinates_[i]] = inv.coordinates[i];
    PolynomialMatrix ainv = action(inv.component).map([&](const Polynomial& p) {
      return substitute(p, images, coordinates_);
    });
    PolynomialMatrix prod = multiply(action(a), ainv, Polynomial(coordinates_))
                                .map([&](const Polynomial& p) { return normal_form(p); });
    if (!is_identity(prod)) return false;
  }
  return true;
}

bool GroupSpec::is_orthogonal() const {
  for (std::size_t a = 0; a < component_count(); ++a) {
    PolynomialMatrix prod = multiply(action(a), action(a).transpose(), Polynomial(coordinates_))
                                .map([&](const Polynomial& p) { return normal_form(p); });
    if (!is_identity(prod)) return false;
  }
  return true;
}

RationalMatrix GroupSpec::action_at(const GroupElement& g) const {
  if (g.coordinates.size() != coordinates_.size()) throw DomainError("group element has wrong coordinate count");
  return action(g.component).map([&](const Polynomial& p) { return p.evaluate(g.coordinates); });
}

std::vector<GroupElement> GroupSpec::sample_elements(std::mt19937_64& rng, std::size_t count) const {
  std::vector<GroupElement> out;
  if (kind_ == GroupKind::Finite) {
    for (std::size_t i = 0; i < component_count(); ++i) out.push_back({i, {}});
    return out;
  }
  std::uniform_int_distribution<std::size_t> pick(0, component_count() - 1);
  std::uniform_real_distribution<double> angle(-3.1, 3.1);
  for (std::size_t k = 0; k < count; ++k) {
    GroupElement g;
    g.component = pick(rng);
    if (kind_ == GroupKind::SU2) {
      RationalVector u;
      for (int i = 0; i < 3; ++i) u.push_back(random_rational(rng, -2.0, 2.0, 100));
      Rational q = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
      Rational d = q + 1;
      g.coordinates = {Rational(2 * u[0] / d), Rational(2 * u[1] / d), Rational(2 * u[2] / d),
                       Rational((q - 1) / d)};
    } else {
      // rounded half-angle tangent keeps the coordinates small
      Rational u(static_cast<long>(std::llround(std::tan(angle(rng) / 2) * 1000)), 1000);
      u.canonicalize();
      auto [c, s] = circle_point(u);
      g.coordinates = {c, s};
    }
    out.push_back(std::move(g));
  }
  return out;
}

GroupElement GroupSpec::invert(const GroupElement& g) const {
  const auto& inv = inverse(g.component);
  GroupElement out{inv.component, {}};
  for (const auto& f : inv.coordinates) out.coordinates.push_back(f.evaluate(g.coordinates));
  return out;
}

// ---------------------------------------------------------------------------
// Builtin catalogue

namespace {

struct ComplexPoly {
  Polynomial re, im;
};

ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) { return {a.re + b.re, a.im + b.im}; }
ComplexPoly conj(const ComplexPoly& a) { return {a.re, -a.im}; }

using ComplexMatrix2 = std::array<std::array<ComplexPoly, 2>, 2>;

ComplexMatrix2 mul(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  ComplexMatrix2 c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
  return c;
}

// Coefficient of the linear variable `name` in p (p is linear in those variables).
Polynomial linear_coefficient(const Polynomial& p, const std::string& name,
                              const std::vector<std::string>& keep) {
  auto idx = p.index_of(name);
  if (!idx) return Polynomial(keep);
  return p.coefficient_in(*idx, 1).with_variables(keep);
}

PolynomialMatrix hermitian_su2_action() {
  const std::vector<std::string> coords{"x", "y", "s", "t"};
  const std::vector<std::string> entries{"a11", "a12", "a22", "b12"};
  Polynomial x = var("x"), y = var("y"), s = var("s"), t = var("t");
  Polynomial zero = Polynomial::constant(0);
  ComplexPoly alpha{x, y}, beta{s, t};
  ComplexMatrix2 g;
  g[0] = {alpha, ComplexPoly{-s, t}};
  g[1] = {beta, conj(alpha)};
  ComplexMatrix2 gstar;
  gstar[0] = {conj(g[0][0]), conj(g[1][0])};
  gstar[1] = {conj(g[0][1]), conj(g[1][1])};
  Polynomial a11 = var("a11"), a12 = var("a12"), a22 = var("a22"), b12 = var("b12");
  ComplexMatrix2 h;
  h[0] = {ComplexPoly{a11, zero}, ComplexPoly{a12, b12}};
  h[1] = {ComplexPoly{a12, -b12}, ComplexPoly{a22, zero}};
  ComplexMatrix2 conj_h = mul(mul(g, h), gstar);
  std::vector<Polynomial> image{conj_h[0][0].re, conj_h[0][1].re, conj_h[1][1].re, conj_h[0][1].im};
  PolynomialMatrix a(4, 4, Polynomial(coords));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) a(i, j) = linear_coefficient(image[i], entries[j], coords);
  return a;
}

PolynomialMatrix quartic_rotation_action() {
  const std::vector<std::string> coords{"c", "s"};
  Polynomial c = var("c"), s = var("s"), x = var("x"), y = var("y");
  Polynomial gx = c * x - s * y, gy = s * x + c * y;
  std::vector<std::pair<int, int>> mons{{4, 0}, {3, 1}, {2, 2}, {1, 3}, {0, 4}};
  PolynomialMatrix a(5, 5, Polynomial(coords));
  for (std::size_t i = 0; i < 5; ++i) {
    Polynomial img = pow(gx, mons[i].first) * pow(gy, mons[i].second);
    auto xi = *img.index_of("x");
    auto yi = *img.index_of("y");
    for (std::size_t j = 0; j < 5; ++j) {
      Polynomial coeff = img.coefficient_in(xi, mons[j].first).coefficient_in(yi, mons[j].second);
      a(i, j) = coeff.with_variables(merge_variables(coords, coeff.variables())).trimmed().with_variables(coords);
    }
  }
  return a;
}

}  // namespace

GroupSpec GroupSpec::builtin(std::string_view name) {
  if (name == "disk-so2") {
    Polynomial c = var("c"), s = var("s");
    PolynomialMatrix a{{c, -s}, {s, c}};
    return so2(a);
  }
  if (name == "quartic-o2") {
    RationalMatrix d(5, 5);
    for (std::size_t i = 0; i < 5; ++i) d(i, i) = (i % 2 == 0) ? 1 : -1;
    return o2(quartic_rotation_action(), d);
  }
  if (name == "hermitian-su2") return su2(hermitian_su2_action());
  if (name.starts_with("trivial:")) {
    auto n = std::stoul(std::string(name.substr(8)));
    return trivial(n);
  }
  throw ParseError("unknown builtin group '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Ring elements

RingElement normal_form(const GroupSpec& group, const Polynomial& e) {
  for (const auto& v : e.used_variables())
    if (std::find(group.coordinates().begin(), group.coordinates().end(), v) == group.coordinates().end())
      throw DomainError("normal_form: foreign variable '" + v + "'");
  RingElement out;
  Polynomial reduced = group.normal_form(e.with_variables(group.coordinates()));
  out.components.assign(group.component_count(), reduced);
  return out;
}

RingElement normal_form(const GroupSpec& group, const RingElement& e) {
  RingElement out;
  for (const auto& p : e.components) out.components.push_back(group.normal_form(p));
  return out;
}

Polynomial haar_integrate_partial(const GroupSpec& group, const std::vector<Polynomial>& per_component) {
  if (per_component.size() != group.component_count())
    throw DomainError("haar_integrate: one polynomial per component expected");
  Polynomial total;
  for (const auto& p : per_component) total += group.integrate_component(p);
  Rational w(1, static_cast<long>(group.component_count()));
  w.canonicalize();
  return total * w;
}

Rational haar_integrate(const GroupSpec& group, const RingElement& e) {
  Polynomial v = haar_integrate_partial(group, e.components);
  if (!v.is_constant()) throw DomainError("haar_integrate: element depends on non-group variables");
  return v.constant_term();
}

RingElement inverse_substitute(const GroupSpec& group, const RingElement& e) {
  RingElement out;
  const auto& coords = group.coordinates();
  for (std::size_t a = 0; a < group.component_count(); ++a) {
    const auto& inv = group.inverse(a);
    std::map<std::string, Polynomial> images;
    for (std::size_t i = 0; i < coords.size(); ++i) images[coords[i]] = inv.coordinates[i];
    const Polynomial& src = e.components.at(inv.component);
    out.components.push_back(group.normal_form(substitute(src, images, src.variables())));
  }
  return out;
}

TwoCopyElement left_translate(const GroupSpec& group, const RingElement& e) {
  const auto& coords = group.coordinates();
  const auto gvars = group.coordinates_with_suffix("_g");
  const auto hvars = group.coordinates_with_suffix("_h");
  const auto two = merge_variables(gvars, hvars);
  std::map<std::string, Polynomial> to_g;
  for (std::size_t i = 0; i < coords.size(); ++i) to_g[coords[i]] = Polynomial::variable(gvars[i]);

  TwoCopyElement out;
  const std::size_t k = group.component_count();
  out.blocks.assign(k, std::vector<Polynomial>(k));
  for (std::size_t a = 0; a < k; ++a) {
    const auto& inv = group.inverse(a);
    // coordinates of g^-1 expressed in the g copy
    std::map<std::string, Polynomial> inv_in_g;
    for (std::size_t i = 0; i < coords.size(); ++i)
      inv_in_g[gvars[i]] = substitute(inv.coordinates[i], to_g, gvars);
    for (std::size_t i = 0; i < coords.size(); ++i) inv_in_g[hvars[i]] = Polynomial::variable(hvars[i]);
    for (std::size_t b = 0; b < k; ++b) {
      const auto& prod = group.product(inv.component, b);
      std::map<std::string, Polynomial> images;
      for (std::size_t i = 0; i < coords.size(); ++i)
        images[coords[i]] = substitute(prod.coordinates[i], inv_in_g, two);
      const Polynomial& src = e.components.at(prod.component);
      Polynomial val = substitute(src, images, two);
      val = group.normal_form(group.normal_form(val, "_g"), "_h");
      out.blocks[a][b] = std::move(val);
    }
  }
  return out;
}

Rational evaluate(const GroupSpec& group, const RingElement& e, const GroupElement& g) {
  return e.components.at(g.component).with_variables(group.coordinates()).evaluate(g.coordinates);
}

}  // namespace equispectra
