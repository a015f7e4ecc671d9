#include "document.hpp"

#include <fstream>
#include <sstream>

#include "equispectra/error.hpp"

namespace equispectra::cli {

namespace {

[[noreturn]] void malformed(std::string_view what, std::string_view problem) {
  throw ParseError(std::string(what) + ": " + std::string(problem));
}

const Json& member(const Json& doc, const char* key, std::string_view what) {
  if (!doc.is_object() || !doc.contains(key)) malformed(what, std::string("missing key '") + key + "'");
  return doc.at(key);
}

std::size_t count_from_json(const Json& v, std::string_view what) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
    malformed(what, "expected a nonnegative integer");
  return v.get<std::size_t>();
}

std::vector<std::string> names_from_json(const Json& v, std::string_view what) {
  if (!v.is_array()) malformed(what, "expected an array of names");
  std::vector<std::string> out;
  for (const auto& e : v) {
    if (!e.is_string()) malformed(what, "expected an array of names");
    out.push_back(e.get<std::string>());
  }
  return out;
}

Polynomial polynomial_from_json(const Json& v, const std::vector<std::string>& vars, std::string_view what) {
  if (v.is_number_integer()) return Polynomial::constant(Rational(v.get<long>()), vars);
  if (!v.is_string()) malformed(what, "expected a polynomial string");
  try {
    return parse_polynomial(v.get<std::string>(), vars);
  } catch (const ParseError& e) {
    malformed(what, e.what());
  }
}

template <class T, class F>
Matrix<T> matrix_from_json(const Json& doc, std::string_view what, F&& entry) {
  if (!doc.is_array() || doc.empty() || !doc.front().is_array()) malformed(what, "expected a non-empty matrix");
  const std::size_t rows = doc.size(), cols = doc.front().size();
  Matrix<T> m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!doc[i].is_array() || doc[i].size() != cols) malformed(what, "ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(doc[i][j]);
  }
  return m;
}

Json ring_element_to_json(const RingElement& e, const GroupSpec& g) {
  if (e.components.size() == 1) return e.components.front().to_string();
  Json out = Json::object();
  for (std::size_t c = 0; c < e.components.size(); ++c) out[g.component_name(c)] = e.components[c].to_string();
  return out;
}

}  // namespace

Json parse_document(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t stop = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t k = 0; k < stop; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::ostringstream msg;
    msg << source << ":" << line << ":" << column << ": malformed JSON";
    throw ParseError(msg.str(), line, column);
  }
}

Json read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str(), path);
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

Rational rational_from_json(const Json& v, std::string_view what) {
  if (v.is_number_integer()) return Rational(Integer(std::to_string(v.get<long long>()), 10));
  if (!v.is_string()) malformed(what, "expected a rational string");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const ParseError& e) {
    malformed(what, e.what());
  }
}

RationalMatrix rational_matrix_from_json(const Json& doc, std::string_view what) {
  return matrix_from_json<Rational>(doc, what, [&](const Json& v) { return rational_from_json(v, what); });
}

Json rational_matrix_to_json(const RationalMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

AffinePencil pencil_from_json(const Json& doc) {
  const std::size_t n = count_from_json(member(doc, "n", "pencil"), "pencil.n");
  const std::size_t d = count_from_json(member(doc, "d", "pencil"), "pencil.d");
  const Json& mats = member(doc, "matrices", "pencil");
  if (!mats.is_array() || mats.size() != n + 1) malformed("pencil.matrices", "expected n + 1 matrices");
  std::vector<RationalMatrix> ms;
  for (std::size_t k = 0; k < mats.size(); ++k) {
    const std::string what = "pencil.matrices[" + std::to_string(k) + "]";
    RationalMatrix m = rational_matrix_from_json(mats[k], what);
    if (m.rows() != d || m.cols() != d) malformed(what, "expected a d x d matrix");
    ms.push_back(std::move(m));
  }
  try {
    if (doc.contains("variables")) {
      auto vars = names_from_json(doc["variables"], "pencil.variables");
      if (vars.size() != n) malformed("pencil.variables", "expected n names");
      return AffinePencil(std::move(vars), std::move(ms));
    }
    return AffinePencil::with_default_names(std::move(ms));
  } catch (const DomainError& e) {
    malformed("pencil", e.what());
  }
}

Json pencil_to_json(const AffinePencil& p) {
  Json out;
  out["variables"] = p.variables();
  out["n"] = p.n();
  out["d"] = p.d();
  Json mats = Json::array();
  for (const auto& m : p.matrices()) mats.push_back(rational_matrix_to_json(m));
  out["matrices"] = std::move(mats);
  return out;
}

Json pencil_matrix_to_json(const AffinePencil& p) {
  PolynomialMatrix m = p.polynomial_matrix();
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    out.push_back(std::move(row));
  }
  return out;
}

GroupSpec group_from_json(const Json& doc) {
  if (doc.is_string()) return GroupSpec::builtin(doc.get<std::string>());
  if (doc.is_object() && doc.contains("builtin")) {
    if (!doc["builtin"].is_string()) malformed("group.builtin", "expected a name");
    return GroupSpec::builtin(doc["builtin"].get<std::string>());
  }
  const Json& kind_v = member(doc, "kind", "group");
  if (!kind_v.is_string()) malformed("group.kind", "expected a string");
  GroupKind kind;
  try {
    kind = parse_group_kind(kind_v.get<std::string>());
  } catch (const Error& e) {
    malformed("group.kind", e.what());
  }
  const std::size_t n = count_from_json(member(doc, "n", "group"), "group.n");
  try {
    if (kind == GroupKind::Finite) {
      const Json& els = member(doc, "elements", "group");
      if (!els.is_array() || els.empty()) malformed("group.elements", "expected a list of matrices");
      std::vector<RationalMatrix> elements;
      for (std::size_t k = 0; k < els.size(); ++k) {
        const std::string what = "group.elements[" + std::to_string(k) + "]";
        RationalMatrix m = rational_matrix_from_json(els[k], what);
        if (m.rows() != n || m.cols() != n) malformed(what, "expected an n x n matrix");
        elements.push_back(std::move(m));
      }
      return GroupSpec::finite(std::move(elements));
    }
    const std::vector<std::string> coords =
        kind == GroupKind::SU2 ? std::vector<std::string>{"x", "y", "s", "t"} : std::vector<std::string>{"c", "s"};
    PolynomialMatrix action = matrix_from_json<Polynomial>(
        member(doc, "action", "group"), "group.action",
        [&](const Json& v) { return polynomial_from_json(v, coords, "group.action"); });
    if (action.rows() != n || action.cols() != n) malformed("group.action", "expected an n x n matrix");
    switch (kind) {
      case GroupKind::SO2:
        return GroupSpec::so2(std::move(action));
      case GroupKind::SU2:
        return GroupSpec::su2(std::move(action));
      case GroupKind::O2: {
        RationalMatrix refl = rational_matrix_from_json(member(doc, "reflection", "group"), "group.reflection");
        return GroupSpec::o2(std::move(action), std::move(refl));
      }
      default:
        break;
    }
  } catch (const DomainError& e) {
    malformed("group", e.what());
  }
  malformed("group.kind", "unsupported kind");
}

Json group_to_json(const GroupSpec& g) {
  Json out;
  out["kind"] = std::string(to_string(g.kind()));
  out["n"] = g.n();
  out["coordinates"] = g.coordinates();
  Json comps = Json::array();
  for (std::size_t c = 0; c < g.component_count(); ++c) comps.push_back(g.component_name(c));
  out["components"] = std::move(comps);
  return out;
}

Json ring_matrix_to_json(const RingMatrix& m, const GroupSpec& g) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(ring_element_to_json(m(i, j), g));
    out.push_back(std::move(row));
  }
  return out;
}

RingMatrix ring_matrix_from_json(const Json& doc, const GroupSpec& g, std::string_view what) {
  return matrix_from_json<RingElement>(doc, what, [&](const Json& v) {
    if (v.is_string() || v.is_number_integer()) return normal_form(g, polynomial_from_json(v, g.coordinates(), what));
    if (!v.is_object() || v.size() != g.component_count()) malformed(what, "expected one entry per component");
    RingElement e;
    for (std::size_t c = 0; c < g.component_count(); ++c) {
      const std::string name = g.component_name(c);
      if (!v.contains(name)) malformed(what, "missing component '" + name + "'");
      e.components.push_back(g.normal_form(polynomial_from_json(v[name], g.coordinates(), what)));
    }
    return e;
  });
}

Json equivariant_to_json(const EquivariantizeResult& r, const GroupSpec& g) {
  const EquivariantDescription& e = r.description;
  Json out;
  out["group"] = group_to_json(g);
  out["variables"] = e.Mbar.variables();
  out["Mbar"] = pencil_matrix_to_json(e.Mbar);
  out["Mbar_pencil"] = pencil_to_json(e.Mbar);
  out["gram0"] = rational_matrix_to_json(e.gram0);
  out["rho"] = ring_matrix_to_json(e.rho, g);
  Json f = Json::array();
  for (const auto& p : e.F) f.push_back(p.to_string());
  out["F"] = std::move(f);
  out["B"] = ring_matrix_to_json(e.B, g);
  Json xi;
  Json coords = Json::array();
  for (const auto& p : r.xi.xi) coords.push_back(p.to_string());
  xi["xi"] = std::move(coords);
  Json v = Json::array();
  for (const auto& c : r.xi.v) v.push_back(to_string(c));
  xi["v"] = std::move(v);
  xi["q"] = r.xi.q.to_string();
  out["xi"] = std::move(xi);
  out["defining_polynomial"] = r.defining.p.to_string();
  if (r.shift) {
    Json s = Json::array();
    for (const auto& c : *r.shift) s.push_back(to_string(c));
    out["shift"] = std::move(s);
  } else {
    out["shift"] = nullptr;
  }
  Json cert = Json::array();
  for (const auto& c : r.certificate) cert.push_back({{"name", c.name}, {"verdict", c.verdict}, {"detail", c.detail}});
  out["certificate"] = std::move(cert);
  return out;
}

Eigen::MatrixXd real_matrix_from_json(const Json& doc) {
  const Json& m = doc.is_object() ? member(doc, "matrix", "objective") : doc;
  if (!m.is_array() || m.empty() || !m.front().is_array()) malformed("objective", "expected a non-empty matrix");
  const auto rows = static_cast<Eigen::Index>(m.size()), cols = static_cast<Eigen::Index>(m.front().size());
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) malformed("objective", "ragged matrix");
    for (Eigen::Index j = 0; j < cols; ++j) {
      const Json& v = row[static_cast<std::size_t>(j)];
      out(i, j) = v.is_number() ? v.get<double>() : to_double(rational_from_json(v, "objective"));
    }
  }
  return out;
}

Json reduced_to_json(const ReducedProblem& r, const PolarFamily& family) {
  Json out;
  out["family"] = family.kind() == PolarKind::Sym ? "sym" : "skew";
  out["n"] = family.n();
  out["objective"] = std::vector<double>(r.objective.data(), r.objective.data() + r.objective.size());
  Json g = Json::array();
  for (Eigen::Index i = 0; i < r.g.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < r.g.cols(); ++j) row.push_back(r.g(i, j));
    g.push_back(std::move(row));
  }
  out["g"] = std::move(g);
  out["original_dim"] = r.original_dim;
  out["reduced_dim"] = r.reduced_dim;
  return out;
}

}  // namespace equispectra::cli
