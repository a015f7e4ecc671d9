#pragma once

#include <json.hpp>

#include <Eigen/Dense>

#include <string>
#include <string_view>

#include "equispectra/equivariant.hpp"
#include "equispectra/group.hpp"
#include "equispectra/pencil.hpp"
#include "equispectra/polar.hpp"

namespace equispectra::cli {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with 1-based line and column.
Json parse_document(std::string_view text, std::string_view source);
Json read_document(const std::string& path);
/// Pretty-printed with a trailing newline.
std::string dump_document(const Json& doc);

/// {variables?, n, d, matrices: [M0, ..., Mn]}, entries as rational strings or integers.
AffinePencil pencil_from_json(const Json& doc);
Json pencil_to_json(const AffinePencil& p);
/// The pencil as a single matrix of affine polynomial strings.
Json pencil_matrix_to_json(const AffinePencil& p);

/// {builtin: name} or {kind, n, action, reflection?, elements?}.
GroupSpec group_from_json(const Json& doc);
Json group_to_json(const GroupSpec& g);

Json rational_matrix_to_json(const RationalMatrix& m);
RationalMatrix rational_matrix_from_json(const Json& doc, std::string_view what);
Json ring_matrix_to_json(const RingMatrix& m, const GroupSpec& g);
RingMatrix ring_matrix_from_json(const Json& doc, const GroupSpec& g, std::string_view what);
Rational rational_from_json(const Json& v, std::string_view what);

/// {group, variables, Mbar, Mbar_matrices, gram0, rho, F, B, xi, defining_polynomial, shift, certificate}.
Json equivariant_to_json(const EquivariantizeResult& r, const GroupSpec& g);

/// A real matrix: nested arrays of numbers or rational strings, or {matrix: ...}.
Eigen::MatrixXd real_matrix_from_json(const Json& doc);
Json reduced_to_json(const ReducedProblem& r, const PolarFamily& family);

}  // namespace equispectra::cli
