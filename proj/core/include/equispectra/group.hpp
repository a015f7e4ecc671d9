#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "equispectra/exact_linalg.hpp"
#include "equispectra/matrix.hpp"
#include "equispectra/polynomial.hpp"

namespace equispectra {

enum class GroupKind { Finite, SO2, O2, SU2 };

std::string_view to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view text);

using PolynomialMatrix = Matrix<Polynomial>;

/// Where a group operation lands: a connected component plus the coordinate
/// formulas of the result.
struct ComponentMap {
  std::size_t component = 0;
  std::vector<Polynomial> coordinates;
};

/// A point of the group: a component and rational coordinates on it.
struct GroupElement {
  std::size_t component = 0;
  RationalVector coordinates;
};

/// Compact group presented through its coordinate ring.
///
/// The group is a disjoint union of components, each parameterized by the same
/// coordinate list; functions on the group are tuples of polynomials, one per
/// component. SO2 and SU2 have one component, O2 has the rotation and the
/// reflection coset, a finite group has one coordinate-free component per
/// element. The connected measure on a component is the uniform probability
/// measure on the sphere cut out by the single relation
/// (c^2 + s^2 = 1 or x^2 + y^2 + s^2 + t^2 = 1); the Haar measure averages over
/// components.
class GroupSpec {
 public:
  /// Rotations g(c, s) acting on R^n through `action` (polynomials in c, s).
  static GroupSpec so2(PolynomialMatrix action);
  /// O(2): `rotation_action` on the rotation coset, and
  /// rotation_action(c, s) * reflection_action on the coset of diag(1, -1).
  static GroupSpec o2(PolynomialMatrix rotation_action, RationalMatrix reflection_action);
  /// SU(2) with coordinates (x, y, s, t), g = [[x+iy, -s+it], [s+it, x-iy]].
  static GroupSpec su2(PolynomialMatrix action);
  /// Explicit finite matrix group; closure under products and inverses is checked.
  static GroupSpec finite(std::vector<RationalMatrix> elements);
  static GroupSpec trivial(std::size_t n);

  GroupKind kind() const { return kind_; }
  std::size_t n() const { return n_; }
  const std::vector<std::string>& coordinates() const { return coordinates_; }
  std::vector<std::string> coordinates_with_suffix(std::string_view suffix) const;
  /// Generators of the relation ideal (empty for finite groups).
  std::vector<Polynomial> relations() const;

  std::size_t component_count() const { return actions_.size(); }
  std::string component_name(std::size_t component) const;
  const PolynomialMatrix& action(std::size_t component) const { return actions_.at(component); }
  const ComponentMap& inverse(std::size_t component) const { return inverses_.at(component); }
  /// Coordinates of g*h in terms of the "_g" copy of g's coordinates and the
  /// "_h" copy of h's coordinates.
  const ComponentMap& product(std::size_t a, std::size_t b) const {
    return products_.at(a * component_count() + b);
  }

  /// Canonical representative modulo the relation: the square of the last
  /// coordinate is eliminated. Only variables named `coordinate + suffix` are
  /// touched, so polynomials over a larger ring are accepted.
  Polynomial normal_form(const Polynomial& e, std::string_view suffix = "") const;

  /// Integral over one connected component of the coordinates named
  /// `coordinate + suffix`; remaining variables are treated as constants.
  Polynomial integrate_component(const Polynomial& e, std::string_view suffix = "") const;

  /// Moment of a coordinate monomial on the component sphere.
  Rational monomial_moment(const Exponent& exponent) const;

  /// A(g) * A(g^-1) == I modulo the relation, on every component.
  bool is_representation() const;
  /// A(g) * A(g)^T == I modulo the relation, on every component.
  bool is_orthogonal() const;

  RationalMatrix action_at(const GroupElement& g) const;
  /// Rational points spread over the group; all elements for finite groups.
  std::vector<GroupElement> sample_elements(std::mt19937_64& rng, std::size_t count) const;
  /// The inverse as a point.
  GroupElement invert(const GroupElement& g) const;

  /// Builtin catalogue: "disk-so2", "quartic-o2", "hermitian-su2", "trivial:<n>".
  static GroupSpec builtin(std::string_view name);

  /// Finite-group elements (empty otherwise).
  const std::vector<RationalMatrix>& elements() const { return elements_; }
  /// The fixed reflection factor of O2 (empty otherwise).
  const RationalMatrix& reflection_action() const { return reflection_; }

 private:
  GroupSpec() = default;
  void check_action_shapes() const;

  GroupKind kind_ = GroupKind::Finite;
  std::size_t n_ = 0;
  std::vector<std::string> coordinates_;
  std::vector<PolynomialMatrix> actions_;
  std::vector<ComponentMap> inverses_;
  std::vector<ComponentMap> products_;
  std::vector<RationalMatrix> elements_;
  RationalMatrix reflection_;
};

/// Element of the coordinate ring: one normal-form polynomial per component.
struct RingElement {
  std::vector<Polynomial> components;
  friend bool operator==(const RingElement&, const RingElement&) = default;
};

/// A function of two group elements (g, h): entry [a][b] is the polynomial in
/// the "_g" and "_h" coordinates on component a of g and component b of h.
struct TwoCopyElement {
  std::vector<std::vector<Polynomial>> blocks;
};

/// The same polynomial on every component, reduced.
RingElement normal_form(const GroupSpec& group, const Polynomial& e);
RingElement normal_form(const GroupSpec& group, const RingElement& e);
Rational haar_integrate(const GroupSpec& group, const RingElement& e);
/// Haar integral of polynomials over group coordinates and other variables;
/// integrates the group coordinates only.
Polynomial haar_integrate_partial(const GroupSpec& group, const std::vector<Polynomial>& per_component);
RingElement inverse_substitute(const GroupSpec& group, const RingElement& e);
/// h -> e(g^-1 h).
TwoCopyElement left_translate(const GroupSpec& group, const RingElement& e);
/// Value of a ring element at a point.
Rational evaluate(const GroupSpec& group, const RingElement& e, const GroupElement& g);

}  // namespace equispectra
