#pragma once

// Generators-and-relations presentations and their verification against a
// subspace of the group ring.

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "vircoh/exactalg.hpp"
#include "vircoh/group_ring.hpp"
#include "vircoh/subring.hpp"

namespace vircoh {

struct PresentationGenerator {
  std::string name;
  int degree = 0;
};

struct Monomial {
  Scalar coef;
  std::vector<unsigned> exponents;  // indexed like Presentation::generators
};

using Polynomial = std::vector<Monomial>;

struct Presentation {
  std::vector<PresentationGenerator> generators;
  std::vector<Polynomial> relations;
  std::string coefficients = "integers";

  [[nodiscard]] std::size_t index_of(std::string_view name) const;
  /// Throws DegreeMismatch for odd or non-positive generator degrees or
  /// inhomogeneous relations.
  void validate() const;
};

/// Parses "u^2 - 2*x*y", "3/2 x y^2", "-(1)"... over the given generators.
/// Throws InvalidInput on unknown names or syntax errors.
Polynomial parse_polynomial(std::string_view text, const std::vector<PresentationGenerator>& gens);
std::string to_string(const Polynomial& p, const std::vector<PresentationGenerator>& gens);
/// Collects like monomials and drops zero coefficients.
Polynomial normalize(Polynomial p);
/// Degree of a homogeneous polynomial; -1 for zero; throws DegreeMismatch otherwise.
int polynomial_degree(const Polynomial& p, const std::vector<PresentationGenerator>& gens);

/// Graded dimensions of Q[gens]/(relations) in degrees 0..up_to_degree
/// (index = degree; odd entries are zero).
std::vector<std::size_t> quotient_dims(const Presentation& p, int up_to_degree);

GroupRingElement evaluate(const Polynomial& poly, const std::vector<GroupRingElement>& values, const GroupRingElement& unit);

struct RelationVerdict {
  std::string relation;
  bool vanishes = false;
  GroupRingElement value;
};

struct PresentationReport {
  std::vector<RelationVerdict> relations;
  bool relations_vanish = false;
  bool generators_in_subspace = false;
  bool generates = false;
  std::vector<std::size_t> quotient_dims;   // by degree, 0..top + max generator degree
  std::vector<std::size_t> subspace_dims;   // same range
  bool dims_match = false;
  bool pass = false;
};

/// Checks that the assignment induces an isomorphism from the presented ring
/// onto `s`. Throws NonCommutative, DegreeMismatch, or InvalidInput (missing
/// or unknown generator names).
PresentationReport verify_presentation(const GradedSubspace& s, const Presentation& p,
                                       const std::map<std::string, GroupRingElement>& assignment);

}  // namespace vircoh
