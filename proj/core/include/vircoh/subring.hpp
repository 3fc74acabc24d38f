#pragma once

// Subspaces of the group ring H*(Y)[G], graded by (sector, degree).
//
// A sector is a set of group elements. The image subring f(H*_virt) is graded
// by single group elements; its invariant subring is graded by conjugacy
// classes. Each (sector, degree) block stores a reduced echelon basis over
// the coordinates (g in sector) x (ambient basis classes of that degree).

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vircoh/exactalg.hpp"
#include "vircoh/group_ring.hpp"
#include "vircoh/sym_product.hpp"

namespace vircoh {

using BlockKey = std::pair<std::size_t, int>;  // (sector, degree)

struct BasisElement {
  GroupRingElement element;
  std::string word;  // provenance: product of generator labels
};

class GradedSubspace {
 public:
  GradedSubspace(GroupPtr group, RingPtr ring, std::vector<std::vector<std::size_t>> sectors);
  static GradedSubspace by_element(GroupPtr group, RingPtr ring);
  static GradedSubspace by_conjugacy_class(GroupPtr group, RingPtr ring);
  static GradedSubspace ungraded_by_group(GroupPtr group, RingPtr ring);

  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] const RingPtr& ring() const noexcept { return ring_; }
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& sectors() const noexcept { return sectors_; }
  [[nodiscard]] std::size_t sector_of(std::size_t g) const { return sector_of_.at(g); }

  /// Adds a homogeneous element lying in a single sector. Returns true when
  /// the dimension grew (the element is then recorded as a basis element).
  bool insert(const GroupRingElement& x, std::string word);

  /// Coordinates of x over the echelon rows of each block, or nullopt.
  [[nodiscard]] std::optional<std::map<BlockKey, std::vector<Scalar>>> member(const GroupRingElement& x) const;
  [[nodiscard]] bool contains(const GroupRingElement& x) const { return member(x).has_value(); }

  [[nodiscard]] std::size_t total_dim() const noexcept { return basis_.size(); }
  [[nodiscard]] std::size_t dim(std::size_t sector, int degree) const;
  /// Total dimension per degree 0..top (summed over sectors).
  [[nodiscard]] std::vector<std::size_t> dims_by_degree() const;
  /// Basis elements in insertion order.
  [[nodiscard]] const std::vector<BasisElement>& basis() const noexcept { return basis_; }
  /// Basis elements ordered by (sector, degree, insertion).
  [[nodiscard]] std::vector<BasisElement> ordered_basis() const;
  [[nodiscard]] const QMatrix& echelon(std::size_t sector, int degree) const;

  /// Splits x into its (sector, degree) parts.
  [[nodiscard]] std::map<BlockKey, GroupRingElement> split(const GroupRingElement& x) const;
  [[nodiscard]] std::vector<Scalar> coordinates(const BlockKey& key, const GroupRingElement& part) const;

 private:
  struct Block {
    QMatrix echelon;
    std::vector<std::size_t> members;  // indices into basis_
  };


  GroupPtr group_;
  RingPtr ring_;
  std::vector<std::vector<std::size_t>> sectors_;
  std::vector<std::size_t> sector_of_;
  std::map<BlockKey, Block> blocks_;
  std::vector<BasisElement> basis_;
};

/// Right-multiplies basis elements by generators until the dimension
/// stabilises; returns the new basis elements added. Generators may span
/// several sectors only if `s` has a single sector.
std::size_t saturate(GradedSubspace& s, const std::vector<Generator>& gens);

/// Throws ProductEscapesSubspace unless every product of two basis elements
/// lies in the subspace.
void verify_closed(const GradedSubspace& s);

/// S_0 = span(gens + unit); S_{k+1} = S_k + S_k * gens until stable.
GradedSubspace close_subring(const GeneratorSet& gens);

struct DimsTable {
  std::vector<std::string> rows;   // sector labels (first element of each sector)
  std::vector<int> degrees;        // 0, 2, ..., top
  std::vector<std::vector<std::size_t>> dims;
  std::size_t total = 0;

  [[nodiscard]] std::vector<std::size_t> row(const std::string& label) const;
};

DimsTable dims_table(const GradedSubspace& s);

/// Reynolds projection of a G-stable subspace. Throws NotGStable.
GradedSubspace invariant_subring(const GradedSubspace& s, const CohAction& act);

struct StructureConstants {
  std::vector<std::string> labels;
  std::vector<GroupRingElement> basis;
  struct Entry {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<std::pair<std::size_t, Scalar>> terms;
  };
  std::vector<Entry> products;  // nonzero products only, i, j in basis order
  bool integral = true;

  [[nodiscard]] std::vector<std::pair<std::size_t, Scalar>> product(std::size_t i, std::size_t j) const;
};

/// Expands every pairwise product in the given basis (default: the
/// subspace's own basis elements, ordered by block). `basis` must be a basis
/// of `s`; throws InvalidInput otherwise and ProductEscapesSubspace if a
/// product leaves `s`.
StructureConstants structure_constants(const GradedSubspace& s,
                                       const std::optional<std::vector<Generator>>& basis = std::nullopt);

}  // namespace vircoh
