#pragma once

// The virtual product on the inertia decomposition  ⊕_g H*(Y^g) × {g},
// computed by pull-push from explicit geometric data, and the comparison map
// f: ⊕_g H*(Y^g) -> H*(Y)[G],  (α, g) ↦ (f_{g!} α) g.
//
// Matrices follow one convention throughout: one row per source basis class,
// holding the coordinates of its image.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "vircoh/exactalg.hpp"
#include "vircoh/graded_ring.hpp"
#include "vircoh/group_ring.hpp"
#include "vircoh/subring.hpp"
#include "vircoh/sym_product.hpp"

namespace vircoh {

struct FixedComponent {
  std::size_t g = 0;
  std::string id;
  ManifoldModel model;
  QMatrix push;  // H*(component) -> H*(Y), degree shift = codim
  QMatrix pull;  // H*(Y) -> H*(component)
};

struct Intersection {
  ManifoldModel model;
  QMatrix ig;       // H*(component of Y^g) -> H*(intersection)
  QMatrix ih;       // H*(component of Y^h) -> H*(intersection)
  SparseVec euler;  // excess class, in H*(intersection)
  std::string target;  // component of Y^{gh}
  QMatrix ipush;    // H*(intersection) -> H*(target)
};

struct PairData {
  std::string cg;
  std::string ch;
  std::vector<Intersection> intersections;  // empty: disjoint
};

/// Element of ⊕_c H*(component c), keyed by global component index.
using InertiaElement = std::map<std::size_t, SparseVec>;

struct ActionImage {
  InertiaElement image;
  bool assumed = false;  // identity used without a derivation
};

class InertiaScenario {
 public:
  InertiaScenario(GroupPtr group, ManifoldModel ambient, CohAction::Kind action);

  /// Components and pairs may be added in any order; finalize() validates.
  void add_component(FixedComponent c);
  void add_pair(PairData p);
  /// Adds Y at the identity and the pairs involving it, then validates
  /// degrees, shapes, the projection formula and pair completeness.
  /// Excess-class degrees are checked unless disabled (negative controls).
  void finalize(bool check_excess_degree = true);

  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] const ManifoldModel& ambient() const noexcept { return ambient_; }
  [[nodiscard]] const CohAction& action() const noexcept { return action_; }
  [[nodiscard]] const std::vector<FixedComponent>& components() const noexcept { return components_; }
  [[nodiscard]] const FixedComponent& component(std::size_t c) const { return components_.at(c); }
  [[nodiscard]] std::size_t component_index(const std::string& id) const;
  [[nodiscard]] std::vector<std::size_t> components_of(std::size_t g) const;
  [[nodiscard]] const std::map<std::pair<std::size_t, std::size_t>, PairData>& pairs() const noexcept { return pairs_; }
  [[nodiscard]] const PairData& pair(std::size_t ca, std::size_t cb) const;
  [[nodiscard]] int codim(std::size_t c) const;
  /// Degree of a component class after the shift by codim.
  [[nodiscard]] int shifted_degree(std::size_t c, std::size_t basis_index) const;
  [[nodiscard]] std::size_t total_dim() const;
  [[nodiscard]] const std::vector<std::string>& notes() const noexcept { return notes_; }
  [[nodiscard]] bool finalized() const noexcept { return finalized_; }
  [[nodiscard]] bool excess_degree_checked() const noexcept { return excess_degree_checked_; }
  /// Pushforwards of all components of Y^g stacked in component order.
  [[nodiscard]] const QMatrix& stacked_push(std::size_t g) const;

  /// Image of basis class `a` of component c under the right action of h.
  [[nodiscard]] ActionImage act(std::size_t c, std::size_t a, std::size_t h) const;

 private:
  void require_finalized() const;
  void validate_component(const FixedComponent& c) const;
  void validate_pair(std::size_t ca, std::size_t cb, const PairData& p, bool check_excess_degree) const;

  GroupPtr group_;
  ManifoldModel ambient_;
  CohAction action_;
  std::vector<FixedComponent> components_;
  std::vector<PairData> pending_pairs_;
  std::map<std::pair<std::size_t, std::size_t>, PairData> pairs_;
  std::vector<std::string> notes_;
  std::vector<QMatrix> stacked_;  // per group element: pushforwards of all its components
  std::vector<bool> sector_injective_;
  bool finalized_ = false;
  bool excess_degree_checked_ = true;
};

/// Σ over intersection components of i_{gh!}(i_g^* α · i_h^* β · e).
InertiaElement virtual_product(const InertiaScenario& sc, std::size_t ca, const SparseVec& alpha, std::size_t cb,
                               const SparseVec& beta);
InertiaElement virtual_product(const InertiaScenario& sc, const InertiaElement& x, const InertiaElement& y);

/// f: (α on c) ↦ (f_{c!} α) g_c.
GroupRingElement to_group_ring(const InertiaScenario& sc, const InertiaElement& x);

InertiaScenario build_scenario_symprod2(const ManifoldModel& m);
/// CP^n with Z/p acting; components CP^{n-1} (and optionally a point) at every λ^i.
InertiaScenario build_scenario_cpn_zp(int n, std::size_t p, bool include_points);
/// symprod2 with the (τ, τ) excess class replaced by the unit.
InertiaScenario build_scenario_symprod2_corrupted(const ManifoldModel& m);

struct Violation {
  std::string where;
  std::string detail;
};

struct CheckReport {
  std::string name;
  bool pass = true;
  std::size_t checked = 0;
  std::vector<Violation> violations;
  std::vector<std::string> notes;
};

CheckReport check_homomorphism(const InertiaScenario& sc);
CheckReport check_associativity(const InertiaScenario& sc);
CheckReport check_equivariance(const InertiaScenario& sc);

struct SectorInjectivity {
  std::string label;
  std::size_t source_dim = 0;
  std::size_t rank = 0;
  [[nodiscard]] std::size_t kernel_dim() const { return source_dim - rank; }
  [[nodiscard]] bool injective() const { return rank == source_dim; }
};

struct InjectivityReport {
  std::vector<SectorInjectivity> sectors;
  bool injective = true;
};

InjectivityReport check_injectivity(const InertiaScenario& sc);

struct DirectRing {
  std::vector<std::string> labels;               // "name@component"
  std::vector<std::pair<std::size_t, std::size_t>> basis;  // (component, basis index)
  DimsTable dims;                                 // rows: group elements, shifted degrees
  DimsTable invariant_dims;                       // rows: conjugacy classes
  StructureConstants constants;                   // products in this basis (basis field left empty)
  bool assumed_action = false;
};

DirectRing virtual_ring_direct(const InertiaScenario& sc);

/// (f_{c!} b) g_c for every component c and basis class b.
GeneratorSet generators_general(const InertiaScenario& sc);

}  // namespace vircoh
