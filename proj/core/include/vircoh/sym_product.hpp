#pragma once

// Cohomological data of the pair (M^n, S_n).
//
// The fixed set of tau in S_n is the diagonal copy of M^{c(tau)}, c = number
// of cycles, with cycle variables indexed by the cycles of tau sorted by their
// minimal element. Everything here is computed from the ring of M alone.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vircoh/exactalg.hpp"
#include "vircoh/graded_ring.hpp"
#include "vircoh/group_ring.hpp"

namespace vircoh {

struct Generator {
  GroupRingElement element;
  std::string label;
};

/// Homogeneous, single-support generators of a subring of H*(Y)[G].
struct GeneratorSet {
  GroupPtr group;
  RingPtr ring;
  std::vector<Generator> generators;

  /// Throws InvalidInput if a generator is zero, inhomogeneous, or supported
  /// on more than one group element, or if the unit is missing.
  void validate() const;
};

class SymmetricProduct {
 public:
  SymmetricProduct(ManifoldModel base, std::size_t n, std::size_t max_group_order = kDefaultMaxGroupOrder);

  [[nodiscard]] const ManifoldModel& base() const noexcept { return base_; }
  [[nodiscard]] std::size_t n() const noexcept { return n_; }
  [[nodiscard]] const ManifoldModel& ambient() const noexcept { return powers_.at(n_); }
  /// M^c, the model of a fixed set with c cycles.
  [[nodiscard]] const ManifoldModel& cycle_model(std::size_t c) const { return powers_.at(c); }
  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] const CohAction& action() const noexcept { return action_; }

  [[nodiscard]] std::size_t cycle_count(std::size_t g) const;
  [[nodiscard]] const ManifoldModel& fixed_model(std::size_t g) const { return cycle_model(cycle_count(g)); }

  /// Class of M placed in factor `position` (1-based) of M^n.
  [[nodiscard]] CohClass place(std::size_t position, const SparseVec& base_class) const;

  /// D_ij = sum_a e_a (factor i) * e_a^# (factor j); 1 <= i < j <= n.
  [[nodiscard]] CohClass diagonal_class(std::size_t i, std::size_t j) const;
  /// Product of diagonal classes along the given (1-based) edges.
  [[nodiscard]] CohClass edge_product(const std::vector<std::pair<std::size_t, std::size_t>>& edges) const;

  /// f_g^*: substitute each factor by its cycle variable and reduce.
  [[nodiscard]] CohClass pullback(std::size_t g, const CohClass& u) const;
  /// Places each cycle's class on the minimal position of the cycle.
  [[nodiscard]] CohClass lift(std::size_t g, const CohClass& alpha) const;
  /// F_g = prod over cycles {i_1 < ... < i_k} of prod_j D_{i_j i_{j+1}}.
  [[nodiscard]] CohClass pushforward_unit(std::size_t g) const;
  /// f_g!(alpha) = F_g * lift(alpha).
  [[nodiscard]] CohClass pushforward(std::size_t g, const CohClass& alpha) const;
  /// Pushforward characterised only by duality:
  /// <f_!alpha * b> = <alpha * f^*b> for every basis class b of M^n.
  [[nodiscard]] CohClass gysin_oracle(std::size_t g, const CohClass& alpha) const;
  /// (h^{-1})^*: H*(Y^g) -> H*(Y^{h^{-1} g h}), a permutation of cycle factors.
  [[nodiscard]] CohClass transport(std::size_t h, std::size_t g, const CohClass& alpha) const;

  [[nodiscard]] QMatrix pullback_matrix(std::size_t g) const;
  [[nodiscard]] QMatrix pushforward_matrix(std::size_t g) const;

  /// Ambient basis at 1_G plus D_kl (k l) for every transposition.
  [[nodiscard]] GeneratorSet generators() const;
  /// (f_g! b) g for every group element g and basis class b of Y^g.
  [[nodiscard]] std::vector<Generator> pushforward_basis() const;

 private:
  [[nodiscard]] std::vector<std::size_t> block_digits(std::size_t index, std::size_t blocks) const;
  [[nodiscard]] std::size_t block_index(const std::vector<std::size_t>& digits) const;
  [[nodiscard]] const std::vector<std::vector<std::size_t>>& cycles(std::size_t g) const { return cycles_.at(g); }

  ManifoldModel base_;
  std::size_t n_;
  std::vector<ManifoldModel> powers_;
  GroupPtr group_;
  CohAction action_;
  std::vector<std::vector<std::vector<std::size_t>>> cycles_;
};

// Free-function forms; each builds a SymmetricProduct context.
CohClass diagonal_class(const ManifoldModel& m, std::size_t n, std::size_t i, std::size_t j);
CohClass perm_pullback(const ManifoldModel& m, std::size_t n, const Permutation& tau, const CohClass& u);
CohClass perm_pushforward(const ManifoldModel& m, std::size_t n, const Permutation& tau, const CohClass& alpha);
CohClass gysin_oracle(const ManifoldModel& m, std::size_t n, const Permutation& tau, const CohClass& alpha);
GeneratorSet generators_symprod(const ManifoldModel& m, std::size_t n);

}  // namespace vircoh
