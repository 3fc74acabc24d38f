#pragma once

// Finite groups, their action on ambient cohomology, and the group ring
// H*(Y)[G] with the untwisted product (a g)(b h) = (a b)(g h).
//
// Conventions:
//  * permutations compose right-to-left: (g h)(i) = g(h(i));
//  * G acts on the right, (x, g) . h = (x h, h^{-1} g h), with
//    (x h)_i = x_{h(i)} on M^n;
//  * CohAction::apply(h, .) is the induced map (h^{-1})^*.

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vircoh/exactalg.hpp"
#include "vircoh/graded_ring.hpp"

namespace vircoh {

inline constexpr std::size_t kDefaultMaxGroupOrder = 720;

/// 0-based one-line notation: images[i] = g(i).
struct Permutation {
  std::vector<std::size_t> images;

  static Permutation identity(std::size_t n);
  /// 1-based transposition (k l).
  static Permutation transposition(std::size_t n, std::size_t k, std::size_t l);
  [[nodiscard]] std::size_t size() const noexcept { return images.size(); }
  [[nodiscard]] bool is_transposition() const;
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
};

Permutation compose(const Permutation& g, const Permutation& h);
Permutation inverse(const Permutation& g);
bool is_valid_permutation(const std::vector<std::size_t>& images);

/// Disjoint cycles (1-based) covering {1..n}; fixed points appear as
/// singletons; each cycle starts at its minimum; cycles sorted by minimum.
std::vector<std::vector<std::size_t>> cycle_decomposition(const Permutation& g);
/// Cycle notation without fixed points; "1" for the identity.
std::string cycle_notation(const Permutation& g);

enum class GroupKind { Symmetric, Cyclic, Table };

struct GroupSpec {
  GroupKind kind = GroupKind::Symmetric;
  std::size_t n = 0;  // symmetric degree
  std::size_t p = 0;  // cyclic order
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> mul;
};

class FiniteGroup {
 public:
  static FiniteGroup symmetric(std::size_t n, std::size_t max_order = kDefaultMaxGroupOrder);
  static FiniteGroup cyclic(std::size_t p, std::size_t max_order = kDefaultMaxGroupOrder);
  /// Validates group axioms; identity must be element 0. Throws NotAGroup.
  static FiniteGroup from_table(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> mul,
                                std::size_t max_order = kDefaultMaxGroupOrder);

  [[nodiscard]] GroupKind kind() const noexcept { return kind_; }
  [[nodiscard]] std::size_t order() const noexcept { return labels_.size(); }
  [[nodiscard]] std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * order() + b]; }
  [[nodiscard]] std::size_t inv(std::size_t a) const { return inv_.at(a); }
  /// h^{-1} g h
  [[nodiscard]] std::size_t conjugate(std::size_t g, std::size_t h) const { return mul(mul(inv(h), g), h); }
  [[nodiscard]] const std::string& label(std::size_t a) const { return labels_.at(a); }
  [[nodiscard]] std::optional<std::size_t> find_label(const std::string& label) const;
  [[nodiscard]] bool is_abelian() const;
  [[nodiscard]] std::vector<std::vector<std::size_t>> conjugacy_classes() const;

  /// Symmetric groups only.
  [[nodiscard]] std::size_t degree() const noexcept { return degree_; }
  [[nodiscard]] const Permutation& permutation(std::size_t a) const;
  [[nodiscard]] std::size_t index_of(const Permutation& p) const;
  /// Cyclic groups only: element index = exponent.
  [[nodiscard]] std::size_t exponent(std::size_t a) const;

  [[nodiscard]] std::vector<std::vector<std::size_t>> table() const;
  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.labels_ == b.labels_ && a.mul_ == b.mul_;
  }

 private:
  FiniteGroup() = default;
  void finish();

  GroupKind kind_ = GroupKind::Table;
  std::size_t degree_ = 0;
  std::vector<std::string> labels_;
  std::vector<std::size_t> mul_;
  std::vector<std::size_t> inv_;
  std::vector<Permutation> perms_;
};

using GroupPtr = std::shared_ptr<const FiniteGroup>;

FiniteGroup build_group(const GroupSpec& spec, std::size_t max_order = kDefaultMaxGroupOrder);

/// Degree-preserving ring automorphisms (h^{-1})^* of the ambient ring, one per
/// group element, stored as basis permutations.
class CohAction {
 public:
  enum class Kind { Trivial, PermuteFactors };

  static CohAction trivial(GroupPtr group, RingPtr ring);
  /// Group must be S_n and the ambient ring a tensor power of n equal blocks.
  static CohAction permute_factors(GroupPtr group, RingPtr ring);

  [[nodiscard]] Kind kind() const noexcept { return kind_; }
  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] const RingPtr& ring() const noexcept { return ring_; }
  [[nodiscard]] SparseVec apply(std::size_t h, const SparseVec& v) const;
  [[nodiscard]] std::size_t apply_basis(std::size_t h, std::size_t i) const { return images_.at(h).at(i); }
  [[nodiscard]] bool is_identity(std::size_t h) const;

  CohAction() = default;

 private:
  void validate() const;

  Kind kind_ = Kind::Trivial;
  GroupPtr group_;
  RingPtr ring_;
  std::vector<std::vector<std::size_t>> images_;
};

std::string to_string(CohAction::Kind kind);

class GroupRingElement {
 public:
  GroupRingElement() = default;
  GroupRingElement(GroupPtr group, RingPtr ring);
  static GroupRingElement single(GroupPtr group, RingPtr ring, std::size_t g, SparseVec coeff);
  static GroupRingElement one(GroupPtr group, RingPtr ring);

  [[nodiscard]] const GroupPtr& group() const noexcept { return group_; }
  [[nodiscard]] const RingPtr& ring() const noexcept { return ring_; }
  [[nodiscard]] const std::map<std::size_t, SparseVec>& terms() const noexcept { return terms_; }
  [[nodiscard]] SparseVec coeff(std::size_t g) const;
  [[nodiscard]] bool is_zero() const noexcept { return terms_.empty(); }
  /// Degree of a nonzero homogeneous element, -1 otherwise.
  [[nodiscard]] int homogeneous_degree() const;
  [[nodiscard]] std::vector<std::size_t> support() const;

  void add(std::size_t g, const SparseVec& coeff, const Scalar& factor = Scalar(1));
  GroupRingElement& operator+=(const GroupRingElement& o);
  GroupRingElement& operator-=(const GroupRingElement& o);
  friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
  friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
  friend GroupRingElement operator*(const Scalar& s, const GroupRingElement& x);
  friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) { return a.terms_ == b.terms_; }

 private:
  void check_compatible(const GroupRingElement& o) const;

  GroupPtr group_;
  RingPtr ring_;
  std::map<std::size_t, SparseVec> terms_;
};

GroupRingElement gr_multiply(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y);
GroupRingElement power(const GroupRingElement& x, unsigned exponent);
/// Each term (a, g) -> ((h^{-1})^* a, h^{-1} g h).
GroupRingElement g_action(const GroupRingElement& x, std::size_t h, const CohAction& act);
/// (1/|G|) sum_h x . h
GroupRingElement reynolds(const GroupRingElement& x, const CohAction& act);

}  // namespace vircoh
