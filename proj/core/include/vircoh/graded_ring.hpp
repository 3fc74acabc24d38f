#pragma once

// Finite-dimensional, evenly graded, commutative rings satisfying Poincare
// duality. These model H*(M) for the ambient manifold, its powers, and every
// fixed-point component.
//
// A RingModel is a tensor product of one or more validated flat tables. Basis
// indices of a product are lexicographic in the factor indices (first factor
// most significant), so index(a (x) b) = index(a) * dim(b) + index(b).

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "vircoh/exactalg.hpp"

namespace vircoh {

struct BasisEntry {
  std::string name;
  int degree = 0;

  friend bool operator==(const BasisEntry&, const BasisEntry&) = default;
};

using ProductTerms = std::vector<std::pair<std::size_t, Scalar>>;

/// Input for make_table_ring. Products not listed are zero, except products
/// with the unit (basis index 0), which default to the unit law. Listing only
/// one of (i,j) and (j,i) is enough.
struct TableSpec {
  int dim = 0;
  std::vector<BasisEntry> basis;
  struct Product {
    std::size_t i = 0;
    std::size_t j = 0;
    ProductTerms terms;
  };
  std::vector<Product> products;
};

/// A validated flat factor: basis sorted by degree, full product table,
/// top class and dual basis.
struct FactorTable {
  std::vector<BasisEntry> basis;
  std::vector<ProductTerms> products;  // products[i * dim + j]
  int top_degree = 0;
  std::size_t top_index = 0;
  std::vector<SparseVec> duals;

  [[nodiscard]] std::size_t dim() const noexcept { return basis.size(); }
  [[nodiscard]] const ProductTerms& product(std::size_t i, std::size_t j) const {
    return products[i * dim() + j];
  }
  friend bool operator==(const FactorTable& a, const FactorTable& b);
};

class RingModel {
 public:
  explicit RingModel(std::vector<std::shared_ptr<const FactorTable>> factors);

  [[nodiscard]] std::size_t dim() const noexcept { return degrees_.size(); }
  [[nodiscard]] int degree(std::size_t i) const { return degrees_.at(i); }
  [[nodiscard]] int top_degree() const noexcept { return top_degree_; }
  [[nodiscard]] std::size_t top_index() const noexcept { return top_index_; }
  /// Display name: single-factor rings use the table names; products put the
  /// factor position after the variable name ("x^2" in factor 1 -> "x1^2").
  [[nodiscard]] const std::string& name(std::size_t i) const { return names_.at(i); }
  [[nodiscard]] const std::vector<std::size_t>& basis_of_degree(int d) const;
  [[nodiscard]] std::vector<int> degrees_present() const;

  [[nodiscard]] std::size_t factor_count() const noexcept { return factors_.size(); }
  [[nodiscard]] const FactorTable& factor(std::size_t k) const { return *factors_.at(k); }
  [[nodiscard]] const std::vector<std::shared_ptr<const FactorTable>>& factors() const noexcept {
    return factors_;
  }
  [[nodiscard]] std::vector<std::size_t> digits(std::size_t index) const;
  [[nodiscard]] std::size_t index_of(const std::vector<std::size_t>& digits) const;

  [[nodiscard]] SparseVec multiply_basis(std::size_t i, std::size_t j) const;
  [[nodiscard]] SparseVec multiply(const SparseVec& u, const SparseVec& v) const;

  /// Equality ignores display names (CP^1 and S^2 are the same ring).
  [[nodiscard]] bool same_structure(const RingModel& other) const;
  friend bool operator==(const RingModel& a, const RingModel& b);

 private:
  std::vector<std::shared_ptr<const FactorTable>> factors_;
  std::vector<std::size_t> strides_;
  std::vector<int> degrees_;
  std::vector<std::string> names_;
  std::map<int, std::vector<std::size_t>> by_degree_;
  int top_degree_ = 0;
  std::size_t top_index_ = 0;
};

using RingPtr = std::shared_ptr<const RingModel>;

/// Ring + Poincare duality data (top class, pairing, dual basis).
class ManifoldModel {
 public:
  explicit ManifoldModel(RingPtr ring);

  [[nodiscard]] const RingModel& ring() const noexcept { return *ring_; }
  [[nodiscard]] const RingPtr& ring_ptr() const noexcept { return ring_; }
  [[nodiscard]] std::size_t dim() const noexcept { return ring_->dim(); }
  /// Real dimension d = top cohomological degree.
  [[nodiscard]] int dimension() const noexcept { return ring_->top_degree(); }
  [[nodiscard]] std::size_t top_index() const noexcept { return ring_->top_index(); }

  /// Coefficient of the top class in u * v.
  [[nodiscard]] Scalar pairing(const SparseVec& u, const SparseVec& v) const;
  [[nodiscard]] QMatrix pairing_matrix() const;
  /// e_i^# with <e_i * e_j^#> = delta_ij.
  [[nodiscard]] SparseVec dual(std::size_t i) const;

  friend bool operator==(const ManifoldModel& a, const ManifoldModel& b) { return *a.ring_ == *b.ring_; }

 private:
  RingPtr ring_;
};

/// A cohomology class tied to its ring.
class CohClass {
 public:
  CohClass() = default;
  CohClass(RingPtr ring, SparseVec coeffs);
  static CohClass basis(RingPtr ring, std::size_t i);
  static CohClass unit(RingPtr ring) { return basis(std::move(ring), 0); }

  [[nodiscard]] const RingPtr& ring_ptr() const noexcept { return ring_; }
  [[nodiscard]] const SparseVec& coeffs() const noexcept { return coeffs_; }
  [[nodiscard]] bool is_zero() const noexcept { return coeffs_.empty(); }
  [[nodiscard]] Scalar coeff(std::size_t i) const;
  /// Degree of a nonzero homogeneous class; -1 if zero or inhomogeneous.
  [[nodiscard]] int homogeneous_degree() const;
  [[nodiscard]] CohClass component(int degree) const;

  CohClass& operator+=(const CohClass& o);
  CohClass& operator-=(const CohClass& o);
  friend CohClass operator+(CohClass a, const CohClass& b) { return a += b; }
  friend CohClass operator-(CohClass a, const CohClass& b) { return a -= b; }
  friend CohClass operator*(const Scalar& s, const CohClass& c);
  friend bool operator==(const CohClass& a, const CohClass& b);

 private:
  RingPtr ring_;
  SparseVec coeffs_;
};

/// Cup product. Throws ModelMismatch for classes in different rings.
CohClass multiply(const CohClass& u, const CohClass& v);
CohClass operator*(const CohClass& u, const CohClass& v);
void require_same_ring(const RingModel& a, const RingModel& b);

/// Z[x]/<x^{m+1}>, deg x = 2; m = 0 gives the point.
ManifoldModel make_cp(int m, const std::string& var = "x");
ManifoldModel make_point(const std::string& unit_name = "1");
/// {1, s}, deg s = 2k, s^2 = 0.
ManifoldModel make_even_sphere(int k, const std::string& var = "s");
ManifoldModel make_table_ring(const TableSpec& spec);
ManifoldModel tensor(const ManifoldModel& a, const ManifoldModel& b);
/// M^{(x) k}; k = 0 gives the point.
ManifoldModel power(const ManifoldModel& m, std::size_t k);

long euler_char(const ManifoldModel& m);
std::vector<CohClass> dual_basis(const ManifoldModel& m);
/// dims[d] = dim H^d for d = 0..top.
std::vector<std::size_t> dims_per_degree(const RingModel& r);

}  // namespace vircoh
