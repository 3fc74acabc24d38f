#pragma once

// Exact rational linear algebra. Everything downstream (pullbacks,
// pushforwards, subring echelon bases) is expressed with these types.

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace vircoh {

using Scalar = mpq_class;

/// Sparse coefficient vector: basis index -> nonzero coefficient.
using SparseVec = std::map<std::size_t, Scalar>;

/// Parses "p", "p/q" or "-p/q" into canonical form. Throws InvalidInput.
Scalar parse_scalar(std::string_view text);
std::string to_string(const Scalar& s);
bool is_integral(const Scalar& s);

/// Dense row-major rational matrix. A linear map is stored with one row per
/// source basis element holding the coordinates of its image.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols);

  static QMatrix identity(std::size_t n);
  static QMatrix from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const Scalar> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  [[nodiscard]] std::vector<Scalar> row_vector(std::size_t r) const;
  [[nodiscard]] SparseVec row_sparse(std::size_t r) const;

  void append_row(std::span<const Scalar> values);
  [[nodiscard]] QMatrix transpose() const;
  [[nodiscard]] bool is_zero_row(std::size_t r) const;

  friend bool operator==(const QMatrix& a, const QMatrix& b) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

QMatrix operator*(const QMatrix& a, const QMatrix& b);

struct Echelon {
  QMatrix echelon;                   // same shape as the input, zero rows last
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
  std::size_t rank = 0;

  /// The nonzero rows only.
  [[nodiscard]] QMatrix basis() const;
};

/// Reduced row echelon form. Pivot = first nonzero column scanning left to
/// right; among candidate rows the earliest (in current order) is used.
Echelon rref(QMatrix m);
std::size_t rank(const QMatrix& m);

/// `basis_rows` must already be in reduced echelon form (zero rows allowed).
/// Returns c with c * basis_rows == v, or nullopt when v is outside the span.
std::optional<std::vector<Scalar>> coords_in_span(const QMatrix& basis_rows,
                                                  std::span<const Scalar> v);

/// Echelonized basis (nonzero rows only) of rowspan(a) + rowspan(b).
QMatrix subspace_sum(const QMatrix& a, const QMatrix& b);

/// Solves c * rows == v for arbitrary (possibly dependent) rows; free
/// coordinates are set to zero.
std::optional<std::vector<Scalar>> solve_combination(const QMatrix& rows,
                                                     std::span<const Scalar> v);

std::optional<QMatrix> inverse(const QMatrix& m);

// Sparse helpers.
void add_scaled(SparseVec& dst, const SparseVec& src, const Scalar& factor);
SparseVec scaled(const SparseVec& v, const Scalar& factor);
void prune(SparseVec& v);
/// v * map, with `map` in the row-per-source-basis convention.
SparseVec apply_rows(const QMatrix& map, const SparseVec& v);
std::vector<Scalar> densify(const SparseVec& v, std::size_t dim);
SparseVec sparsify(std::span<const Scalar> v);

}  // namespace vircoh
