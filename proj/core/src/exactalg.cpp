#include "vircoh/exactalg.hpp"

#include <algorithm>
#include <cctype>

#include "vircoh/errors.hpp"

namespace vircoh {

namespace {

bool valid_integer_text(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!valid_integer_text(num) || !valid_integer_text(den) || den.front() == '-') {
    throw Error(ErrorCode::InvalidInput, "malformed rational '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  std::string d(den);
  if (d.front() == '+') d.erase(0, 1);
  mpz_class nz(n, 10);
  mpz_class dz(d, 10);
  if (dz == 0) throw Error(ErrorCode::InvalidInput, "zero denominator in '" + std::string(text) + "'");
  Scalar q(nz, dz);
  q.canonicalize();
  return q;
}

std::string to_string(const Scalar& s) { return s.get_str(); }

bool is_integral(const Scalar& s) { return s.get_den() == 1; }

QMatrix::QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<std::vector<Scalar>>& rows, std::size_t cols) {
  QMatrix m(0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

std::vector<Scalar> QMatrix::row_vector(std::size_t r) const {
  const auto s = row(r);
  return {s.begin(), s.end()};
}

SparseVec QMatrix::row_sparse(std::size_t r) const { return sparsify(row(r)); }

void QMatrix::append_row(std::span<const Scalar> values) {
  if (values.size() != cols_) {
    throw Error(ErrorCode::DimensionMismatch, "row of length " + std::to_string(values.size()) +
                                                  " appended to matrix with " + std::to_string(cols_) +
                                                  " columns");
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

bool QMatrix::is_zero_row(std::size_t r) const {
  const auto s = row(r);
  return std::all_of(s.begin(), s.end(), [](const Scalar& x) { return sgn(x) == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product shape mismatch");
  QMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

QMatrix Echelon::basis() const {
  QMatrix b(0, echelon.cols());
  for (std::size_t r = 0; r < rank; ++r) b.append_row(echelon.row(r));
  return b;
}

Echelon rref(QMatrix m) {
  Echelon out;
  std::size_t lead = 0;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t pivot = lead;
    while (pivot < rows && sgn(m(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != lead)
      for (std::size_t j = 0; j < cols; ++j) swap(m(pivot, j), m(lead, j));
    const Scalar inv = 1 / m(lead, c);
    for (std::size_t j = c; j < cols; ++j) m(lead, j) *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead || sgn(m(r, c)) == 0) continue;
      const Scalar f = m(r, c);
      for (std::size_t j = c; j < cols; ++j) m(r, j) -= f * m(lead, j);
    }
    out.pivots.push_back(c);
    ++lead;
  }
  out.rank = lead;
  out.echelon = std::move(m);
  return out;
}

std::size_t rank(const QMatrix& m) { return rref(m).rank; }

std::optional<std::vector<Scalar>> coords_in_span(const QMatrix& basis_rows, std::span<const Scalar> v) {
  if (v.size() != basis_rows.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "vector length " + std::to_string(v.size()) +
                                                  " against basis with " + std::to_string(basis_rows.cols()) +
                                                  " columns");
  }
  std::vector<Scalar> coords(basis_rows.rows());
  std::vector<Scalar> residual(v.begin(), v.end());
  for (std::size_t r = 0; r < basis_rows.rows(); ++r) {
    const auto row = basis_rows.row(r);
    const auto it = std::find_if(row.begin(), row.end(), [](const Scalar& x) { return sgn(x) != 0; });
    if (it == row.end()) continue;
    const auto pivot = static_cast<std::size_t>(it - row.begin());
    coords[r] = residual[pivot];
    if (sgn(coords[r]) == 0) continue;
    for (std::size_t j = 0; j < row.size(); ++j) residual[j] -= coords[r] * row[j];
  }
  if (std::any_of(residual.begin(), residual.end(), [](const Scalar& x) { return sgn(x) != 0; }))
    return std::nullopt;
  return coords;
}

QMatrix subspace_sum(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.cols()) throw Error(ErrorCode::DimensionMismatch, "subspace_sum column mismatch");
  QMatrix stacked = a;
  for (std::size_t r = 0; r < b.rows(); ++r) stacked.append_row(b.row(r));
  return rref(std::move(stacked)).basis();
}

std::optional<std::vector<Scalar>> solve_combination(const QMatrix& rows, std::span<const Scalar> v) {
  if (v.size() != rows.cols()) throw Error(ErrorCode::DimensionMismatch, "solve_combination length mismatch");
  // Columns of the augmented system [rows^T | v] are the unknowns c_i.
  QMatrix aug(rows.cols(), rows.rows() + 1);
  for (std::size_t i = 0; i < rows.rows(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) aug(j, i) = rows(i, j);
  for (std::size_t j = 0; j < rows.cols(); ++j) aug(j, rows.rows()) = v[j];
  const Echelon e = rref(std::move(aug));
  std::vector<Scalar> c(rows.rows());
  for (std::size_t r = 0; r < e.rank; ++r) {
    const std::size_t p = e.pivots[r];
    if (p == rows.rows()) return std::nullopt;
    c[p] = e.echelon(r, rows.rows());
  }
  return c;
}

std::optional<QMatrix> inverse(const QMatrix& m) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "inverse of non-square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const Echelon e = rref(std::move(aug));
  if (e.rank < n || (n > 0 && e.pivots[n - 1] != n - 1)) return std::nullopt;
  QMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.echelon(i, n + j);
  return inv;
}

void add_scaled(SparseVec& dst, const SparseVec& src, const Scalar& factor) {
  if (sgn(factor) == 0) return;
  for (const auto& [k, v] : src) {
    auto [it, inserted] = dst.try_emplace(k, v * factor);
    if (!inserted) {
      it->second += v * factor;
      if (sgn(it->second) == 0) dst.erase(it);
    }
  }
}

SparseVec scaled(const SparseVec& v, const Scalar& factor) {
  SparseVec out;
  if (sgn(factor) == 0) return out;
  for (const auto& [k, c] : v) out.emplace(k, c * factor);
  return out;
}

void prune(SparseVec& v) { std::erase_if(v, [](const auto& kv) { return sgn(kv.second) == 0; }); }

SparseVec apply_rows(const QMatrix& map, const SparseVec& v) {
  SparseVec out;
  for (const auto& [k, c] : v) {
    if (k >= map.rows()) throw Error(ErrorCode::DimensionMismatch, "class index outside linear map domain");
    const auto row = map.row(k);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (sgn(row[j]) == 0) continue;
      out[j] += c * row[j];
    }
  }
  prune(out);
  return out;
}

std::vector<Scalar> densify(const SparseVec& v, std::size_t dim) {
  std::vector<Scalar> d(dim);
  for (const auto& [k, c] : v) {
    if (k >= dim) throw Error(ErrorCode::DimensionMismatch, "sparse index beyond dense dimension");
    d[k] = c;
  }
  return d;
}

SparseVec sparsify(std::span<const Scalar> v) {
  SparseVec out;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != 0) out.emplace(i, v[i]);
  return out;
}

}  // namespace vircoh
