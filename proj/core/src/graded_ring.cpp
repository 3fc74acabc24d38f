#include "vircoh/graded_ring.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "vircoh/errors.hpp"

namespace vircoh {

namespace {

std::string positional_name(const std::string& name, std::size_t position) {
  std::string out;
  std::size_t start = 0;
  while (start <= name.size()) {
    const auto stop = std::min(name.find('*', start), name.size());
    const std::string token = name.substr(start, stop - start);
    if (!token.empty() && token != "1") {
      const auto caret = token.find('^');
      std::string renamed = token.substr(0, caret) + std::to_string(position);
      if (caret != std::string::npos) renamed += token.substr(caret);
      if (!out.empty()) out += '*';
      out += renamed;
    }
    start = stop + 1;
  }
  return out.empty() ? "1" : out;
}

void add_term(ProductTerms& terms, std::size_t k, const Scalar& c) {
  for (auto& [idx, coef] : terms) {
    if (idx == k) {
      coef += c;
      return;
    }
  }
  terms.emplace_back(k, c);
}

void normalise(ProductTerms& terms) {
  std::erase_if(terms, [](const auto& t) { return sgn(t.second) == 0; });
  std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
}

SparseVec table_multiply(const FactorTable& t, const SparseVec& u, const SparseVec& v) {
  SparseVec out;
  for (const auto& [i, a] : u)
    for (const auto& [j, b] : v)
      for (const auto& [k, c] : t.product(i, j)) out[k] += a * b * c;
  prune(out);
  return out;
}

// Validates a flat table and computes its duality data. `products` must be the
// full dim*dim table in the final (degree-sorted) basis order.
std::shared_ptr<const FactorTable> finish_table(std::vector<BasisEntry> basis, std::vector<ProductTerms> products,
                                                int top_degree) {
  auto t = std::make_shared<FactorTable>();
  t->basis = std::move(basis);
  t->products = std::move(products);
  t->top_degree = top_degree;
  const std::size_t n = t->dim();

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      for (const auto& [k, c] : t->product(i, j)) {
        if (k >= n) throw Error(ErrorCode::InvalidInput, "structure constant index out of range");
        if (t->basis[k].degree != t->basis[i].degree + t->basis[j].degree) {
          throw Error(ErrorCode::NotGraded, "product " + t->basis[i].name + "*" + t->basis[j].name +
                                                " has a term " + t->basis[k].name + " of the wrong degree");
        }
      }
      if (t->product(i, j) != t->product(j, i)) {
        throw Error(ErrorCode::NotCommutative, t->basis[i].name + "*" + t->basis[j].name + " != " +
                                                   t->basis[j].name + "*" + t->basis[i].name);
      }
    }

  for (std::size_t i = 0; i < n; ++i) {
    const ProductTerms expected{{i, Scalar(1)}};
    if (t->product(0, i) != expected)
      throw Error(ErrorCode::NoUnit, "basis[0] does not act as the unit on " + t->basis[i].name);
  }

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseVec left;
      for (const auto& [k, c] : t->product(i, j)) left[k] += c;
      for (std::size_t l = 0; l < n; ++l) {
        const SparseVec lhs = table_multiply(*t, left, SparseVec{{l, Scalar(1)}});
        SparseVec jl;
        for (const auto& [k, c] : t->product(j, l)) jl[k] += c;
        const SparseVec rhs = table_multiply(*t, SparseVec{{i, Scalar(1)}}, jl);
        if (lhs != rhs) {
          throw Error(ErrorCode::NonAssociative, "(" + t->basis[i].name + "*" + t->basis[j].name + ")*" +
                                                     t->basis[l].name + " differs from the other bracketing");
        }
      }
    }

  std::vector<std::size_t> top;
  for (std::size_t i = 0; i < n; ++i) {
    if (t->basis[i].degree > top_degree)
      throw Error(ErrorCode::InvalidInput, t->basis[i].name + " lies above the top degree");
    if (t->basis[i].degree == top_degree) top.push_back(i);
  }
  if (top.size() != 1)
    throw Error(ErrorCode::DegeneratePairing, "top-degree component must be spanned by a single class");
  t->top_index = top.front();

  QMatrix pairing(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : t->product(i, j))
        if (k == t->top_index) pairing(i, j) = c;
  const auto inv = inverse(pairing);
  if (!inv) throw Error(ErrorCode::DegeneratePairing, "Poincare pairing matrix is singular");
  // e_i^# = sum_j (P^{-1})_{ji} e_j
  t->duals.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (sgn((*inv)(j, i)) != 0) t->duals[i].emplace(j, (*inv)(j, i));
  return t;
}

}  // namespace

bool operator==(const FactorTable& a, const FactorTable& b) {
  return a.basis == b.basis && a.products == b.products && a.top_degree == b.top_degree;
}

RingModel::RingModel(std::vector<std::shared_ptr<const FactorTable>> factors) : factors_(std::move(factors)) {
  if (factors_.empty()) throw Error(ErrorCode::InvalidInput, "ring with no factors");
  std::size_t total = 1;
  strides_.assign(factors_.size(), 1);
  for (std::size_t k = factors_.size(); k-- > 0;) {
    strides_[k] = total;
    total *= factors_[k]->dim();
  }
  degrees_.resize(total);
  names_.resize(total);
  std::vector<std::size_t> tops;
  for (const auto& f : factors_) {
    top_degree_ += f->top_degree;
    tops.push_back(f->top_index);
  }
  top_index_ = index_of(tops);
  for (std::size_t i = 0; i < total; ++i) {
    const auto d = digits(i);
    int deg = 0;
    std::string name;
    for (std::size_t k = 0; k < d.size(); ++k) {
      deg += factors_[k]->basis[d[k]].degree;
      if (factors_.size() == 1) {
        name = factors_[k]->basis[d[k]].name;
      } else {
        const std::string part = positional_name(factors_[k]->basis[d[k]].name, k + 1);
        if (part == "1") continue;
        if (!name.empty()) name += '*';
        name += part;
      }
    }
    degrees_[i] = deg;
    names_[i] = name.empty() ? "1" : name;
    by_degree_[deg].push_back(i);
  }
}

const std::vector<std::size_t>& RingModel::basis_of_degree(int d) const {
  static const std::vector<std::size_t> empty;
  const auto it = by_degree_.find(d);
  return it == by_degree_.end() ? empty : it->second;
}

std::vector<int> RingModel::degrees_present() const {
  std::vector<int> out;
  for (const auto& [d, _] : by_degree_) out.push_back(d);
  return out;
}

std::vector<std::size_t> RingModel::digits(std::size_t index) const {
  if (index >= dim()) throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(index));
  std::vector<std::size_t> d(factors_.size());
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    d[k] = index / strides_[k];
    index %= strides_[k];
  }
  return d;
}

std::size_t RingModel::index_of(const std::vector<std::size_t>& digits) const {
  if (digits.size() != factors_.size()) throw Error(ErrorCode::DimensionMismatch, "digit count");
  std::size_t idx = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) {
    if (digits[k] >= factors_[k]->dim()) throw Error(ErrorCode::IndexOutOfRange, "factor digit");
    idx += digits[k] * strides_[k];
  }
  return idx;
}

SparseVec RingModel::multiply_basis(std::size_t i, std::size_t j) const {
  const auto di = digits(i);
  const auto dj = digits(j);
  std::vector<std::pair<std::size_t, Scalar>> partial{{0, Scalar(1)}};
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const auto& terms = factors_[k]->product(di[k], dj[k]);
    if (terms.empty()) return {};
    std::vector<std::pair<std::size_t, Scalar>> next;
    next.reserve(partial.size() * terms.size());
    for (const auto& [idx, c] : partial)
      for (const auto& [t, c2] : terms) next.emplace_back(idx + t * strides_[k], c * c2);
    partial = std::move(next);
  }
  SparseVec out;
  for (auto& [idx, c] : partial) out[idx] += c;
  prune(out);
  return out;
}

SparseVec RingModel::multiply(const SparseVec& u, const SparseVec& v) const {
  SparseVec out;
  for (const auto& [i, a] : u)
    for (const auto& [j, b] : v) add_scaled(out, multiply_basis(i, j), a * b);
  return out;
}

bool RingModel::same_structure(const RingModel& other) const {
  if (dim() != other.dim() || degrees_ != other.degrees_ || top_index_ != other.top_index_) return false;
  if (this == &other || factors_ == other.factors_) return true;
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i; j < dim(); ++j)
      if (multiply_basis(i, j) != other.multiply_basis(i, j)) return false;
  return true;
}

bool operator==(const RingModel& a, const RingModel& b) { return a.same_structure(b); }

ManifoldModel::ManifoldModel(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw Error(ErrorCode::InvalidInput, "null ring");
}

Scalar ManifoldModel::pairing(const SparseVec& u, const SparseVec& v) const {
  const SparseVec p = ring_->multiply(u, v);
  const auto it = p.find(ring_->top_index());
  return it == p.end() ? Scalar(0) : it->second;
}

QMatrix ManifoldModel::pairing_matrix() const {
  const std::size_t n = dim();
  QMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const SparseVec prod = ring_->multiply_basis(i, j);
      const auto it = prod.find(ring_->top_index());
      if (it != prod.end()) p(i, j) = it->second;
    }
  return p;
}

SparseVec ManifoldModel::dual(std::size_t i) const {
  const auto d = ring_->digits(i);
  // Dual of a tensor basis element is the tensor of factor duals.
  std::vector<std::pair<std::vector<std::size_t>, Scalar>> partial{{{}, Scalar(1)}};
  for (std::size_t k = 0; k < d.size(); ++k) {
    std::vector<std::pair<std::vector<std::size_t>, Scalar>> next;
    for (const auto& [digs, c] : partial)
      for (const auto& [j, c2] : ring_->factor(k).duals[d[k]]) {
        auto nd = digs;
        nd.push_back(j);
        next.emplace_back(std::move(nd), c * c2);
      }
    partial = std::move(next);
  }
  SparseVec out;
  for (const auto& [digs, c] : partial) out[ring_->index_of(digs)] += c;
  prune(out);
  return out;
}

CohClass::CohClass(RingPtr ring, SparseVec coeffs) : ring_(std::move(ring)), coeffs_(std::move(coeffs)) {
  prune(coeffs_);
  if (ring_ && !coeffs_.empty() && coeffs_.rbegin()->first >= ring_->dim())
    throw Error(ErrorCode::IndexOutOfRange, "class coefficient outside ring basis");
}

CohClass CohClass::basis(RingPtr ring, std::size_t i) {
  if (i >= ring->dim()) throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(i));
  return CohClass(std::move(ring), SparseVec{{i, Scalar(1)}});
}

Scalar CohClass::coeff(std::size_t i) const {
  const auto it = coeffs_.find(i);
  return it == coeffs_.end() ? Scalar(0) : it->second;
}

int CohClass::homogeneous_degree() const {
  if (coeffs_.empty()) return -1;
  const int d = ring_->degree(coeffs_.begin()->first);
  for (const auto& [i, _] : coeffs_)
    if (ring_->degree(i) != d) return -1;
  return d;
}

CohClass CohClass::component(int degree) const {
  SparseVec out;
  for (const auto& [i, c] : coeffs_)
    if (ring_->degree(i) == degree) out.emplace(i, c);
  return {ring_, std::move(out)};
}

CohClass& CohClass::operator+=(const CohClass& o) {
  if (!ring_) ring_ = o.ring_;
  else if (o.ring_) require_same_ring(*ring_, *o.ring_);
  add_scaled(coeffs_, o.coeffs_, Scalar(1));
  return *this;
}

CohClass& CohClass::operator-=(const CohClass& o) {
  if (!ring_) ring_ = o.ring_;
  else if (o.ring_) require_same_ring(*ring_, *o.ring_);
  add_scaled(coeffs_, o.coeffs_, Scalar(-1));
  return *this;
}

CohClass operator*(const Scalar& s, const CohClass& c) { return {c.ring_, scaled(c.coeffs_, s)}; }

bool operator==(const CohClass& a, const CohClass& b) {
  if (a.coeffs_ != b.coeffs_) return false;
  if (a.ring_ == b.ring_ || a.coeffs_.empty()) return true;
  return a.ring_ && b.ring_ && *a.ring_ == *b.ring_;
}

void require_same_ring(const RingModel& a, const RingModel& b) {
  if (&a != &b && !(a == b)) throw Error(ErrorCode::ModelMismatch, "classes live in different rings");
}

CohClass multiply(const CohClass& u, const CohClass& v) {
  if (!u.ring_ptr() || !v.ring_ptr()) throw Error(ErrorCode::ModelMismatch, "class without a ring");
  require_same_ring(*u.ring_ptr(), *v.ring_ptr());
  return {u.ring_ptr(), u.ring_ptr()->multiply(u.coeffs(), v.coeffs())};
}

CohClass operator*(const CohClass& u, const CohClass& v) { return multiply(u, v); }

ManifoldModel make_cp(int m, const std::string& var) {
  if (m < 0) throw Error(ErrorCode::InvalidInput, "CP^m needs m >= 0");
  const auto n = static_cast<std::size_t>(m) + 1;
  std::vector<BasisEntry> basis;
  for (std::size_t a = 0; a < n; ++a) {
    std::string name = a == 0 ? "1" : (a == 1 ? var : var + "^" + std::to_string(a));
    basis.push_back({std::move(name), 2 * static_cast<int>(a)});
  }
  std::vector<ProductTerms> products(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a + b < n) products[a * n + b] = {{a + b, Scalar(1)}};
  return ManifoldModel(std::make_shared<RingModel>(
      std::vector<std::shared_ptr<const FactorTable>>{finish_table(std::move(basis), std::move(products), 2 * m)}));
}

ManifoldModel make_point(const std::string& unit_name) {
  std::vector<BasisEntry> basis{{unit_name, 0}};
  std::vector<ProductTerms> products{{{0, Scalar(1)}}};
  return ManifoldModel(std::make_shared<RingModel>(
      std::vector<std::shared_ptr<const FactorTable>>{finish_table(std::move(basis), std::move(products), 0)}));
}

ManifoldModel make_even_sphere(int k, const std::string& var) {
  if (k < 1) throw Error(ErrorCode::InvalidInput, "S^{2k} needs k >= 1");
  std::vector<BasisEntry> basis{{"1", 0}, {var, 2 * k}};
  std::vector<ProductTerms> products{{{0, Scalar(1)}}, {{1, Scalar(1)}}, {{1, Scalar(1)}}, {}};
  return ManifoldModel(std::make_shared<RingModel>(
      std::vector<std::shared_ptr<const FactorTable>>{finish_table(std::move(basis), std::move(products), 2 * k)}));
}

ManifoldModel make_table_ring(const TableSpec& spec) {
  const std::size_t n = spec.basis.size();
  if (n == 0) throw Error(ErrorCode::NoUnit, "empty basis");
  for (const auto& b : spec.basis) {
    if (b.degree % 2 != 0) throw Error(ErrorCode::OddDegree, b.name + " has odd degree " + std::to_string(b.degree));
    if (b.degree < 0) throw Error(ErrorCode::InvalidInput, b.name + " has negative degree");
  }
  if (spec.dim % 2 != 0) throw Error(ErrorCode::OddDegree, "top degree " + std::to_string(spec.dim) + " is odd");
  if (spec.basis[0].degree != 0) throw Error(ErrorCode::NoUnit, "basis[0] must be the degree-0 unit");
  for (std::size_t i = 1; i < n; ++i)
    if (spec.basis[i].degree == 0)
      throw Error(ErrorCode::InvalidInput, "degree-0 part must be one-dimensional (connected manifold)");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return spec.basis[a].degree < spec.basis[b].degree; });
  std::vector<std::size_t> new_index(n);
  for (std::size_t pos = 0; pos < n; ++pos) new_index[order[pos]] = pos;

  std::vector<BasisEntry> basis(n);
  for (std::size_t i = 0; i < n; ++i) basis[new_index[i]] = spec.basis[i];

  std::vector<ProductTerms> products(n * n);
  std::vector<bool> given(n * n, false);
  std::vector<bool> listed(n * n, false);
  for (const auto& p : spec.products) {
    if (p.i >= n || p.j >= n) throw Error(ErrorCode::InvalidInput, "product index out of range");
    ProductTerms terms;
    for (const auto& [k, c] : p.terms) {
      if (k >= n) throw Error(ErrorCode::InvalidInput, "structure constant index out of range");
      add_term(terms, new_index[k], c);
    }
    normalise(terms);
    const std::size_t a = new_index[p.i];
    const std::size_t b = new_index[p.j];
    for (const auto& [x, y] : {std::pair{a, b}, std::pair{b, a}}) {
      if (given[x * n + y] && products[x * n + y] != terms) {
        // the same ordered pair listed twice is malformed; a mismatch against the mirrored entry is not
        const bool twice = x == a && y == b && listed[x * n + y];
        throw Error(twice ? ErrorCode::InvalidInput : ErrorCode::NotCommutative,
                    "conflicting entries for " + basis[a].name + "*" + basis[b].name);
      }
      products[x * n + y] = terms;
      given[x * n + y] = true;
    }
    listed[a * n + b] = true;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!given[i]) products[i] = {{i, Scalar(1)}};
    if (!given[i * n]) products[i * n] = {{i, Scalar(1)}};
  }
  return ManifoldModel(std::make_shared<RingModel>(
      std::vector<std::shared_ptr<const FactorTable>>{finish_table(std::move(basis), std::move(products), spec.dim)}));
}

ManifoldModel tensor(const ManifoldModel& a, const ManifoldModel& b) {
  auto factors = a.ring().factors();
  factors.insert(factors.end(), b.ring().factors().begin(), b.ring().factors().end());
  return ManifoldModel(std::make_shared<RingModel>(std::move(factors)));
}

ManifoldModel power(const ManifoldModel& m, std::size_t k) {
  if (k == 0) return make_point();
  std::vector<std::shared_ptr<const FactorTable>> factors;
  for (std::size_t i = 0; i < k; ++i)
    factors.insert(factors.end(), m.ring().factors().begin(), m.ring().factors().end());
  return ManifoldModel(std::make_shared<RingModel>(std::move(factors)));
}

long euler_char(const ManifoldModel& m) { return static_cast<long>(m.dim()); }

std::vector<CohClass> dual_basis(const ManifoldModel& m) {
  std::vector<CohClass> out;
  out.reserve(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) out.emplace_back(m.ring_ptr(), m.dual(i));
  return out;
}

std::vector<std::size_t> dims_per_degree(const RingModel& r) {
  std::vector<std::size_t> dims(static_cast<std::size_t>(r.top_degree()) + 1, 0);
  for (std::size_t i = 0; i < r.dim(); ++i) ++dims[static_cast<std::size_t>(r.degree(i))];
  return dims;
}

}  // namespace vircoh
