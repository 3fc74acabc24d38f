#include "vircoh/group_ring.hpp"

#include <algorithm>
#include <numeric>

#include "vircoh/errors.hpp"

namespace vircoh {

Permutation Permutation::identity(std::size_t n) {
  Permutation p;
  p.images.resize(n);
  std::iota(p.images.begin(), p.images.end(), 0);
  return p;
}

Permutation Permutation::transposition(std::size_t n, std::size_t k, std::size_t l) {
  if (k < 1 || l < 1 || k > n || l > n || k == l)
    throw Error(ErrorCode::IndexOutOfRange, "transposition positions out of range");
  Permutation p = identity(n);
  std::swap(p.images[k - 1], p.images[l - 1]);
  return p;
}

bool Permutation::is_transposition() const {
  std::size_t moved = 0;
  for (std::size_t i = 0; i < images.size(); ++i)
    if (images[i] != i) ++moved;
  return moved == 2;
}

Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.size() != h.size()) throw Error(ErrorCode::DimensionMismatch, "permutations of different degree");
  Permutation out;
  out.images.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.images[i] = g.images[h.images[i]];
  return out;
}

Permutation inverse(const Permutation& g) {
  Permutation out;
  out.images.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out.images[g.images[i]] = i;
  return out;
}

bool is_valid_permutation(const std::vector<std::size_t>& images) {
  std::vector<bool> seen(images.size(), false);
  for (const auto v : images) {
    if (v >= images.size() || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

std::vector<std::vector<std::size_t>> cycle_decomposition(const Permutation& g) {
  if (!is_valid_permutation(g.images)) throw Error(ErrorCode::InvalidInput, "not a permutation");
  std::vector<std::vector<std::size_t>> cycles;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t start = 0; start < g.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> cycle;
    for (std::size_t i = start; !seen[i]; i = g.images[i]) {
      seen[i] = true;
      cycle.push_back(i + 1);
    }
    cycles.push_back(std::move(cycle));
  }
  return cycles;
}

std::string cycle_notation(const Permutation& g) {
  std::string out;
  for (const auto& c : cycle_decomposition(g)) {
    if (c.size() == 1) continue;
    out += '(';
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (k) out += ' ';
      out += std::to_string(c[k]);
    }
    out += ')';
  }
  return out.empty() ? "1" : out;
}

namespace {

std::size_t factorial(std::size_t n, std::size_t cap) {
  std::size_t f = 1;
  for (std::size_t k = 2; k <= n; ++k) {
    f *= k;
    if (f > cap) return cap + 1;
  }
  return f;
}

// Rank of a permutation in lexicographic order of one-line notation.
std::size_t lex_rank(const Permutation& p) {
  const std::size_t n = p.size();
  std::size_t rank = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t smaller = 0;
    for (std::size_t j = i + 1; j < n; ++j)
      if (p.images[j] < p.images[i]) ++smaller;
    rank = rank * (n - i) + smaller;
  }
  return rank;
}

}  // namespace

void FiniteGroup::finish() {
  const std::size_t n = order();
  inv_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (mul(a, b) == 0) inv_[a] = b;
}

FiniteGroup FiniteGroup::symmetric(std::size_t n, std::size_t max_order) {
  if (n == 0) throw Error(ErrorCode::InvalidInput, "symmetric group needs n >= 1");
  const std::size_t size = factorial(n, max_order);
  if (size > max_order)
    throw Error(ErrorCode::TooLarge, "S_" + std::to_string(n) + " exceeds group order cap " + std::to_string(max_order));
  FiniteGroup g;
  g.kind_ = GroupKind::Symmetric;
  g.degree_ = n;
  Permutation p = Permutation::identity(n);
  do {
    g.perms_.push_back(p);
    g.labels_.push_back(cycle_notation(p));
  } while (std::next_permutation(p.images.begin(), p.images.end()));
  g.mul_.resize(size * size);
  for (std::size_t a = 0; a < size; ++a)
    for (std::size_t b = 0; b < size; ++b) g.mul_[a * size + b] = lex_rank(compose(g.perms_[a], g.perms_[b]));
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::cyclic(std::size_t p, std::size_t max_order) {
  if (p == 0) throw Error(ErrorCode::InvalidInput, "cyclic group needs p >= 1");
  if (p > max_order) throw Error(ErrorCode::TooLarge, "Z/" + std::to_string(p) + " exceeds group order cap");
  FiniteGroup g;
  g.kind_ = GroupKind::Cyclic;
  for (std::size_t i = 0; i < p; ++i)
    g.labels_.push_back(i == 0 ? "1" : (i == 1 ? "λ" : "λ^" + std::to_string(i)));
  g.mul_.resize(p * p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) g.mul_[a * p + b] = (a + b) % p;
  g.finish();
  return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::string> labels, std::vector<std::vector<std::size_t>> mul,
                                    std::size_t max_order) {
  const std::size_t n = labels.size();
  if (n == 0) throw Error(ErrorCode::NotAGroup, "empty element list");
  if (n > max_order) throw Error(ErrorCode::TooLarge, "table group exceeds order cap");
  if (mul.size() != n) throw Error(ErrorCode::NotAGroup, "multiplication table has wrong row count");
  FiniteGroup g;
  g.kind_ = GroupKind::Table;
  g.labels_ = std::move(labels);
  g.mul_.reserve(n * n);
  for (const auto& row : mul) {
    if (row.size() != n) throw Error(ErrorCode::NotAGroup, "multiplication table row has wrong length");
    for (const auto v : row) {
      if (v >= n) throw Error(ErrorCode::NotAGroup, "multiplication table entry out of range");
      g.mul_.push_back(v);
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (g.mul(0, a) != a || g.mul(a, 0) != a) throw Error(ErrorCode::NotAGroup, "element 0 is not the identity");
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<bool> row(n, false);
    for (std::size_t b = 0; b < n; ++b) row[g.mul(a, b)] = true;
    if (std::find(row.begin(), row.end(), false) != row.end())
      throw Error(ErrorCode::NotAGroup, "row " + std::to_string(a) + " is not a permutation (no inverses)");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c)))
          throw Error(ErrorCode::NotAGroup, "multiplication is not associative");
  g.finish();
  return g;
}

std::optional<std::size_t> FiniteGroup::find_label(const std::string& label) const {
  const auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - labels_.begin());
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = a + 1; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<std::vector<std::size_t>> FiniteGroup::conjugacy_classes() const {
  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> seen(order(), false);
  for (std::size_t g = 0; g < order(); ++g) {
    if (seen[g]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t h = 0; h < order(); ++h) {
      const std::size_t c = conjugate(g, h);
      if (!seen[c]) {
        seen[c] = true;
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

const Permutation& FiniteGroup::permutation(std::size_t a) const {
  if (kind_ != GroupKind::Symmetric) throw Error(ErrorCode::InvalidInput, "not a symmetric group");
  return perms_.at(a);
}

std::size_t FiniteGroup::index_of(const Permutation& p) const {
  if (kind_ != GroupKind::Symmetric || p.size() != degree_ || !is_valid_permutation(p.images))
    throw Error(ErrorCode::InvalidInput, "permutation does not belong to this group");
  return lex_rank(p);
}

std::size_t FiniteGroup::exponent(std::size_t a) const {
  if (kind_ != GroupKind::Cyclic) throw Error(ErrorCode::InvalidInput, "not a cyclic group");
  if (a >= order()) throw Error(ErrorCode::IndexOutOfRange, "group element");
  return a;
}

std::vector<std::vector<std::size_t>> FiniteGroup::table() const {
  std::vector<std::vector<std::size_t>> t(order());
  for (std::size_t a = 0; a < order(); ++a)
    for (std::size_t b = 0; b < order(); ++b) t[a].push_back(mul(a, b));
  return t;
}

FiniteGroup build_group(const GroupSpec& spec, std::size_t max_order) {
  switch (spec.kind) {
    case GroupKind::Symmetric: return FiniteGroup::symmetric(spec.n, max_order);
    case GroupKind::Cyclic: return FiniteGroup::cyclic(spec.p, max_order);
    case GroupKind::Table: return FiniteGroup::from_table(spec.elements, spec.mul, max_order);
  }
  throw Error(ErrorCode::InvalidInput, "unknown group kind");
}

// ---------------------------------------------------------------------------

CohAction CohAction::trivial(GroupPtr group, RingPtr ring) {
  CohAction a;
  a.kind_ = Kind::Trivial;
  a.group_ = std::move(group);
  a.ring_ = std::move(ring);
  std::vector<std::size_t> id(a.ring_->dim());
  std::iota(id.begin(), id.end(), 0);
  a.images_.assign(a.group_->order(), id);
  return a;
}

CohAction CohAction::permute_factors(GroupPtr group, RingPtr ring) {
  if (group->kind() != GroupKind::Symmetric)
    throw Error(ErrorCode::InvalidInput, "factor permutation needs a symmetric group");
  const std::size_t n = group->degree();
  const std::size_t f = ring->factor_count();
  if (f % n != 0) throw Error(ErrorCode::InvalidInput, "ambient ring is not an n-fold tensor power");
  const std::size_t run = f / n;
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t r = 0; r < run; ++r)
      if (!(*ring->factors()[k * run + r] == *ring->factors()[r]))
        throw Error(ErrorCode::InvalidInput, "tensor blocks differ; cannot permute factors");
  std::size_t block = 1;
  for (std::size_t r = 0; r < run; ++r) block *= ring->factors()[r]->dim();

  CohAction a;
  a.kind_ = Kind::PermuteFactors;
  a.group_ = std::move(group);
  a.ring_ = std::move(ring);
  const std::size_t dim = a.ring_->dim();
  a.images_.resize(a.group_->order());
  std::vector<std::size_t> old_digits(n);
  for (std::size_t h = 0; h < a.group_->order(); ++h) {
    const auto& perm = a.group_->permutation(h);
    auto& img = a.images_[h];
    img.resize(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::size_t rest = i;
      for (std::size_t k = n; k-- > 0;) {
        old_digits[k] = rest % block;
        rest /= block;
      }
      // (h^{-1})^* moves the class in factor i to factor h^{-1}(i): new[j] = old[h(j)].
      std::size_t idx = 0;
      for (std::size_t j = 0; j < n; ++j) idx = idx * block + old_digits[perm.images[j]];
      img[i] = idx;
    }
  }
  a.validate();
  return a;
}

void CohAction::validate() const {
  const std::size_t dim = ring_->dim();
  if (!is_identity(0)) throw Error(ErrorCode::InvalidInput, "identity does not act trivially");
  for (std::size_t h = 0; h < group_->order(); ++h)
    for (std::size_t i = 0; i < dim; ++i)
      if (ring_->degree(images_[h][i]) != ring_->degree(i))
        throw Error(ErrorCode::InvalidInput, "action does not preserve degree");
  // Right action: acting by h then k equals acting by hk. Skipped only for
  // very large (group, ring) pairs where it is correct by construction.
  const std::size_t g = group_->order();
  if (g * g * dim > 4'000'000) return;
  for (std::size_t h = 0; h < g; ++h)
    for (std::size_t k = 0; k < g; ++k) {
      const auto& hk = images_[group_->mul(h, k)];
      for (std::size_t i = 0; i < dim; ++i)
        if (images_[k][images_[h][i]] != hk[i]) throw Error(ErrorCode::InvalidInput, "not a right action");
    }
}

SparseVec CohAction::apply(std::size_t h, const SparseVec& v) const {
  const auto& img = images_.at(h);
  SparseVec out;
  for (const auto& [i, c] : v) out.emplace(img.at(i), c);
  return out;
}

bool CohAction::is_identity(std::size_t h) const {
  const auto& img = images_.at(h);
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img[i] != i) return false;
  return true;
}

std::string to_string(CohAction::Kind kind) {
  return kind == CohAction::Kind::Trivial ? "trivial" : "permute_factors";
}

// ---------------------------------------------------------------------------

GroupRingElement::GroupRingElement(GroupPtr group, RingPtr ring) : group_(std::move(group)), ring_(std::move(ring)) {}

GroupRingElement GroupRingElement::single(GroupPtr group, RingPtr ring, std::size_t g, SparseVec coeff) {
  GroupRingElement x(std::move(group), std::move(ring));
  x.add(g, coeff);
  return x;
}

GroupRingElement GroupRingElement::one(GroupPtr group, RingPtr ring) {
  return single(std::move(group), std::move(ring), 0, SparseVec{{0, Scalar(1)}});
}

SparseVec GroupRingElement::coeff(std::size_t g) const {
  const auto it = terms_.find(g);
  return it == terms_.end() ? SparseVec{} : it->second;
}

int GroupRingElement::homogeneous_degree() const {
  int deg = -1;
  for (const auto& [g, v] : terms_)
    for (const auto& [i, _] : v) {
      const int d = ring_->degree(i);
      if (deg == -1) deg = d;
      else if (deg != d) return -1;
    }
  return deg;
}

std::vector<std::size_t> GroupRingElement::support() const {
  std::vector<std::size_t> s;
  for (const auto& [g, _] : terms_) s.push_back(g);
  return s;
}

void GroupRingElement::add(std::size_t g, const SparseVec& coeff, const Scalar& factor) {
  if (group_ && g >= group_->order()) throw Error(ErrorCode::IndexOutOfRange, "group element index");
  if (ring_ && !coeff.empty() && coeff.rbegin()->first >= ring_->dim())
    throw Error(ErrorCode::IndexOutOfRange, "coefficient index outside ambient ring");
  auto& slot = terms_[g];
  add_scaled(slot, coeff, factor);
  if (slot.empty()) terms_.erase(g);
}

void GroupRingElement::check_compatible(const GroupRingElement& o) const {
  if (group_ && o.group_ && group_ != o.group_ && !(*group_ == *o.group_))
    throw Error(ErrorCode::ModelMismatch, "group ring elements over different groups");
  if (ring_ && o.ring_) require_same_ring(*ring_, *o.ring_);
}

GroupRingElement& GroupRingElement::operator+=(const GroupRingElement& o) {
  check_compatible(o);
  if (!group_) group_ = o.group_;
  if (!ring_) ring_ = o.ring_;
  if (&o == this) {
    const GroupRingElement copy = o;
    return *this += copy;
  }
  for (const auto& [g, v] : o.terms_) add(g, v);
  return *this;
}

GroupRingElement& GroupRingElement::operator-=(const GroupRingElement& o) {
  check_compatible(o);
  if (!group_) group_ = o.group_;
  if (!ring_) ring_ = o.ring_;
  if (&o == this) {
    terms_.clear();
    return *this;
  }
  for (const auto& [g, v] : o.terms_) add(g, v, Scalar(-1));
  return *this;
}

GroupRingElement operator*(const Scalar& s, const GroupRingElement& x) {
  GroupRingElement out(x.group_, x.ring_);
  for (const auto& [g, v] : x.terms_) out.add(g, v, s);
  return out;
}

GroupRingElement gr_multiply(const GroupRingElement& x, const GroupRingElement& y) {
  if (!x.group() || !y.group() || !x.ring() || !y.ring())
    throw Error(ErrorCode::ModelMismatch, "group ring element without group or ring");
  if (x.group() != y.group() && !(*x.group() == *y.group()))
    throw Error(ErrorCode::ModelMismatch, "group ring elements over different groups");
  require_same_ring(*x.ring(), *y.ring());
  GroupRingElement out(x.group(), x.ring());
  for (const auto& [g, a] : x.terms())
    for (const auto& [h, b] : y.terms()) out.add(x.group()->mul(g, h), x.ring()->multiply(a, b));
  return out;
}

GroupRingElement operator*(const GroupRingElement& x, const GroupRingElement& y) { return gr_multiply(x, y); }

GroupRingElement power(const GroupRingElement& x, unsigned exponent) {
  GroupRingElement out = GroupRingElement::one(x.group(), x.ring());
  for (unsigned k = 0; k < exponent; ++k) out = gr_multiply(out, x);
  return out;
}

GroupRingElement g_action(const GroupRingElement& x, std::size_t h, const CohAction& act) {
  GroupRingElement out(x.group(), x.ring());
  for (const auto& [g, a] : x.terms()) out.add(x.group()->conjugate(g, h), act.apply(h, a));
  return out;
}

GroupRingElement reynolds(const GroupRingElement& x, const CohAction& act) {
  const auto& group = x.group() ? x.group() : act.group();
  GroupRingElement out(group, x.ring() ? x.ring() : act.ring());
  const Scalar weight(1, static_cast<unsigned long>(group->order()));
  for (std::size_t h = 0; h < group->order(); ++h) {
    const GroupRingElement moved = g_action(x, h, act);
    for (const auto& [g, a] : moved.terms()) out.add(g, a, weight);
  }
  return out;
}

}  // namespace vircoh
