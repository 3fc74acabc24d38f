#include "vircoh/sym_product.hpp"

#include <algorithm>
#include <memory>

#include "vircoh/errors.hpp"

namespace vircoh {

void GeneratorSet::validate() const {
  if (!group || !ring) throw Error(ErrorCode::InvalidInput, "generator set without group or ring");
  bool has_unit = false;
  const auto unit = GroupRingElement::one(group, ring);
  for (const auto& gen : generators) {
    if (gen.element.is_zero()) throw Error(ErrorCode::InvalidInput, "zero generator '" + gen.label + "'");
    if (gen.element.homogeneous_degree() < 0)
      throw Error(ErrorCode::InvalidInput, "generator '" + gen.label + "' is not homogeneous");
    if (gen.element.support().size() != 1)
      throw Error(ErrorCode::InvalidInput, "generator '" + gen.label + "' spans several group elements");
    if (gen.element == unit) has_unit = true;
  }
  if (!has_unit) throw Error(ErrorCode::InvalidInput, "generator set lacks the unit");
}

SymmetricProduct::SymmetricProduct(ManifoldModel base, std::size_t n, std::size_t max_group_order)
    : base_(std::move(base)), n_(n) {
  if (n_ == 0) throw Error(ErrorCode::InvalidInput, "symmetric product needs n >= 1");
  powers_.reserve(n_ + 1);
  for (std::size_t k = 0; k <= n_; ++k) powers_.push_back(power(base_, k));
  group_ = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(n_, max_group_order));
  action_ = CohAction::permute_factors(group_, ambient().ring_ptr());
  cycles_.reserve(group_->order());
  for (std::size_t g = 0; g < group_->order(); ++g) cycles_.push_back(cycle_decomposition(group_->permutation(g)));
}

std::size_t SymmetricProduct::cycle_count(std::size_t g) const { return cycles(g).size(); }

std::vector<std::size_t> SymmetricProduct::block_digits(std::size_t index, std::size_t blocks) const {
  const std::size_t b = base_.dim();
  std::vector<std::size_t> d(blocks);
  for (std::size_t k = blocks; k-- > 0;) {
    d[k] = index % b;
    index /= b;
  }
  return d;
}

std::size_t SymmetricProduct::block_index(const std::vector<std::size_t>& digits) const {
  std::size_t idx = 0;
  for (const auto d : digits) idx = idx * base_.dim() + d;
  return idx;
}

CohClass SymmetricProduct::place(std::size_t position, const SparseVec& base_class) const {
  if (position < 1 || position > n_) throw Error(ErrorCode::IndexOutOfRange, "factor position out of range");
  SparseVec out;
  std::vector<std::size_t> digits(n_, 0);
  for (const auto& [a, c] : base_class) {
    digits[position - 1] = a;
    out.emplace(block_index(digits), c);
  }
  return {ambient().ring_ptr(), std::move(out)};
}

CohClass SymmetricProduct::diagonal_class(std::size_t i, std::size_t j) const {
  if (i < 1 || j > n_ || i >= j)
    throw Error(ErrorCode::IndexOutOfRange, "diagonal class needs 1 <= i < j <= n");
  CohClass sum(ambient().ring_ptr(), {});
  for (std::size_t a = 0; a < base_.dim(); ++a)
    sum += place(i, SparseVec{{a, Scalar(1)}}) * place(j, base_.dual(a));
  return sum;
}

CohClass SymmetricProduct::edge_product(const std::vector<std::pair<std::size_t, std::size_t>>& edges) const {
  CohClass prod = CohClass::unit(ambient().ring_ptr());
  for (const auto& [a, b] : edges) prod = prod * diagonal_class(std::min(a, b), std::max(a, b));
  return prod;
}

CohClass SymmetricProduct::pullback(std::size_t g, const CohClass& u) const {
  require_same_ring(*u.ring_ptr(), ambient().ring());
  const auto& cyc = cycles(g);
  const auto& target = cycle_model(cyc.size());
  const RingModel& mring = base_.ring();
  SparseVec out;
  for (const auto& [idx, coef] : u.coeffs()) {
    const auto digits = block_digits(idx, n_);
    // Partial tensor over the cycles processed so far: (index in M^k, coefficient).
    std::vector<std::pair<std::size_t, Scalar>> partial{{0, coef}};
    for (const auto& cycle : cyc) {
      SparseVec local{{0, Scalar(1)}};
      for (const auto pos : cycle) local = mring.multiply(local, SparseVec{{digits[pos - 1], Scalar(1)}});
      std::vector<std::pair<std::size_t, Scalar>> next;
      for (const auto& [p, c] : partial)
        for (const auto& [a, c2] : local) next.emplace_back(p * base_.dim() + a, c * c2);
      partial = std::move(next);
      if (partial.empty()) break;
    }
    for (const auto& [p, c] : partial) out[p] += c;
  }
  prune(out);
  return {target.ring_ptr(), std::move(out)};
}

CohClass SymmetricProduct::lift(std::size_t g, const CohClass& alpha) const {
  const auto& cyc = cycles(g);
  require_same_ring(*alpha.ring_ptr(), cycle_model(cyc.size()).ring());
  SparseVec out;
  std::vector<std::size_t> digits(n_, 0);
  for (const auto& [idx, coef] : alpha.coeffs()) {
    const auto cd = block_digits(idx, cyc.size());
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t c = 0; c < cyc.size(); ++c) digits[cyc[c].front() - 1] = cd[c];
    out[block_index(digits)] += coef;
  }
  prune(out);
  return {ambient().ring_ptr(), std::move(out)};
}

CohClass SymmetricProduct::pushforward_unit(std::size_t g) const {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto cycle : cycles(g)) {
    std::sort(cycle.begin(), cycle.end());
    for (std::size_t k = 0; k + 1 < cycle.size(); ++k) edges.emplace_back(cycle[k], cycle[k + 1]);
  }
  return edge_product(edges);
}

CohClass SymmetricProduct::pushforward(std::size_t g, const CohClass& alpha) const {
  return pushforward_unit(g) * lift(g, alpha);
}

CohClass SymmetricProduct::gysin_oracle(std::size_t g, const CohClass& alpha) const {
  const auto& source = fixed_model(g);
  require_same_ring(*alpha.ring_ptr(), source.ring());
  const auto& amb = ambient();
  SparseVec out;
  for (std::size_t b = 0; b < amb.dim(); ++b) {
    const CohClass pulled = pullback(g, CohClass::basis(amb.ring_ptr(), b));
    const Scalar r = source.pairing(alpha.coeffs(), pulled.coeffs());
    if (sgn(r) != 0) add_scaled(out, amb.dual(b), r);
  }
  return {amb.ring_ptr(), std::move(out)};
}

CohClass SymmetricProduct::transport(std::size_t h, std::size_t g, const CohClass& alpha) const {
  const auto& src = cycles(g);
  const std::size_t g2 = group_->conjugate(g, h);
  const auto& dst = cycles(g2);
  require_same_ring(*alpha.ring_ptr(), cycle_model(src.size()).ring());
  const Permutation hinv = inverse(group_->permutation(h));
  // Cycle C of g moves to the cycle h^{-1}(C) of h^{-1} g h.
  std::vector<std::size_t> target(src.size());
  for (std::size_t s = 0; s < src.size(); ++s) {
    const std::size_t moved = hinv.images[src[s].front() - 1] + 1;
    const auto it = std::find_if(dst.begin(), dst.end(), [&](const auto& c) {
      return std::find(c.begin(), c.end(), moved) != c.end();
    });
    target[s] = static_cast<std::size_t>(it - dst.begin());
  }
  SparseVec out;
  for (const auto& [idx, coef] : alpha.coeffs()) {
    const auto d = block_digits(idx, src.size());
    std::vector<std::size_t> nd(dst.size(), 0);
    for (std::size_t s = 0; s < src.size(); ++s) nd[target[s]] = d[s];
    out.emplace(block_index(nd), coef);
  }
  return {cycle_model(dst.size()).ring_ptr(), std::move(out)};
}

QMatrix SymmetricProduct::pullback_matrix(std::size_t g) const {
  const auto& amb = ambient();
  const auto& src = fixed_model(g);
  QMatrix m(amb.dim(), src.dim());
  for (std::size_t b = 0; b < amb.dim(); ++b)
  {
    const CohClass img = pullback(g, CohClass::basis(amb.ring_ptr(), b));
    for (const auto& [k, c] : img.coeffs()) m(b, k) = c;
  }
  return m;
}

QMatrix SymmetricProduct::pushforward_matrix(std::size_t g) const {
  const auto& amb = ambient();
  const auto& src = fixed_model(g);
  QMatrix m(src.dim(), amb.dim());
  for (std::size_t a = 0; a < src.dim(); ++a)
  {
    const CohClass img = pushforward(g, CohClass::basis(src.ring_ptr(), a));
    for (const auto& [k, c] : img.coeffs()) m(a, k) = c;
  }
  return m;
}

GeneratorSet SymmetricProduct::generators() const {
  GeneratorSet set{group_, ambient().ring_ptr(), {}};
  const auto& amb = ambient();
  for (std::size_t b = 0; b < amb.dim(); ++b)
    set.generators.push_back({GroupRingElement::single(group_, amb.ring_ptr(), 0, SparseVec{{b, Scalar(1)}}),
                              amb.ring().name(b)});
  for (std::size_t k = 1; k <= n_; ++k)
    for (std::size_t l = k + 1; l <= n_; ++l) {
      const std::size_t tau = group_->index_of(Permutation::transposition(n_, k, l));
      set.generators.push_back(
          {GroupRingElement::single(group_, amb.ring_ptr(), tau, diagonal_class(k, l).coeffs()),
           "u(" + std::to_string(k) + " " + std::to_string(l) + ")"});
    }
  return set;
}

std::vector<Generator> SymmetricProduct::pushforward_basis() const {
  std::vector<Generator> out;
  for (std::size_t g = 0; g < group_->order(); ++g) {
    const auto& src = fixed_model(g);
    for (std::size_t a = 0; a < src.dim(); ++a) {
      const CohClass img = pushforward(g, CohClass::basis(src.ring_ptr(), a));
      out.push_back({GroupRingElement::single(group_, ambient().ring_ptr(), g, img.coeffs()),
                     "f!(" + src.ring().name(a) + ")" + (g == 0 ? "" : "[" + group_->label(g) + "]")});
    }
  }
  return out;
}

namespace {

std::size_t element_of(const SymmetricProduct& sp, const Permutation& tau) {
  if (tau.size() != sp.n()) throw Error(ErrorCode::InvalidInput, "permutation degree differs from n");
  return sp.group()->index_of(tau);
}

CohClass rebase(const CohClass& c, const ManifoldModel& model) {
  require_same_ring(*c.ring_ptr(), model.ring());
  return {model.ring_ptr(), c.coeffs()};
}

}  // namespace

CohClass diagonal_class(const ManifoldModel& m, std::size_t n, std::size_t i, std::size_t j) {
  return SymmetricProduct(m, n).diagonal_class(i, j);
}

CohClass perm_pullback(const ManifoldModel& m, std::size_t n, const Permutation& tau, const CohClass& u) {
  const SymmetricProduct sp(m, n);
  return sp.pullback(element_of(sp, tau), rebase(u, sp.ambient()));
}

CohClass perm_pushforward(const ManifoldModel& m, std::size_t n, const Permutation& tau, const CohClass& alpha) {
  const SymmetricProduct sp(m, n);
  const std::size_t g = element_of(sp, tau);
  return sp.pushforward(g, rebase(alpha, sp.fixed_model(g)));
}

CohClass gysin_oracle(const ManifoldModel& m, std::size_t n, const Permutation& tau, const CohClass& alpha) {
  const SymmetricProduct sp(m, n);
  const std::size_t g = element_of(sp, tau);
  return sp.gysin_oracle(g, rebase(alpha, sp.fixed_model(g)));
}

GeneratorSet generators_symprod(const ManifoldModel& m, std::size_t n) { return SymmetricProduct(m, n).generators(); }

}  // namespace vircoh
