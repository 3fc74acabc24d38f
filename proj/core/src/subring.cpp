#include "vircoh/subring.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "vircoh/errors.hpp"

namespace vircoh {

GradedSubspace::GradedSubspace(GroupPtr group, RingPtr ring, std::vector<std::vector<std::size_t>> sectors)
    : group_(std::move(group)), ring_(std::move(ring)), sectors_(std::move(sectors)) {
  sector_of_.assign(group_->order(), group_->order());
  for (std::size_t s = 0; s < sectors_.size(); ++s) {
    std::sort(sectors_[s].begin(), sectors_[s].end());
    for (const auto g : sectors_[s]) {
      if (g >= group_->order() || sector_of_[g] != group_->order())
        throw Error(ErrorCode::InvalidInput, "sectors must partition the group");
      sector_of_[g] = s;
    }
  }
  if (std::find(sector_of_.begin(), sector_of_.end(), group_->order()) != sector_of_.end())
    throw Error(ErrorCode::InvalidInput, "sectors must cover the group");
}

GradedSubspace GradedSubspace::by_element(GroupPtr group, RingPtr ring) {
  std::vector<std::vector<std::size_t>> sectors;
  for (std::size_t g = 0; g < group->order(); ++g) sectors.push_back({g});
  return {std::move(group), std::move(ring), std::move(sectors)};
}

GradedSubspace GradedSubspace::by_conjugacy_class(GroupPtr group, RingPtr ring) {
  auto classes = group->conjugacy_classes();
  return {std::move(group), std::move(ring), std::move(classes)};
}

GradedSubspace GradedSubspace::ungraded_by_group(GroupPtr group, RingPtr ring) {
  std::vector<std::size_t> all(group->order());
  std::iota(all.begin(), all.end(), 0);
  return {std::move(group), std::move(ring), {std::move(all)}};
}

std::map<BlockKey, GroupRingElement> GradedSubspace::split(const GroupRingElement& x) const {
  std::map<BlockKey, GroupRingElement> parts;
  for (const auto& [g, v] : x.terms()) {
    for (const auto& [i, c] : v) {
      const BlockKey key{sector_of(g), ring_->degree(i)};
      auto it = parts.try_emplace(key, group_, ring_).first;
      it->second.add(g, SparseVec{{i, c}});
    }
  }
  return parts;
}

std::vector<Scalar> GradedSubspace::coordinates(const BlockKey& key, const GroupRingElement& part) const {
  const auto& sector = sectors_.at(key.first);
  const auto& basis = ring_->basis_of_degree(key.second);
  std::vector<Scalar> coords(sector.size() * basis.size());
  for (const auto& [g, v] : part.terms()) {
    const auto gpos = static_cast<std::size_t>(std::lower_bound(sector.begin(), sector.end(), g) - sector.begin());
    if (gpos == sector.size() || sector[gpos] != g)
      throw Error(ErrorCode::InvalidInput, "element outside the block's sector");
    for (const auto& [i, c] : v) {
      const auto bpos = static_cast<std::size_t>(std::lower_bound(basis.begin(), basis.end(), i) - basis.begin());
      if (bpos == basis.size() || basis[bpos] != i)
        throw Error(ErrorCode::InvalidInput, "element outside the block's degree");
      coords[gpos * basis.size() + bpos] = c;
    }
  }
  return coords;
}

bool GradedSubspace::insert(const GroupRingElement& x, std::string word) {
  if (x.is_zero()) return false;
  const auto parts = split(x);
  if (parts.size() != 1)
    throw Error(ErrorCode::InvalidInput, "inserted element '" + word + "' is not homogeneous within one sector");
  const auto& [key, part] = *parts.begin();
  const auto coords = coordinates(key, part);
  auto [it, created] = blocks_.try_emplace(key);
  Block& block = it->second;
  if (created) block.echelon = QMatrix(0, coords.size());
  if (coords_in_span(block.echelon, coords)) return false;
  QMatrix grown = block.echelon;
  grown.append_row(coords);
  block.echelon = rref(std::move(grown)).basis();
  block.members.push_back(basis_.size());
  basis_.push_back({x, std::move(word)});
  return true;
}

std::optional<std::map<BlockKey, std::vector<Scalar>>> GradedSubspace::member(const GroupRingElement& x) const {
  std::map<BlockKey, std::vector<Scalar>> out;
  for (const auto& [key, part] : split(x)) {
    const auto it = blocks_.find(key);
    if (it == blocks_.end()) return std::nullopt;
    auto c = coords_in_span(it->second.echelon, coordinates(key, part));
    if (!c) return std::nullopt;
    out.emplace(key, std::move(*c));
  }
  return out;
}

std::size_t GradedSubspace::dim(std::size_t sector, int degree) const {
  const auto it = blocks_.find({sector, degree});
  return it == blocks_.end() ? 0 : it->second.members.size();
}

std::vector<std::size_t> GradedSubspace::dims_by_degree() const {
  std::vector<std::size_t> dims(static_cast<std::size_t>(ring_->top_degree()) + 1, 0);
  for (const auto& [key, block] : blocks_) dims[static_cast<std::size_t>(key.second)] += block.members.size();
  return dims;
}

std::vector<BasisElement> GradedSubspace::ordered_basis() const {
  std::vector<BasisElement> out;
  out.reserve(basis_.size());
  for (const auto& [key, block] : blocks_)
    for (const auto m : block.members) out.push_back(basis_[m]);
  return out;
}

const QMatrix& GradedSubspace::echelon(std::size_t sector, int degree) const {
  static const QMatrix empty;
  const auto it = blocks_.find({sector, degree});
  return it == blocks_.end() ? empty : it->second.echelon;
}

std::size_t saturate(GradedSubspace& s, const std::vector<Generator>& gens) {
  const std::size_t before = s.total_dim();
  std::deque<std::size_t> queue;
  for (std::size_t k = 0; k < s.total_dim(); ++k) queue.push_back(k);
  for (const auto& gen : gens)
    if (s.insert(gen.element, gen.label)) queue.push_back(s.total_dim() - 1);
  while (!queue.empty()) {
    const std::size_t r = queue.front();
    queue.pop_front();
    for (const auto& gen : gens) {
      // Copy: insert() may reallocate the basis vector.
      const BasisElement rep = s.basis()[r];
      const GroupRingElement prod = gr_multiply(rep.element, gen.element);
      if (prod.is_zero()) continue;
      std::string word = rep.word == "1" ? gen.label : rep.word + " · " + gen.label;
      if (s.insert(prod, std::move(word))) queue.push_back(s.total_dim() - 1);
    }
  }
  return s.total_dim() - before;
}

void verify_closed(const GradedSubspace& s) {
  const auto& basis = s.basis();
  for (const auto& a : basis)
    for (const auto& b : basis)
      if (!s.contains(gr_multiply(a.element, b.element)))
        throw Error(ErrorCode::ProductEscapesSubspace, "(" + a.word + ") * (" + b.word + ") leaves the subspace");
}

GradedSubspace close_subring(const GeneratorSet& gens) {
  gens.validate();
  GradedSubspace s = GradedSubspace::by_element(gens.group, gens.ring);
  s.insert(GroupRingElement::one(gens.group, gens.ring), "1");
  saturate(s, gens.generators);
  verify_closed(s);
  return s;
}

std::vector<std::size_t> DimsTable::row(const std::string& label) const {
  const auto it = std::find(rows.begin(), rows.end(), label);
  if (it == rows.end()) throw Error(ErrorCode::InvalidInput, "no row labelled '" + label + "'");
  return dims[static_cast<std::size_t>(it - rows.begin())];
}

DimsTable dims_table(const GradedSubspace& s) {
  DimsTable t;
  for (int d = 0; d <= s.ring()->top_degree(); d += 2) t.degrees.push_back(d);
  for (std::size_t sec = 0; sec < s.sectors().size(); ++sec) {
    t.rows.push_back(s.group()->label(s.sectors()[sec].front()));
    std::vector<std::size_t> row;
    for (const int d : t.degrees) row.push_back(s.dim(sec, d));
    t.dims.push_back(std::move(row));
  }
  t.total = s.total_dim();
  return t;
}

GradedSubspace invariant_subring(const GradedSubspace& s, const CohAction& act) {
  for (const auto& b : s.basis())
    for (std::size_t h = 0; h < s.group()->order(); ++h)
      if (!s.contains(g_action(b.element, h, act)))
        throw Error(ErrorCode::NotGStable, "(" + b.word + ") . " + s.group()->label(h) + " leaves the subspace");
  GradedSubspace inv = GradedSubspace::by_conjugacy_class(s.group(), s.ring());
  for (const auto& b : s.ordered_basis()) {
    const GroupRingElement r = reynolds(b.element, act);
    for (auto& [key, part] : inv.split(r)) inv.insert(part, "R(" + b.word + ")");
  }
  verify_closed(inv);
  return inv;
}

std::vector<std::pair<std::size_t, Scalar>> StructureConstants::product(std::size_t i, std::size_t j) const {
  for (const auto& e : products)
    if (e.i == i && e.j == j) return e.terms;
  return {};
}

StructureConstants structure_constants(const GradedSubspace& s, const std::optional<std::vector<Generator>>& basis) {
  StructureConstants sc;
  if (basis) {
    for (const auto& g : *basis) {
      sc.basis.push_back(g.element);
      sc.labels.push_back(g.label);
    }
  } else {
    for (const auto& b : s.ordered_basis()) {
      sc.basis.push_back(b.element);
      sc.labels.push_back(b.word);
    }
  }
  if (sc.basis.size() != s.total_dim())
    throw Error(ErrorCode::InvalidInput, "basis has " + std::to_string(sc.basis.size()) + " elements, subspace has dimension " +
                                             std::to_string(s.total_dim()));

  // Rows of each block in terms of the chosen basis.
  std::map<BlockKey, QMatrix> rows;
  std::map<BlockKey, std::vector<std::size_t>> owners;
  for (std::size_t k = 0; k < sc.basis.size(); ++k) {
    const auto parts = s.split(sc.basis[k]);
    if (parts.size() != 1 || !s.contains(sc.basis[k]))
      throw Error(ErrorCode::InvalidInput, "basis element '" + sc.labels[k] + "' is not a homogeneous element of the subspace");
    const auto& [key, part] = *parts.begin();
    const auto coords = s.coordinates(key, part);
    auto [it, created] = rows.try_emplace(key, QMatrix(0, coords.size()));
    it->second.append_row(coords);
    owners[key].push_back(k);
  }
  for (const auto& [key, m] : rows)
    if (rank(m) != m.rows())
      throw Error(ErrorCode::InvalidInput, "basis elements are linearly dependent");

  for (std::size_t i = 0; i < sc.basis.size(); ++i)
    for (std::size_t j = 0; j < sc.basis.size(); ++j) {
      const GroupRingElement p = gr_multiply(sc.basis[i], sc.basis[j]);
      if (p.is_zero()) continue;
      StructureConstants::Entry e{i, j, {}};
      for (const auto& [key, part] : s.split(p)) {
        const auto it = rows.find(key);
        std::optional<std::vector<Scalar>> c;
        if (it != rows.end()) c = solve_combination(it->second, s.coordinates(key, part));
        if (!c)
          throw Error(ErrorCode::ProductEscapesSubspace, sc.labels[i] + " * " + sc.labels[j] + " leaves the subspace");
        const auto& own = owners[key];
        for (std::size_t r = 0; r < c->size(); ++r)
          if (sgn((*c)[r]) != 0) {
            e.terms.emplace_back(own[r], (*c)[r]);
            if (!is_integral((*c)[r])) sc.integral = false;
          }
      }
      std::sort(e.terms.begin(), e.terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      sc.products.push_back(std::move(e));
    }
  return sc;
}

}  // namespace vircoh
