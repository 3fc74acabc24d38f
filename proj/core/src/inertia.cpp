#include "vircoh/inertia.hpp"

#include <algorithm>
#include <memory>

#include "vircoh/errors.hpp"

namespace vircoh {

namespace {

CohAction make_action(const GroupPtr& group, const RingPtr& ring, CohAction::Kind kind) {
  return kind == CohAction::Kind::Trivial ? CohAction::trivial(group, ring) : CohAction::permute_factors(group, ring);
}

void require_shape(const QMatrix& m, std::size_t rows, std::size_t cols, const std::string& what) {
  if (m.rows() != rows || m.cols() != cols)
    throw Error(ErrorCode::DimensionMismatch, what + " is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                                                  ", expected " + std::to_string(rows) + "x" + std::to_string(cols));
}

// Every row r must land in degree deg_src(r) + shift.
void require_degree_shift(const QMatrix& m, const RingModel& src, const RingModel& dst, int shift, const std::string& what) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (sgn(m(r, c)) != 0 && dst.degree(c) != src.degree(r) + shift)
        throw Error(ErrorCode::DegreeMismatch, what + " sends " + src.name(r) + " to degree " +
                                                   std::to_string(dst.degree(c)) + ", expected " +
                                                   std::to_string(src.degree(r) + shift));
}

SparseVec unit_vec() { return SparseVec{{0, Scalar(1)}}; }

std::string sparse_text(const RingModel& ring, const SparseVec& v) {
  if (v.empty()) return "0";
  std::string out;
  for (const auto& [i, c] : v) {
    if (!out.empty()) out += " + ";
    out += (c == 1 ? "" : to_string(c) + "*") + ring.name(i);
  }
  return out;
}

}  // namespace

InertiaScenario::InertiaScenario(GroupPtr group, ManifoldModel ambient, CohAction::Kind action)
    : group_(std::move(group)), ambient_(std::move(ambient)) {
  action_ = make_action(group_, ambient_.ring_ptr(), action);
}

void InertiaScenario::add_component(FixedComponent c) {
  if (finalized_) throw Error(ErrorCode::InvalidInput, "scenario already finalized");
  for (const auto& other : components_)
    if (other.id == c.id) throw Error(ErrorCode::InvalidInput, "duplicate component id '" + c.id + "'");
  components_.push_back(std::move(c));
}

void InertiaScenario::add_pair(PairData p) {
  if (finalized_) throw Error(ErrorCode::InvalidInput, "scenario already finalized");
  pending_pairs_.push_back(std::move(p));
}

std::size_t InertiaScenario::component_index(const std::string& id) const {
  for (std::size_t c = 0; c < components_.size(); ++c)
    if (components_[c].id == id) return c;
  throw Error(ErrorCode::InvalidInput, "unknown component '" + id + "'");
}

std::vector<std::size_t> InertiaScenario::components_of(std::size_t g) const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < components_.size(); ++c)
    if (components_[c].g == g) out.push_back(c);
  return out;
}

const PairData& InertiaScenario::pair(std::size_t ca, std::size_t cb) const {
  const auto it = pairs_.find({ca, cb});
  if (it == pairs_.end())
    throw Error(ErrorCode::MissingPairData,
                "no pair data for (" + component(ca).id + ", " + component(cb).id + ")");
  return it->second;
}

int InertiaScenario::codim(std::size_t c) const { return ambient_.dimension() - component(c).model.dimension(); }

int InertiaScenario::shifted_degree(std::size_t c, std::size_t basis_index) const {
  return component(c).model.ring().degree(basis_index) + codim(c);
}

std::size_t InertiaScenario::total_dim() const {
  std::size_t n = 0;
  for (const auto& c : components_) n += c.model.dim();
  return n;
}

const QMatrix& InertiaScenario::stacked_push(std::size_t g) const {
  require_finalized();
  return stacked_.at(g);
}

void InertiaScenario::require_finalized() const {
  if (!finalized_) throw Error(ErrorCode::InvalidInput, "scenario used before finalize()");
}

void InertiaScenario::validate_component(const FixedComponent& c) const {
  const std::string what = "component '" + c.id + "'";
  if (c.g >= group_->order()) throw Error(ErrorCode::IndexOutOfRange, what + " has no valid group element");
  const RingModel& y = ambient_.ring();
  const RingModel& r = c.model.ring();
  const int cd = ambient_.dimension() - c.model.dimension();
  if (cd < 0) throw Error(ErrorCode::DegreeMismatch, what + " has larger dimension than Y");
  require_shape(c.push, r.dim(), y.dim(), what + " pushforward");
  require_shape(c.pull, y.dim(), r.dim(), what + " pullback");
  require_degree_shift(c.push, r, y, cd, what + " pushforward");
  require_degree_shift(c.pull, y, r, 0, what + " pullback");
  if (c.pull.row_sparse(0) != unit_vec()) throw Error(ErrorCode::InvalidInput, what + " pullback does not preserve the unit");
  // Projection formula f_!(f^*u * a) = u * f_!(a).
  for (std::size_t u = 0; u < y.dim(); ++u) {
    const SparseVec fu = c.pull.row_sparse(u);
    for (std::size_t a = 0; a < r.dim(); ++a) {
      const SparseVec lhs = apply_rows(c.push, r.multiply(fu, SparseVec{{a, Scalar(1)}}));
      const SparseVec rhs = y.multiply(SparseVec{{u, Scalar(1)}}, c.push.row_sparse(a));
      if (lhs != rhs)
        throw Error(ErrorCode::InvalidInput, what + " violates the projection formula at (" + y.name(u) + ", " +
                                                 r.name(a) + ")");
    }
  }
}

void InertiaScenario::validate_pair(std::size_t ca, std::size_t cb, const PairData& p, bool check_excess_degree) const {
  const FixedComponent& a = component(ca);
  const FixedComponent& b = component(cb);
  const std::string what = "pair (" + a.id + ", " + b.id + ")";
  const std::size_t gh = group_->mul(a.g, b.g);
  for (std::size_t k = 0; k < p.intersections.size(); ++k) {
    const Intersection& in = p.intersections[k];
    const std::string iw = what + " intersection " + std::to_string(k);
    const RingModel& ir = in.model.ring();
    require_shape(in.ig, a.model.dim(), ir.dim(), iw + " restriction from " + a.id);
    require_shape(in.ih, b.model.dim(), ir.dim(), iw + " restriction from " + b.id);
    require_degree_shift(in.ig, a.model.ring(), ir, 0, iw + " restriction from " + a.id);
    require_degree_shift(in.ih, b.model.ring(), ir, 0, iw + " restriction from " + b.id);
    const std::size_t t = component_index(in.target);
    const FixedComponent& target = component(t);
    if (target.g != gh)
      throw Error(ErrorCode::InvalidInput, iw + " targets '" + target.id + "', which is not a component of Y^(" +
                                               group_->label(gh) + ")");
    const int shift = target.model.dimension() - in.model.dimension();
    if (shift < 0) throw Error(ErrorCode::DegreeMismatch, iw + " is larger than its target");
    require_shape(in.ipush, ir.dim(), target.model.dim(), iw + " pushforward");
    require_degree_shift(in.ipush, ir, target.model.ring(), shift, iw + " pushforward");
    for (const auto& [i, c] : in.euler)
      if (i >= ir.dim()) throw Error(ErrorCode::IndexOutOfRange, iw + " excess class index out of range");
    if (!in.euler.empty()) {
      const int deg = CohClass(in.model.ring_ptr(), in.euler).homogeneous_degree();
      if (deg < 0) throw Error(ErrorCode::DegreeMismatch, iw + " excess class is not homogeneous");
      const int expected =
          ambient_.dimension() + in.model.dimension() - a.model.dimension() - b.model.dimension();
      if (check_excess_degree && deg != expected)
        throw Error(ErrorCode::DegreeMismatch, iw + " excess class has degree " + std::to_string(deg) + ", expected " +
                                                   std::to_string(expected));
    }
  }
}

void InertiaScenario::finalize(bool check_excess_degree) {
  if (finalized_) return;
  excess_degree_checked_ = check_excess_degree;
  const std::size_t ydim = ambient_.dim();
  const auto ids = components_of(0);
  if (ids.empty()) {
    components_.insert(components_.begin(),
                       FixedComponent{0, "Y", ambient_, QMatrix::identity(ydim), QMatrix::identity(ydim)});
  } else {
    if (ids.size() != 1) throw Error(ErrorCode::InvalidInput, "the identity must have exactly one fixed component");
    const FixedComponent& y = components_[ids.front()];
    if (!(y.model == ambient_) || !(y.push == QMatrix::identity(ydim)) || !(y.pull == QMatrix::identity(ydim)))
      throw Error(ErrorCode::InvalidInput, "the identity's fixed component must be Y with identity maps");
    std::rotate(components_.begin(), components_.begin() + static_cast<std::ptrdiff_t>(ids.front()),
                components_.begin() + static_cast<std::ptrdiff_t>(ids.front()) + 1);
  }
  for (const auto& c : components_) validate_component(c);

  for (auto& p : pending_pairs_) {
    const std::pair<std::size_t, std::size_t> key{component_index(p.cg), component_index(p.ch)};
    if (pairs_.count(key)) throw Error(ErrorCode::InvalidInput, "duplicate pair (" + p.cg + ", " + p.ch + ")");
    pairs_.emplace(key, std::move(p));
  }
  pending_pairs_.clear();

  // Pairs with the identity sector: the intersection is the other component.
  const std::string yid = components_.front().id;
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const FixedComponent& fc = components_[c];
    const std::size_t d = fc.model.dim();
    const SparseVec unit = unit_vec();
    if (!pairs_.count({0, c}))
      pairs_.emplace(std::make_pair(std::size_t{0}, c),
                     PairData{yid, fc.id, {Intersection{fc.model, fc.pull, QMatrix::identity(d), unit, fc.id, QMatrix::identity(d)}}});
    if (!pairs_.count({c, 0}))
      pairs_.emplace(std::make_pair(c, std::size_t{0}),
                     PairData{fc.id, yid, {Intersection{fc.model, QMatrix::identity(d), fc.pull, unit, fc.id, QMatrix::identity(d)}}});
  }

  bool disconnected = false;
  for (std::size_t a = 0; a < components_.size(); ++a)
    for (std::size_t b = 0; b < components_.size(); ++b) {
      const auto it = pairs_.find({a, b});
      if (it == pairs_.end())
        throw Error(ErrorCode::MissingPairData,
                    "no pair data for (" + components_[a].id + ", " + components_[b].id + ")");
      validate_pair(a, b, it->second, check_excess_degree);
      if (it->second.intersections.size() > 1) disconnected = true;
    }
  if (disconnected)
    notes_.push_back("disconnected intersections: products are summed over intersection components");

  stacked_.assign(group_->order(), QMatrix(0, ydim));
  sector_injective_.assign(group_->order(), true);
  for (std::size_t g = 0; g < group_->order(); ++g) {
    for (const auto c : components_of(g))
      for (std::size_t r = 0; r < components_[c].push.rows(); ++r) stacked_[g].append_row(components_[c].push.row(r));
    sector_injective_[g] = rank(stacked_[g]) == stacked_[g].rows();
  }
  finalized_ = true;
}

ActionImage InertiaScenario::act(std::size_t c, std::size_t a, std::size_t h) const {
  require_finalized();
  const FixedComponent& fc = component(c);
  const std::size_t g2 = group_->conjugate(fc.g, h);
  if (sector_injective_[g2]) {
    const SparseVec target = action_.apply(h, fc.push.row_sparse(a));
    const auto sol = solve_combination(stacked_[g2], densify(target, ambient_.dim()));
    if (!sol)
      throw Error(ErrorCode::NotDerivable, "(" + fc.model.ring().name(a) + "@" + fc.id + ") . " + group_->label(h) +
                                               " is not in the image of Y^(" + group_->label(g2) + ")");
    ActionImage out;
    std::size_t offset = 0;
    for (const auto c2 : components_of(g2)) {
      const std::size_t d = components_[c2].model.dim();
      SparseVec v = sparsify(std::span<const Scalar>(sol->data() + offset, d));
      if (!v.empty()) out.image.emplace(c2, std::move(v));
      offset += d;
    }
    return out;
  }
  if (g2 == fc.g && action_.is_identity(h)) return {{{c, SparseVec{{a, Scalar(1)}}}}, true};
  throw Error(ErrorCode::NotDerivable, "action of " + group_->label(h) + " on component '" + fc.id +
                                           "' cannot be derived: Y^(" + group_->label(g2) +
                                           ") does not inject and the action is not trivial");
}

InertiaElement virtual_product(const InertiaScenario& sc, std::size_t ca, const SparseVec& alpha, std::size_t cb,
                               const SparseVec& beta) {
  InertiaElement out;
  if (alpha.empty() || beta.empty()) return out;
  for (const auto& in : sc.pair(ca, cb).intersections) {
    const RingModel& r = in.model.ring();
    const SparseVec prod = r.multiply(r.multiply(apply_rows(in.ig, alpha), apply_rows(in.ih, beta)), in.euler);
    if (prod.empty()) continue;
    auto& slot = out[sc.component_index(in.target)];
    add_scaled(slot, apply_rows(in.ipush, prod), Scalar(1));
  }
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

InertiaElement virtual_product(const InertiaScenario& sc, const InertiaElement& x, const InertiaElement& y) {
  InertiaElement out;
  for (const auto& [ca, a] : x)
    for (const auto& [cb, b] : y)
      for (auto& [c, v] : virtual_product(sc, ca, a, cb, b)) add_scaled(out[c], v, Scalar(1));
  std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
  return out;
}

GroupRingElement to_group_ring(const InertiaScenario& sc, const InertiaElement& x) {
  GroupRingElement out(sc.group(), sc.ambient().ring_ptr());
  for (const auto& [c, v] : x) out.add(sc.component(c).g, apply_rows(sc.component(c).push, v));
  return out;
}

InertiaScenario build_scenario_symprod2(const ManifoldModel& m) {
  const SymmetricProduct sp(m, 2);
  const std::size_t tau = 1;
  InertiaScenario sc(sp.group(), sp.ambient(), CohAction::Kind::PermuteFactors);
  const ManifoldModel& delta = sp.fixed_model(tau);
  sc.add_component({tau, "Delta", delta, sp.pushforward_matrix(tau), sp.pullback_matrix(tau)});
  const auto d = delta.dim();
  // (Δ_!1)(Δ_!1) = χ(M) Ω ⊗ Ω forces e = χ(M) Ω on the self-intersection.
  sc.add_pair({"Delta", "Delta",
               {Intersection{delta, QMatrix::identity(d), QMatrix::identity(d),
                             SparseVec{{delta.top_index(), Scalar(static_cast<long>(euler_char(m)))}}, "Y",
                             sp.pushforward_matrix(tau)}}});
  sc.finalize();
  return sc;
}

InertiaScenario build_scenario_symprod2_corrupted(const ManifoldModel& m) {
  const SymmetricProduct sp(m, 2);
  const std::size_t tau = 1;
  InertiaScenario sc(sp.group(), sp.ambient(), CohAction::Kind::PermuteFactors);
  const ManifoldModel& delta = sp.fixed_model(tau);
  sc.add_component({tau, "Delta", delta, sp.pushforward_matrix(tau), sp.pullback_matrix(tau)});
  const auto d = delta.dim();
  sc.add_pair({"Delta", "Delta",
               {Intersection{delta, QMatrix::identity(d), QMatrix::identity(d), unit_vec(), "Y",
                             sp.pushforward_matrix(tau)}}});
  sc.finalize(false);
  return sc;
}

InertiaScenario build_scenario_cpn_zp(int n, std::size_t p, bool include_points) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "cpn_zp needs n >= 1");
  if (p < 2) throw Error(ErrorCode::InvalidInput, "cpn_zp needs p >= 2");
  const ManifoldModel y = make_cp(n, "x");
  const ManifoldModel hyper = make_cp(n - 1, "y");
  const ManifoldModel pt = make_point("z");
  const auto group = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(p));
  InertiaScenario sc(group, y, CohAction::Kind::Trivial);
  const auto nn = static_cast<std::size_t>(n);

  // y^j -> x^{j+1};  x^j -> y^j (x^n -> 0).
  QMatrix hpush(nn, nn + 1);
  QMatrix hpull(nn + 1, nn);
  for (std::size_t j = 0; j < nn; ++j) {
    hpush(j, j + 1) = 1;
    hpull(j, j) = 1;
  }
  QMatrix ppush(1, nn + 1);
  ppush(0, nn) = 1;
  QMatrix ppull(nn + 1, 1);
  ppull(0, 0) = 1;

  const auto hid = [](std::size_t i) { return "H" + std::to_string(i); };
  const auto pid = [](std::size_t i) { return "pt" + std::to_string(i); };
  for (std::size_t i = 1; i < p; ++i) {
    sc.add_component({i, hid(i), hyper, hpush, hpull});
    if (include_points) sc.add_component({i, pid(i), pt, ppush, ppull});
  }
  // Hyperplane self-intersection has excess class y (zero when CP^{n-1} is a point).
  const SparseVec hyper_euler = n >= 2 ? SparseVec{{1, Scalar(1)}} : SparseVec{};
  for (std::size_t i = 1; i < p; ++i)
    for (std::size_t j = 1; j < p; ++j) {
      const std::size_t k = (i + j) % p;
      sc.add_pair({hid(i), hid(j),
                   {Intersection{hyper, QMatrix::identity(nn), QMatrix::identity(nn), hyper_euler,
                                 k == 0 ? "Y" : hid(k), k == 0 ? hpush : QMatrix::identity(nn)}}});
      if (!include_points) continue;
      sc.add_pair({pid(i), pid(j),
                   {Intersection{pt, QMatrix::identity(1), QMatrix::identity(1), SparseVec{}, k == 0 ? "Y" : pid(k),
                                 k == 0 ? ppush : QMatrix::identity(1)}}});
      sc.add_pair({hid(i), pid(j), {}});
      sc.add_pair({pid(i), hid(j), {}});
    }
  sc.finalize();
  return sc;
}

namespace {

std::string basis_label(const InertiaScenario& sc, std::size_t c, std::size_t a) {
  return sc.component(c).model.ring().name(a) + "@" + sc.component(c).id;
}

std::string element_text(const InertiaScenario& sc, const InertiaElement& x) {
  if (x.empty()) return "0";
  std::string out;
  for (const auto& [c, v] : x) {
    if (!out.empty()) out += " + ";
    out += "(" + sparse_text(sc.component(c).model.ring(), v) + ")@" + sc.component(c).id;
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> all_basis(const InertiaScenario& sc) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t c = 0; c < sc.components().size(); ++c)
    for (std::size_t a = 0; a < sc.component(c).model.dim(); ++a) out.emplace_back(c, a);
  return out;
}

InertiaElement basis_element(std::size_t c, std::size_t a) { return {{c, SparseVec{{a, Scalar(1)}}}}; }

void add_notes(CheckReport& r, const InertiaScenario& sc) {
  for (const auto& n : sc.notes()) r.notes.push_back(n);
}

}  // namespace

CheckReport check_homomorphism(const InertiaScenario& sc) {
  CheckReport r;
  r.name = "homomorphism";
  add_notes(r, sc);
  const auto basis = all_basis(sc);
  for (const auto& [ca, a] : basis)
    for (const auto& [cb, b] : basis) {
      ++r.checked;
      const GroupRingElement lhs = to_group_ring(sc, virtual_product(sc, ca, SparseVec{{a, Scalar(1)}}, cb, SparseVec{{b, Scalar(1)}}));
      const GroupRingElement rhs = gr_multiply(to_group_ring(sc, basis_element(ca, a)), to_group_ring(sc, basis_element(cb, b)));
      if (!(lhs == rhs)) {
        r.pass = false;
        r.violations.push_back({"(" + basis_label(sc, ca, a) + ", " + basis_label(sc, cb, b) + ")",
                                "f(a.b) differs from f(a)f(b)"});
      }
    }
  return r;
}

CheckReport check_associativity(const InertiaScenario& sc) {
  CheckReport r;
  r.name = "associativity";
  add_notes(r, sc);
  const auto basis = all_basis(sc);
  std::map<std::pair<std::size_t, std::size_t>, InertiaElement> prod;  // keyed by basis positions
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      prod[{i, j}] = virtual_product(sc, basis_element(basis[i].first, basis[i].second),
                                     basis_element(basis[j].first, basis[j].second));
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t k = 0; k < basis.size(); ++k) {
        ++r.checked;
        const auto lhs = virtual_product(sc, prod[{i, j}], basis_element(basis[k].first, basis[k].second));
        const auto rhs = virtual_product(sc, basis_element(basis[i].first, basis[i].second), prod[{j, k}]);
        if (lhs != rhs) {
          r.pass = false;
          r.violations.push_back({"(" + basis_label(sc, basis[i].first, basis[i].second) + ", " +
                                      basis_label(sc, basis[j].first, basis[j].second) + ", " +
                                      basis_label(sc, basis[k].first, basis[k].second) + ")",
                                  element_text(sc, lhs) + " != " + element_text(sc, rhs)});
        }
      }
  return r;
}

CheckReport check_equivariance(const InertiaScenario& sc) {
  CheckReport r;
  r.name = "equivariance";
  add_notes(r, sc);
  bool assumed = false;
  const auto& group = *sc.group();
  const auto basis = all_basis(sc);
  const auto act_element = [&](const InertiaElement& x, std::size_t h) {
    InertiaElement out;
    for (const auto& [c, v] : x)
      for (const auto& [a, coef] : v)
        for (const auto& [c2, w] : sc.act(c, a, h).image) add_scaled(out[c2], w, coef);
    std::erase_if(out, [](const auto& kv) { return kv.second.empty(); });
    return out;
  };
  for (const auto& [c, a] : basis)
    for (std::size_t h = 0; h < group.order(); ++h) {
      ++r.checked;
      const std::string where = basis_label(sc, c, a) + " . " + group.label(h);
      ActionImage img;
      try {
        img = sc.act(c, a, h);
      } catch (const Error& e) {
        r.pass = false;
        r.violations.push_back({where, e.what()});
        continue;
      }
      assumed = assumed || img.assumed;
      const GroupRingElement lhs = to_group_ring(sc, img.image);
      const GroupRingElement rhs = g_action(to_group_ring(sc, basis_element(c, a)), h, sc.action());
      if (!(lhs == rhs)) {
        r.pass = false;
        r.violations.push_back({where, "f(x.h) differs from f(x).h"});
      }
      for (std::size_t k = 0; k < group.order(); ++k) {
        if (act_element(img.image, k) != act_element(basis_element(c, a), group.mul(h, k))) {
          r.pass = false;
          r.violations.push_back({where + " . " + group.label(k), "not a right action"});
        }
      }
    }
  if (assumed)
    r.notes.push_back("action on non-injective sectors taken to be the identity (trivial ambient action)");
  return r;
}

InjectivityReport check_injectivity(const InertiaScenario& sc) {
  InjectivityReport rep;
  for (std::size_t g = 0; g < sc.group()->order(); ++g) {
    const QMatrix& m = sc.stacked_push(g);
    SectorInjectivity s{sc.group()->label(g), m.rows(), rank(m)};
    rep.injective = rep.injective && s.injective();
    rep.sectors.push_back(std::move(s));
  }
  return rep;
}

DirectRing virtual_ring_direct(const InertiaScenario& sc) {
  DirectRing out;
  out.basis = all_basis(sc);
  const std::size_t total = out.basis.size();
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> position;
  for (std::size_t k = 0; k < total; ++k) {
    position[out.basis[k]] = k;
    out.labels.push_back(basis_label(sc, out.basis[k].first, out.basis[k].second));
  }
  const auto& group = *sc.group();
  const int top = sc.ambient().dimension();
  const auto fill_table = [&](DimsTable& t, const std::vector<std::vector<std::size_t>>& sectors) {
    for (int d = 0; d <= top; d += 2) t.degrees.push_back(d);
    for (const auto& s : sectors) {
      t.rows.push_back(group.label(s.front()));
      t.dims.emplace_back(t.degrees.size(), 0);
    }
  };
  const auto coords = [&](const InertiaElement& x) {
    std::vector<Scalar> v(total);
    for (const auto& [c, w] : x)
      for (const auto& [a, coef] : w) v[position.at({c, a})] = coef;
    return v;
  };

  std::vector<std::vector<std::size_t>> singles;
  for (std::size_t g = 0; g < group.order(); ++g) singles.push_back({g});
  fill_table(out.dims, singles);
  for (const auto& [c, a] : out.basis)
    ++out.dims.dims[sc.component(c).g][static_cast<std::size_t>(sc.shifted_degree(c, a) / 2)];
  out.dims.total = total;

  // Reynolds images, grouped by (conjugacy class, shifted degree).
  const auto classes = group.conjugacy_classes();
  std::vector<std::size_t> class_of(group.order());
  for (std::size_t k = 0; k < classes.size(); ++k)
    for (const auto g : classes[k]) class_of[g] = k;
  fill_table(out.invariant_dims, classes);
  std::map<BlockKey, QMatrix> blocks;
  const Scalar inv_order(1, static_cast<unsigned long>(group.order()));
  for (const auto& [c, a] : out.basis) {
    InertiaElement avg;
    for (std::size_t h = 0; h < group.order(); ++h) {
      const ActionImage img = sc.act(c, a, h);
      out.assumed_action = out.assumed_action || img.assumed;
      for (const auto& [c2, w] : img.image) add_scaled(avg[c2], w, inv_order);
    }
    std::erase_if(avg, [](const auto& kv) { return kv.second.empty(); });
    const BlockKey key{class_of[sc.component(c).g], sc.shifted_degree(c, a)};
    auto it = blocks.try_emplace(key, QMatrix(0, total)).first;
    it->second.append_row(coords(avg));
  }
  for (const auto& [key, m] : blocks) {
    const std::size_t rk = rank(m);
    out.invariant_dims.dims[key.first][static_cast<std::size_t>(key.second / 2)] = rk;
    out.invariant_dims.total += rk;
  }

  out.constants.labels = out.labels;
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) {
      const auto p = virtual_product(sc, basis_element(out.basis[i].first, out.basis[i].second),
                                     basis_element(out.basis[j].first, out.basis[j].second));
      if (p.empty()) continue;
      StructureConstants::Entry e{i, j, {}};
      for (const auto& [c, w] : p)
        for (const auto& [a, coef] : w) {
          e.terms.emplace_back(position.at({c, a}), coef);
          if (!is_integral(coef)) out.constants.integral = false;
        }
      std::sort(e.terms.begin(), e.terms.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      out.constants.products.push_back(std::move(e));
    }
  return out;
}

GeneratorSet generators_general(const InertiaScenario& sc) {
  GeneratorSet set{sc.group(), sc.ambient().ring_ptr(), {}};
  for (std::size_t c = 0; c < sc.components().size(); ++c) {
    const FixedComponent& fc = sc.component(c);
    for (std::size_t a = 0; a < fc.model.dim(); ++a) {
      const SparseVec img = fc.push.row_sparse(a);
      if (img.empty()) continue;
      const std::string label = c == 0 ? fc.model.ring().name(a) : "f!(" + basis_label(sc, c, a) + ")";
      set.generators.push_back({GroupRingElement::single(sc.group(), sc.ambient().ring_ptr(), fc.g, img), label});
    }
  }
  return set;
}

}  // namespace vircoh
