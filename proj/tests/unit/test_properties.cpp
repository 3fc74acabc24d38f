// Structural laws checked exhaustively on small fixtures.

#include <gtest/gtest.h>

#include "vircoh/inertia.hpp"
#include "vircoh/subring.hpp"
#include "vircoh/sym_product.hpp"

using namespace vircoh;

namespace {

using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

// All spanning trees of the complete graph on `vertices`, via Pruefer codes.
std::vector<Edges> spanning_trees(const std::vector<std::size_t>& vertices) {
  const std::size_t k = vertices.size();
  if (k < 2) return {Edges{}};
  if (k == 2) return {Edges{{vertices[0], vertices[1]}}};
  std::vector<Edges> out;
  std::vector<std::size_t> code(k - 2, 0);
  while (true) {
    std::vector<std::size_t> degree(k, 1);
    for (auto c : code) ++degree[c];
    Edges tree;
    for (auto c : code) {
      for (std::size_t leaf = 0; leaf < k; ++leaf)
        if (degree[leaf] == 1) {
          tree.emplace_back(std::min(vertices[leaf], vertices[c]), std::max(vertices[leaf], vertices[c]));
          --degree[leaf];
          --degree[c];
          break;
        }
    }
    std::vector<std::size_t> last;
    for (std::size_t v = 0; v < k; ++v)
      if (degree[v] == 1) last.push_back(vertices[v]);
    tree.emplace_back(last[0], last[1]);
    out.push_back(tree);
    std::size_t pos = 0;
    while (pos < code.size() && ++code[pos] == k) code[pos++] = 0;
    if (pos == code.size()) break;
  }
  return out;
}

const std::vector<std::pair<int, std::size_t>> kSmall{{1, 2}, {1, 3}, {2, 2}};

}  // namespace

TEST(Property, SpanningTreeCountIsCayley) {
  EXPECT_EQ(spanning_trees({1, 2, 3}).size(), 3u);
  EXPECT_EQ(spanning_trees({1, 2, 3, 4}).size(), 16u);
}

TEST(Property, SpanningTreeIndependence) {
  for (const auto& [m, n] : {std::pair{1, std::size_t{3}}, std::pair{1, std::size_t{4}}, std::pair{2, std::size_t{3}}}) {
    const SymmetricProduct sp(make_cp(m), n);
    for (std::size_t g = 0; g < sp.group()->order(); ++g) {
      std::vector<Edges> choices{Edges{}};
      for (const auto& cyc : cycle_decomposition(sp.group()->permutation(g))) {
        std::vector<Edges> next;
        for (const auto& partial : choices)
          for (const auto& tree : spanning_trees(cyc)) {
            Edges e = partial;
            e.insert(e.end(), tree.begin(), tree.end());
            next.push_back(e);
          }
        choices = std::move(next);
      }
      for (const auto& edges : choices) EXPECT_EQ(sp.edge_product(edges), sp.pushforward_unit(g)) << sp.group()->label(g);
    }
  }
}

TEST(Property, ProjectionFormula) {
  for (const auto& [m, n] : kSmall) {
    const SymmetricProduct sp(make_cp(m), n);
    const auto& amb = sp.ambient();
    for (std::size_t g = 0; g < sp.group()->order(); ++g) {
      const auto& fixed = sp.fixed_model(g);
      for (std::size_t b = 0; b < amb.dim(); ++b) {
        const CohClass bb = CohClass::basis(amb.ring_ptr(), b);
        for (std::size_t a = 0; a < fixed.dim(); ++a) {
          const CohClass alpha = CohClass::basis(fixed.ring_ptr(), a);
          EXPECT_EQ(sp.pushforward(g, sp.pullback(g, bb) * alpha), bb * sp.pushforward(g, alpha));
        }
      }
    }
  }
}

TEST(Property, PushforwardDegreeShift) {
  for (const auto& [m, n] : kSmall) {
    const SymmetricProduct sp(make_cp(m), n);
    const int d = sp.base().dimension();
    for (std::size_t g = 0; g < sp.group()->order(); ++g) {
      const auto& fixed = sp.fixed_model(g);
      const int shift = d * static_cast<int>(n - sp.cycle_count(g));
      for (std::size_t a = 0; a < fixed.dim(); ++a) {
        const CohClass img = sp.pushforward(g, CohClass::basis(fixed.ring_ptr(), a));
        if (!img.is_zero()) {
          EXPECT_EQ(img.homogeneous_degree(), fixed.ring().degree(a) + shift);
        }
      }
    }
  }
}

TEST(Property, PushforwardIsEquivariant) {
  // (h^{-1})^* f_{g!} alpha = f_{h^{-1} g h !} (transport alpha)
  for (const auto& [m, n] : kSmall) {
    const SymmetricProduct sp(make_cp(m), n);
    const auto& grp = *sp.group();
    for (std::size_t g = 0; g < grp.order(); ++g)
      for (std::size_t h = 0; h < grp.order(); ++h) {
        const auto& fixed = sp.fixed_model(g);
        for (std::size_t a = 0; a < fixed.dim(); ++a) {
          const CohClass alpha = CohClass::basis(fixed.ring_ptr(), a);
          const SparseVec lhs = sp.action().apply(h, sp.pushforward(g, alpha).coeffs());
          const CohClass rhs = sp.pushforward(grp.conjugate(g, h), sp.transport(h, g, alpha));
          EXPECT_EQ(lhs, rhs.coeffs());
        }
      }
  }
}

TEST(Property, ReynoldsIsIdempotentProjection) {
  for (const auto& [m, n] : kSmall) {
    const SymmetricProduct sp(make_cp(m), n);
    const GradedSubspace s = close_subring(sp.generators());
    const GradedSubspace inv = invariant_subring(s, sp.action());
    for (const auto& b : s.basis()) {
      const GroupRingElement r = reynolds(b.element, sp.action());
      EXPECT_EQ(reynolds(r, sp.action()), r);
      EXPECT_TRUE(inv.contains(r));
    }
    for (const auto& b : inv.basis()) EXPECT_EQ(reynolds(b.element, sp.action()), b.element);
  }
}

TEST(Property, InvariantsAreClosedAndCentral) {
  const SymmetricProduct sp(make_cp(1), 3);
  const GradedSubspace s = close_subring(sp.generators());
  const GradedSubspace inv = invariant_subring(s, sp.action());
  for (const auto& a : inv.basis())
    for (const auto& b : inv.basis()) {
      EXPECT_TRUE(inv.contains(a.element * b.element));
      EXPECT_EQ(a.element * b.element, b.element * a.element);
    }
}

TEST(Property, ProjectionFormulaPerInertiaComponent) {
  for (const auto& sc : {build_scenario_symprod2(make_cp(3)), build_scenario_cpn_zp(4, 3, true)}) {
    const auto& y = sc.ambient();
    for (const auto& c : sc.components())
      for (std::size_t u = 0; u < y.dim(); ++u)
        for (std::size_t a = 0; a < c.model.dim(); ++a) {
          const SparseVec pulled = apply_rows(c.pull, {{u, Scalar(1)}});
          const SparseVec lhs = apply_rows(c.push, c.model.ring().multiply(pulled, {{a, Scalar(1)}}));
          const SparseVec rhs = y.ring().multiply({{u, Scalar(1)}}, apply_rows(c.push, {{a, Scalar(1)}}));
          EXPECT_EQ(lhs, rhs) << c.id;
        }
  }
}
