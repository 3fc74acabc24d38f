#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "vircoh/errors.hpp"
#include "vircoh/inertia.hpp"
#include "vircoh/subring.hpp"

using namespace vircoh;

namespace {

struct CP1Squared {
  SymmetricProduct sp{make_cp(1), 2};
  RingPtr ring = sp.ambient().ring_ptr();
  std::size_t x1 = ring->index_of({1, 0});
  std::size_t x2 = ring->index_of({0, 1});
  std::size_t top = ring->top_index();

  GroupRingElement at(std::size_t g, SparseVec v) const {
    return GroupRingElement::single(sp.group(), ring, g, std::move(v));
  }
};

}  // namespace

TEST(Subring, ImageOfProjectiveLineSquared) {
  const CP1Squared f;
  const GradedSubspace s = close_subring(f.sp.generators());
  const DimsTable t = dims_table(s);
  EXPECT_EQ(t.degrees, (std::vector<int>{0, 2, 4}));
  EXPECT_EQ(t.row("1"), (std::vector<std::size_t>{1, 2, 1}));
  EXPECT_EQ(t.row("(1 2)"), (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_EQ(t.total, 6u);
}

TEST(Subring, UnitOnly) {
  const CP1Squared f;
  GeneratorSet gens{f.sp.group(), f.ring, {{GroupRingElement::one(f.sp.group(), f.ring), "1"}}};
  EXPECT_EQ(close_subring(gens).total_dim(), 1u);
}

TEST(Subring, Membership) {
  const CP1Squared f;
  const GradedSubspace s = close_subring(f.sp.generators());
  EXPECT_TRUE(s.contains(f.at(0, {{f.top, Scalar(1)}})));
  EXPECT_FALSE(s.contains(f.at(1, {{f.x1, Scalar(1)}})));
  EXPECT_TRUE(s.contains(f.at(1, {{f.x1, Scalar(3)}, {f.x2, Scalar(3)}})));
  const auto zero = s.member(GroupRingElement(f.sp.group(), f.ring));
  ASSERT_TRUE(zero.has_value());
  EXPECT_TRUE(zero->empty());
}

TEST(Subring, InvariantsOfProjectiveLineSquared) {
  const CP1Squared f;
  const GradedSubspace inv = invariant_subring(close_subring(f.sp.generators()), f.sp.action());
  const DimsTable t = dims_table(inv);
  EXPECT_EQ(t.row("1"), (std::vector<std::size_t>{1, 1, 1}));
  EXPECT_EQ(t.row("(1 2)"), (std::vector<std::size_t>{0, 1, 1}));
  EXPECT_EQ(inv.total_dim(), 5u);
  for (const auto& x : {f.at(0, {{f.x1, Scalar(1)}, {f.x2, Scalar(1)}}), f.at(1, {{f.x1, Scalar(1)}, {f.x2, Scalar(1)}}),
                        f.at(0, {{f.top, Scalar(1)}}), f.at(1, {{f.top, Scalar(1)}})})
    EXPECT_TRUE(inv.contains(x));
  EXPECT_FALSE(inv.contains(f.at(0, {{f.x1, Scalar(1)}})));
}

TEST(Subring, InvariantsOfTrivialActionAreEverything) {
  const InertiaScenario sc = build_scenario_cpn_zp(3, 5, false);
  const GradedSubspace s = close_subring(generators_general(sc));
  EXPECT_EQ(invariant_subring(s, sc.action()).total_dim(), s.total_dim());
}

TEST(Subring, NonStableSubspaceIsRejected) {
  const CP1Squared f;
  GeneratorSet gens{f.sp.group(), f.ring,
                    {{GroupRingElement::one(f.sp.group(), f.ring), "1"}, {f.at(0, {{f.x1, Scalar(1)}}), "x1"}}};
  const GradedSubspace s = close_subring(gens);
  EXPECT_EQ(s.total_dim(), 2u);
  try {
    (void)invariant_subring(s, f.sp.action());
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotGStable);
  }
}

TEST(Subring, UnclosedSubspaceIsDetected) {
  const CP1Squared f;
  GradedSubspace s = GradedSubspace::by_element(f.sp.group(), f.ring);
  s.insert(GroupRingElement::one(f.sp.group(), f.ring), "1");
  s.insert(f.at(1, {{f.x1, Scalar(1)}, {f.x2, Scalar(1)}}), "u");
  try {
    verify_closed(s);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ProductEscapesSubspace);
  }
}

TEST(Subring, InsertRejectsMixedSectors) {
  const CP1Squared f;
  GradedSubspace s = GradedSubspace::by_element(f.sp.group(), f.ring);
  EXPECT_THROW(s.insert(f.at(0, {{f.x1, Scalar(1)}}) + f.at(1, {{f.x1, Scalar(1)}}), "bad"), Error);
  EXPECT_TRUE(s.insert(f.at(0, {{f.x1, Scalar(1)}}), "x1"));
  EXPECT_FALSE(s.insert(f.at(0, {{f.x1, Scalar(2)}}), "2x1"));
}

TEST(Subring, StructureConstants) {
  const CP1Squared f;
  const GradedSubspace s = close_subring(f.sp.generators());
  const StructureConstants sc = structure_constants(s);
  EXPECT_TRUE(sc.integral);
  const auto u = std::find(sc.labels.begin(), sc.labels.end(), "u(1 2)") - sc.labels.begin();
  ASSERT_LT(static_cast<std::size_t>(u), sc.labels.size());
  const auto uu = sc.product(u, u);
  ASSERT_EQ(uu.size(), 1u);
  EXPECT_EQ(uu.front().second, Scalar(2));
  EXPECT_EQ(sc.basis[uu.front().first], f.at(0, {{f.top, Scalar(1)}}));
  // unit row
  const auto one = std::find(sc.labels.begin(), sc.labels.end(), "1") - sc.labels.begin();
  for (std::size_t b = 0; b < sc.basis.size(); ++b) {
    const auto p = sc.product(one, b);
    ASSERT_EQ(p.size(), 1u);
    EXPECT_EQ(p.front(), (std::pair<std::size_t, Scalar>{b, Scalar(1)}));
  }
}

TEST(Subring, StructureConstantsRejectBadBases) {
  const CP1Squared f;
  const GradedSubspace s = close_subring(f.sp.generators());
  std::vector<Generator> short_basis{{GroupRingElement::one(f.sp.group(), f.ring), "1"}};
  EXPECT_THROW((void)structure_constants(s, short_basis), Error);
}

TEST(Subring, ProjectiveSquareUSquared) {
  const SymmetricProduct sp(make_cp(2), 2);
  const GeneratorSet gens = sp.generators();
  const GroupRingElement& u = gens.generators.back().element;
  const auto& r = sp.ambient().ring();
  // (sum_a x1^a x2^{2-a})^2 = 3 x1^2 x2^2
  EXPECT_EQ(u * u, GroupRingElement::single(sp.group(), sp.ambient().ring_ptr(), 0, {{r.top_index(), Scalar(3)}}));
}

TEST(SubringProperty, GeneratorOrderDoesNotChangeClosure) {
  std::mt19937 rng(11);
  for (const auto& [m, n] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}}) {
    const SymmetricProduct sp(make_cp(m), static_cast<std::size_t>(n));
    GeneratorSet gens = sp.generators();
    const GradedSubspace ref = close_subring(gens);
    for (int trial = 0; trial < 4; ++trial) {
      std::shuffle(gens.generators.begin(), gens.generators.end(), rng);
      const GradedSubspace s = close_subring(gens);
      EXPECT_EQ(dims_table(s).dims, dims_table(ref).dims);
      for (const auto& b : ref.basis()) EXPECT_TRUE(s.contains(b.element));
    }
  }
}

TEST(SubringProperty, ImageIsStableAndClosedUnderGenerators) {
  for (const auto& [m, n] : {std::pair{1, 2}, std::pair{1, 3}, std::pair{2, 2}, std::pair{1, 4}}) {
    const SymmetricProduct sp(make_cp(m), static_cast<std::size_t>(n));
    const GeneratorSet gens = sp.generators();
    const GradedSubspace s = close_subring(gens);
    for (const auto& b : s.basis()) {
      for (std::size_t h = 0; h < sp.group()->order(); ++h) EXPECT_TRUE(s.contains(g_action(b.element, h, sp.action())));
      for (const auto& g : gens.generators) EXPECT_TRUE(s.contains(b.element * g.element));
    }
    // pushforward images span the same space
    for (const auto& g : sp.pushforward_basis()) EXPECT_TRUE(s.contains(g.element));
    EXPECT_EQ(structure_constants(s, sp.pushforward_basis()).basis.size(), s.total_dim());
  }
}
