#include <numeric>

#include <gtest/gtest.h>

#include "vircoh/errors.hpp"
#include "vircoh/inertia.hpp"

using namespace vircoh;

namespace {

InertiaElement basis(std::size_t c, std::size_t a, Scalar coef = Scalar(1)) { return {{c, SparseVec{{a, coef}}}}; }

GroupRingElement at(const InertiaScenario& sc, std::size_t g, SparseVec v) {
  return GroupRingElement::single(sc.group(), sc.ambient().ring_ptr(), g, std::move(v));
}

QMatrix rows(std::size_t r, std::size_t c, const std::vector<std::tuple<std::size_t, std::size_t, long>>& entries) {
  QMatrix m(r, c);
  for (const auto& [i, j, v] : entries) m(i, j) = v;
  return m;
}

// symprod2(CP^1) plus a point at the transposition that also pushes to the
// top class: the transposition sector is then not injective and the factor
// swap is not the identity, so its action on that sector cannot be derived.
InertiaScenario underdetermined_scenario(bool with_all_pairs) {
  const auto group = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(2));
  const ManifoldModel amb = power(make_cp(1), 2);
  const ManifoldModel line = make_cp(1, "y");
  const ManifoldModel pt = make_point("z");
  InertiaScenario sc(group, amb, CohAction::Kind::PermuteFactors);
  const QMatrix dpush = rows(2, 4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}});
  sc.add_component({1, "Delta", line, dpush, rows(4, 2, {{0, 0, 1}, {1, 1, 1}, {2, 1, 1}})});
  sc.add_component({1, "P", pt, rows(1, 4, {{0, 3, 1}}), rows(4, 1, {{0, 0, 1}})});
  sc.add_pair({"Delta", "Delta",
               {Intersection{line, QMatrix::identity(2), QMatrix::identity(2), SparseVec{{1, Scalar(2)}}, "Y", dpush}}});
  sc.add_pair({"Delta", "P", {}});
  sc.add_pair({"P", "Delta", {}});
  if (with_all_pairs)
    sc.add_pair({"P", "P", {Intersection{pt, QMatrix::identity(1), QMatrix::identity(1), SparseVec{}, "Y",
                                         rows(1, 4, {{0, 3, 1}})}}});
  sc.finalize();
  return sc;
}

}  // namespace

TEST(Inertia, SymprodTwoComponents) {
  const InertiaScenario sc = build_scenario_symprod2(make_cp(1));
  EXPECT_EQ(sc.components().size(), 2u);
  EXPECT_EQ(sc.component(0).id, "Y");
  EXPECT_EQ(sc.component_index("Delta"), 1u);
  EXPECT_EQ(sc.codim(1), 2);
  EXPECT_EQ(sc.total_dim(), 6u);
}

TEST(Inertia, TranspositionClassSquaredIsEulerTimesTop) {
  for (int m = 1; m <= 3; ++m) {
    const InertiaScenario sc = build_scenario_symprod2(make_cp(m));
    const std::size_t d = sc.component_index("Delta");
    const InertiaElement p = virtual_product(sc, basis(d, 0), basis(d, 0));
    const auto& top = sc.ambient().top_index();
    EXPECT_EQ(p, basis(0, top, Scalar(m + 1))) << m;
    EXPECT_EQ(to_group_ring(sc, p), at(sc, 0, {{top, Scalar(m + 1)}}));
  }
}

TEST(Inertia, IdentitySectorIsTheAmbientRing) {
  const InertiaScenario sc = build_scenario_symprod2(make_cp(2));
  const auto& r = sc.ambient().ring();
  for (std::size_t a = 0; a < r.dim(); ++a)
    for (std::size_t b = 0; b < r.dim(); ++b) {
      InertiaElement expect;
      const SparseVec ab = r.multiply_basis(a, b);
      if (!ab.empty()) expect[0] = ab;
      EXPECT_EQ(virtual_product(sc, basis(0, a), basis(0, b)), expect);
    }
}

TEST(Inertia, MixedProductMatchesGroupRing) {
  const InertiaScenario sc = build_scenario_symprod2(make_cp(2));
  const std::size_t d = sc.component_index("Delta");
  for (std::size_t a = 0; a < sc.ambient().dim(); ++a) {
    const InertiaElement p = virtual_product(sc, basis(0, a), basis(d, 0));
    EXPECT_EQ(to_group_ring(sc, p), to_group_ring(sc, basis(0, a)) * to_group_ring(sc, basis(d, 0)));
    // p lives on Delta: Delta_!(Delta^* alpha) at tau
    ASSERT_LE(p.size(), 1u);
    if (!p.empty()) {
      EXPECT_EQ(p.begin()->first, d);
    }
  }
}

TEST(Inertia, HyperplaneProductPushesToSquare) {
  const InertiaScenario sc = build_scenario_cpn_zp(3, 5, false);
  const std::size_t h1 = sc.component_index("H1");
  const std::size_t h2 = sc.component_index("H2");
  const GroupRingElement p = to_group_ring(sc, virtual_product(sc, basis(h1, 0), basis(h2, 0)));
  EXPECT_EQ(p, at(sc, 3, {{2, Scalar(1)}}));
}

TEST(Inertia, PointClassRelations) {
  const InertiaScenario sc = build_scenario_cpn_zp(2, 3, true);
  const std::size_t p1 = sc.component_index("pt1");
  const std::size_t p2 = sc.component_index("pt2");
  for (std::size_t a = 1; a < sc.ambient().dim(); ++a) {
    EXPECT_TRUE(virtual_product(sc, basis(p1, 0), basis(0, a)).empty()) << a;
    EXPECT_TRUE(virtual_product(sc, basis(0, a), basis(p2, 0)).empty()) << a;
  }
  EXPECT_TRUE(virtual_product(sc, basis(p1, 0), basis(p2, 0)).empty());
  EXPECT_TRUE(virtual_product(sc, basis(p1, 0), basis(p1, 0)).empty());
  EXPECT_EQ(virtual_product(sc, basis(p1, 0), basis(0, 0)), basis(p1, 0));
}

TEST(Inertia, HomomorphismOnFixtures) {
  for (const auto& sc : {build_scenario_symprod2(make_cp(1)), build_scenario_symprod2(make_cp(2)),
                         build_scenario_cpn_zp(2, 3, true), build_scenario_cpn_zp(3, 5, false),
                         build_scenario_symprod2(make_even_sphere(2))}) {
    const CheckReport r = check_homomorphism(sc);
    EXPECT_TRUE(r.pass);
    EXPECT_TRUE(r.violations.empty());
    EXPECT_EQ(r.checked, sc.total_dim() * sc.total_dim());
  }
}

TEST(Inertia, CorruptedExcessClassIsDetected) {
  const InertiaScenario sc = build_scenario_symprod2_corrupted(make_cp(1));
  const CheckReport r = check_homomorphism(sc);
  EXPECT_FALSE(r.pass);
  ASSERT_FALSE(r.violations.empty());
  bool flagged = false;
  for (const auto& v : r.violations) flagged = flagged || v.where == "(1@Delta, 1@Delta)";
  EXPECT_TRUE(flagged);
}

TEST(Inertia, ExcessDegreeIsValidated) {
  const auto group = std::make_shared<const FiniteGroup>(FiniteGroup::symmetric(2));
  const ManifoldModel amb = power(make_cp(1), 2);
  const ManifoldModel line = make_cp(1, "y");
  InertiaScenario sc(group, amb, CohAction::Kind::PermuteFactors);
  const QMatrix dpush = rows(2, 4, {{0, 1, 1}, {0, 2, 1}, {1, 3, 1}});
  sc.add_component({1, "Delta", line, dpush, rows(4, 2, {{0, 0, 1}, {1, 1, 1}, {2, 1, 1}})});
  sc.add_pair({"Delta", "Delta",
               {Intersection{line, QMatrix::identity(2), QMatrix::identity(2), SparseVec{{0, Scalar(1)}}, "Y", dpush}}});
  try {
    sc.finalize();
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegreeMismatch);
  }
}

TEST(Inertia, MissingPairIsReported) {
  try {
    (void)underdetermined_scenario(false);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingPairData);
  }
}

TEST(Inertia, UnderivableActionIsReported) {
  const InertiaScenario sc = underdetermined_scenario(true);
  EXPECT_FALSE(check_injectivity(sc).injective);
  try {
    (void)sc.act(sc.component_index("P"), 0, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDerivable);
  }
}

TEST(Inertia, ProjectionFormulaViolationIsRejected) {
  const auto group = std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(2));
  InertiaScenario sc(group, make_cp(2), CohAction::Kind::Trivial);
  // push 1 -> x but y -> 0 breaks f_!(f^*x) = x f_!1
  sc.add_component({1, "H", make_cp(1, "y"), rows(2, 3, {{0, 1, 1}}), rows(3, 2, {{0, 0, 1}, {1, 1, 1}})});
  EXPECT_THROW(sc.finalize(), Error);
}

TEST(Inertia, Injectivity) {
  for (const auto& sc : {build_scenario_symprod2(make_cp(1)), build_scenario_symprod2(make_cp(3)),
                         build_scenario_cpn_zp(3, 5, false)})
    EXPECT_TRUE(check_injectivity(sc).injective);
  const InjectivityReport r = check_injectivity(build_scenario_cpn_zp(3, 5, true));
  EXPECT_FALSE(r.injective);
  for (const auto& s : r.sectors) EXPECT_EQ(s.kernel_dim(), s.label == "1" ? 0u : 1u) << s.label;
}

TEST(Inertia, DirectRingDimensions) {
  const DirectRing cp = virtual_ring_direct(build_scenario_cpn_zp(2, 3, true));
  EXPECT_EQ(cp.dims.total, 3u + 2u * 3u);
  const auto row = cp.dims.row("λ");
  EXPECT_EQ(std::accumulate(row.begin(), row.end(), std::size_t{0}), 3u);
  EXPECT_TRUE(cp.assumed_action);

  const DirectRing sym = virtual_ring_direct(build_scenario_symprod2(make_cp(1)));
  EXPECT_EQ(sym.dims.total, 6u);
  EXPECT_EQ(sym.invariant_dims.total, 5u);
  EXPECT_TRUE(sym.constants.integral);
  EXPECT_FALSE(sym.assumed_action);
}

TEST(Inertia, GeneratorsOfCyclicFixture) {
  const InertiaScenario sc = build_scenario_cpn_zp(2, 3, true);
  const GeneratorSet g = generators_general(sc);
  // 3 ambient classes, then x and x^2 from H and x^2 from the point, per nonidentity element
  ASSERT_EQ(g.generators.size(), 3u + 2u * 3u);
  EXPECT_EQ(g.generators[3].element, at(sc, 1, {{1, Scalar(1)}}));
  EXPECT_EQ(g.generators[4].element, at(sc, 1, {{2, Scalar(1)}}));
}

TEST(InertiaProperty, AssociativeAndEquivariantOnFixtures) {
  for (const auto& sc : {build_scenario_symprod2(make_cp(1)), build_scenario_symprod2(make_cp(2)),
                         build_scenario_cpn_zp(2, 3, true), build_scenario_cpn_zp(3, 5, true),
                         build_scenario_symprod2(tensor(make_even_sphere(1), make_even_sphere(1)))}) {
    const CheckReport assoc = check_associativity(sc);
    EXPECT_TRUE(assoc.pass);
    EXPECT_EQ(assoc.checked, sc.total_dim() * sc.total_dim() * sc.total_dim());
    EXPECT_TRUE(check_equivariance(sc).pass);
  }
}

TEST(InertiaProperty, DegreeShiftLaw) {
  // (alpha, g) . (beta, h) sits in shifted degree |alpha| + |beta| (+ codims)
  for (const auto& sc : {build_scenario_symprod2(make_cp(2)), build_scenario_cpn_zp(3, 5, true)}) {
    for (std::size_t ca = 0; ca < sc.components().size(); ++ca)
      for (std::size_t a = 0; a < sc.component(ca).model.dim(); ++a)
        for (std::size_t cb = 0; cb < sc.components().size(); ++cb)
          for (std::size_t b = 0; b < sc.component(cb).model.dim(); ++b) {
            const int expect = sc.shifted_degree(ca, a) + sc.shifted_degree(cb, b);
            for (const auto& [c, v] : virtual_product(sc, basis(ca, a), basis(cb, b)))
              for (const auto& [k, coef] : v) {
                (void)coef;
                EXPECT_EQ(sc.shifted_degree(c, k), expect);
                EXPECT_EQ(sc.component(c).g, sc.group()->mul(sc.component(ca).g, sc.component(cb).g));
              }
          }
  }
}
