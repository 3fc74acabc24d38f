#include <gtest/gtest.h>

#include "vircoh/errors.hpp"
#include "vircoh/inertia.hpp"
#include "vircoh/json_io.hpp"
#include "vircoh/render.hpp"

using namespace vircoh;

namespace {

std::string error_text(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Render, FormatsElements) {
  const SymmetricProduct sp(make_cp(1), 2);
  const auto& g = sp.group();
  const auto ring = sp.ambient().ring_ptr();
  const GroupRingElement u = parse_element("(x1 + x2)[(1 2)]", g, ring);
  EXPECT_EQ(format_element(u), "(x1 + x2)[(1 2)]");
  EXPECT_EQ(format_element(u * u), "2*x1*x2");
  EXPECT_EQ(format_element(parse_element("-x1 + 1/2*x2[(1 2)]", g, ring)), "-x1 + 1/2*x2[(1 2)]");
  EXPECT_EQ(format_element(GroupRingElement(g, ring)), "0");
  EXPECT_EQ(format_element(parse_element("3", g, ring)), "3");
}

TEST(Render, ParsesPowersAndProducts) {
  const SymmetricProduct sp(make_cp(2), 2);
  const auto& g = sp.group();
  const auto ring = sp.ambient().ring_ptr();
  EXPECT_EQ(parse_element("x1^2*x2", g, ring), parse_element("x1*x1*x2", g, ring));
  EXPECT_EQ(parse_element("(x1 + x2)^2", g, ring), parse_element("x1^2 + 2*x1*x2 + x2^2", g, ring));
  EXPECT_THROW((void)parse_element("x3", g, ring), Error);
  EXPECT_THROW((void)parse_element("x1[(1 3)]", g, ring), Error);
  EXPECT_THROW((void)parse_element("x1 +", g, ring), Error);
}

TEST(Render, RoundTripsEveryBasisElement) {
  const SymmetricProduct sp(make_cp(1), 3);
  const GradedSubspace s = close_subring(sp.generators());
  for (const auto& b : s.basis())
    EXPECT_EQ(parse_element(format_element(b.element), sp.group(), sp.ambient().ring_ptr()), b.element);
}

TEST(Render, Tables) {
  const std::string t = format_table({"a", "bb"}, {{"1", "2"}, {"λ", "30"}});
  EXPECT_EQ(t, "a  bb\n1   2\nλ  30\n");
}

TEST(Json, ManifoldRoundTrip) {
  for (const auto& m : {make_cp(3), make_even_sphere(2), make_point(), power(make_cp(1), 3),
                        tensor(make_even_sphere(1), make_cp(2))}) {
    const ManifoldModel back = manifold_from_json(manifold_to_json(m));
    EXPECT_TRUE(back.ring().same_structure(m.ring()));
  }
  EXPECT_EQ(manifold_from_json(json::parse(R"({"kind":"cp","m":2})")), make_cp(2));
  EXPECT_TRUE(manifold_from_json(json::parse(R"({"kind":"power","base":{"kind":"cp","m":1},"n":2})"))
                  .ring()
                  .same_structure(power(make_cp(1), 2).ring()));
}

TEST(Json, GroupRoundTrip) {
  for (const auto& g : {FiniteGroup::symmetric(3), FiniteGroup::cyclic(4)}) EXPECT_EQ(group_from_json(group_to_json(g)), g);
  const auto t = group_from_json(json::parse(R"({"kind":"table","elements":["e","a"],"mul":[[0,1],[1,0]]})"));
  EXPECT_EQ(t.order(), 2u);
}

TEST(Json, ScenarioRoundTrip) {
  for (const auto& sc : {build_scenario_symprod2(make_cp(2)), build_scenario_cpn_zp(2, 3, true),
                         build_scenario_symprod2_corrupted(make_cp(1))}) {
    const json j = scenario_to_json(sc);
    const InertiaScenario back = scenario_from_json(j);
    EXPECT_EQ(scenario_to_json(back).dump(), j.dump());
    EXPECT_EQ(check_homomorphism(back).pass, check_homomorphism(sc).pass);
  }
}

TEST(Json, SchemaErrorsCarryLocation) {
  json j = scenario_to_json(build_scenario_cpn_zp(2, 3, false));
  j["components"][1]["push"][0][0] = "x";
  EXPECT_NE(error_text([&] { (void)scenario_from_json(j); }).find("/components/1/push/0/0"), std::string::npos);

  json k = scenario_to_json(build_scenario_cpn_zp(2, 3, false));
  k["components"][1].erase("pull");
  EXPECT_NE(error_text([&] { (void)scenario_from_json(k); }).find("missing field \"pull\""), std::string::npos);

  EXPECT_NE(error_text([&] { (void)manifold_from_json(json::parse(R"({"kind":"torus"})"), "/ambient"); }).find("/ambient/kind"),
            std::string::npos);
}

TEST(Json, SyntaxErrorsCarryLineAndColumn) {
  const std::string msg = error_text([] { (void)parse_json_text("{\n  \"a\": [1,\n", "demo.json"); });
  EXPECT_NE(msg.find("demo.json:3:"), std::string::npos) << msg;
}

TEST(Json, PresentationFormats) {
  const json doc = json::parse(R"({
    "generators": [{"name": "x", "degree": 2}, {"name": "y", "degree": 2}],
    "relations": ["x^2", [{"coef": "1", "monomial": {"y": 2}}]],
    "assignment": {"x": "x1", "y": [{"g": "1", "class": [[1, "1"]]}]}
  })");
  const PresentationSpec spec = presentation_from_json(doc);
  ASSERT_EQ(spec.presentation.relations.size(), 2u);
  EXPECT_EQ(to_string(spec.presentation.relations[1], spec.presentation.generators), "y^2");
  const SymmetricProduct sp(make_cp(1), 2);
  const auto a = assignment_from_json(spec.assignment, sp.group(), sp.ambient().ring_ptr());
  EXPECT_EQ(format_element(a.at("x")), "x1");
  EXPECT_EQ(format_element(a.at("y")), "x2");
}
