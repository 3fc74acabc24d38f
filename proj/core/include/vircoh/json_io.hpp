#pragma once

// JSON readers and writers for manifolds, groups, scenarios, presentations
// and reports. Readers report schema errors with a JSON-pointer location.

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "vircoh/graded_ring.hpp"
#include "vircoh/group_ring.hpp"
#include "vircoh/inertia.hpp"
#include "vircoh/presentation.hpp"
#include "vircoh/subring.hpp"

namespace vircoh {

using json = nlohmann::ordered_json;

/// Parses a file; syntax errors carry "file:line:column".
json load_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& origin = "<input>");

// Manifolds: {"kind":"cp","m"} | {"kind":"even_sphere","k"} | {"kind":"point"} |
// {"kind":"table","dim","basis","products"} | {"kind":"product","factors":[...]} |
// {"kind":"power","base":...,"n"}.
ManifoldModel manifold_from_json(const json& j, const std::string& where = "");
json manifold_to_json(const ManifoldModel& m);

// Groups: {"kind":"symmetric","n"} | {"kind":"cyclic","p"} | {"kind":"table","elements","mul"}.
FiniteGroup group_from_json(const json& j, std::size_t max_order = kDefaultMaxGroupOrder, const std::string& where = "");
json group_to_json(const FiniteGroup& g);

QMatrix matrix_from_json(const json& j, const std::string& where = "");
json matrix_to_json(const QMatrix& m);
Scalar scalar_from_json(const json& j, const std::string& where = "");
/// A class as [[index, "num/den"], ...] or as a text literal in the ring's names.
SparseVec class_from_json(const json& j, const RingModel& ring, const std::string& where = "");
json class_to_json(const SparseVec& v);

InertiaScenario scenario_from_json(const json& j, std::size_t max_order = kDefaultMaxGroupOrder);
json scenario_to_json(const InertiaScenario& sc);

struct PresentationSpec {
  Presentation presentation;
  json assignment;  // resolved once the group ring is known
};

PresentationSpec presentation_from_json(const json& j);
json presentation_to_json(const Presentation& p, const std::map<std::string, GroupRingElement>& assignment);
/// Each value is a literal string (see parse_element) or a list of
/// {"g": label, "class": [[index, "num/den"], ...]}.
std::map<std::string, GroupRingElement> assignment_from_json(const json& j, const GroupPtr& group, const RingPtr& ring);

json element_to_json(const GroupRingElement& x);
json dims_table_to_json(const DimsTable& t);
json structure_constants_to_json(const StructureConstants& sc);
json check_report_to_json(const CheckReport& r);
json injectivity_to_json(const InjectivityReport& r);
json presentation_report_to_json(const PresentationReport& r);

}  // namespace vircoh
