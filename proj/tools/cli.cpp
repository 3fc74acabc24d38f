#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vircoh/inertia.hpp"
#include "vircoh/json_io.hpp"
#include "vircoh/presentation.hpp"
#include "vircoh/render.hpp"
#include "vircoh/subring.hpp"
#include "vircoh/sym_product.hpp"
#include "vircoh_bundled.hpp"

namespace vircoh::cli {

namespace {

struct Options {
  std::string manifold = "cp:1";
  std::size_t n = 2;
  std::string group;
  std::size_t p = 3;
  bool points = false;
  std::string fixture;
  std::string scenario;
  std::string checks;
  bool strict = false;
  std::string mode;
  std::string out;
  bool json_stdout = false;
  std::size_t max_group_order = kDefaultMaxGroupOrder;
  bool coeff_audit = false;
  std::string emit_scenario;
  std::string presentation;
  std::string bundled;
  bool invariants = false;
  bool list = false;
};

// A failed mathematical check; carries the exit code 1.
struct CheckFailure {
  CheckFailure(std::string n, bool p, std::string s, std::string sh = {})
      : name(std::move(n)), pass(p), summary(std::move(s)), shown(std::move(sh)) {}
  std::string name;
  bool pass = true;
  std::string summary;
  std::string shown;  // overrides the verdict column
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<std::string> requested_checks(const std::string& arg, const std::vector<std::string>& available,
                                          const std::vector<std::string>& defaults) {
  if (arg.empty()) return defaults;
  std::vector<std::string> out;
  for (const auto& c : split(arg, ',')) {
    if (c == "all") return available;
    if (std::find(available.begin(), available.end(), c) == available.end()) {
      std::string names;
      for (const auto& a : available) names += (names.empty() ? "" : ", ") + a;
      throw Error(ErrorCode::InvalidInput, "unknown check '" + c + "' (available: " + names + ")");
    }
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

bool wants(const std::vector<std::string>& checks, const std::string& name) {
  return std::find(checks.begin(), checks.end(), name) != checks.end();
}

void emit_json(const Options& o, const json& report, std::ostream& out) {
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + o.out);
    f << report.dump(2) << "\n";
  }
  if (o.json_stdout) out << report.dump(2) << "\n";
}

void require_ambient_dim(std::size_t base_dim, std::size_t n) {
  const std::size_t cap = max_ambient_dim();
  std::size_t d = 1;
  for (std::size_t k = 0; k < n; ++k) {
    if (d > cap / std::max<std::size_t>(base_dim, 1)) d = cap + 1;
    else d *= base_dim;
  }
  if (d > cap)
    throw Error(ErrorCode::TooLarge, "ambient ring dimension exceeds VIRCOH_MAX_DIM=" + std::to_string(cap));
}

std::string verdict(bool pass) { return pass ? "pass" : "FAIL"; }

std::vector<std::string> table_rows_line(const std::string& a, const std::string& b, const std::string& c) { return {a, b, c}; }

json basis_to_json(const std::vector<BasisElement>& basis) {
  json out = json::array();
  for (const auto& b : basis) out.push_back({{"word", b.word}, {"element", format_element(b.element)}});
  return out;
}

std::string checks_table(const std::vector<CheckFailure>& checks) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : checks) rows.push_back(table_rows_line(c.name, c.shown.empty() ? verdict(c.pass) : c.shown, c.summary));
  return format_table({"check", "verdict", "detail"}, rows);
}

int exit_for_checks(const std::vector<CheckFailure>& checks) {
  for (const auto& c : checks)
    if (!c.pass) return kExitCheckFailed;
  return kExitOk;
}

// ---------------------------------------------------------------- symprod

int cmd_symprod(const Options& o, std::ostream& out);
int cmd_inertia_on(const Options& o, const InertiaScenario& sc, const std::string& name, std::ostream& out);

CheckFailure pushforward_check(const SymmetricProduct& sp) {
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (std::size_t g = 0; g < sp.group()->order(); ++g) {
    const auto& src = sp.fixed_model(g);
    for (std::size_t a = 0; a < src.dim(); ++a) {
      const CohClass alpha = CohClass::basis(src.ring_ptr(), a);
      ++checked;
      if (!(sp.pushforward(g, alpha) == sp.gysin_oracle(g, alpha))) ++bad;
    }
  }
  return {"pushforward", bad == 0, std::to_string(checked) + " classes, " + std::to_string(bad) + " mismatches"};
}

int cmd_symprod(const Options& o, std::ostream& out) {
  const ManifoldModel m = parse_manifold_arg(o.manifold);
  if (o.n == 0) throw Error(ErrorCode::InvalidInput, "--n must be positive");
  require_ambient_dim(m.dim(), o.n);
  const std::string mode = o.mode.empty() ? "group-ring" : o.mode;
  if (mode == "inertia") {
    if (o.n != 2) throw Error(ErrorCode::InvalidInput, "inertia mode for symmetric products is available for n = 2");
    return cmd_inertia_on(o, build_scenario_symprod2(m), "symprod2(" + manifold_display_name(o.manifold) + ")", out);
  }
  if (mode != "group-ring") throw Error(ErrorCode::InvalidInput, "--mode must be group-ring or inertia");

  const auto checks = requested_checks(o.checks, {"pushforward", "injectivity", "stability", "integrality"}, {});
  const SymmetricProduct sp(m, o.n, o.max_group_order);
  const GeneratorSet gens = sp.generators();
  const GradedSubspace s = close_subring(gens);
  const DimsTable dims = dims_table(s);
  const GradedSubspace inv = invariant_subring(s, sp.action());  // checks G-stability
  const DimsTable idims = dims_table(inv);
  const StructureConstants sc = structure_constants(s);

  std::vector<CheckFailure> results;
  if (wants(checks, "pushforward")) results.push_back(pushforward_check(sp));
  if (wants(checks, "injectivity")) {
    std::size_t kernel = 0;
    for (std::size_t g = 0; g < sp.group()->order(); ++g) {
      const QMatrix pm = sp.pushforward_matrix(g);
      kernel += pm.rows() - rank(pm);
    }
    results.push_back({"injectivity", kernel == 0, "total kernel dimension " + std::to_string(kernel)});
  }
  if (wants(checks, "stability"))
    results.push_back({"stability", true, "image is G-stable (" + std::to_string(s.total_dim()) + " basis elements)"});
  json audit;
  if (o.coeff_audit || wants(checks, "integrality")) {
    const StructureConstants pb = structure_constants(s, sp.pushforward_basis());
    audit = {{"basis", "pushforward"}, {"integral", pb.integral}, {"products", pb.products.size()}};
    results.push_back({"integrality", pb.integral, "pushforward basis, " + std::to_string(pb.products.size()) + " nonzero products"});
  }

  const std::string title = "(" + manifold_display_name(o.manifold) + ")^" + std::to_string(o.n) + ", S_" + std::to_string(o.n);
  out << "image subring f(H*_virt) in H*(Y)[G] for " << title << "\n" << format_dims_table(dims) << "\n";
  out << "invariant subring\n" << format_dims_table(idims) << "\n";
  std::vector<std::vector<std::string>> rows;
  const GroupRingElement unit = GroupRingElement::one(sp.group(), sp.ambient().ring_ptr());
  for (const auto& g : gens.generators) {
    if (g.element.support().front() == 0) continue;
    rows.push_back({g.label, format_element(g.element), format_element(power(g.element, 2)), format_element(power(g.element, 3))});
  }
  if (!rows.empty()) out << "transposition generators\n" << format_table({"generator", "element", "square", "cube"}, rows) << "\n";
  if (!results.empty()) out << checks_table(results);

  json gen_json = json::array();
  for (const auto& g : gens.generators) gen_json.push_back({{"label", g.label}, {"element", format_element(g.element)}});
  json checks_json = json::array();
  for (const auto& c : results) checks_json.push_back({{"check", c.name}, {"pass", c.pass}, {"detail", c.summary}});
  json report = {{"command", "symprod"},
                 {"manifold_spec", o.manifold},
                 {"manifold", manifold_to_json(m)},
                 {"n", o.n},
                 {"group", group_to_json(*sp.group())},
                 {"ambient_dim", sp.ambient().dim()},
                 {"generators", std::move(gen_json)},
                 {"image", {{"dims", dims_table_to_json(dims)}, {"basis", basis_to_json(s.ordered_basis())},
                            {"structure_constants", structure_constants_to_json(sc)}}},
                 {"invariants", {{"dims", dims_table_to_json(idims)}, {"basis", basis_to_json(inv.ordered_basis())}}},
                 {"total_dim", s.total_dim()},
                 {"invariant_dim", inv.total_dim()},
                 {"checks", std::move(checks_json)}};
  if (!audit.is_null()) report["integrality"] = audit;
  emit_json(o, report, out);
  return exit_for_checks(results);
}

// ---------------------------------------------------------------- inertia

std::size_t cyclic_order(const Options& o) {
  if (o.group.empty()) return o.p;
  if (o.group.rfind("cyclic:", 0) == 0) {
    const std::string v = o.group.substr(7);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::InvalidInput, "bad group spec '" + o.group + "'");
    return std::stoul(v);
  }
  if (o.group.rfind("file:", 0) == 0) {
    const FiniteGroup g = group_from_json(load_json_file(o.group.substr(5)), o.max_group_order);
    if (g.kind() != GroupKind::Cyclic) throw Error(ErrorCode::InvalidInput, "the cpn-zp fixture needs a cyclic group");
    return g.order();
  }
  throw Error(ErrorCode::InvalidInput, "bad group spec '" + o.group + "' (expected cyclic:<p> or file:<path>)");
}

std::pair<InertiaScenario, std::string> load_scenario(const Options& o) {
  if (!o.scenario.empty() && !o.fixture.empty())
    throw Error(ErrorCode::InvalidInput, "give either --scenario or --fixture, not both");
  if (!o.scenario.empty())
    return {scenario_from_json(load_json_file(o.scenario), o.max_group_order), std::filesystem::path(o.scenario).filename().string()};
  if (o.fixture == "symprod2" || o.fixture == "symprod2-corrupted") {
    const ManifoldModel m = parse_manifold_arg(o.manifold);
    require_ambient_dim(m.dim(), 2);
    const std::string name = o.fixture + "(" + manifold_display_name(o.manifold) + ")";
    return {o.fixture == "symprod2" ? build_scenario_symprod2(m) : build_scenario_symprod2_corrupted(m), name};
  }
  if (o.fixture == "cpn-zp") {
    const std::size_t p = cyclic_order(o);
    if (o.n > max_ambient_dim()) throw Error(ErrorCode::TooLarge, "ambient ring dimension exceeds VIRCOH_MAX_DIM");
    const std::string name = "cpn-zp(n=" + std::to_string(o.n) + ", p=" + std::to_string(p) + (o.points ? ", points" : "") + ")";
    return {build_scenario_cpn_zp(static_cast<int>(o.n), p, o.points), name};
  }
  if (o.fixture.empty()) throw Error(ErrorCode::InvalidInput, "need --scenario <file> or --fixture <name>");
  throw Error(ErrorCode::InvalidInput, "unknown fixture '" + o.fixture + "' (symprod2, symprod2-corrupted, cpn-zp)");
}

std::string summarize(const CheckReport& r) {
  std::string s = std::to_string(r.checked) + " cases, " + std::to_string(r.violations.size()) + " violations";
  if (!r.violations.empty()) s += "; first at " + r.violations.front().where;
  return s;
}

int cmd_inertia_on(const Options& o, const InertiaScenario& sc, const std::string& name, std::ostream& out) {
  if (sc.ambient().dim() > max_ambient_dim())
    throw Error(ErrorCode::TooLarge, "ambient ring dimension exceeds VIRCOH_MAX_DIM=" + std::to_string(max_ambient_dim()));
  if (!o.emit_scenario.empty()) {
    std::ofstream f(o.emit_scenario);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + o.emit_scenario);
    f << scenario_to_json(sc).dump(2) << "\n";
  }
  const std::string mode = o.mode.empty() || o.mode == "inertia" ? "inertia" : o.mode;
  if (mode != "inertia" && mode != "group-ring") throw Error(ErrorCode::InvalidInput, "--mode must be group-ring or inertia");
  const auto checks = requested_checks(o.checks, {"homomorphism", "injectivity", "associativity", "equivariance"},
                                       {"homomorphism", "injectivity"});

  std::vector<CheckFailure> results;
  json checks_json = json::array();
  const auto record = [&](const CheckReport& r) {
    results.push_back({r.name, r.pass, summarize(r)});
    checks_json.push_back(check_report_to_json(r));
  };
  if (wants(checks, "homomorphism")) record(check_homomorphism(sc));
  const InjectivityReport inj = check_injectivity(sc);
  if (wants(checks, "injectivity")) {
    std::string detail;
    for (const auto& s : inj.sectors)
      if (!s.injective()) detail += (detail.empty() ? "kernel " : ", ") + s.label + ":" + std::to_string(s.kernel_dim());
    if (detail.empty()) detail = "f_g! injective for every g";
    // Non-injectivity is a finding about the scenario, not a failure, unless --strict.
    results.push_back({"injectivity", inj.injective || !o.strict, inj.injective ? detail : "not injective, " + detail,
                       inj.injective ? "" : (o.strict ? "FAIL" : "no")});
    checks_json.push_back(injectivity_to_json(inj));
  }
  if (wants(checks, "associativity")) record(check_associativity(sc));
  if (wants(checks, "equivariance")) record(check_equivariance(sc));

  std::vector<std::vector<std::string>> comp_rows;
  json comps = json::array();
  for (std::size_t c = 0; c < sc.components().size(); ++c) {
    const auto& fc = sc.component(c);
    comp_rows.push_back({fc.id, sc.group()->label(fc.g), std::to_string(fc.model.dimension()),
                         std::to_string(sc.codim(c)), std::to_string(fc.model.dim())});
    comps.push_back({{"id", fc.id}, {"g", sc.group()->label(fc.g)}, {"dim", fc.model.dimension()},
                     {"codim", sc.codim(c)}, {"classes", fc.model.dim()}});
  }
  out << "scenario " << name << ": |G| = " << sc.group()->order() << ", dim H*(Y) = " << sc.ambient().dim() << "\n";
  out << format_table({"component", "element", "real dim", "codim", "classes"}, comp_rows) << "\n";

  json report = {{"command", "inertia"}, {"scenario", name}, {"mode", mode}, {"group", group_to_json(*sc.group())},
                 {"components", std::move(comps)}, {"notes", sc.notes()}};
  if (mode == "inertia") {
    const DirectRing dr = virtual_ring_direct(sc);
    out << "virtual cohomology (direct, degrees shifted by codim)\n" << format_dims_table(dr.dims) << "\n";
    out << "invariants\n" << format_dims_table(dr.invariant_dims) << "\n";
    report["direct"] = {{"dims", dims_table_to_json(dr.dims)},
                        {"invariant_dims", dims_table_to_json(dr.invariant_dims)},
                        {"structure_constants", structure_constants_to_json(dr.constants)},
                        {"action_assumed", dr.assumed_action}};
    if (o.coeff_audit) {
      results.push_back({"integrality", dr.constants.integral, "virtual product in the component basis"});
      checks_json.push_back({{"check", "integrality"}, {"pass", dr.constants.integral}});
    }
  } else {
    const GradedSubspace s = close_subring(generators_general(sc));
    const DimsTable dims = dims_table(s);
    const std::string label = inj.injective ? "image subring f(H*_virt)" : "image only, f(H*_virt) != H*_virt";
    out << label << "\n" << format_dims_table(dims) << "\n";
    json image = {{"label", label}, {"dims", dims_table_to_json(dims)}, {"basis", basis_to_json(s.ordered_basis())}};
    const GradedSubspace inv = invariant_subring(s, sc.action());
    out << "invariant subring\n" << format_dims_table(dims_table(inv)) << "\n";
    image["invariant_dims"] = dims_table_to_json(dims_table(inv));
    if (o.coeff_audit) {
      const StructureConstants c = structure_constants(s);
      results.push_back({"integrality", c.integral, "closure basis"});
      checks_json.push_back({{"check", "integrality"}, {"pass", c.integral}});
    }
    report["image"] = std::move(image);
  }
  for (const auto& n : sc.notes()) out << "note: " << n << "\n";
  if (!results.empty()) out << checks_table(results);
  report["checks"] = std::move(checks_json);
  emit_json(o, report, out);
  return exit_for_checks(results);
}

int cmd_inertia(const Options& o, std::ostream& out) {
  const auto [sc, name] = load_scenario(o);
  return cmd_inertia_on(o, sc, name, out);
}

// ---------------------------------------------------------------- verify

ManifoldModel manifold_from_context(const json& j) {
  if (j.is_string()) return parse_manifold_arg(j.get<std::string>());
  return manifold_from_json(j, "/context/manifold");
}

int cmd_verify(const Options& o, std::ostream& out) {
  json doc;
  std::string origin;
  if (!o.bundled.empty()) {
    if (!o.presentation.empty()) throw Error(ErrorCode::InvalidInput, "give either --presentation or --bundled, not both");
    if (o.bundled == "cp1-squared") {
      doc = parse_json_text(std::string(bundled::cp1_squared), "bundled:cp1-squared");
    } else if (o.bundled == "cp1-squared-invariants") {
      doc = parse_json_text(std::string(bundled::cp1_squared_invariants), "bundled:cp1-squared-invariants");
    } else {
      throw Error(ErrorCode::InvalidInput, "unknown bundled presentation '" + o.bundled +
                                               "' (cp1-squared, cp1-squared-invariants)");
    }
    origin = "bundled:" + o.bundled;
  } else if (!o.presentation.empty()) {
    doc = load_json_file(o.presentation);
    origin = o.presentation;
  } else {
    throw Error(ErrorCode::InvalidInput, "need --presentation <file> or --bundled <name>");
  }
  const PresentationSpec spec = presentation_from_json(doc);

  // Context: from the file when present, otherwise from the flags.
  std::string kind = o.fixture == "cpn-zp" ? "cpn_zp" : "symprod";
  json ctx = doc.contains("context") ? doc["context"] : json::object();
  if (ctx.contains("kind")) kind = ctx["kind"].get<std::string>();
  bool want_invariants = o.invariants;
  if (ctx.contains("subring")) want_invariants = want_invariants || ctx["subring"] == "invariants";

  std::unique_ptr<GradedSubspace> s;
  std::string title;
  if (kind == "symprod") {
    const ManifoldModel m = ctx.contains("manifold") ? manifold_from_context(ctx["manifold"]) : parse_manifold_arg(o.manifold);
    const std::size_t n = ctx.contains("n") ? ctx["n"].get<std::size_t>() : o.n;
    require_ambient_dim(m.dim(), n);
    const SymmetricProduct sp(m, n, o.max_group_order);
    GradedSubspace img = close_subring(sp.generators());
    s = std::make_unique<GradedSubspace>(want_invariants ? invariant_subring(img, sp.action()) : std::move(img));
    title = "symmetric product, n = " + std::to_string(n);
  } else if (kind == "cpn_zp") {
    const int n = ctx.contains("n") ? ctx["n"].get<int>() : static_cast<int>(o.n);
    const std::size_t p = ctx.contains("p") ? ctx["p"].get<std::size_t>() : cyclic_order(o);
    const bool points = ctx.contains("points") ? ctx["points"].get<bool>() : o.points;
    const InertiaScenario sc = build_scenario_cpn_zp(n, p, points);
    GradedSubspace img = close_subring(generators_general(sc));
    s = std::make_unique<GradedSubspace>(want_invariants ? invariant_subring(img, sc.action()) : std::move(img));
    title = "CP^" + std::to_string(n) + " with Z/" + std::to_string(p);
  } else {
    throw Error(ErrorCode::InvalidInput, "at /context/kind: expected \"symprod\" or \"cpn_zp\"");
  }

  const auto assignment = assignment_from_json(spec.assignment, s->group(), s->ring());
  const PresentationReport rep = verify_presentation(*s, spec.presentation, assignment);

  out << "presentation " << origin << " against the " << (want_invariants ? "invariant subring" : "image subring")
      << " (" << title << ")\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : rep.relations) rows.push_back({r.relation, r.vanishes ? "0" : format_element(r.value), verdict(r.vanishes)});
  out << format_table({"relation", "value", "verdict"}, rows) << "\n";
  std::vector<std::string> header{"degree"};
  std::vector<std::string> q{"quotient"};
  std::vector<std::string> sub{"subring"};
  for (std::size_t d = 0; d < rep.quotient_dims.size(); d += 2) {
    header.push_back(std::to_string(d));
    q.push_back(std::to_string(rep.quotient_dims[d]));
    sub.push_back(std::to_string(rep.subspace_dims[d]));
  }
  out << format_table(header, {q, sub}) << "\n";
  const std::vector<CheckFailure> results{
      {"relations vanish", rep.relations_vanish, ""},
      {"generators lie in subring", rep.generators_in_subspace, ""},
      {"generators generate", rep.generates, ""},
      {"graded dimensions agree", rep.dims_match, ""},
  };
  out << checks_table(results);
  out << "verdict: " << verdict(rep.pass) << "\n";

  json report = {{"command", "verify"}, {"presentation", origin}, {"subring", want_invariants ? "invariants" : "image"},
                 {"dims", dims_table_to_json(dims_table(*s))}, {"report", presentation_report_to_json(rep)}};
  emit_json(o, report, out);
  return rep.pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------- fixtures

int cmd_fixtures(const Options& o, std::ostream& out) {
  if (o.list) {
    out << "symprod2            (M^2, S_2) with e = chi(M) Omega on the diagonal; --manifold\n"
        << "symprod2-corrupted  symprod2 with the diagonal excess class replaced by 1; --manifold\n"
        << "cpn-zp              CP^n with Z/p, components CP^(n-1) [and a point]; --n --p|--group --points\n";
    return kExitOk;
  }
  const auto [sc, name] = load_scenario(o);
  const std::string text = scenario_to_json(sc).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    std::ofstream f(o.out);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + o.out);
    f << text;
  }
  return kExitOk;
}

}  // namespace

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotGStable:
    case ErrorCode::NotDerivable:
    case ErrorCode::ProductEscapesSubspace:
    case ErrorCode::NonCommutative:
      return kExitCheckFailed;
    default:
      return kExitInputError;
  }
}

std::size_t max_ambient_dim() {
  const char* env = std::getenv("VIRCOH_MAX_DIM");
  if (env == nullptr || *env == '\0') return 4096;
  const std::string v(env);
  if (v.find_first_not_of("0123456789") != std::string::npos || v.size() > 12)
    throw Error(ErrorCode::InvalidInput, "VIRCOH_MAX_DIM must be a positive integer");
  const auto cap = static_cast<std::size_t>(std::stoull(v));
  if (cap == 0) throw Error(ErrorCode::InvalidInput, "VIRCOH_MAX_DIM must be a positive integer");
  return cap;
}

namespace {

int parse_int_arg(const std::string& spec, const std::string& v) {
  if (v.empty() || v.size() > 6 || v.find_first_not_of("0123456789") != std::string::npos)
    throw Error(ErrorCode::InvalidInput, "bad manifold spec '" + spec + "'");
  return std::stoi(v);
}

}  // namespace

ManifoldModel parse_manifold_arg(const std::string& spec) {
  if (spec.rfind("cp:", 0) == 0) return make_cp(parse_int_arg(spec, spec.substr(3)));
  if (spec.rfind("sphere:", 0) == 0) return make_even_sphere(parse_int_arg(spec, spec.substr(7)));
  if (spec == "point") return make_point();
  if (spec.rfind("file:", 0) == 0) return manifold_from_json(load_json_file(spec.substr(5)));
  throw Error(ErrorCode::InvalidInput, "bad manifold spec '" + spec + "' (expected cp:<m>, sphere:<k>, point or file:<path>)");
}

std::string manifold_display_name(const std::string& spec) {
  if (spec.rfind("cp:", 0) == 0) return "CP^" + spec.substr(3);
  if (spec.rfind("sphere:", 0) == 0) return "S^" + spec.substr(7);
  if (spec == "point") return "pt";
  if (spec.rfind("file:", 0) == 0) return std::filesystem::path(spec.substr(5)).stem().string();
  return spec;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"vircoh: virtual cohomology of global-quotient orbifolds"};
  app.require_subcommand(1);
  Options o;

  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--out", o.out, "Write the JSON report to this path");
    cmd->add_flag("--json", o.json_stdout, "Also print the JSON report on standard output");
    cmd->add_option("--max-group-order", o.max_group_order, "Refuse groups larger than this")->check(CLI::PositiveNumber);
  };
  const auto add_scenario = [&](CLI::App* cmd) {
    cmd->add_option("--fixture", o.fixture, "symprod2 | symprod2-corrupted | cpn-zp");
    cmd->add_option("--scenario", o.scenario, "Scenario JSON file");
    cmd->add_option("--manifold", o.manifold, "cp:<m> | sphere:<k> | point | file:<path>");
    cmd->add_option("--n", o.n, "Complex dimension for cpn-zp");
    cmd->add_option("--p", o.p, "Cyclic order for cpn-zp");
    cmd->add_option("--group", o.group, "cyclic:<p> | file:<path>");
    cmd->add_flag("--points", o.points, "Include the isolated fixed points in cpn-zp");
  };

  CLI::App* sym = app.add_subcommand("symprod", "Virtual cohomology of (M^n, S_n) in the group ring");
  sym->add_option("--manifold", o.manifold, "cp:<m> | sphere:<k> | point | file:<path>");
  sym->add_option("--n", o.n, "Number of factors")->check(CLI::PositiveNumber);
  sym->add_option("--mode", o.mode, "group-ring (default) | inertia");
  sym->add_option("--check", o.checks, "Comma list or 'all': pushforward, injectivity, stability, integrality");
  sym->add_flag("--coeff-audit", o.coeff_audit, "Check integrality of structure constants");
  add_common(sym);

  CLI::App* in = app.add_subcommand("inertia", "Direct virtual product on the inertia decomposition");
  add_scenario(in);
  in->add_option("--mode", o.mode, "inertia (default) | group-ring");
  in->add_option("--check", o.checks, "Comma list or 'all': homomorphism, injectivity, associativity, equivariance");
  in->add_flag("--strict", o.strict, "Treat a non-injective f as a failure");
  in->add_flag("--coeff-audit", o.coeff_audit, "Check integrality of structure constants");
  in->add_option("--emit-scenario", o.emit_scenario, "Write the scenario JSON to this path");
  add_common(in);

  CLI::App* ver = app.add_subcommand("verify", "Verify a generators-and-relations presentation");
  ver->add_option("--presentation", o.presentation, "Presentation JSON file");
  ver->add_option("--bundled", o.bundled, "cp1-squared | cp1-squared-invariants");
  ver->add_flag("--invariants", o.invariants, "Compare against the invariant subring");
  ver->add_option("--manifold", o.manifold, "Used when the file has no context");
  ver->add_option("--n", o.n, "Used when the file has no context");
  ver->add_option("--fixture", o.fixture, "cpn-zp to use the cyclic family");
  ver->add_option("--p", o.p, "Cyclic order for cpn-zp");
  ver->add_option("--group", o.group, "cyclic:<p> | file:<path>");
  ver->add_flag("--points", o.points, "Include the isolated fixed points in cpn-zp");
  add_common(ver);

  CLI::App* fix = app.add_subcommand("fixtures", "Emit fixture scenarios as JSON");
  add_scenario(fix);
  fix->add_flag("--list", o.list, "List available fixtures");
  fix->add_option("--out", o.out, "Write the scenario to this path instead of standard output");
  fix->add_option("--max-group-order", o.max_group_order, "Refuse groups larger than this")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (sym->parsed()) return cmd_symprod(o, out);
    if (in->parsed()) return cmd_inertia(o, out);
    if (ver->parsed()) return cmd_verify(o, out);
    if (fix->parsed()) return cmd_fixtures(o, out);
  } catch (const Error& e) {
    err << "vircoh: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const json::exception& e) {
    err << "vircoh: malformed JSON: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "vircoh: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace vircoh::cli
