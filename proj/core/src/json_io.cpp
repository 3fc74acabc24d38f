#include "vircoh/json_io.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "vircoh/errors.hpp"
#include "vircoh/render.hpp"

namespace vircoh {

namespace {

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema_error(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

long long get_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) schema_error(where, "expected an integer");
  return j.get<long long>();
}

std::size_t get_index(const json& j, const std::string& where) {
  const long long v = get_int(j, where);
  if (v < 0) schema_error(where, "expected a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string get_string(const json& j, const std::string& where) {
  if (!j.is_string()) schema_error(where, "expected a string");
  return j.get<std::string>();
}

const json& get_array(const json& j, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  return j;
}

std::string at(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string at(const std::string& where, std::size_t k) { return where + "/" + std::to_string(k); }

// Re-throws library errors with the location prefixed.
template <typename F>
auto located(const std::string& where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (std::string(e.what()).find("at /") != std::string::npos) throw;
    throw Error(e.code(), "at " + (where.empty() ? std::string("/") : where) + ": " + e.what());
  }
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

TableSpec table_spec_from_json(const json& j, const std::string& where) {
  TableSpec spec;
  spec.dim = static_cast<int>(get_int(field(j, "dim", where), at(where, "dim")));
  const json& basis = get_array(field(j, "basis", where), at(where, "basis"));
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const std::string w = at(at(where, "basis"), k);
    const json& deg = basis[k].contains("deg") ? basis[k]["deg"] : field(basis[k], "degree", w);
    spec.basis.push_back({get_string(field(basis[k], "name", w), at(w, "name")), static_cast<int>(get_int(deg, at(w, "deg")))});
  }
  if (j.contains("products")) {
    const json& prods = get_array(j["products"], at(where, "products"));
    for (std::size_t k = 0; k < prods.size(); ++k) {
      const std::string w = at(at(where, "products"), k);
      TableSpec::Product p;
      p.i = get_index(field(prods[k], "i", w), at(w, "i"));
      p.j = get_index(field(prods[k], "j", w), at(w, "j"));
      const json& terms = get_array(field(prods[k], "terms", w), at(w, "terms"));
      for (std::size_t t = 0; t < terms.size(); ++t) {
        const std::string tw = at(at(w, "terms"), t);
        if (!terms[t].is_array() || terms[t].size() != 2) schema_error(tw, "expected [index, \"num/den\"]");
        p.terms.emplace_back(get_index(terms[t][0], at(tw, 0)), scalar_from_json(terms[t][1], at(tw, 1)));
      }
      spec.products.push_back(std::move(p));
    }
  }
  return spec;
}

json factor_to_json(const FactorTable& f) {
  json basis = json::array();
  for (const auto& b : f.basis) basis.push_back({{"name", b.name}, {"deg", b.degree}});
  json products = json::array();
  for (std::size_t i = 1; i < f.dim(); ++i)
    for (std::size_t k = i; k < f.dim(); ++k) {
      const auto& terms = f.product(i, k);
      if (terms.empty()) continue;
      json t = json::array();
      for (const auto& [idx, c] : terms) t.push_back(json::array({idx, to_string(c)}));
      products.push_back({{"i", i}, {"j", k}, {"terms", std::move(t)}});
    }
  return {{"kind", "table"}, {"dim", f.top_degree}, {"basis", std::move(basis)}, {"products", std::move(products)}};
}

std::size_t group_element_from_json(const json& j, const FiniteGroup& g, const std::string& where) {
  if (j.is_string()) {
    const auto found = g.find_label(j.get<std::string>());
    if (!found) schema_error(where, "unknown group element \"" + j.get<std::string>() + "\"");
    return *found;
  }
  const std::size_t k = get_index(j, where);
  if (k >= g.order()) schema_error(where, "group element index out of range");
  return k;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, origin + ":" + line_column(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

Scalar scalar_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Scalar(std::to_string(j.get<long long>()));
  if (j.is_string()) return located(where, [&] { return parse_scalar(j.get<std::string>()); });
  schema_error(where, "expected an integer or a \"num/den\" string");
}

ManifoldModel manifold_from_json(const json& j, const std::string& where) {
  const std::string kind = get_string(field(j, "kind", where), at(where, "kind"));
  return located(where, [&]() -> ManifoldModel {
    if (kind == "cp") return make_cp(static_cast<int>(get_int(field(j, "m", where), at(where, "m"))));
    if (kind == "even_sphere") return make_even_sphere(static_cast<int>(get_int(field(j, "k", where), at(where, "k"))));
    if (kind == "point") return make_point();
    if (kind == "table") return make_table_ring(table_spec_from_json(j, where));
    if (kind == "product") {
      const json& fs = get_array(field(j, "factors", where), at(where, "factors"));
      if (fs.empty()) return make_point();
      ManifoldModel acc = manifold_from_json(fs[0], at(at(where, "factors"), 0));
      for (std::size_t k = 1; k < fs.size(); ++k) acc = tensor(acc, manifold_from_json(fs[k], at(at(where, "factors"), k)));
      return acc;
    }
    if (kind == "power") {
      const ManifoldModel base = manifold_from_json(field(j, "base", where), at(where, "base"));
      return power(base, get_index(field(j, "n", where), at(where, "n")));
    }
    schema_error(at(where, "kind"), "unknown manifold kind \"" + kind + "\"");
  });
}

json manifold_to_json(const ManifoldModel& m) {
  const RingModel& r = m.ring();
  if (r.factor_count() == 1) return factor_to_json(r.factor(0));
  json factors = json::array();
  for (std::size_t k = 0; k < r.factor_count(); ++k) factors.push_back(factor_to_json(r.factor(k)));
  return {{"kind", "product"}, {"factors", std::move(factors)}};
}

FiniteGroup group_from_json(const json& j, std::size_t max_order, const std::string& where) {
  const std::string kind = get_string(field(j, "kind", where), at(where, "kind"));
  GroupSpec spec;
  if (kind == "symmetric") {
    spec.kind = GroupKind::Symmetric;
    spec.n = get_index(field(j, "n", where), at(where, "n"));
  } else if (kind == "cyclic") {
    spec.kind = GroupKind::Cyclic;
    spec.p = get_index(field(j, "p", where), at(where, "p"));
  } else if (kind == "table") {
    spec.kind = GroupKind::Table;
    const json& els = get_array(field(j, "elements", where), at(where, "elements"));
    for (std::size_t k = 0; k < els.size(); ++k) spec.elements.push_back(get_string(els[k], at(at(where, "elements"), k)));
    const json& mul = get_array(field(j, "mul", where), at(where, "mul"));
    for (std::size_t r = 0; r < mul.size(); ++r) {
      const std::string rw = at(at(where, "mul"), r);
      std::vector<std::size_t> row;
      for (std::size_t c = 0; c < get_array(mul[r], rw).size(); ++c) row.push_back(get_index(mul[r][c], at(rw, c)));
      spec.mul.push_back(std::move(row));
    }
  } else {
    schema_error(at(where, "kind"), "unknown group kind \"" + kind + "\"");
  }
  return located(where, [&] { return build_group(spec, max_order); });
}

json group_to_json(const FiniteGroup& g) {
  switch (g.kind()) {
    case GroupKind::Symmetric:
      return {{"kind", "symmetric"}, {"n", g.degree()}};
    case GroupKind::Cyclic:
      return {{"kind", "cyclic"}, {"p", g.order()}};
    case GroupKind::Table:
      break;
  }
  json els = json::array();
  for (std::size_t k = 0; k < g.order(); ++k) els.push_back(g.label(k));
  return {{"kind", "table"}, {"elements", std::move(els)}, {"mul", g.table()}};
}

QMatrix matrix_from_json(const json& j, const std::string& where) {
  get_array(j, where);
  if (j.empty()) return {};
  std::size_t cols = 0;
  std::vector<std::vector<Scalar>> rows;
  for (std::size_t r = 0; r < j.size(); ++r) {
    const std::string rw = at(where, r);
    get_array(j[r], rw);
    if (r == 0) cols = j[r].size();
    if (j[r].size() != cols) schema_error(rw, "row length " + std::to_string(j[r].size()) + " differs from " + std::to_string(cols));
    std::vector<Scalar> row;
    for (std::size_t c = 0; c < cols; ++c) row.push_back(scalar_from_json(j[r][c], at(rw, c)));
    rows.push_back(std::move(row));
  }
  return QMatrix::from_rows(rows, cols);
}

json matrix_to_json(const QMatrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_string(m(r, c)));
    out.push_back(std::move(row));
  }
  return out;
}

SparseVec class_from_json(const json& j, const RingModel& ring, const std::string& where) {
  if (j.is_string()) return located(where, [&] { return parse_class(j.get<std::string>(), ring); });
  get_array(j, where);
  SparseVec v;
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string w = at(where, k);
    if (!j[k].is_array() || j[k].size() != 2) schema_error(w, "expected [index, \"num/den\"]");
    const std::size_t idx = get_index(j[k][0], at(w, 0));
    if (idx >= ring.dim()) schema_error(at(w, 0), "basis index out of range");
    v[idx] += scalar_from_json(j[k][1], at(w, 1));
  }
  prune(v);
  return v;
}

json class_to_json(const SparseVec& v) {
  json out = json::array();
  for (const auto& [i, c] : v) out.push_back(json::array({i, to_string(c)}));
  return out;
}

InertiaScenario scenario_from_json(const json& j, std::size_t max_order) {
  const auto group = std::make_shared<const FiniteGroup>(group_from_json(field(j, "group", ""), max_order, "/group"));
  const ManifoldModel ambient = manifold_from_json(field(j, "ambient", ""), "/ambient");
  CohAction::Kind kind = CohAction::Kind::Trivial;
  if (j.contains("action")) {
    const std::string a = get_string(j["action"], "/action");
    if (a == "permute_factors") {
      kind = CohAction::Kind::PermuteFactors;
    } else if (a != "trivial") {
      schema_error("/action", "expected \"trivial\" or \"permute_factors\"");
    }
  }
  InertiaScenario sc = located("/action", [&] { return InertiaScenario(group, ambient, kind); });

  const json& comps = get_array(field(j, "components", ""), "/components");
  std::map<std::string, ManifoldModel> models;
  for (std::size_t k = 0; k < comps.size(); ++k) {
    const std::string w = at("/components", k);
    const json& c = comps[k];
    const std::size_t g = group_element_from_json(field(c, "g", w), *group, at(w, "g"));
    const std::string id = get_string(field(c, "id", w), at(w, "id"));
    ManifoldModel model = manifold_from_json(field(c, "ring", w), at(w, "ring"));
    if (c.contains("dim") && get_int(c["dim"], at(w, "dim")) != model.dimension())
      schema_error(at(w, "dim"), "declared dimension differs from the ring's top degree");
    QMatrix push = matrix_from_json(field(c, "push", w), at(w, "push"));
    QMatrix pull = matrix_from_json(field(c, "pull", w), at(w, "pull"));
    models.emplace(id, model);
    located(w, [&] {
      sc.add_component({g, id, std::move(model), std::move(push), std::move(pull)});
      return 0;
    });
  }

  if (j.contains("pairs")) {
    const json& pairs = get_array(j["pairs"], "/pairs");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const std::string w = at("/pairs", k);
      const json& p = pairs[k];
      PairData pd{get_string(field(p, "cg", w), at(w, "cg")), get_string(field(p, "ch", w), at(w, "ch")), {}};
      const json& ins = get_array(field(p, "intersections", w), at(w, "intersections"));
      for (std::size_t t = 0; t < ins.size(); ++t) {
        const std::string iw = at(at(w, "intersections"), t);
        const json& in = ins[t];
        ManifoldModel model = manifold_from_json(field(in, "ring", iw), at(iw, "ring"));
        SparseVec euler = in.contains("euler") ? class_from_json(in["euler"], model.ring(), at(iw, "euler"))
                                               : SparseVec{{0, Scalar(1)}};
        pd.intersections.push_back(Intersection{std::move(model), matrix_from_json(field(in, "ig", iw), at(iw, "ig")),
                                                matrix_from_json(field(in, "ih", iw), at(iw, "ih")), std::move(euler),
                                                get_string(field(in, "target", iw), at(iw, "target")),
                                                matrix_from_json(field(in, "ipush", iw), at(iw, "ipush"))});
      }
      // "g"/"h" are redundant with the component ids; when present they must agree.
      for (const auto& [key, id] : {std::pair{"g", pd.cg}, std::pair{"h", pd.ch}}) {
        if (!p.contains(key)) continue;
        const std::size_t e = group_element_from_json(p[key], *group, at(w, key));
        bool ok = false;
        for (std::size_t c = 0; c < comps.size(); ++c)
          if (comps[c]["id"] == id) ok = group_element_from_json(comps[c]["g"], *group, "") == e;
        if (id == "Y" || id.empty()) ok = ok || e == 0;
        if (!ok) schema_error(at(w, key), "group element does not own component \"" + id + "\"");
      }
      sc.add_pair(std::move(pd));
    }
  }
  const bool check_excess = !j.contains("check_excess_degree") || j["check_excess_degree"].get<bool>();
  located("/", [&] {
    sc.finalize(check_excess);
    return 0;
  });
  return sc;
}

json scenario_to_json(const InertiaScenario& sc) {
  json comps = json::array();
  for (const auto& c : sc.components())
    comps.push_back({{"g", c.g},
                     {"id", c.id},
                     {"ring", manifold_to_json(c.model)},
                     {"dim", c.model.dimension()},
                     {"push", matrix_to_json(c.push)},
                     {"pull", matrix_to_json(c.pull)}});
  json pairs = json::array();
  for (const auto& [key, p] : sc.pairs()) {
    json ins = json::array();
    for (const auto& in : p.intersections)
      ins.push_back({{"ring", manifold_to_json(in.model)},
                     {"ig", matrix_to_json(in.ig)},
                     {"ih", matrix_to_json(in.ih)},
                     {"euler", class_to_json(in.euler)},
                     {"target", in.target},
                     {"ipush", matrix_to_json(in.ipush)}});
    pairs.push_back({{"g", sc.component(key.first).g},
                     {"h", sc.component(key.second).g},
                     {"cg", p.cg},
                     {"ch", p.ch},
                     {"intersections", std::move(ins)}});
  }
  json out = {{"group", group_to_json(*sc.group())},
              {"ambient", manifold_to_json(sc.ambient())},
              {"action", to_string(sc.action().kind())},
              {"components", std::move(comps)},
              {"pairs", std::move(pairs)}};
  if (!sc.excess_degree_checked()) out["check_excess_degree"] = false;
  return out;
}

PresentationSpec presentation_from_json(const json& j) {
  PresentationSpec out;
  Presentation& p = out.presentation;
  const json& gens = get_array(field(j, "generators", ""), "/generators");
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::string w = at("/generators", k);
    const json& deg = gens[k].contains("deg") ? gens[k]["deg"] : field(gens[k], "degree", w);
    p.generators.push_back({get_string(field(gens[k], "name", w), at(w, "name")), static_cast<int>(get_int(deg, at(w, "deg")))});
  }
  const json& rels = get_array(field(j, "relations", ""), "/relations");
  for (std::size_t k = 0; k < rels.size(); ++k) {
    const std::string w = at("/relations", k);
    const json& r = rels[k];
    if (r.is_string()) {
      p.relations.push_back(located(w, [&] { return parse_polynomial(r.get<std::string>(), p.generators); }));
      continue;
    }
    Polynomial poly;
    for (std::size_t t = 0; t < get_array(r, w).size(); ++t) {
      const std::string tw = at(w, t);
      Monomial m{scalar_from_json(field(r[t], "coef", tw), at(tw, "coef")), std::vector<unsigned>(p.generators.size(), 0)};
      const json& mono = field(r[t], "monomial", tw);
      if (!mono.is_object()) schema_error(at(tw, "monomial"), "expected an exponent map");
      for (const auto& [name, e] : mono.items()) {
        const std::size_t idx = located(at(tw, "monomial"), [&] { return p.index_of(name); });
        m.exponents[idx] += static_cast<unsigned>(get_index(e, at(at(tw, "monomial"), name)));
      }
      poly.push_back(std::move(m));
    }
    p.relations.push_back(normalize(std::move(poly)));
  }
  if (j.contains("coefficients")) p.coefficients = get_string(j["coefficients"], "/coefficients");
  located("/", [&] {
    p.validate();
    return 0;
  });
  out.assignment = j.contains("assignment") ? j["assignment"] : json::object();
  return out;
}

json presentation_to_json(const Presentation& p, const std::map<std::string, GroupRingElement>& assignment) {
  json gens = json::array();
  for (const auto& g : p.generators) gens.push_back({{"name", g.name}, {"deg", g.degree}});
  json rels = json::array();
  for (const auto& r : p.relations) {
    json poly = json::array();
    for (const auto& m : r) {
      json mono = json::object();
      for (std::size_t k = 0; k < m.exponents.size(); ++k)
        if (m.exponents[k] != 0) mono[p.generators[k].name] = m.exponents[k];
      poly.push_back({{"coef", to_string(m.coef)}, {"monomial", std::move(mono)}});
    }
    rels.push_back(std::move(poly));
  }
  json assign = json::object();
  for (const auto& [name, x] : assignment) assign[name] = format_element(x);
  return {{"generators", std::move(gens)}, {"relations", std::move(rels)}, {"coefficients", p.coefficients},
          {"assignment", std::move(assign)}};
}

std::map<std::string, GroupRingElement> assignment_from_json(const json& j, const GroupPtr& group, const RingPtr& ring) {
  if (!j.is_object()) schema_error("/assignment", "expected an object");
  std::map<std::string, GroupRingElement> out;
  for (const auto& [name, v] : j.items()) {
    const std::string w = at("/assignment", name);
    if (v.is_string()) {
      out.emplace(name, located(w, [&] { return parse_element(v.get<std::string>(), group, ring); }));
      continue;
    }
    GroupRingElement x(group, ring);
    for (std::size_t k = 0; k < get_array(v, w).size(); ++k) {
      const std::string tw = at(w, k);
      const std::size_t g = group_element_from_json(field(v[k], "g", tw), *group, at(tw, "g"));
      x.add(g, class_from_json(field(v[k], "class", tw), *ring, at(tw, "class")));
    }
    out.emplace(name, std::move(x));
  }
  return out;
}

json element_to_json(const GroupRingElement& x) {
  json terms = json::array();
  for (const auto& [g, v] : x.terms()) terms.push_back({{"g", x.group()->label(g)}, {"class", class_to_json(v)}});
  return {{"text", format_element(x)}, {"terms", std::move(terms)}};
}

json dims_table_to_json(const DimsTable& t) {
  json rows = json::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) rows.push_back({{"element", t.rows[r]}, {"dims", t.dims[r]}});
  return {{"degrees", t.degrees}, {"rows", std::move(rows)}, {"total", t.total}};
}

json structure_constants_to_json(const StructureConstants& sc) {
  json products = json::array();
  for (const auto& e : sc.products) {
    json terms = json::array();
    for (const auto& [k, c] : e.terms) terms.push_back(json::array({k, to_string(c)}));
    products.push_back({{"i", e.i}, {"j", e.j}, {"terms", std::move(terms)}});
  }
  return {{"basis", sc.labels}, {"products", std::move(products)}, {"integral", sc.integral}};
}

json check_report_to_json(const CheckReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"where", x.where}, {"detail", x.detail}});
  return {{"check", r.name}, {"pass", r.pass}, {"checked", r.checked}, {"violations", std::move(v)}, {"notes", r.notes}};
}

json injectivity_to_json(const InjectivityReport& r) {
  json sectors = json::array();
  for (const auto& s : r.sectors)
    sectors.push_back({{"element", s.label}, {"source_dim", s.source_dim}, {"rank", s.rank},
                       {"kernel_dim", s.kernel_dim()}, {"injective", s.injective()}});
  return {{"check", "injectivity"}, {"pass", r.injective}, {"injective", r.injective}, {"sectors", std::move(sectors)}};
}

json presentation_report_to_json(const PresentationReport& r) {
  json rels = json::array();
  for (const auto& v : r.relations)
    rels.push_back({{"relation", v.relation}, {"vanishes", v.vanishes}, {"value", format_element(v.value)}});
  return {{"relations", std::move(rels)},
          {"relations_vanish", r.relations_vanish},
          {"generators_in_subring", r.generators_in_subspace},
          {"generates", r.generates},
          {"quotient_dims", r.quotient_dims},
          {"subring_dims", r.subspace_dims},
          {"dims_match", r.dims_match},
          {"pass", r.pass}};
}

}  // namespace vircoh
