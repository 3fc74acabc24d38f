#include "vircoh/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "vircoh/errors.hpp"

namespace vircoh {

std::size_t Presentation::index_of(std::string_view name) const {
  for (std::size_t k = 0; k < generators.size(); ++k)
    if (generators[k].name == name) return k;
  throw Error(ErrorCode::InvalidInput, "unknown generator '" + std::string(name) + "'");
}

void Presentation::validate() const {
  for (std::size_t k = 0; k < generators.size(); ++k) {
    const auto& g = generators[k];
    if (g.degree <= 0 || g.degree % 2 != 0)
      throw Error(ErrorCode::DegreeMismatch, "generator '" + g.name + "' must have positive even degree");
    for (std::size_t l = 0; l < k; ++l)
      if (generators[l].name == g.name) throw Error(ErrorCode::InvalidInput, "duplicate generator '" + g.name + "'");
  }
  for (const auto& r : relations) {
    for (const auto& m : r)
      if (m.exponents.size() != generators.size())
        throw Error(ErrorCode::InvalidInput, "relation monomial has the wrong number of exponents");
    polynomial_degree(r, generators);
  }
}

Polynomial normalize(Polynomial p) {
  std::map<std::vector<unsigned>, Scalar> acc;
  for (auto& m : p) acc[m.exponents] += m.coef;
  Polynomial out;
  for (auto& [e, c] : acc)
    if (sgn(c) != 0) out.push_back({c, e});
  return out;
}

int polynomial_degree(const Polynomial& p, const std::vector<PresentationGenerator>& gens) {
  int deg = -1;
  for (const auto& m : p) {
    if (sgn(m.coef) == 0) continue;
    int d = 0;
    for (std::size_t k = 0; k < m.exponents.size(); ++k) d += static_cast<int>(m.exponents[k]) * gens.at(k).degree;
    if (deg >= 0 && d != deg) throw Error(ErrorCode::DegreeMismatch, "relation " + to_string(p, gens) + " is not homogeneous");
    deg = d;
  }
  return deg;
}

namespace {

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& x : a)
    for (const auto& y : b) {
      Monomial m{x.coef * y.coef, x.exponents};
      for (std::size_t k = 0; k < m.exponents.size(); ++k) m.exponents[k] += y.exponents[k];
      out.push_back(std::move(m));
    }
  return normalize(std::move(out));
}

class PolyParser {
 public:
  PolyParser(std::string_view text, const std::vector<PresentationGenerator>& gens) : text_(text), gens_(gens) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::InvalidInput,
                "polynomial '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  Polynomial constant(const Scalar& c) const { return normalize({{c, std::vector<unsigned>(gens_.size(), 0)}}); }

  Polynomial expr() {
    Polynomial acc;
    bool first = true;
    for (;;) {
      Scalar sign = 1;
      const char c = peek();
      if (c == '+' || c == '-') {
        sign = c == '-' ? -1 : 1;
        ++pos_;
      } else if (!first) {
        break;
      }
      for (auto& m : term()) acc.push_back({m.coef * sign, m.exponents});
      first = false;
    }
    return normalize(std::move(acc));
  }

  static bool starts_factor(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial term() {
    Polynomial p = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        p = poly_mul(p, power());
      } else if (starts_factor(c)) {
        p = poly_mul(p, power());
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (peek() == '^') {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      const unsigned e = static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start))));
      Polynomial out = constant(1);
      for (unsigned k = 0; k < e; ++k) out = poly_mul(out, base);
      return out;
    }
    return base;
  }

  Polynomial atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
      return constant(parse_scalar(text_.substr(start, pos_ - start)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
        ++pos_;
      return name_product(text_.substr(start, pos_ - start));
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  // A run of letters is a generator name or a juxtaposition such as "xy".
  Polynomial name_product(std::string_view run) {
    std::vector<unsigned> e(gens_.size(), 0);
    std::size_t at = 0;
    while (at < run.size()) {
      std::size_t best = gens_.size();
      std::size_t best_len = 0;
      for (std::size_t k = 0; k < gens_.size(); ++k) {
        const auto& n = gens_[k].name;
        if (n.size() > best_len && run.substr(at, n.size()) == n) {
          best = k;
          best_len = n.size();
        }
      }
      if (best == gens_.size()) fail("unknown generator in '" + std::string(run) + "'");
      ++e[best];
      at += best_len;
    }
    return {{Scalar(1), std::move(e)}};
  }

  std::string_view text_;
  const std::vector<PresentationGenerator>& gens_;
  std::size_t pos_ = 0;
};

// Exponent vectors of all monomials of the given degree.
void monomials_of_degree(const std::vector<PresentationGenerator>& gens, int degree,
                         std::vector<std::vector<unsigned>>& out) {
  std::vector<unsigned> e(gens.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t k, int left) {
    if (k == gens.size()) {
      if (left == 0) out.push_back(e);
      return;
    }
    for (unsigned a = 0; static_cast<int>(a) * gens[k].degree <= left; ++a) {
      e[k] = a;
      rec(k + 1, left - static_cast<int>(a) * gens[k].degree);
    }
    e[k] = 0;
  };
  rec(0, degree);
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<PresentationGenerator>& gens) {
  return PolyParser(text, gens).parse();
}

std::string to_string(const Polynomial& p, const std::vector<PresentationGenerator>& gens) {
  if (p.empty()) return "0";
  std::string out;
  for (std::size_t t = 0; t < p.size(); ++t) {
    const auto& m = p[t];
    Scalar c = m.coef;
    if (t == 0) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string mono;
    for (std::size_t k = 0; k < m.exponents.size(); ++k) {
      if (m.exponents[k] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += gens.at(k).name;
      if (m.exponents[k] > 1) mono += "^" + std::to_string(m.exponents[k]);
    }
    if (mono.empty()) {
      out += to_string(c);
    } else {
      if (c != 1) out += to_string(c) + "*";
      out += mono;
    }
  }
  return out;
}

std::vector<std::size_t> quotient_dims(const Presentation& p, int up_to_degree) {
  p.validate();
  std::vector<std::size_t> dims(static_cast<std::size_t>(std::max(up_to_degree, 0)) + 1, 0);
  std::vector<int> rel_deg;
  for (const auto& r : p.relations) rel_deg.push_back(polynomial_degree(r, p.generators));
  for (int d = 0; d <= up_to_degree; d += 2) {
    std::vector<std::vector<unsigned>> monos;
    monomials_of_degree(p.generators, d, monos);
    std::map<std::vector<unsigned>, std::size_t> index;
    for (std::size_t k = 0; k < monos.size(); ++k) index.emplace(monos[k], k);
    QMatrix ideal(0, monos.size());
    for (std::size_t r = 0; r < p.relations.size(); ++r) {
      if (rel_deg[r] < 0 || rel_deg[r] > d) continue;
      std::vector<std::vector<unsigned>> mult;
      monomials_of_degree(p.generators, d - rel_deg[r], mult);
      for (const auto& m : mult) {
        std::vector<Scalar> row(monos.size());
        for (const auto& term : p.relations[r]) {
          std::vector<unsigned> e = term.exponents;
          for (std::size_t k = 0; k < e.size(); ++k) e[k] += m[k];
          row[index.at(e)] += term.coef;
        }
        ideal.append_row(row);
      }
    }
    dims[static_cast<std::size_t>(d)] = monos.size() - rank(ideal);
  }
  return dims;
}

GroupRingElement evaluate(const Polynomial& poly, const std::vector<GroupRingElement>& values, const GroupRingElement& unit) {
  GroupRingElement out(unit.group(), unit.ring());
  std::map<std::pair<std::size_t, unsigned>, GroupRingElement> powers;
  for (const auto& m : poly) {
    GroupRingElement prod = unit;
    for (std::size_t k = 0; k < m.exponents.size(); ++k) {
      if (m.exponents[k] == 0) continue;
      auto it = powers.find({k, m.exponents[k]});
      if (it == powers.end()) it = powers.emplace(std::make_pair(k, m.exponents[k]), power(values.at(k), m.exponents[k])).first;
      prod = gr_multiply(prod, it->second);
    }
    out += m.coef * prod;
  }
  return out;
}

PresentationReport verify_presentation(const GradedSubspace& s, const Presentation& p,
                                       const std::map<std::string, GroupRingElement>& assignment) {
  p.validate();
  for (const auto& [name, _] : assignment) (void)p.index_of(name);
  std::vector<GroupRingElement> values;
  int max_deg = 0;
  for (const auto& g : p.generators) {
    const auto it = assignment.find(g.name);
    if (it == assignment.end()) throw Error(ErrorCode::InvalidInput, "no assignment for generator '" + g.name + "'");
    const GroupRingElement& v = it->second;
    if (!v.is_zero() && v.homogeneous_degree() != g.degree)
      throw Error(ErrorCode::DegreeMismatch, "generator '" + g.name + "' has degree " + std::to_string(g.degree) +
                                                 " but its assigned element has degree " +
                                                 std::to_string(v.homogeneous_degree()));
    values.push_back(v);
    max_deg = std::max(max_deg, g.degree);
  }
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = a + 1; b < values.size(); ++b)
      if (!(gr_multiply(values[a], values[b]) == gr_multiply(values[b], values[a])))
        throw Error(ErrorCode::NonCommutative,
                    "'" + p.generators[a].name + "' and '" + p.generators[b].name + "' do not commute");

  PresentationReport rep;
  const GroupRingElement unit = GroupRingElement::one(s.group(), s.ring());
  rep.relations_vanish = true;
  for (const auto& r : p.relations) {
    RelationVerdict v{to_string(r, p.generators), false, evaluate(r, values, unit)};
    v.vanishes = v.value.is_zero();
    rep.relations_vanish = rep.relations_vanish && v.vanishes;
    rep.relations.push_back(std::move(v));
  }

  rep.generators_in_subspace = std::all_of(values.begin(), values.end(), [&](const auto& v) { return s.contains(v); });

  GradedSubspace t = GradedSubspace::ungraded_by_group(s.group(), s.ring());
  t.insert(unit, "1");
  std::vector<Generator> gens;
  for (std::size_t k = 0; k < values.size(); ++k) gens.push_back({values[k], p.generators[k].name});
  saturate(t, gens);
  const bool inside = std::all_of(t.basis().begin(), t.basis().end(), [&](const auto& b) { return s.contains(b.element); });
  rep.generates = inside && t.dims_by_degree() == s.dims_by_degree();

  const int cap = s.ring()->top_degree() + max_deg;
  rep.quotient_dims = quotient_dims(p, cap);
  rep.subspace_dims = s.dims_by_degree();
  rep.subspace_dims.resize(static_cast<std::size_t>(cap) + 1, 0);
  rep.dims_match = rep.quotient_dims == rep.subspace_dims;
  rep.pass = rep.relations_vanish && rep.generators_in_subspace && rep.generates && rep.dims_match;
  return rep;
}

}  // namespace vircoh
