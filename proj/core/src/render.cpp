#include "vircoh/render.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <utility>

#include "vircoh/errors.hpp"

namespace vircoh {

std::string format_class(const RingModel& ring, const SparseVec& v) {
  if (v.empty()) return "0";
  std::vector<std::pair<std::size_t, Scalar>> terms(v.begin(), v.end());
  std::stable_sort(terms.begin(), terms.end(), [&](const auto& l, const auto& r) {
    if (ring.degree(l.first) != ring.degree(r.first)) return ring.degree(l.first) < ring.degree(r.first);
    return ring.name(l.first) < ring.name(r.first);
  });
  std::string out;
  bool first = true;
  for (const auto& [i, c] : terms) {
    Scalar a = c;
    if (first) {
      if (sgn(a) < 0) out += "-";
    } else {
      out += sgn(a) < 0 ? " - " : " + ";
    }
    a = abs(a);
    const std::string& name = ring.name(i);
    if (i == 0) {
      out += to_string(a);
    } else {
      if (a != 1) out += to_string(a) + "*";
      out += name;
    }
    first = false;
  }
  return out;
}

std::string format_element(const GroupRingElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [g, v] : x.terms()) {
    std::string cls = format_class(*x.ring(), v);
    bool negative = false;
    if (v.size() == 1 && cls.front() == '-') {
      negative = true;
      cls.erase(0, 1);
    }
    std::string term = v.size() > 1 && (g != 0 || x.terms().size() > 1) ? "(" + cls + ")" : cls;
    if (g != 0) term += "[" + x.group()->label(g) + "]";
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += (negative ? " - " : " + ") + term;
    }
  }
  return out;
}

namespace {

bool is_name_char(char c) {
  return !std::isspace(static_cast<unsigned char>(c)) && std::string_view("+-*^()[]/").find(c) == std::string_view::npos;
}

class ElementParser {
 public:
  ElementParser(std::string_view text, const GroupPtr& group, const RingModel& ring)
      : text_(text), group_(group), ring_(ring) {}

  std::vector<std::pair<SparseVec, std::size_t>> parse_element() {
    std::vector<std::pair<SparseVec, std::size_t>> terms;
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
      SparseVec v = scaled(product(), sign);
      std::size_t g = 0;
      if (peek() == '[') {
        if (!group_) fail("group labels are not allowed here");
        ++pos_;
        const auto close = text_.find(']', pos_);
        if (close == std::string_view::npos) fail("missing ']'");
        std::string label(text_.substr(pos_, close - pos_));
        label.erase(0, label.find_first_not_of(' '));
        label.erase(label.find_last_not_of(' ') + 1);
        const auto found = group_->find_label(label);
        if (!found) fail("unknown group element '" + label + "'");
        g = *found;
        pos_ = close + 1;
      }
      terms.emplace_back(std::move(v), g);
      first = false;
    }
    if (peek() != '\0') fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return terms;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::InvalidInput, "element '" + std::string(text_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  SparseVec class_sum() {
    SparseVec acc;
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
      add_scaled(acc, product(), sign);
      first = false;
    }
    return acc;
  }

  SparseVec product() {
    SparseVec v = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        v = ring_.multiply(v, power());
      } else if (c == '(' || (c != '\0' && is_name_char(c))) {
        v = ring_.multiply(v, power());
      } else {
        return v;
      }
    }
  }

  SparseVec power() {
    const SparseVec base = atom();
    if (peek() != '^') return base;
    ++pos_;
    peek();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    const auto e = std::stoul(std::string(text_.substr(start, pos_ - start)));
    SparseVec out{{0, Scalar(1)}};
    for (unsigned long k = 0; k < e; ++k) out = ring_.multiply(out, base);
    return out;
  }

  SparseVec atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      SparseVec v = class_sum();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
      SparseVec v{{0, parse_scalar(text_.substr(start, pos_ - start))}};
      prune(v);
      return v;
    }
    if (c != '\0' && is_name_char(c)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < ring_.dim(); ++i)
        if (ring_.name(i) == name) return SparseVec{{i, Scalar(1)}};
      fail("unknown basis class '" + name + "'");
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  const GroupPtr& group_;
  const RingModel& ring_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupRingElement parse_element(std::string_view text, const GroupPtr& group, const RingPtr& ring) {
  GroupRingElement out(group, ring);
  for (const auto& [v, g] : ElementParser(text, group, *ring).parse_element()) out.add(g, v);
  return out;
}

SparseVec parse_class(std::string_view text, const RingModel& ring) {
  const GroupPtr none;
  SparseVec out;
  for (const auto& [v, g] : ElementParser(text, none, ring).parse_element()) add_scaled(out, v, Scalar(1));
  return out;
}

std::string format_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
  // Width in code points, so labels such as "λ^2" align.
  const auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> w(header.size(), 0);
  for (std::size_t k = 0; k < header.size(); ++k) w[k] = width(header[k]);
  for (const auto& r : rows)
    for (std::size_t k = 0; k < r.size() && k < w.size(); ++k) w[k] = std::max(w[k], width(r[k]));
  const auto line = [&](const std::vector<std::string>& cells) {
    std::string out;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const std::string pad(w[k] - width(cells[k]), ' ');
      out += k == 0 ? cells[k] + pad : "  " + pad + cells[k];
    }
    return out + "\n";
  };
  std::string out = line(header);
  for (const auto& r : rows) out += line(r);
  return out;
}

std::string format_dims_table(const DimsTable& t) {
  std::vector<std::string> header{"element"};
  for (const int d : t.degrees) header.push_back("deg " + std::to_string(d));
  header.push_back("total");
  std::vector<std::vector<std::string>> rows;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<std::string> row{t.rows[r]};
    std::size_t sum = 0;
    for (const auto d : t.dims[r]) {
      row.push_back(std::to_string(d));
      sum += d;
    }
    row.push_back(std::to_string(sum));
    rows.push_back(std::move(row));
  }
  std::string out = format_table(header, rows);
  out += "total dimension " + std::to_string(t.total) + "\n";
  return out;
}

}  // namespace vircoh
