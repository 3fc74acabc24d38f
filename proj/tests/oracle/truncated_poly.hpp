#pragma once

// Test-side oracle: cohomology of products of spaces whose rings are
// truncated polynomial rings Q[v]/<v^{b+1}> in one variable each (CP^m,
// even spheres and their products). Classes are plain maps from exponent
// vectors to rationals; nothing here calls into the library except the final
// conversion to its basis indexing.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "vircoh/exactalg.hpp"
#include "vircoh/graded_ring.hpp"

namespace oracle {

using Exps = std::vector<int>;
using Poly = std::map<Exps, mpq_class>;

struct Space {
  std::vector<int> bound;   // v_k^{bound+1} = 0
  std::vector<int> degree;  // deg v_k

  [[nodiscard]] std::size_t vars() const { return bound.size(); }
  [[nodiscard]] int dimension() const {
    int d = 0;
    for (std::size_t k = 0; k < vars(); ++k) d += bound[k] * degree[k];
    return d;
  }
};

inline Space cp(int m) { return {{m}, {2}}; }
inline Space sphere(int k) { return {{1}, {2 * k}}; }

inline Space product(const Space& a, const Space& b) {
  Space s = a;
  s.bound.insert(s.bound.end(), b.bound.begin(), b.bound.end());
  s.degree.insert(s.degree.end(), b.degree.begin(), b.degree.end());
  return s;
}

inline Space power(const Space& a, std::size_t n) {
  Space s{{}, {}};
  for (std::size_t i = 0; i < n; ++i) s = product(s, a);
  return s;
}

inline void add_term(Poly& p, const Exps& e, const mpq_class& c) {
  if (c == 0) return;
  auto [it, fresh] = p.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

inline Poly one(const Space& s) { return {{Exps(s.vars(), 0), mpq_class(1)}}; }

inline Poly monomial(const Space& s, const Exps& e) {
  for (std::size_t k = 0; k < s.vars(); ++k)
    if (e[k] > s.bound[k]) return {};
  return {{e, mpq_class(1)}};
}

inline Poly multiply(const Space& s, const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(s.vars());
      bool zero = false;
      for (std::size_t k = 0; k < s.vars() && !zero; ++k) {
        e[k] = ea[k] + eb[k];
        zero = e[k] > s.bound[k];
      }
      if (!zero) add_term(out, e, ca * cb);
    }
  return out;
}

inline Poly pow(const Space& s, const Poly& a, unsigned k) {
  Poly r = one(s);
  for (unsigned i = 0; i < k; ++i) r = multiply(s, r, a);
  return r;
}

inline Poly scale(const Poly& a, const mpq_class& c) {
  Poly out;
  for (const auto& [e, v] : a) add_term(out, e, v * c);
  return out;
}

inline Poly add(Poly a, const Poly& b) {
  for (const auto& [e, v] : b) add_term(a, e, v);
  return a;
}

/// Every exponent vector of the space.
inline std::vector<Exps> monomials(const Space& s) {
  std::vector<Exps> out{Exps(s.vars(), 0)};
  for (std::size_t k = 0; k < s.vars(); ++k) {
    std::vector<Exps> next;
    for (const auto& e : out)
      for (int a = 0; a <= s.bound[k]; ++a) {
        Exps f = e;
        f[k] = a;
        next.push_back(f);
      }
    out = std::move(next);
  }
  return out;
}

inline Exps complement(const Space& s, const Exps& e) {
  Exps c(s.vars());
  for (std::size_t k = 0; k < s.vars(); ++k) c[k] = s.bound[k] - e[k];
  return c;
}

/// Coefficient of the top monomial.
inline mpq_class integrate(const Space& s, const Poly& a) {
  const auto it = a.find(complement(s, Exps(s.vars(), 0)));
  return it == a.end() ? mpq_class(0) : it->second;
}

/// Block i (1-based) of a power of `base`: variables [(i-1)*w, i*w).
inline Exps place(std::size_t width, std::size_t n, std::size_t block, const Exps& e) {
  Exps out(width * n, 0);
  for (std::size_t k = 0; k < width; ++k) out[(block - 1) * width + k] = e[k];
  return out;
}

/// Class of the diagonal of base in blocks i, j of base^n:
/// sum over monomials b of b (block i) * b^# (block j).
inline Poly diagonal(const Space& base, std::size_t n, std::size_t i, std::size_t j) {
  Poly out;
  const std::size_t w = base.vars();
  for (const auto& b : monomials(base)) {
    Exps e = place(w, n, i, b);
    const Exps c = place(w, n, j, complement(base, b));
    for (std::size_t k = 0; k < e.size(); ++k) e[k] += c[k];
    add_term(out, e, mpq_class(1));
  }
  return out;
}

/// Cycles of a permutation given as 0-based images, each 0-based, sorted by
/// their minimal element.
inline std::vector<std::vector<std::size_t>> cycles(const std::vector<std::size_t>& images) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (seen[i]) continue;
    std::vector<std::size_t> c;
    for (std::size_t j = i; !seen[j]; j = images[j]) {
      seen[j] = true;
      c.push_back(j);
    }
    out.push_back(c);
  }
  return out;
}

/// Restriction to the fixed diagonal base^{c}: block i -> block of its cycle.
inline Poly restrict_to_fixed(const Space& base, std::size_t n, const std::vector<std::size_t>& images, const Poly& u) {
  const auto cyc = cycles(images);
  std::vector<std::size_t> block_of(n);
  for (std::size_t c = 0; c < cyc.size(); ++c)
    for (auto i : cyc[c]) block_of[i] = c;
  const Space fixed = power(base, cyc.size());
  const std::size_t w = base.vars();
  Poly out;
  for (const auto& [e, v] : u) {
    Poly term = one(fixed);
    for (std::size_t i = 0; i < n; ++i) {
      Exps part(w);
      for (std::size_t k = 0; k < w; ++k) part[k] = e[i * w + k];
      term = multiply(fixed, term, monomial(fixed, place(w, cyc.size(), block_of[i] + 1, part)));
    }
    out = add(out, scale(term, v));
  }
  return out;
}

/// Pushforward from the fixed diagonal by duality with explicit dual
/// monomials: f_! a = sum_b <a * f^* b> b^#.
inline Poly gysin(const Space& base, std::size_t n, const std::vector<std::size_t>& images, const Poly& alpha) {
  const Space amb = power(base, n);
  const Space fixed = power(base, cycles(images).size());
  Poly out;
  for (const auto& b : monomials(amb)) {
    const mpq_class c = integrate(fixed, multiply(fixed, alpha, restrict_to_fixed(base, n, images, monomial(amb, b))));
    add_term(out, complement(amb, b), c);
  }
  return out;
}

/// Converts to the library basis of a ring built as the tensor product of
/// one single-variable factor per oracle variable.
inline vircoh::SparseVec to_sparse(const Poly& p, const vircoh::RingModel& ring) {
  vircoh::SparseVec out;
  for (const auto& [e, c] : p) {
    std::vector<std::size_t> digits(e.begin(), e.end());
    out[ring.index_of(digits)] = c;
  }
  return out;
}

inline Poly from_sparse(const vircoh::SparseVec& v, const vircoh::RingModel& ring) {
  Poly out;
  for (const auto& [i, c] : v) {
    const auto d = ring.digits(i);
    add_term(out, Exps(d.begin(), d.end()), c);
  }
  return out;
}

}  // namespace oracle
