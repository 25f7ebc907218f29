#pragma once

// Shared helpers for the test suites: seeded random exact data and a small,
// deliberately naive exterior algebra used as an independent oracle.

#include <algorithm>
#include <map>
#include <random>
#include <vector>

#include "geowb/geowb.hpp"

namespace geowb::testing {

using Q = GaussianRational;
using F = ComplexFloat;

inline Q gq(long re, long im = 0, long den = 1) { return Q(mpq_class(re, den), mpq_class(im, den)); }

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  /// Small Gaussian rational (numerators in [-3, 3], denominators 1..3).
  Q scalar() {
    const long den = integer(1, 3);
    return gq(integer(-3, 3), integer(-3, 3), den);
  }
  Q nonzero_scalar() {
    for (;;) {
      Q z = scalar();
      if (!z.is_zero()) return z;
    }
  }

  Form<Q> form(int n, int terms, int degree = -1) {
    Form<Q> f(n);
    for (int t = 0; t < terms; ++t) {
      const int k = degree >= 0 ? degree : integer(0, 2 * n);
      auto basis = degree_basis(n, k);
      if (basis.empty()) continue;
      f.add_term(basis[integer(0, static_cast<int>(basis.size()) - 1)], scalar());
    }
    return f;
  }

  Form<Q> bidegree_form(int n, int p, int q, int terms) {
    Form<Q> f(n);
    auto basis = bidegree_basis(n, p, q);
    for (int t = 0; t < terms && !basis.empty(); ++t)
      f.add_term(basis[integer(0, static_cast<int>(basis.size()) - 1)], scalar());
    return f;
  }

  /// Random real (p,p)-form: h + conj(h).
  Form<Q> real_pp_form(int n, int p, int terms) {
    Form<Q> h = bidegree_form(n, p, p, terms);
    return h + conjugate(h);
  }

  ParamMap<Q> params(const std::vector<std::string>& names, double density = 0.6) {
    ParamMap<Q> out;
    for (const auto& name : names)
      if (std::uniform_real_distribution<double>(0, 1)(engine_) < density) out[name] = scalar();
    return out;
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

/// Integrable exact structures: catalog rows at default parameters plus the
/// three families at random parameters.
inline StructurePresentation<Q> random_structure(Rng& rng) {
  switch (rng.integer(0, 4)) {
    case 0: return fps6<Q>(rng.params(fps6_parameter_names()));
    case 1: return ft8<Q>(rng.params(ft8_parameter_names()));
    case 2: return st10<Q>(rng.params(st10_parameter_names()));
    case 3: return nakamura_iv<Q>(rng.integer(1, 7));
    default: return nakamura_v<Q>(rng.integer(1, 20));
  }
}

// ---------------------------------------------------------------------------
// Oracle exterior algebra. Generators are numbered 1..n (phi) and n+1..2n
// (conj phi); monomials are sorted generator lists; signs come from an
// explicit bubble sort.

struct Oracle {
  int n;
  using Mono = std::vector<int>;
  using Vec = std::map<Mono, Q>;

  /// Sorts gens in place; returns 0 on a repeated generator, else the sign.
  static int sort_sign(Mono& gens) {
    int sign = 1;
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j + 1 < gens.size() - i; ++j) {
        if (gens[j] == gens[j + 1]) return 0;
        if (gens[j] > gens[j + 1]) {
          std::swap(gens[j], gens[j + 1]);
          sign = -sign;
        }
      }
    for (std::size_t j = 0; j + 1 < gens.size(); ++j)
      if (gens[j] == gens[j + 1]) return 0;
    return sign;
  }

  static void add(Vec& v, const Mono& m, const Q& c) {
    if (c.is_zero()) return;
    auto it = v.find(m);
    if (it == v.end()) {
      v.emplace(m, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) v.erase(it);
  }

  static Vec wedge(const Vec& a, const Vec& b) {
    Vec out;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b) {
        Mono m = ma;
        m.insert(m.end(), mb.begin(), mb.end());
        const int s = sort_sign(m);
        if (s != 0) add(out, m, s > 0 ? ca * cb : -(ca * cb));
      }
    return out;
  }

  static Vec sum(const Vec& a, const Vec& b) {
    Vec out = a;
    for (const auto& [m, c] : b) add(out, m, c);
    return out;
  }

  static Vec scale(const Vec& a, const Q& c) {
    Vec out;
    for (const auto& [m, x] : a) add(out, m, x * c);
    return out;
  }

  Vec conj(const Vec& a) const {
    Vec out;
    for (const auto& [m, c] : a) {
      Mono g;
      for (int x : m) g.push_back(x <= n ? x + n : x - n);
      const int s = sort_sign(g);
      add(out, g, s > 0 ? c.conj() : -c.conj());
    }
    return out;
  }

  Vec gen(int g) const { return Vec{{Mono{g}, Q(1)}}; }

  /// Converts from the library representation (input data only).
  Vec from(const Form<Q>& f) const {
    Vec out;
    for (const auto& [m, c] : f.terms()) {
      Mono g;
      for (int i : indices_of(m.holo)) g.push_back(i);
      for (int i : indices_of(m.anti)) g.push_back(i + n);
      add(out, g, c);
    }
    return out;
  }

  /// d on a generator list by the Leibniz rule, with d(phi^i) taken from the
  /// structure equations and d(conj phi^i) = conj(d phi^i).
  Vec d(const Vec& f, const std::vector<Vec>& dgen) const {
    Vec out;
    for (const auto& [m, c] : f)
      for (std::size_t j = 0; j < m.size(); ++j) {
        Vec left{{Mono(m.begin(), m.begin() + j), Q(1)}};
        Vec right{{Mono(m.begin() + j + 1, m.end()), Q(1)}};
        Vec term = wedge(wedge(left, dgen[m[j]]), right);
        out = sum(out, scale(term, (j % 2 == 0) ? c : -c));
      }
    return out;
  }

  std::vector<Vec> dgen_of(const StructurePresentation<Q>& pres) const {
    std::vector<Vec> dg(2 * n + 1);
    for (int i = 1; i <= n; ++i) {
      dg[i] = from(pres.dphi()[i - 1]);
      dg[i + n] = conj(dg[i]);
    }
    return dg;
  }

  int holo_count(const Mono& m) const {
    return static_cast<int>(std::count_if(m.begin(), m.end(), [&](int x) { return x <= n; }));
  }

  /// Bidegree (dp, dq) part of d applied termwise.
  Vec d_part(const Vec& f, const std::vector<Vec>& dgen, int dp) const {
    Vec out;
    for (const auto& [m, c] : f) {
      Vec image = d(Vec{{m, c}}, dgen);
      for (const auto& [mi, ci] : image)
        if (holo_count(mi) == holo_count(m) + dp) add(out, mi, ci);
    }
    return out;
  }

  /// (i/2) sum H_jk phi^j ^ conj(phi^k).
  Vec fundamental(const std::vector<std::vector<Q>>& h) const {
    Vec out;
    const Q half_i = gq(0, 1, 2);
    for (int j = 1; j <= n; ++j)
      for (int k = 1; k <= n; ++k) out = sum(out, scale(wedge(gen(j), gen(k + n)), half_i * h[j - 1][k - 1]));
    return out;
  }

  static Vec power(const Vec& f, int k) {
    Vec out{{Mono{}, Q(1)}};
    for (int j = 0; j < k; ++j) out = wedge(out, f);
    return out;
  }
};

/// Library form equals oracle vector.
inline bool same(const Oracle& o, const Form<Q>& f, const Oracle::Vec& v) { return o.from(f) == v; }

}  // namespace geowb::testing
