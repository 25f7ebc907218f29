#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "geowb/monomial.hpp"
#include "geowb/scalar.hpp"

namespace geowb {

/// Sparse invariant form over a rank-n complex coframe. Zero coefficients are
/// never stored (on the float backend "zero" means within the tolerance).
template <Scalar S>
class Form {
 public:
  using scalar_type = S;
  using TermMap = std::map<Monomial, S>;

  Form() = default;
  explicit Form(int n) : n_(n) {
    if (n < 0 || n > kMaxRank) throw std::invalid_argument("rank out of range: " + std::to_string(n));
  }

  static Form one(int n) { return monomial(n, Monomial{}, S::one()); }

  static Form monomial(int n, Monomial m, S c = S::one()) {
    Form f(n);
    f.add_term(m, std::move(c));
    return f;
  }

  static Form generator(int n, Generator g, S c = S::one()) { return wedge_of(n, {g}, std::move(c)); }

  /// c * g1 ^ g2 ^ ... in the order written (the notation phi^{1 1bar 2 2bar}).
  static Form wedge_of(int n, std::initializer_list<Generator> gens, S c = S::one()) {
    auto [m, s] = normalize_monomial(n, gens);
    Form f(n);
    if (s == 0) return f;
    if (s < 0) c = -c;
    f.add_term(m, std::move(c));
    return f;
  }

  /// Sum of c_j phi^j (or conj(phi)^j when anti) for a coefficient vector.
  template <typename Range>
  static Form covector(int n, const Range& coeffs, bool anti = false) {
    Form f(n);
    int j = 1;
    for (const auto& c : coeffs) {
      f.add_term(anti ? Monomial{0, index_bit(j)} : Monomial{index_bit(j), 0}, S(c));
      ++j;
    }
    return f;
  }

  int rank() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  S coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? S::zero() : it->second;
  }

  Form& add_term(const Monomial& m, const S& c) {
    if ((m.holo | m.anti) & ~full_mask(n_)) throw std::out_of_range("monomial index exceeds rank");
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
    return *this;
  }

  /// Common total degree, or nullopt when the form is zero or inhomogeneous.
  std::optional<int> degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : terms_) {
      if (d && *d != m.degree()) return std::nullopt;
      d = m.degree();
    }
    return d;
  }

  /// Common bidegree, or nullopt when zero or mixed.
  std::optional<std::pair<int, int>> bidegree() const {
    std::optional<std::pair<int, int>> b;
    for (const auto& [m, c] : terms_) {
      std::pair<int, int> mb{m.p(), m.q()};
      if (b && *b != mb) return std::nullopt;
      b = mb;
    }
    return b;
  }

  Form& operator+=(const Form& o) {
    check_rank(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Form& operator-=(const Form& o) {
    check_rank(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  Form& operator*=(const S& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto it = terms_.begin(); it != terms_.end();) {
      it->second *= c;
      if (it->second.is_zero()) it = terms_.erase(it); else ++it;
    }
    return *this;
  }

  friend Form operator+(Form a, const Form& b) { return a += b; }
  friend Form operator-(Form a, const Form& b) { return a -= b; }
  friend Form operator*(Form a, const S& c) { return a *= c; }
  friend Form operator*(const S& c, Form a) { return a *= c; }
  Form operator-() const { return Form(*this) *= S(-1); }

  friend bool operator==(const Form& a, const Form& b) {
    if (a.n_ != b.n_) return false;
    return (a - b).is_zero();
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (m.degree() > 0) os << "*" << monomial_label(m);
    }
    return os.str();
  }

  void check_rank(const Form& o) const {
    if (o.n_ != n_)
      throw std::invalid_argument("rank mismatch: " + std::to_string(n_) + " vs " + std::to_string(o.n_));
  }

 private:
  int n_ = 0;
  TermMap terms_;
};

template <Scalar S>
Form<S> wedge(const Form<S>& f, const Form<S>& g) {
  f.check_rank(g);
  Form<S> out(f.rank());
  for (const auto& [mf, cf] : f.terms()) {
    for (const auto& [mg, cg] : g.terms()) {
      int s = wedge_sign(mf, mg);
      if (s == 0) continue;
      S c = cf * cg;
      if (s < 0) c = -c;
      out.add_term(wedge_monomial(mf, mg), c);
    }
  }
  return out;
}

/// Antilinear involution induced by phi^j <-> conj(phi^j).
template <Scalar S>
Form<S> conjugate(const Form<S>& f) {
  Form<S> out(f.rank());
  for (const auto& [m, c] : f.terms()) {
    auto [cm, s] = conjugate_monomial(m);
    out.add_term(cm, s < 0 ? -c.conj() : c.conj());
  }
  return out;
}

/// Component of bidegree exactly (p, q).
template <Scalar S>
Form<S> bidegree_project(const Form<S>& f, int p, int q) {
  Form<S> out(f.rank());
  for (const auto& [m, c] : f.terms())
    if (m.p() == p && m.q() == q) out.add_term(m, c);
  return out;
}

/// Component of total degree k.
template <Scalar S>
Form<S> degree_project(const Form<S>& f, int k) {
  Form<S> out(f.rank());
  for (const auto& [m, c] : f.terms())
    if (m.degree() == k) out.add_term(m, c);
  return out;
}

template <Scalar S>
bool is_real(const Form<S>& f) {
  return conjugate(f) == f;
}

/// sigma_p = i^{p^2} 2^{-p}, evaluated literally.
template <Scalar S>
S sigma(int p) {
  if (p < 0) throw std::invalid_argument("sigma: negative degree");
  S v = S::one();
  for (int k = 0; k < p * p; ++k) v *= S::imag_unit();
  for (int k = 0; k < p; ++k) v /= S(2);
  return v;
}

template <Scalar S>
Monomial top_monomial(int n) {
  return {full_mask(n), full_mask(n)};
}

/// Vol = sigma_n phi^{1..n} ^ phibar^{1..n}.
template <Scalar S>
Form<S> volume_form(int n) {
  return Form<S>::monomial(n, top_monomial<S>(n), sigma<S>(n));
}

/// c / sigma_n for f = c phi^{1..n} ^ phibar^{1..n}.
template <Scalar S>
S volume_ratio(const Form<S>& f) {
  const Monomial top = top_monomial<S>(f.rank());
  for (const auto& [m, c] : f.terms())
    if (!(m == top)) throw std::invalid_argument("volume_ratio: form has a non-top term " + monomial_label(m));
  return f.coefficient(top) / sigma<S>(f.rank());
}

/// Converts a form between backends (exact -> float is lossy; float -> exact is not offered).
template <Scalar T, Scalar S>
Form<T> convert_form(const Form<S>& f) {
  if constexpr (std::is_same_v<T, S>) {
    return f;
  } else {
    static_assert(!T::is_exact, "only exact -> float conversion is supported");
    Form<T> out(f.rank());
    for (const auto& [m, c] : f.terms()) {
      auto z = c.to_complex();
      out.add_term(m, T(z.real(), z.imag()));
    }
    return out;
  }
}

}  // namespace geowb
