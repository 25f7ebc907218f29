#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "geowb/form.hpp"

namespace geowb {

/// A complex Lie algebra given by its structure equations d(phi^1), ..., d(phi^n).
template <Scalar S>
class StructurePresentation {
 public:
  using scalar_type = S;

  StructurePresentation() = default;
  StructurePresentation(std::string name, int n, std::vector<Form<S>> dphi)
      : name_(std::move(name)), n_(n), dphi_(std::move(dphi)) {
    if (n < 1 || n > kMaxRank) throw std::invalid_argument("rank out of range: " + std::to_string(n));
    if (static_cast<int>(dphi_.size()) != n)
      throw std::invalid_argument("expected " + std::to_string(n) + " structure equations, got " +
                                  std::to_string(dphi_.size()));
    for (int i = 0; i < n; ++i) {
      if (dphi_[i].rank() != n) throw std::invalid_argument("structure equation " + std::to_string(i + 1) + " has wrong rank");
      for (const auto& [m, c] : dphi_[i].terms())
        if (m.degree() != 2)
          throw std::invalid_argument("structure equation " + std::to_string(i + 1) + " is not a 2-form");
    }
    dphibar_.reserve(n);
    for (const auto& f : dphi_) dphibar_.push_back(conjugate(f));
  }

  static StructurePresentation torus(int n, std::string name = "torus") {
    return StructurePresentation(std::move(name), n, std::vector<Form<S>>(n, Form<S>(n)));
  }

  const std::string& name() const { return name_; }
  int rank() const { return n_; }
  const std::vector<Form<S>>& dphi() const { return dphi_; }

  /// d of a single generator (1-based index).
  const Form<S>& d_generator(int index, bool anti) const {
    if (index < 1 || index > n_) throw std::out_of_range("generator index out of range");
    return anti ? dphibar_[index - 1] : dphi_[index - 1];
  }

  /// No (0,2) component in any d(phi^i).
  bool is_integrable() const {
    for (const auto& f : dphi_)
      for (const auto& [m, c] : f.terms())
        if (m.p() == 0) return false;
    return true;
  }

  /// Every d(phi^i) is purely of type (2,0).
  bool is_complex_parallelizable() const {
    for (const auto& f : dphi_)
      for (const auto& [m, c] : f.terms())
        if (m.p() != 2) return false;
    return true;
  }

 private:
  std::string name_;
  int n_ = 0;
  std::vector<Form<S>> dphi_;
  std::vector<Form<S>> dphibar_;
};

namespace detail {

template <Scalar S>
void accumulate_d_monomial(const StructurePresentation<S>& pres, const Monomial& m, const S& coeff, Form<S>& out) {
  // Generators in canonical order: holomorphic ascending, then antiholomorphic ascending.
  std::vector<Generator> gens;
  for (int i : indices_of(m.holo)) gens.push_back(holo(i));
  for (int i : indices_of(m.anti)) gens.push_back(anti(i));
  Monomial prefix;
  Monomial suffix = m;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    const Generator& g = gens[j];
    Monomial single = g.anti ? Monomial{0, index_bit(g.index)} : Monomial{index_bit(g.index), 0};
    suffix.holo &= ~single.holo;
    suffix.anti &= ~single.anti;
    const int leibniz = (j & 1) ? -1 : 1;
    for (const auto& [dm, dc] : pres.d_generator(g.index, g.anti).terms()) {
      int s1 = wedge_sign(prefix, dm);
      if (s1 == 0) continue;
      Monomial mid = wedge_monomial(prefix, dm);
      int s2 = wedge_sign(mid, suffix);
      if (s2 == 0) continue;
      S c = coeff * dc;
      if (leibniz * s1 * s2 < 0) c = -c;
      out.add_term(wedge_monomial(mid, suffix), c);
    }
    prefix = wedge_monomial(prefix, single);
  }
}

}  // namespace detail

/// Exterior derivative extended from the generators by the graded Leibniz rule.
template <Scalar S>
Form<S> differential(const StructurePresentation<S>& pres, const Form<S>& f) {
  if (f.rank() != pres.rank()) throw std::invalid_argument("rank mismatch between form and presentation");
  Form<S> out(pres.rank());
  for (const auto& [m, c] : f.terms()) detail::accumulate_d_monomial(pres, m, c, out);
  return out;
}

namespace detail {

template <Scalar S>
Form<S> graded_part_of_d(const StructurePresentation<S>& pres, const Form<S>& f, int dp, int dq) {
  if (!pres.is_integrable())
    throw std::domain_error("presentation '" + pres.name() + "' is not integrable: d(phi) has a (0,2) part");
  if (f.rank() != pres.rank()) throw std::invalid_argument("rank mismatch between form and presentation");
  Form<S> out(pres.rank());
  for (const auto& [m, c] : f.terms()) {
    Form<S> dm(pres.rank());
    accumulate_d_monomial(pres, m, c, dm);
    for (const auto& [tm, tc] : dm.terms())
      if (tm.p() == m.p() + dp && tm.q() == m.q() + dq) out.add_term(tm, tc);
  }
  return out;
}

}  // namespace detail

/// The (p+1,q) part of d, applied to each (p,q) component.
template <Scalar S>
Form<S> del(const StructurePresentation<S>& pres, const Form<S>& f) {
  return detail::graded_part_of_d(pres, f, 1, 0);
}

/// The (p,q+1) part of d, applied to each (p,q) component.
template <Scalar S>
Form<S> delbar(const StructurePresentation<S>& pres, const Form<S>& f) {
  return detail::graded_part_of_d(pres, f, 0, 1);
}

/// Largest coefficient modulus of a form (0 for the zero form).
template <Scalar S>
double max_abs_coefficient(const Form<S>& f) {
  double m = 0.0;
  for (const auto& [mono, c] : f.terms()) m = std::max(m, std::abs(c.to_complex()));
  return m;
}

template <Scalar S>
struct ValidationReport {
  bool d_squared_zero = true;
  bool integrable = true;
  bool exhaustive_checked = false;
  /// d(d(phi^i)) per generator, as printable forms; empty string when zero.
  std::vector<std::string> residuals;
  std::vector<double> residual_magnitudes;
  double max_residual = 0.0;
  std::vector<std::string> notes;
  std::vector<std::string> warnings;

  bool ok() const { return d_squared_zero; }
};

template <Scalar S>
bool is_J_nilpotent(const StructurePresentation<S>& pres, bool search_permutations = false);

/// Checks d^2 = 0 on the generators (and on every monomial when exhaustive is set),
/// and records integrability.
template <Scalar S>
ValidationReport<S> validate(const StructurePresentation<S>& pres, bool exhaustive = false) {
  ValidationReport<S> rep;
  const int n = pres.rank();
  for (int i = 1; i <= n; ++i) {
    Form<S> dd = differential(pres, pres.d_generator(i, false));
    double mag = max_abs_coefficient(dd);
    rep.residual_magnitudes.push_back(mag);
    rep.max_residual = std::max(rep.max_residual, mag);
    rep.residuals.push_back(dd.is_zero() ? std::string() : dd.to_string());
    if (!dd.is_zero()) rep.d_squared_zero = false;
  }
  rep.notes.push_back("d^2 = 0 on the generators phi^i (and hence on their conjugates) implies d^2 = 0 on all forms by the Leibniz rule");
  if (exhaustive) {
    rep.exhaustive_checked = true;
    for (int k = 0; k <= 2 * n - 2; ++k) {
      for (const auto& m : degree_basis(n, k)) {
        Form<S> dd = differential(pres, differential(pres, Form<S>::monomial(n, m)));
        if (!dd.is_zero()) {
          rep.d_squared_zero = false;
          rep.warnings.push_back("d^2 != 0 on " + monomial_label(m) + ": " + dd.to_string());
        }
      }
    }
  }
  rep.integrable = pres.is_integrable();
  if (!rep.integrable) rep.warnings.push_back("some d(phi^i) has a (0,2) component; del and delbar are unavailable");
  if (!S::is_exact)
    rep.notes.push_back("float backend: coefficients below the tolerance are treated as zero");
  if (rep.d_squared_zero && !is_J_nilpotent(pres))
    rep.warnings.push_back("coframe is not adapted (some d(phi^i) uses phi^j with j >= i)");
  return rep;
}

namespace detail {

template <Scalar S>
bool adapted_in_order(const StructurePresentation<S>& pres, const std::vector<int>& order) {
  // order[k] = original index placed at position k+1.
  std::uint32_t allowed = 0;
  for (int idx : order) {
    for (const auto& [m, c] : pres.d_generator(idx, false).terms())
      if (((m.holo | m.anti) & ~allowed) != 0) return false;
    allowed |= index_bit(idx);
  }
  return true;
}

}  // namespace detail

/// Coframe criterion: each d(phi^i) only involves phi^j, conj(phi^j) with j < i.
/// With search_permutations, any relabelling of the coframe is allowed (n <= 6).
template <Scalar S>
bool is_J_nilpotent(const StructurePresentation<S>& pres, bool search_permutations) {
  std::vector<int> order(pres.rank());
  std::iota(order.begin(), order.end(), 1);
  if (detail::adapted_in_order(pres, order)) return true;
  if (!search_permutations) return false;
  if (pres.rank() > 6) throw std::invalid_argument("permutation search is limited to n <= 6");
  while (std::next_permutation(order.begin(), order.end()))
    if (detail::adapted_in_order(pres, order)) return true;
  return false;
}

/// Real structure equations de^1..de^{2n} over real generators e^1..e^{2n}.
template <Scalar S>
struct RealPresentation {
  struct Term {
    int a = 0, b = 0;  // e^a ^ e^b, 1-based
    S coeff;
  };
  std::string name;
  int real_dim = 0;
  std::vector<std::vector<Term>> de;              // de[k] describes d(e^{k+1})
  std::vector<std::pair<int, int>> pairing;       // phi^j = e^a + i e^b
};

/// Complexifies a real presentation: phi^j = e^a + i e^b with
/// e^a = (phi^j + conj(phi^j))/2 and e^b = (phi^j - conj(phi^j))/(2i).
template <Scalar S>
StructurePresentation<S> complexify_real_presentation(const RealPresentation<S>& rp) {
  const int m = rp.real_dim;
  if (m <= 0 || m % 2 != 0) throw std::invalid_argument("real dimension must be even and positive");
  const int n = m / 2;
  if (static_cast<int>(rp.pairing.size()) != n) throw std::invalid_argument("pairing must have n = dim/2 pairs");
  if (static_cast<int>(rp.de.size()) != m) throw std::invalid_argument("expected one structure equation per real generator");
  std::vector<int> used(m + 1, 0);
  for (auto [a, b] : rp.pairing) {
    if (a < 1 || a > m || b < 1 || b > m || a == b) throw std::invalid_argument("pairing index out of range");
    ++used[a];
    ++used[b];
  }
  for (int k = 1; k <= m; ++k)
    if (used[k] != 1) throw std::invalid_argument("pairing is not a perfect matching (e^" + std::to_string(k) + ")");

  const S half = S::one() / S(2);
  const S i = S::imag_unit();
  std::vector<Form<S>> real_gen(m + 1, Form<S>(n));
  for (int j = 1; j <= n; ++j) {
    auto [a, b] = rp.pairing[j - 1];
    Form<S> phi = Form<S>::generator(n, holo(j));
    Form<S> phibar = Form<S>::generator(n, anti(j));
    real_gen[a] = (phi + phibar) * half;
    real_gen[b] = (phi - phibar) * (S::one() / (S(2) * i));
  }
  auto real_d = [&](int k) {
    Form<S> out(n);
    for (const auto& t : rp.de[k - 1]) {
      if (t.a < 1 || t.a > m || t.b < 1 || t.b > m) throw std::invalid_argument("structure term index out of range");
      out += wedge(real_gen[t.a], real_gen[t.b]) * t.coeff;
    }
    return out;
  };
  std::vector<Form<S>> dphi;
  for (int j = 1; j <= n; ++j) {
    auto [a, b] = rp.pairing[j - 1];
    dphi.push_back(real_d(a) + real_d(b) * i);
  }
  return StructurePresentation<S>(rp.name, n, std::move(dphi));
}

/// Exact -> float conversion of a presentation.
template <Scalar T, Scalar S>
StructurePresentation<T> convert_presentation(const StructurePresentation<S>& pres) {
  if constexpr (std::is_same_v<T, S>) {
    return pres;
  } else {
    std::vector<Form<T>> dphi;
    for (const auto& f : pres.dphi()) dphi.push_back(convert_form<T>(f));
    return StructurePresentation<T>(pres.name(), pres.rank(), std::move(dphi));
  }
}

}  // namespace geowb
