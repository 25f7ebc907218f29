#pragma once

#include <algorithm>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "geowb/presentation.hpp"

namespace geowb {

using ExactScalar = GaussianRational;
using FloatScalar = ComplexFloat;
using ExactPresentation = StructurePresentation<ExactScalar>;
using FloatPresentation = StructurePresentation<FloatScalar>;

/// Raised when an entry cannot be built on the requested backend.
struct BackendError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when catalog parameters violate an entry's side condition.
struct ConstraintError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <Scalar S>
using ParamMap = std::map<std::string, S>;

namespace detail {

/// c * phi^{ij} (holomorphic pair), c * phi^i ^ conj(phi^j), etc.
template <Scalar S>
Form<S> hh(int n, int i, int j, const S& c = S::one()) {
  return Form<S>::wedge_of(n, {holo(i), holo(j)}, c);
}
template <Scalar S>
Form<S> ha(int n, int i, int j, const S& c = S::one()) {
  return Form<S>::wedge_of(n, {holo(i), anti(j)}, c);
}
template <Scalar S>
Form<S> ah(int n, int i, int j, const S& c = S::one()) {
  return Form<S>::wedge_of(n, {anti(i), holo(j)}, c);
}

template <Scalar S>
S param(const ParamMap<S>& p, const std::string& name, const S& fallback) {
  auto it = p.find(name);
  return it == p.end() ? fallback : it->second;
}

template <Scalar S>
void check_names(const ParamMap<S>& p, const std::vector<std::string>& allowed, const std::string& key) {
  for (const auto& [name, v] : p)
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
      throw std::invalid_argument("unknown parameter '" + name + "' for " + key);
}

inline std::vector<std::string> numbered(const std::string& letter, int count) {
  std::vector<std::string> out;
  for (int k = 1; k <= count; ++k) out.push_back(letter + std::to_string(k));
  return out;
}

}  // namespace detail

/// Nakamura type IV (rank 4), rows 1..7. Row 5 takes alpha with alpha(1+alpha) != 0.
template <Scalar S>
StructurePresentation<S> nakamura_iv(int k, const ParamMap<S>& params = {}) {
  using detail::hh;
  const int n = 4;
  const std::string key = "nakamura-iv-" + std::to_string(k);
  detail::check_names(params, k == 5 ? std::vector<std::string>{"alpha"} : std::vector<std::string>{}, key);
  std::vector<Form<S>> d(n, Form<S>(n));
  const S one = S::one();
  switch (k) {
    case 1: break;
    case 2: d[3] = hh<S>(n, 2, 3, -one); break;
    case 3:
      d[2] = hh<S>(n, 1, 2, -one);
      d[3] = hh<S>(n, 1, 3, S(-2));
      break;
    case 4:
      d[2] = hh<S>(n, 2, 3);
      d[3] = hh<S>(n, 2, 4, -one);
      break;
    case 5: {
      S a = detail::param(params, "alpha", one);
      if ((a * (one + a)).is_zero()) throw ConstraintError(key + ": alpha(1+alpha) must be nonzero");
      d[1] = hh<S>(n, 1, 2);
      d[2] = hh<S>(n, 1, 3, a);
      d[3] = hh<S>(n, 1, 4, -(one + a));
      break;
    }
    case 6:
      d[1] = hh<S>(n, 1, 2);
      d[2] = hh<S>(n, 1, 3, -one);
      d[3] = hh<S>(n, 2, 3, -one);
      break;
    case 7:
      d[1] = hh<S>(n, 1, 2);
      d[2] = hh<S>(n, 1, 3, S(-2));
      d[3] = hh<S>(n, 1, 4) - hh<S>(n, 1, 2);
      break;
    default: throw std::invalid_argument("Nakamura type IV row must be 1..7");
  }
  return StructurePresentation<S>(key, n, std::move(d));
}

/// Nakamura type V (rank 5), rows 1..20. Rows 13, 17, 20 take parameters.
template <Scalar S>
StructurePresentation<S> nakamura_v(int k, const ParamMap<S>& params = {}) {
  using detail::hh;
  const int n = 5;
  const std::string key = "nakamura-v-" + std::to_string(k);
  std::vector<std::string> allowed;
  if (k == 13) allowed = {"alpha"};
  if (k == 17) allowed = {"gamma", "beta"};
  if (k == 20) allowed = {"eta"};
  detail::check_names(params, allowed, key);
  std::vector<Form<S>> d(n, Form<S>(n));
  const S one = S::one();
  switch (k) {
    case 1: break;
    case 2: d[4] = hh<S>(n, 3, 4, -one); break;
    case 3: d[4] = hh<S>(n, 1, 3, -one) - hh<S>(n, 2, 4); break;
    case 4:
      d[3] = hh<S>(n, 1, 2, -one);
      d[4] = hh<S>(n, 1, 3, -one);
      break;
    case 5:
      d[3] = hh<S>(n, 2, 3, -one);
      d[4] = hh<S>(n, 2, 4, S(-2));
      break;
    case 6:
      d[3] = hh<S>(n, 1, 2, -one);
      d[4] = hh<S>(n, 1, 4, S(-2)) - hh<S>(n, 2, 3);
      break;
    case 7:
      d[3] = hh<S>(n, 3, 4);
      d[4] = hh<S>(n, 3, 5, -one);
      break;
    case 8:
      d[2] = hh<S>(n, 1, 2, -one);
      d[3] = hh<S>(n, 1, 3, S(-2));
      d[4] = hh<S>(n, 2, 3, S(-2));
      break;
    case 9:
      d[2] = hh<S>(n, 1, 2, -one);
      d[3] = hh<S>(n, 1, 3, S(-2));
      d[4] = hh<S>(n, 1, 4, S(-3));
      break;
    case 10:
      d[2] = hh<S>(n, 1, 2, -one);
      d[3] = hh<S>(n, 1, 3, S(-2));
      d[4] = hh<S>(n, 1, 4, S(-3)) - hh<S>(n, 2, 3);
      break;
    case 11:
      d[2] = hh<S>(n, 1, 2, -one);
      d[3] = hh<S>(n, 1, 4);
      d[4] = hh<S>(n, 1, 5);
      break;
    case 12:
      d[2] = hh<S>(n, 1, 3);
      d[3] = hh<S>(n, 2, 4);
      d[4] = hh<S>(n, 1, 5, -one) - hh<S>(n, 2, 5);
      break;
    case 13: {
      S a = detail::param(params, "alpha", one);
      if ((a * (one + a)).is_zero()) throw ConstraintError(key + ": alpha(1+alpha) must be nonzero");
      d[2] = hh<S>(n, 2, 3);
      d[3] = hh<S>(n, 2, 4, a);
      d[4] = hh<S>(n, 2, 5, -(one + a));
      break;
    }
    case 14:
      d[2] = hh<S>(n, 1, 3);
      d[3] = hh<S>(n, 1, 4, S(-2));
      d[4] = hh<S>(n, 1, 5) - hh<S>(n, 1, 3);
      break;
    case 15:
      d[2] = hh<S>(n, 2, 3);
      d[3] = hh<S>(n, 2, 4, -one);
      d[4] = hh<S>(n, 3, 4, -one);
      break;
    case 16:
      d[2] = hh<S>(n, 1, 3);
      d[3] = hh<S>(n, 1, 4, -one);
      d[4] = hh<S>(n, 3, 4, -one) - hh<S>(n, 1, 2);
      break;
    case 17: {
      S g = detail::param(params, "gamma", one);
      S b = detail::param(params, "beta", one);
      if ((g * b * (one + g + b)).is_zero()) throw ConstraintError(key + ": gamma*beta*(1+gamma+beta) must be nonzero");
      d[1] = hh<S>(n, 1, 2);
      d[2] = hh<S>(n, 1, 3, g);
      d[3] = hh<S>(n, 1, 4, b);
      d[4] = hh<S>(n, 1, 5, -(one + g + b));
      break;
    }
    case 18:
      d[1] = hh<S>(n, 1, 2, S(-3));
      d[2] = hh<S>(n, 1, 3);
      d[3] = hh<S>(n, 1, 4) - hh<S>(n, 1, 3);
      d[4] = hh<S>(n, 1, 5) - hh<S>(n, 1, 3);
      break;
    case 19:
      d[1] = hh<S>(n, 1, 2);
      d[2] = hh<S>(n, 1, 3, -one);
      d[3] = hh<S>(n, 1, 4) - hh<S>(n, 1, 2);
      d[4] = hh<S>(n, 1, 5, -one) - hh<S>(n, 1, 3);
      break;
    case 20: {
      S e = detail::param(params, "eta", one);
      if ((e * (S(2) + e)).is_zero()) throw ConstraintError(key + ": eta(2+eta) must be nonzero");
      d[1] = hh<S>(n, 1, 2);
      d[2] = hh<S>(n, 1, 3) - hh<S>(n, 1, 2);
      d[3] = hh<S>(n, 1, 4, e);
      d[4] = hh<S>(n, 1, 5, -(S(2) + e));
      break;
    }
    default: throw std::invalid_argument("Nakamura type V row must be 1..20");
  }
  return StructurePresentation<S>(key, n, std::move(d));
}

inline const std::vector<std::string>& fps6_parameter_names() {
  static const std::vector<std::string> names = {"A", "B", "C", "D", "E"};
  return names;
}
inline const std::vector<std::string>& ft8_parameter_names() {
  static const std::vector<std::string> names = detail::numbered("a", 12);
  return names;
}
inline const std::vector<std::string>& st10_parameter_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (auto [l, c] : {std::pair<const char*, int>{"a", 7}, {"b", 6}, {"c", 5}, {"d", 4}})
      for (const auto& s : detail::numbered(l, c)) out.push_back(s);
    return out;
  }();
  return names;
}

/// Rank-3 family: d(alpha^3) = A conj(a^1)^a^2 + B conj(a^2)^a^2 + C a^1^conj(a^1)
/// + D a^1^conj(a^2) + E a^1^a^2; the first two generators are closed.
template <Scalar S>
StructurePresentation<S> fps6(const ParamMap<S>& p = {}) {
  using namespace detail;
  check_names(p, fps6_parameter_names(), "fps6");
  const int n = 3;
  const S z = S::zero();
  std::vector<Form<S>> d(n, Form<S>(n));
  d[2] = ah<S>(n, 1, 2, param(p, "A", z)) + ah<S>(n, 2, 2, param(p, "B", z)) + ha<S>(n, 1, 1, param(p, "C", z)) +
         ha<S>(n, 1, 2, param(p, "D", z)) + hh<S>(n, 1, 2, param(p, "E", z));
  return StructurePresentation<S>("fps6", n, std::move(d));
}

/// Rank-4 family with d(eta^4) spanned by the twelve 2-forms built from eta^1..eta^3.
template <Scalar S>
StructurePresentation<S> ft8(const ParamMap<S>& p = {}) {
  using namespace detail;
  check_names(p, ft8_parameter_names(), "ft8");
  const int n = 4;
  const S z = S::zero();
  auto a = [&](int k) { return param(p, "a" + std::to_string(k), z); };
  std::vector<Form<S>> d(n, Form<S>(n));
  d[3] = hh<S>(n, 1, 2, a(1)) + hh<S>(n, 1, 3, a(2)) + ha<S>(n, 1, 1, a(3)) + ha<S>(n, 1, 2, a(4)) +
         ha<S>(n, 1, 3, a(5)) + hh<S>(n, 2, 3, a(6)) + ha<S>(n, 2, 1, a(7)) + ha<S>(n, 2, 2, a(8)) +
         ha<S>(n, 2, 3, a(9)) + ha<S>(n, 3, 1, a(10)) + ha<S>(n, 3, 2, a(11)) + ha<S>(n, 3, 3, a(12));
  return StructurePresentation<S>("ft8", n, std::move(d));
}

/// Rank-5 family with d(sigma^5) spanned by 22 2-forms in sigma^1..sigma^4.
template <Scalar S>
StructurePresentation<S> st10(const ParamMap<S>& p = {}) {
  using namespace detail;
  check_names(p, st10_parameter_names(), "st10");
  const int n = 5;
  const S z = S::zero();
  auto g = [&](const char* l, int k) { return param(p, std::string(l) + std::to_string(k), z); };
  std::vector<Form<S>> d(n, Form<S>(n));
  d[4] = hh<S>(n, 1, 2, g("a", 1)) + hh<S>(n, 1, 3, g("a", 2)) + hh<S>(n, 1, 4, g("a", 3)) +
         ha<S>(n, 1, 1, g("a", 4)) + ha<S>(n, 1, 2, g("a", 5)) + ha<S>(n, 1, 3, g("a", 6)) +
         ha<S>(n, 1, 4, g("a", 7)) +
         hh<S>(n, 2, 3, g("b", 1)) + hh<S>(n, 2, 4, g("b", 2)) + ha<S>(n, 2, 1, g("b", 3)) +
         ha<S>(n, 2, 2, g("b", 4)) + ha<S>(n, 2, 3, g("b", 5)) + ha<S>(n, 2, 4, g("b", 6)) +
         hh<S>(n, 3, 4, g("c", 1)) + ha<S>(n, 3, 1, g("c", 2)) + ha<S>(n, 3, 2, g("c", 3)) +
         ha<S>(n, 3, 3, g("c", 4)) + ha<S>(n, 3, 4, g("c", 5)) +
         ha<S>(n, 4, 1, g("d", 1)) + ha<S>(n, 4, 2, g("d", 2)) + ha<S>(n, 4, 3, g("d", 3)) +
         ha<S>(n, 4, 4, g("d", 4));
  return StructurePresentation<S>("st10", n, std::move(d));
}

/// d(phi^5) = -phi^13 - phi^24, the other generators closed.
template <Scalar S>
StructurePresentation<S> eta_beta5() {
  auto p = nakamura_v<S>(3);
  return StructurePresentation<S>("eta-beta-5", 5, p.dphi());
}

/// sigma_3 (sum_{i<j<k} phi^{ijk} ^ conj(phi^{ijk}) - phi^135 ^ conj(phi^245) - phi^245 ^ conj(phi^135)).
template <Scalar S>
Form<S> eta_beta5_three_kahler_form() {
  const int n = 5;
  Form<S> sum(n);
  for (auto mask : subsets_of_size(n, 3)) sum.add_term(Monomial{mask, mask}, S::one());
  const std::uint32_t m135 = index_bit(1) | index_bit(3) | index_bit(5);
  const std::uint32_t m245 = index_bit(2) | index_bit(4) | index_bit(5);
  sum.add_term(Monomial{m135, m245}, -S::one());
  sum.add_term(Monomial{m245, m135}, -S::one());
  return sum * sigma<S>(3);
}

/// Real structure equations of the rank-3 solvable example with angle pi/2.
inline RealPresentation<FloatScalar> s1_pi2_real() {
  using T = RealPresentation<FloatScalar>::Term;
  const double h = std::numbers::pi / 2.0;
  RealPresentation<FloatScalar> rp;
  rp.name = "s1-pi2";
  rp.real_dim = 6;
  rp.de = {{T{1, 2, FloatScalar(-1.0)}},
           {},
           {T{2, 3, FloatScalar(-0.5)}},
           {T{2, 4, FloatScalar(-0.5)}},
           {T{2, 6, FloatScalar(h)}},
           {T{2, 5, FloatScalar(-h)}}};
  rp.pairing = {{1, 2}, {3, 4}, {5, 6}};
  return rp;
}

/// Complexified with phi^1 = e^1 + i e^2, phi^2 = e^3 + i e^4, phi^3 = e^5 + i e^6.
inline FloatPresentation s1_pi2() { return complexify_real_presentation(s1_pi2_real()); }

// ---------------------------------------------------------------------------
// Registry.

struct CatalogEntry {
  std::string key;
  int rank = 0;
  std::string kind;  // abelian | nilpotent | solvable | family | float-only
  std::string provenance;
  std::vector<std::string> parameters;
  std::vector<std::string> notes;
  bool exact = true;
};

namespace detail {

inline std::string nakamura_kind(char type, int k) {
  if (k == 1) return "abelian";
  if (type == '4') return (k == 2 || k == 3) ? "nilpotent" : "solvable";
  static const std::vector<int> nil = {2, 3, 4, 5, 6, 8, 9, 10};
  return std::find(nil.begin(), nil.end(), k) != nil.end() ? "nilpotent" : "solvable";
}

inline std::vector<std::string> nakamura_notes(char type, int k) {
  const bool no_lattice = (type == '4' && k == 7) || (type == '5' && (k == 15 || k == 18));
  const bool unknown = (type == '4' && k == 5) || (type == '5' && (k == 11 || k == 13 || k == 16 || k == 19 || k == 20));
  std::vector<std::string> out;
  if (no_lattice) out.push_back("no compact quotient exists; computations are at the Lie algebra level only");
  if (unknown) out.push_back("existence of a compact complex-parallelizable quotient is open");
  return out;
}

}  // namespace detail

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> out;
    for (int k = 1; k <= 7; ++k) {
      CatalogEntry e{"nakamura-iv-" + std::to_string(k), 4, detail::nakamura_kind('4', k),
                     "Nakamura classification, type IV row " + std::to_string(k), {}, detail::nakamura_notes('4', k)};
      if (k == 5) e.parameters = {"alpha"};
      out.push_back(std::move(e));
    }
    for (int k = 1; k <= 20; ++k) {
      CatalogEntry e{"nakamura-v-" + std::to_string(k), 5, detail::nakamura_kind('5', k),
                     "Nakamura classification, type V row " + std::to_string(k), {}, detail::nakamura_notes('5', k)};
      if (k == 13) e.parameters = {"alpha"};
      if (k == 17) e.parameters = {"gamma", "beta"};
      if (k == 20) e.parameters = {"eta"};
      out.push_back(std::move(e));
    }
    out.push_back({"fps6", 3, "family", "six-dimensional family with two closed generators", fps6_parameter_names(),
                   {}});
    out.push_back({"ft8", 4, "family", "eight-dimensional family with three closed generators",
                   ft8_parameter_names(), {}});
    out.push_back({"st10", 5, "family", "ten-dimensional family with four closed generators",
                   st10_parameter_names(), {}});
    out.push_back({"eta-beta-5", 5, "nilpotent", "complex Heisenberg-type algebra, equal to Nakamura type V row 3",
                   {}, {"admits a transverse closed (3,3)-form"}});
    out.push_back({"s1-pi2", 3, "solvable", "solvable example with rotation angle pi/2, from real structure equations",
                   {}, {"coefficients involve pi; float backend only"}, false});
    return out;
  }();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& key) {
  for (const auto& e : catalog())
    if (e.key == key) return e;
  throw std::invalid_argument("unknown catalog key: " + key);
}

/// Builds a catalog entry on backend S. s1-pi2 refuses the exact backend.
template <Scalar S>
StructurePresentation<S> build_catalog(const std::string& key, const ParamMap<S>& params = {}) {
  const CatalogEntry& e = catalog_entry(key);
  if (!e.exact) {
    if constexpr (S::is_exact) {
      throw BackendError(key + " has irrational coefficients and needs the float backend");
    } else {
      if (!params.empty()) throw std::invalid_argument(key + " takes no parameters");
      return s1_pi2();
    }
  }
  auto suffix = [&](const std::string& prefix) { return std::stoi(key.substr(prefix.size())); };
  if (key.rfind("nakamura-iv-", 0) == 0) return nakamura_iv<S>(suffix("nakamura-iv-"), params);
  if (key.rfind("nakamura-v-", 0) == 0) return nakamura_v<S>(suffix("nakamura-v-"), params);
  if (key == "fps6") return fps6<S>(params);
  if (key == "ft8") return ft8<S>(params);
  if (key == "st10") return st10<S>(params);
  if (key == "eta-beta-5") {
    if (!params.empty()) throw std::invalid_argument(key + " takes no parameters");
    return eta_beta5<S>();
  }
  throw std::invalid_argument("unknown catalog key: " + key);
}

/// Named parameter tuples that solve the combined existence systems.
template <Scalar S>
std::map<std::string, ParamMap<S>> catalog_parameter_sets(const std::string& key) {
  auto q = [](long re, long im = 0, long den = 1) { return make_scalar<S>(mpq_class(re, den), mpq_class(im, den)); };
  std::map<std::string, ParamMap<S>> out;
  if (key == "fps6") {
    out["witness"] = {{"B", q(0, -2)}, {"C", q(0, 1)}, {"E", q(0, 2)}};
  } else if (key == "ft8") {
    out["witness"] = {{"a2", q(1, -1)}, {"a3", q(1)}, {"a12", q(1)}};
    out["astheno-not-skt"] = {{"a4", q(1, 1)}, {"a3", q(1)}, {"a12", q(1)}};
  } else if (key == "st10") {
    out["witness"] = {{"c4", q(0, 1)}, {"b4", q(1)}, {"a4", q(1)}, {"a1", q(1, 1)}};
  }
  return out;
}

}  // namespace geowb
