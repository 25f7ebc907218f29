#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geowb {

/// Largest supported complex dimension (index sets are 32-bit masks).
inline constexpr int kMaxRank = 16;

/// One coframe generator: phi^index (holomorphic) or conj(phi^index).
struct Generator {
  int index = 1;  // 1-based
  bool anti = false;
};

inline Generator holo(int i) { return {i, false}; }
inline Generator anti(int i) { return {i, true}; }

/// Basis element phi^I ^ conj(phi)^J of the bigraded exterior algebra, stored in
/// canonical order: holomorphic indices ascending, then antiholomorphic ascending.
/// Bit k of a mask stands for index k+1.
struct Monomial {
  std::uint32_t holo = 0;
  std::uint32_t anti = 0;

  int p() const { return std::popcount(holo); }
  int q() const { return std::popcount(anti); }
  int degree() const { return p() + q(); }

  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline std::uint32_t index_bit(int i) { return std::uint32_t{1} << (i - 1); }

inline std::uint32_t mask_of(std::span<const int> idx) {
  std::uint32_t m = 0;
  for (int i : idx) m |= index_bit(i);
  return m;
}

inline std::vector<int> indices_of(std::uint32_t mask) {
  std::vector<int> out;
  for (int b = 0; mask != 0; ++b, mask >>= 1)
    if (mask & 1u) out.push_back(b + 1);
  return out;
}

inline std::uint32_t full_mask(int n) { return n >= 32 ? ~0u : ((std::uint32_t{1} << n) - 1); }

/// Number of pairs (x in a, y in b) with x > y.
inline int count_inversions(std::uint32_t a, std::uint32_t b) {
  int inv = 0;
  while (b != 0) {
    int y = std::countr_zero(b);
    b &= b - 1;
    std::uint32_t above = (y >= 31) ? 0u : (a & ~((std::uint32_t{2} << y) - 1));
    inv += std::popcount(above);
  }
  return inv;
}

/// Sign of (phi^{I1} ^ phibar^{J1}) ^ (phi^{I2} ^ phibar^{J2}) relative to the
/// canonical monomial of the union; 0 when a generator repeats.
inline int wedge_sign(const Monomial& a, const Monomial& b) {
  if ((a.holo & b.holo) != 0 || (a.anti & b.anti) != 0) return 0;
  int inv = a.q() * b.p() + count_inversions(a.holo, b.holo) + count_inversions(a.anti, b.anti);
  return (inv & 1) ? -1 : 1;
}

inline Monomial wedge_monomial(const Monomial& a, const Monomial& b) { return {a.holo | b.holo, a.anti | b.anti}; }

/// conj(phi^I ^ phibar^J) = phibar^I ^ phi^J = (-1)^{|I||J|} phi^J ^ phibar^I.
inline std::pair<Monomial, int> conjugate_monomial(const Monomial& m) {
  int s = ((m.p() * m.q()) & 1) ? -1 : 1;
  return {Monomial{m.anti, m.holo}, s};
}

/// Sorts a list of tagged generators into canonical order.
/// Returns the canonical monomial and the permutation sign, or sign 0 when a
/// tagged index repeats.
inline std::pair<Monomial, int> normalize_monomial(int n, std::span<const Generator> gens) {
  Monomial acc;
  int sign = 1;
  for (const Generator& g : gens) {
    if (g.index < 1 || g.index > n) throw std::out_of_range("generator index " + std::to_string(g.index) + " outside 1.." + std::to_string(n));
  }
  for (const Generator& g : gens) {
    Monomial single = g.anti ? Monomial{0, index_bit(g.index)} : Monomial{index_bit(g.index), 0};
    int s = wedge_sign(acc, single);
    if (s == 0) return {Monomial{}, 0};
    sign *= s;
    acc = wedge_monomial(acc, single);
  }
  return {acc, sign};
}

inline std::pair<Monomial, int> normalize_monomial(int n, std::initializer_list<Generator> gens) {
  return normalize_monomial(n, std::span<const Generator>(gens.begin(), gens.size()));
}

/// "phi^{12}^phibar^{3}" style label.
inline std::string monomial_label(const Monomial& m) {
  if (m.holo == 0 && m.anti == 0) return "1";
  std::string s;
  auto digits = [](std::uint32_t mask) {
    std::string d;
    auto idx = indices_of(mask);
    bool wide = !idx.empty() && idx.back() > 9;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      if (wide && k) d += ",";
      d += std::to_string(idx[k]);
    }
    return d;
  };
  if (m.holo) s += "phi^" + digits(m.holo);
  if (m.anti) {
    if (!s.empty()) s += "^";
    s += "phibar^" + digits(m.anti);
  }
  return s;
}

/// All subsets of {1..n} of size k as masks, in increasing numeric order.
inline std::vector<std::uint32_t> subsets_of_size(int n, int k) {
  std::vector<std::uint32_t> out;
  if (k < 0 || k > n) return out;
  for (std::uint32_t m = 0; m <= full_mask(n); ++m) {
    if (std::popcount(m) == k) out.push_back(m);
    if (m == full_mask(n)) break;
  }
  return out;
}

/// Canonical basis of Lambda^{p,q}.
inline std::vector<Monomial> bidegree_basis(int n, int p, int q) {
  std::vector<Monomial> out;
  for (auto h : subsets_of_size(n, p))
    for (auto a : subsets_of_size(n, q)) out.push_back({h, a});
  return out;
}

/// Canonical basis of all forms of total degree k.
inline std::vector<Monomial> degree_basis(int n, int k) {
  std::vector<Monomial> out;
  for (int p = 0; p <= k; ++p) {
    auto part = bidegree_basis(n, p, k - p);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace geowb
