#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "geowb/metric.hpp"
#include "geowb/operators.hpp"
#include "geowb/optimize.hpp"
#include "geowb/presentation.hpp"

namespace geowb {

using cplx = std::complex<double>;

/// beta = beta^1 ^ ... ^ beta^q with each factor a (1,0)-covector given by its
/// coefficient vector in phi^1..phi^n.
template <Scalar S>
struct SimpleForm {
  std::vector<std::vector<S>> factors;

  int degree() const { return static_cast<int>(factors.size()); }

  Form<S> to_form(int n) const {
    Form<S> out = Form<S>::one(n);
    for (const auto& f : factors) {
      if (static_cast<int>(f.size()) != n) throw std::invalid_argument("simple form factor has wrong length");
      out = wedge(out, Form<S>::covector(n, f));
    }
    return out;
  }
};

enum class VerdictKind { CertifiedPositive, Falsified, NotFalsified };

inline std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::CertifiedPositive: return "CertifiedPositive";
    case VerdictKind::Falsified: return "Falsified";
    case VerdictKind::NotFalsified: return "NotFalsified";
  }
  return "?";
}

struct TransversalityVerdict {
  VerdictKind kind = VerdictKind::NotFalsified;
  std::string method;
  std::string certificate;  // set for CertifiedPositive
  double value = 0.0;       // witness value (Falsified) or minimum seen (NotFalsified)
  long samples = 0;
  std::uint64_t seed = 0;
  /// Falsifying simple form, one row per factor.
  std::vector<std::vector<cplx>> witness_factors;
  /// Falsifying point of the quadric, when the quadric path produced the verdict.
  std::vector<cplx> witness_point;

  bool falsified() const { return kind == VerdictKind::Falsified; }
};

struct SamplingConfig {
  long samples = 10000;
  std::uint64_t seed = 0;
  double tolerance = 1e-9;
  int quadric_starts = 64;
};

namespace detail {

template <Scalar S>
int check_pp_form(const Form<S>& psi, int p) {
  const int n = psi.rank();
  if (p < 0 || p > n) throw std::invalid_argument("degree p out of range");
  for (const auto& [m, c] : psi.terms())
    if (m.p() != p || m.q() != p)
      throw std::invalid_argument("form is not of bidegree (" + std::to_string(p) + "," + std::to_string(p) + ")");
  if (!is_real(psi)) throw std::invalid_argument("form is not real");
  return n - p;
}

inline std::vector<std::uint32_t> plucker_basis(int n, int k) { return subsets_of_size(n, k); }

}  // namespace detail

/// volume_ratio(sigma_{n-p} psi ^ beta ^ conj(beta)) for a real (p,p)-form psi.
template <Scalar S>
S pairing(const Form<S>& psi, const SimpleForm<S>& beta) {
  const int n = psi.rank();
  const int k = beta.degree();
  detail::check_pp_form(psi, n - k);
  Form<S> b = beta.to_form(n);
  Form<S> top = wedge(wedge(psi, b), conjugate(b)) * sigma<S>(k);
  return volume_ratio(top);
}

/// Hermitian matrix K over the Plücker coordinates P of (n-p,0)-forms with
/// pairing(psi, beta) = P^* K P for beta = sum P_I phi^I.
template <Scalar S>
struct PluckerForm {
  int n = 0;
  int k = 0;
  std::vector<std::uint32_t> basis;
  linalg::Matrix<S> K;
};

template <Scalar S>
PluckerForm<S> plucker_form(const Form<S>& psi, int p) {
  const int n = psi.rank();
  const int k = detail::check_pp_form(psi, p);
  PluckerForm<S> out;
  out.n = n;
  out.k = k;
  out.basis = detail::plucker_basis(n, k);
  const std::size_t dim = out.basis.size();
  out.K = linalg::Matrix<S>(dim, dim);
  const S sk = sigma<S>(k);
  for (std::size_t a = 0; a < dim; ++a) {
    Form<S> with_i = wedge(psi, Form<S>::monomial(n, Monomial{out.basis[a], 0}));
    for (std::size_t b = 0; b < dim; ++b) {
      Form<S> top = wedge(with_i, Form<S>::monomial(n, Monomial{0, out.basis[b]})) * sk;
      // value = sum W_ab P_a conj(P_b); K = W^T.
      out.K(b, a) = top.is_zero() ? S::zero() : volume_ratio(top);
    }
  }
  return out;
}

/// Exact Sylvester test for a Hermitian matrix.
template <Scalar S>
bool is_positive_definite_hermitian(const linalg::Matrix<S>& k) {
  for (std::size_t d = 1; d <= k.rows(); ++d) {
    linalg::Matrix<S> sub(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) sub(a, b) = k(a, b);
    S det = linalg::determinant(sub);
    if (!det.is_real()) return false;
    if constexpr (S::is_exact) {
      if (sgn(det.real()) <= 0) return false;
    } else {
      if (det.is_zero() || det.real() <= 0.0) return false;
    }
  }
  return true;
}

template <Scalar S>
Eigen::MatrixXcd to_eigen(const linalg::Matrix<S>& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) e(r, c) = m(r, c).to_complex();
  return e;
}

/// Plücker coordinates of the rows of f (k x n) in the given subset basis.
inline Eigen::VectorXcd plucker_coordinates(const Eigen::MatrixXcd& f, const std::vector<std::uint32_t>& basis) {
  const int k = static_cast<int>(f.rows());
  Eigen::VectorXcd p(basis.size());
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (k == 0) {
      p(a) = 1.0;
      continue;
    }
    auto idx = indices_of(basis[a]);
    Eigen::MatrixXcd sub(k, k);
    for (int c = 0; c < k; ++c) sub.col(c) = f.col(idx[c] - 1);
    p(a) = sub.determinant();
  }
  return p;
}

/// Factors of a (numerically) simple (k,0)-form given by Plücker coordinates.
inline std::vector<std::vector<cplx>> factor_simple(int n, int k, const Eigen::VectorXcd& p) {
  std::vector<std::vector<cplx>> out;
  if (k == 0) return out;
  auto basis_k = subsets_of_size(n, k);
  auto basis_k1 = subsets_of_size(n, k + 1);
  Eigen::MatrixXcd kernel;
  if (basis_k1.empty()) {
    kernel = Eigen::MatrixXcd::Identity(n, n);
  } else {
    // alpha ^ xi = 0 as a linear system in alpha.
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis_k1.size(), n);
    for (std::size_t r = 0; r < basis_k1.size(); ++r) {
      auto idx = indices_of(basis_k1[r]);
      for (std::size_t pos = 0; pos < idx.size(); ++pos) {
        std::uint32_t rest = basis_k1[r] & ~index_bit(idx[pos]);
        auto it = std::find(basis_k.begin(), basis_k.end(), rest);
        double sign = (pos & 1) ? -1.0 : 1.0;
        m(r, idx[pos] - 1) += sign * p(it - basis_k.begin());
      }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullV);
    kernel = svd.matrixV().rightCols(k);
  }
  Eigen::MatrixXcd f = kernel.leftCols(k).transpose();
  Eigen::VectorXcd q = plucker_coordinates(f, basis_k);
  Eigen::Index best = 0;
  q.cwiseAbs().maxCoeff(&best);
  cplx scale = std::abs(q(best)) > 0 ? p(best) / q(best) : cplx(1.0);
  f.row(0) *= scale;
  for (int r = 0; r < k; ++r) {
    std::vector<cplx> row(n);
    for (int c = 0; c < n; ++c) row[c] = f(r, c);
    out.push_back(std::move(row));
  }
  return out;
}

/// pairing value divided by the Gram determinant of the factors.
inline double normalized_value(const Eigen::MatrixXcd& K, const Eigen::VectorXcd& p) {
  double g = p.squaredNorm();
  if (g == 0.0) return std::numeric_limits<double>::infinity();
  return (p.adjoint() * K * p)(0, 0).real() / g;
}

namespace detail {

class StreamRng {
 public:
  StreamRng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    engine_.seed(seq);
  }
  cplx gaussian() {
    double re = normal_(engine_);
    double im = normal_(engine_);
    return {re, im};
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline constexpr long kChunk = 1024;

/// One pass over the factors, replacing each by the minimizer of the
/// normalized pairing with the others held fixed.
inline void refine_factors(Eigen::MatrixXcd& f, const Eigen::MatrixXcd& K, const std::vector<std::uint32_t>& basis) {
  const int k = static_cast<int>(f.rows());
  const int n = static_cast<int>(f.cols());
  if (k == 0) return;
  for (int j = 0; j < k; ++j) {
    Eigen::MatrixXcd others(n, k - 1);
    for (int r = 0, c = 0; r < k; ++r)
      if (r != j) others.col(c++) = f.row(r).transpose();
    Eigen::MatrixXcd qfull;
    if (k > 1) {
      Eigen::HouseholderQR<Eigen::MatrixXcd> qr(others);
      qfull = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
    } else {
      qfull = Eigen::MatrixXcd::Identity(n, n);
    }
    // Orthonormal replacement for the other factors keeps beta up to a scalar.
    for (int r = 0, c = 0; r < k; ++r)
      if (r != j) f.row(r) = qfull.col(c++).transpose();
    Eigen::MatrixXcd comp = qfull.rightCols(n - (k - 1));
    Eigen::MatrixXcd c(basis.size(), comp.cols());
    for (int col = 0; col < comp.cols(); ++col) {
      f.row(j) = comp.col(col).transpose();
      c.col(col) = plucker_coordinates(f, basis);
    }
    Eigen::MatrixXcd m = c.adjoint() * K * c;
    Eigen::MatrixXcd g = c.adjoint() * c;
    m = (m + m.adjoint().eval()) * 0.5;
    g = (g + g.adjoint().eval()) * 0.5;
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, g);
    if (es.info() != Eigen::Success) {
      f.row(j) = comp.col(0).transpose();
      continue;
    }
    Eigen::VectorXcd y = es.eigenvectors().col(0);
    f.row(j) = (comp * y).transpose();
  }
}

}  // namespace detail

/// Draws N random simple forms (Gaussian factors, one refinement pass) and
/// reports the smallest Gram-normalized pairing. Can falsify, never certify.
template <Scalar S>
TransversalityVerdict transversality_sample(const Form<S>& psi, int p, long samples, std::uint64_t seed,
                                            double tolerance = 1e-9) {
  if (samples <= 0) throw std::invalid_argument("sample count must be positive");
  PluckerForm<S> pf = plucker_form(psi, p);
  const Eigen::MatrixXcd K = to_eigen(pf.K);
  const int n = pf.n, k = pf.k;
  TransversalityVerdict v;
  v.method = "sampling";
  v.seed = seed;
  v.value = std::numeric_limits<double>::infinity();
  Eigen::MatrixXcd best;
  for (long done = 0, chunk = 0; done < samples; ++chunk) {
    detail::StreamRng rng(seed, static_cast<std::uint64_t>(chunk));
    const long count = std::min(detail::kChunk, samples - done);
    for (long s = 0; s < count; ++s) {
      Eigen::MatrixXcd f(k, n);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c) f(r, c) = rng.gaussian();
      detail::refine_factors(f, K, pf.basis);
      double val = normalized_value(K, plucker_coordinates(f, pf.basis));
      ++v.samples;
      if (val < v.value) {
        v.value = val;
        best = f;
      }
      if (val <= tolerance) {
        v.kind = VerdictKind::Falsified;
        for (int r = 0; r < k; ++r) {
          std::vector<cplx> row(n);
          for (int c = 0; c < n; ++c) row[c] = f(r, c);
          v.witness_factors.push_back(std::move(row));
        }
        return v;
      }
    }
    done += count;
  }
  v.kind = VerdictKind::NotFalsified;
  return v;
}

/// Unrefined Gaussian simple forms for replaying one sample set across forms.
inline std::vector<Eigen::MatrixXcd> sample_simple_forms(int n, int k, long samples, std::uint64_t seed) {
  std::vector<Eigen::MatrixXcd> out;
  for (long done = 0, chunk = 0; done < samples; ++chunk) {
    detail::StreamRng rng(seed, static_cast<std::uint64_t>(chunk));
    const long count = std::min(detail::kChunk, samples - done);
    for (long s = 0; s < count; ++s) {
      Eigen::MatrixXcd f(k, n);
      for (int r = 0; r < k; ++r)
        for (int c = 0; c < n; ++c) f(r, c) = rng.gaussian();
      out.push_back(std::move(f));
    }
    done += count;
  }
  return out;
}

/// Gram-normalized pairing values of psi on a fixed sample set.
template <Scalar S>
std::vector<double> pairing_on_samples(const Form<S>& psi, int p, const std::vector<Eigen::MatrixXcd>& samples) {
  PluckerForm<S> pf = plucker_form(psi, p);
  const Eigen::MatrixXcd K = to_eigen(pf.K);
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& f : samples) out.push_back(normalized_value(K, plucker_coordinates(f, pf.basis)));
  return out;
}

// ---------------------------------------------------------------------------
// (2,2)-forms in rank 4: the Omega basis and the quadric criterion.

/// Omega_l = sign_l * phi^{I_l}: 12, 13, 14, 23, -24, 34.
inline const std::array<std::pair<std::uint32_t, int>, 6>& omega_basis() {
  static const std::array<std::pair<std::uint32_t, int>, 6> b = {{{index_bit(1) | index_bit(2), 1},
                                                                   {index_bit(1) | index_bit(3), 1},
                                                                   {index_bit(1) | index_bit(4), 1},
                                                                   {index_bit(2) | index_bit(3), 1},
                                                                   {index_bit(2) | index_bit(4), -1},
                                                                   {index_bit(3) | index_bit(4), 1}}};
  return b;
}

template <Scalar S>
using QuadricMatrix = std::vector<std::vector<S>>;

/// Coefficients a_jk with psi = sum a_jk Omega_j ^ conj(Omega_k).
template <Scalar S>
QuadricMatrix<S> quadric_matrix(const Form<S>& psi) {
  if (psi.rank() != 4) throw std::invalid_argument("quadric matrix needs rank 4");
  detail::check_pp_form(psi, 2);
  const auto& ob = omega_basis();
  QuadricMatrix<S> a(6, std::vector<S>(6, S::zero()));
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      S c = psi.coefficient(Monomial{ob[j].first, ob[k].first});
      a[j][k] = (ob[j].second * ob[k].second < 0) ? -c : c;
    }
  return a;
}

template <Scalar S>
Form<S> quadric_form(const QuadricMatrix<S>& a) {
  const auto& ob = omega_basis();
  Form<S> out(4);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) {
      S c = a[j][k];
      if (ob[j].second * ob[k].second < 0) c = -c;
      out.add_term(Monomial{ob[j].first, ob[k].first}, c);
    }
  return out;
}

/// The (i,j) slot of the Omega_a family for slot index 1, 2, 3: (1,6), (2,5), (3,4).
inline std::pair<int, int> omega_a_slot(int slot) {
  if (slot < 1 || slot > 3) throw std::invalid_argument("Omega_a slot must be 1, 2 or 3");
  return {slot, 7 - slot};
}

template <Scalar S>
QuadricMatrix<S> omega_a_matrix(const S& a, int slot = 2) {
  auto [i, j] = omega_a_slot(slot);
  QuadricMatrix<S> m(6, std::vector<S>(6, S::zero()));
  for (int l = 0; l < 6; ++l) m[l][l] = S::one();
  m[i - 1][j - 1] = a;
  m[j - 1][i - 1] = a.conj();
  return m;
}

template <Scalar S>
Form<S> omega_a_form(const S& a, int slot = 2) {
  return quadric_form(omega_a_matrix(a, slot));
}

/// |a| < 2, decided exactly on the exact backend.
template <Scalar S>
bool omega_a_verdict(const S& a) {
  if constexpr (S::is_exact) {
    return a.norm() < 4;
  } else {
    return a.norm() < 4.0;
  }
}

namespace detail {

template <Scalar S>
void check_hermitian(const QuadricMatrix<S>& a) {
  if (a.size() != 6) throw std::invalid_argument("quadric matrix must be 6 x 6");
  for (const auto& row : a)
    if (row.size() != 6) throw std::invalid_argument("quadric matrix must be 6 x 6");
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k)
      if (!(a[j][k] == a[k][j].conj())) throw std::invalid_argument("quadric matrix is not Hermitian");
}

inline double rayleigh(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& z) {
  return (z.adjoint() * A * z)(0, 0).real() / z.squaredNorm();
}

}  // namespace detail

/// Closed-form verdict for the Omega_a family (identity plus a in one of the
/// three anti-diagonal slots). The falsifying point attains 2|a|(2-|a|) / (4|a|).
template <Scalar S>
TransversalityVerdict omega_a_analytic(const S& a, int slot = 2) {
  auto [i, j] = omega_a_slot(slot);
  TransversalityVerdict v;
  v.method = "omega-a closed form";
  const cplx ac = a.to_complex();
  const double r = std::abs(ac);
  if (omega_a_verdict(a)) {
    v.kind = VerdictKind::CertifiedPositive;
    v.certificate = "omega-a family with |a| < 2";
    v.value = (r > 0) ? (2.0 - r) / 2.0 : 1.0;
    return v;
  }
  v.kind = VerdictKind::Falsified;
  std::vector<cplx> z(6);
  const cplx abar = std::conj(ac);
  z[i - 1] = std::sqrt(r);
  z[j - 1] = -abar / std::sqrt(r);
  const cplx w = std::sqrt(abar / 2.0);
  for (int l = 1; l <= 6; ++l)
    if (l != i && l != j) z[l - 1] = w;
  v.witness_point = z;
  Eigen::VectorXcd ze(6);
  for (int l = 0; l < 6; ++l) ze(l) = z[l];
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(6, 6);
  A(i - 1, j - 1) = ac;
  A(j - 1, i - 1) = abar;
  v.value = detail::rayleigh(A, ze);
  return v;
}

/// Recognizes identity-plus-one-slot matrices (the identity itself is a = 0 in
/// slot 1); nullopt otherwise.
template <Scalar S>
std::optional<std::pair<S, int>> recognize_omega_a(const QuadricMatrix<S>& a) {
  for (int l = 0; l < 6; ++l)
    if (!(a[l][l] == S::one())) return std::nullopt;
  std::optional<std::pair<S, int>> found;
  for (int j = 0; j < 6; ++j)
    for (int k = j + 1; k < 6; ++k) {
      if (a[j][k].is_zero()) continue;
      if (k != 5 - j || found) return std::nullopt;
      found = std::make_pair(a[j][k], j + 1);
    }
  if (!found) return std::make_pair(S::zero(), 1);
  return found;
}

namespace detail {

struct QuadricChart {
  int lead;       // 0-based index k with z_k != 0
  int dependent;  // 5 - lead
};

inline Eigen::VectorXcd chart_point(const QuadricChart& ch, const Eigen::VectorXcd& x) {
  Eigen::VectorXcd z(6);
  for (int l = 0, t = 0; l < 6; ++l)
    if (l != ch.dependent) z(l) = x(t++);
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i)
    if (i != ch.lead && i != ch.dependent && 5 - i != ch.lead) s += z(i) * z(5 - i);
  z(ch.dependent) = -s / z(ch.lead);
  return z;
}

/// Value and real gradient (length 10) of the Rayleigh quotient along the chart.
inline double chart_value_grad(const Eigen::MatrixXcd& A, const QuadricChart& ch, const Eigen::VectorXd& xr,
                               Eigen::VectorXd& grad) {
  Eigen::VectorXcd x(5);
  for (int t = 0; t < 5; ++t) x(t) = cplx(xr(2 * t), xr(2 * t + 1));
  Eigen::VectorXcd z = chart_point(ch, x);
  const double D = z.squaredNorm();
  const double R = (z.adjoint() * A * z)(0, 0).real() / D;
  Eigen::VectorXcd g = (A * z - R * z) / D;  // dR/d(conj z)
  // dz_dep / dz_l for the free coordinates.
  Eigen::VectorXcd ddep = Eigen::VectorXcd::Zero(6);
  const cplx zk = z(ch.lead);
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i)
    if (i != ch.lead && i != ch.dependent && 5 - i != ch.lead) s += z(i) * z(5 - i);
  ddep(ch.lead) = s / (zk * zk);
  for (int l = 0; l < 6; ++l)
    if (l != ch.lead && l != ch.dependent) ddep(l) = -z(5 - l) / zk;
  grad.resize(10);
  for (int l = 0, t = 0; l < 6; ++l) {
    if (l == ch.dependent) continue;
    cplx G = g(l) + std::conj(ddep(l)) * g(ch.dependent);
    grad(2 * t) = 2.0 * G.real();
    grad(2 * t + 1) = 2.0 * G.imag();
    ++t;
  }
  return R;
}

inline double minimize_chart(const Eigen::MatrixXcd& A, const QuadricChart& ch, Eigen::VectorXd& x) {
  return bfgs_minimize([&](const Eigen::VectorXd& xr, Eigen::VectorXd& g) { return chart_value_grad(A, ch, xr, g); }, x);
}

}  // namespace detail

/// Multi-start minimization of conj(z) A z / |z|^2 over the quadric
/// z1 z6 + z2 z5 + z3 z4 = 0, using the six coordinate charts.
template <Scalar S>
TransversalityVerdict quadric_numeric(const QuadricMatrix<S>& a, double tolerance = 1e-9, int starts = 64,
                                      std::uint64_t seed = 0) {
  detail::check_hermitian(a);
  if (starts <= 0) throw std::invalid_argument("start count must be positive");
  Eigen::MatrixXcd A(6, 6);
  for (int j = 0; j < 6; ++j)
    for (int k = 0; k < 6; ++k) A(j, k) = a[j][k].to_complex();
  TransversalityVerdict v;
  v.method = "quadric multi-start";
  v.seed = seed;
  v.value = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best;
  for (int lead = 0; lead < 6; ++lead) {
    detail::QuadricChart ch{lead, 5 - lead};
    detail::StreamRng rng(seed, static_cast<std::uint64_t>(lead));
    for (int s = 0; s < starts; ++s) {
      Eigen::VectorXd x(10);
      for (int t = 0; t < 5; ++t) {
        cplx c = rng.gaussian();
        x(2 * t) = c.real();
        x(2 * t + 1) = c.imag();
      }
      double f = detail::minimize_chart(A, ch, x);
      ++v.samples;
      if (f < v.value) {
        Eigen::VectorXcd xc(5);
        for (int t = 0; t < 5; ++t) xc(t) = cplx(x(2 * t), x(2 * t + 1));
        best = detail::chart_point(ch, xc);
        v.value = f;
      }
    }
  }
  if (v.value <= tolerance) {
    v.kind = VerdictKind::Falsified;
    best /= best.norm();
    for (int l = 0; l < 6; ++l) v.witness_point.push_back(best(l));
  } else {
    v.kind = VerdictKind::NotFalsified;
  }
  return v;
}

/// Quadric criterion: closed form for the Omega_a family, numeric search otherwise.
template <Scalar S>
TransversalityVerdict quadric_transversality(const QuadricMatrix<S>& a, double tolerance = 1e-9, int starts = 64,
                                             std::uint64_t seed = 0) {
  detail::check_hermitian(a);
  if (auto rec = recognize_omega_a(a)) {
    int slot = std::min(rec->second, 7 - rec->second);
    S coeff = rec->second == slot ? rec->first : rec->first.conj();
    return omega_a_analytic(coeff, slot);
  }
  return quadric_numeric(a, tolerance, starts, seed);
}

/// Simple (2,0)-form whose Omega-coordinates correspond to the quadric point y:
/// beta = sum_l conj(y_{7-l}) Omega_l.
inline std::vector<std::vector<cplx>> quadric_point_to_factors(const std::vector<cplx>& y) {
  const auto& ob = omega_basis();
  auto basis = subsets_of_size(4, 2);
  Eigen::VectorXcd p = Eigen::VectorXcd::Zero(basis.size());
  for (int l = 0; l < 6; ++l) {
    auto it = std::find(basis.begin(), basis.end(), ob[l].first);
    p(it - basis.begin()) += static_cast<double>(ob[l].second) * std::conj(y[5 - l]);
  }
  return factor_simple(4, 2, p);
}

// ---------------------------------------------------------------------------
// Dispatcher.

/// Decides or tests transversality of a real (p,p)-form:
///  - when every (n-p,0)-form is simple, exactly via the Plücker Hermitian form;
///  - rank 4 with p = 2, via the quadric criterion;
///  - otherwise positive definiteness certifies, and sampling may falsify.
template <Scalar S>
TransversalityVerdict assess_transversality(const Form<S>& psi, int p, const SamplingConfig& cfg = {}) {
  const int n = psi.rank();
  const int k = detail::check_pp_form(psi, p);
  if (k <= 1 || k >= n - 1) {
    PluckerForm<S> pf = plucker_form(psi, p);
    TransversalityVerdict v;
    v.method = "hermitian form on all (n-p,0)-forms";
    if (is_positive_definite_hermitian(pf.K)) {
      v.kind = VerdictKind::CertifiedPositive;
      v.certificate = "positive definite Hermitian form (every (n-p,0)-form is simple)";
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(pf.K));
      v.value = es.eigenvalues()(0);
      return v;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(pf.K));
    v.kind = VerdictKind::Falsified;
    v.value = es.eigenvalues()(0);
    v.witness_factors = factor_simple(n, k, es.eigenvectors().col(0));
    return v;
  }
  if (n == 4 && p == 2) {
    PluckerForm<S> pf = plucker_form(psi, p);
    if (is_positive_definite_hermitian(pf.K)) {
      TransversalityVerdict v;
      v.kind = VerdictKind::CertifiedPositive;
      v.method = "positive definiteness";
      v.certificate = "positive definite on all (2,0)-forms";
      v.value = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(to_eigen(pf.K)).eigenvalues()(0);
      return v;
    }
    auto v = quadric_transversality(quadric_matrix(psi), cfg.tolerance, cfg.quadric_starts, cfg.seed);
    if (v.falsified() && !v.witness_point.empty()) v.witness_factors = quadric_point_to_factors(v.witness_point);
    return v;
  }
  PluckerForm<S> pf = plucker_form(psi, p);
  if (is_positive_definite_hermitian(pf.K)) {
    TransversalityVerdict v;
    v.kind = VerdictKind::CertifiedPositive;
    v.method = "positive definiteness";
    v.certificate = "positive definite on all (n-p,0)-forms";
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(pf.K));
    v.value = es.eigenvalues()(0);
    return v;
  }
  return transversality_sample(psi, p, cfg.samples, cfg.seed, cfg.tolerance);
}

/// Verdict recorded for omega^p of a positive-definite metric.
inline TransversalityVerdict metric_power_verdict() {
  TransversalityVerdict v;
  v.kind = VerdictKind::CertifiedPositive;
  v.method = "metric power";
  v.certificate = "power of a positive-definite Hermitian metric";
  v.value = 1.0;
  return v;
}

enum class Decision { Holds, Fails, Undecided };

inline std::string to_string(Decision d) {
  switch (d) {
    case Decision::Holds: return "holds";
    case Decision::Fails: return "fails";
    case Decision::Undecided: return "undecided";
  }
  return "?";
}

struct PluriclosedReport {
  bool ddbar_closed = false;
  std::string residual;
  TransversalityVerdict transversality;
  Decision decision = Decision::Undecided;
};

/// p-pluriclosed: ddbar-closed and transverse.
template <Scalar S>
PluriclosedReport is_p_pluriclosed(const StructurePresentation<S>& pres, const Form<S>& f, int p,
                                   const SamplingConfig& cfg = {}) {
  if (f.rank() != pres.rank()) throw std::invalid_argument("rank mismatch between form and presentation");
  detail::check_pp_form(f, p);
  PluriclosedReport rep;
  Form<S> r = del(pres, delbar(pres, f));
  rep.ddbar_closed = r.is_zero();
  rep.residual = r.to_string();
  rep.transversality = assess_transversality(f, p, cfg);
  if (!rep.ddbar_closed || rep.transversality.falsified()) rep.decision = Decision::Fails;
  else if (rep.transversality.kind == VerdictKind::CertifiedPositive) rep.decision = Decision::Holds;
  else rep.decision = Decision::Undecided;
  return rep;
}

}  // namespace geowb
