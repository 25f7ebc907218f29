#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "geowb/catalog.hpp"
#include "geowb/metric.hpp"
#include "geowb/operators.hpp"
#include "geowb/optimize.hpp"
#include "geowb/positivity.hpp"

namespace geowb {

namespace detail {

template <Scalar S>
S from_parts(const typename S::real_type& re, const typename S::real_type& im) {
  return S(re, im);
}

template <Scalar S>
typename S::real_type real_part(const S& z) {
  return z.real();
}
template <Scalar S>
typename S::real_type imag_part(const S& z) {
  return z.imag();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Ansatz closure systems: Psi = lambda + fixed + conj(lambda), d Psi = 0.

template <Scalar S>
struct AnsatzSolution {
  using R = typename S::real_type;

  int n = 0;
  int p = 0;
  std::vector<Monomial> basis;
  Form<S> fixed;
  bool consistent = false;
  /// Complex coefficients of one solution (meaningful when consistent).
  std::vector<S> particular;
  /// Kernel of the real system in coordinates (Re l1, Im l1, Re l2, Im l2, ...).
  std::vector<std::vector<R>> kernel;
  /// "standard ansatz" or "beyond the standard ansatz".
  std::string label;

  linalg::Matrix<R> system;
  std::vector<R> rhs;

  std::vector<R> real_coordinates(const std::vector<S>& lambda) const {
    if (lambda.size() != basis.size()) throw std::invalid_argument("ansatz coefficient count mismatch");
    std::vector<R> x;
    x.reserve(2 * lambda.size());
    for (const auto& l : lambda) {
      x.push_back(detail::real_part(l));
      x.push_back(detail::imag_part(l));
    }
    return x;
  }

  /// Whether the coefficient assignment solves the closure system.
  bool contains(const std::vector<S>& lambda) const {
    auto x = real_coordinates(lambda);
    if (system.cols() == 0) return rhs.empty() || std::all_of(rhs.begin(), rhs.end(), [](const R& r) { return is_zero(r); });
    auto y = linalg::multiply(system, x);
    for (std::size_t r = 0; r < y.size(); ++r)
      if (!is_zero(R(y[r] - rhs[r]))) return false;
    return true;
  }

  /// Complex dimension count of the affine solution space is not defined in
  /// general (the system is only real-linear); this is its real dimension.
  std::size_t real_dimension() const { return consistent ? kernel.size() : 0; }

  /// lambda + fixed + conj(lambda).
  Form<S> psi(const std::vector<S>& lambda) const {
    if (lambda.size() != basis.size()) throw std::invalid_argument("ansatz coefficient count mismatch");
    Form<S> l = from_coordinates(n, basis, lambda);
    return l + fixed + conjugate(l);
  }

  /// Complex coefficients from real coordinates.
  std::vector<S> from_real(const std::vector<R>& x) const {
    std::vector<S> out;
    for (std::size_t k = 0; k < basis.size(); ++k) out.push_back(detail::from_parts<S>(x[2 * k], x[2 * k + 1]));
    return out;
  }
};

/// Solves d(lambda + fixed + conj(lambda)) = 0 for the coefficients of lambda in
/// the given monomial basis. Basis monomials have degree 2p with at least as
/// many holomorphic as antiholomorphic indices; the standard block is (p+1,p-1).
template <Scalar S>
AnsatzSolution<S> closure_system(const StructurePresentation<S>& pres, int p, const Form<S>& fixed,
                                 const std::vector<Monomial>& ansatz_basis) {
  using R = typename S::real_type;
  const int n = pres.rank();
  if (fixed.rank() != n) throw std::invalid_argument("fixed form has the wrong rank");
  for (const auto& [m, c] : fixed.terms())
    if (m.p() != p || m.q() != p) throw std::invalid_argument("fixed form is not of bidegree (p,p)");
  if (!is_real(fixed)) throw std::invalid_argument("fixed form is not real");
  bool standard = true;
  std::set<Monomial> seen;
  for (const auto& m : ansatz_basis) {
    if (m.degree() != 2 * p || m.p() < m.q())
      throw std::invalid_argument("ansatz monomial " + monomial_label(m) + " must have degree 2p and p >= q");
    if (!seen.insert(m).second) throw std::invalid_argument("repeated ansatz monomial " + monomial_label(m));
    if (m.p() != p + 1) standard = false;
  }

  AnsatzSolution<S> sol;
  sol.n = n;
  sol.p = p;
  sol.basis = ansatz_basis;
  sol.fixed = fixed;
  sol.label = standard ? "standard ansatz" : "beyond the standard ansatz";

  const S i = S::imag_unit();
  const Form<S> dfixed = differential(pres, fixed);
  std::vector<Form<S>> columns;  // images of Re and Im parts
  for (const auto& m : ansatz_basis) {
    Form<S> mono = Form<S>::monomial(n, m);
    Form<S> dm = differential(pres, mono);
    Form<S> dmbar = conjugate(dm);
    columns.push_back(dm + dmbar);
    columns.push_back((dm - dmbar) * i);
  }
  std::set<Monomial> rows_set;
  for (const auto& [m, c] : dfixed.terms()) rows_set.insert(m);
  for (const auto& col : columns)
    for (const auto& [m, c] : col.terms()) rows_set.insert(m);
  std::vector<Monomial> rows(rows_set.begin(), rows_set.end());

  linalg::Matrix<R> mat(2 * rows.size(), columns.size());
  std::vector<R> rhs(2 * rows.size(), linalg::field_zero<R>());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto v = coordinates(columns[c], rows);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      mat(2 * r, c) = detail::real_part(v[r]);
      mat(2 * r + 1, c) = detail::imag_part(v[r]);
    }
  }
  auto f = coordinates(dfixed, rows);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    rhs[2 * r] = R(-detail::real_part(f[r]));
    rhs[2 * r + 1] = R(-detail::imag_part(f[r]));
  }
  sol.system = mat;
  sol.rhs = rhs;
  auto solved = linalg::solve(mat, rhs);
  sol.consistent = solved.has_value();
  if (solved) {
    sol.particular = sol.from_real(solved->particular);
    sol.kernel = std::move(solved->kernel);
  }
  return sol;
}

/// phi^{1..n} ^ conj(phi^J) for all |J| = p-1: the (n, p-1) block used with p+1 = n.
/// J runs in lexicographic order (12, 13, 14, 23, ...), which is the order the
/// named ansatz letters follow.
inline std::vector<Monomial> top_ansatz_basis(int n, int p) {
  auto basis = bidegree_basis(n, n, p - 1);
  std::sort(basis.begin(), basis.end(),
            [](const Monomial& a, const Monomial& b) { return indices_of(a.anti) < indices_of(b.anti); });
  return basis;
}

// ---------------------------------------------------------------------------
// Closed-form conditions for the three families.

/// Rank-3 metric letters: r2 = H11, s2 = H22, t2 = H33, u = i H12, v = i H13, w = i H23.
template <Scalar S>
struct MetricLetters {
  S r2 = S::one(), s2 = S::one(), t2 = S::one(), u = S::zero(), v = S::zero(), w = S::zero();

  HermitianMetric<S> metric() const { return HermitianMetric<S>::from_letters(r2, s2, t2, u, v, w); }
};

template <Scalar S>
struct FpsParams {
  S A = S::zero(), B = S::zero(), C = S::zero(), D = S::zero(), E = S::zero();

  ParamMap<S> as_map() const { return {{"A", A}, {"B", B}, {"C", C}, {"D", D}, {"E", E}}; }
  static FpsParams from_map(const ParamMap<S>& m) {
    detail::check_names(m, fps6_parameter_names(), "fps6");
    FpsParams f;
    f.A = detail::param(m, "A", S::zero());
    f.B = detail::param(m, "B", S::zero());
    f.C = detail::param(m, "C", S::zero());
    f.D = detail::param(m, "D", S::zero());
    f.E = detail::param(m, "E", S::zero());
    return f;
  }
};

/// Closedness of Psi = lambda + omega^2 + conj(lambda) on the rank-3 family,
/// lambda = L a^123^conj(a^1) + M a^123^conj(a^2) + N a^123^conj(a^3).
/// The second Ahat-term is read as conj(u) * conj(A).
template <Scalar S>
S fps_psymplectic_condition(const FpsParams<S>& f, const MetricLetters<S>& m, const S& N) {
  const S half = S::one() / S(2);
  const S i = S::imag_unit();
  const S Ab = f.A.conj(), Bb = f.B.conj(), Cb = f.C.conj(), Db = f.D.conj(), Eb = f.E.conj();
  const S vv = m.v * m.v.conj(), ww = m.w * m.w.conj();
  S inner = -(m.r2 * m.t2 * Bb) + m.s2 * m.t2 * Cb + vv * Bb - ww * Cb + i * m.t2 * m.u * Db +
            i * m.t2 * m.u.conj() * Ab + m.v * m.w.conj() * Db - m.v.conj() * m.w * Ab;
  return -(N * Eb) + half * inner;
}

/// SKT together with 2-symplectic closedness for the diagonal metric.
template <Scalar S>
bool fps_skt_2symplectic_system(const FpsParams<S>& f, const S& N) {
  const S half = S::one() / S(2);
  S first = f.A * f.A.conj() + f.D * f.D.conj() + f.E * f.E.conj() + S(2) * S::from_real((f.B.conj() * f.C).real());
  S second = half * (f.C.conj() - f.B.conj()) - N * f.E.conj();
  return first.is_zero() && second.is_zero();
}

template <typename R>
struct CircleData {
  bool exists = false;
  R center_x{}, center_y{}, radius_sq{};
};

/// Circle x^2 + y^2 + k(xu + yv) + u^2 + v^2 = 0 in the (x, y) plane.
template <typename R>
CircleData<R> circle_from_linear_coefficient(const R& k, const R& u, const R& v) {
  CircleData<R> c;
  c.center_x = -k * u / 2;
  c.center_y = -k * v / 2;
  c.radius_sq = (k * k / 4 - 1) * (u * u + v * v);
  c.exists = c.radius_sq > 0;
  return c;
}

/// Literal variant with linear coefficient 4a - 2, a = |N|^2 (exists iff a > 1 and (u,v) != 0).
/// It does not match the equations; see fps_skt_solution_circle.
template <typename R>
CircleData<R> fps_solution_circle(const R& a, const R& u, const R& v) {
  if (!(a > 0)) throw std::invalid_argument("a = |N|^2 must be positive");
  return circle_from_linear_coefficient<R>(R(4 * a - 2), u, v);
}

/// Locus actually cut out by the SKT and 2-symplectic equations with A = D = 0:
/// B = x + iy, C = u + iv, |N|^2 = a. Eliminating E gives the linear
/// coefficient 8a - 2, so the circle exists iff a > 1/2 and (u,v) != 0.
template <typename R>
CircleData<R> fps_skt_solution_circle(const R& a, const R& u, const R& v) {
  if (!(a > 0)) throw std::invalid_argument("a = |N|^2 must be positive");
  return circle_from_linear_coefficient<R>(R(8 * a - 2), u, v);
}

/// Fixed block omega^2, ansatz lambda^{3,1} on the rank-3 family.
template <Scalar S>
AnsatzSolution<S> fps_closure(const FpsParams<S>& f, const MetricLetters<S>& m) {
  auto pres = fps6<S>(f.as_map());
  auto omega = fundamental_form(m.metric());
  return closure_system(pres, 2, form_power(omega, 2), top_ansatz_basis(3, 2));
}

/// (3/4) i (a3 + a8 + a12) - conj(L3) a6 + conj(M2) a2 - conj(N) a1.
template <Scalar S>
S ft8_3symplectic_condition(const ParamMap<S>& a, const S& L3, const S& M2, const S& N) {
  detail::check_names(a, ft8_parameter_names(), "ft8");
  auto g = [&](int k) { return detail::param(a, "a" + std::to_string(k), S::zero()); };
  const S c = make_scalar<S>(0, mpq_class(3, 4));
  return c * (g(3) + g(8) + g(12)) - L3.conj() * g(6) + M2.conj() * g(2) - N.conj() * g(1);
}

/// Astheno-Kähler identity for the diagonal metric on the rank-4 family.
template <Scalar S>
bool ft8_astheno_identity(const ParamMap<S>& a) {
  detail::check_names(a, ft8_parameter_names(), "ft8");
  auto g = [&](int k) { return detail::param(a, "a" + std::to_string(k), S::zero()); };
  S lhs = S::zero();
  for (int k : {1, 2, 4, 5, 6, 7, 9, 10, 11}) lhs += g(k) * g(k).conj();
  S rhs = g(3) * g(8).conj() + g(3) * g(12).conj() + g(8) * g(12).conj();
  rhs = S(2) * S::from_real(rhs.real());
  return (lhs - rhs).is_zero();
}

/// SKT + astheno + 3-symplectic system, valid on the branch a8 = 0.
template <Scalar S>
bool ft8_combined_system(const ParamMap<S>& a, const S& M2) {
  detail::check_names(a, ft8_parameter_names(), "ft8");
  auto g = [&](int k) { return detail::param(a, "a" + std::to_string(k), S::zero()); };
  if (!g(8).is_zero()) throw std::invalid_argument("the combined system is stated for a8 = 0");
  for (int k : {1, 4, 6, 7, 9, 11})
    if (!g(k).is_zero()) return false;
  S lhs = g(2) * g(2).conj() + g(5) * g(5).conj() + g(10) * g(10).conj();
  S rhs = S(2) * S::from_real((g(3) * g(12).conj()).real());
  if (!(lhs - rhs).is_zero()) return false;
  S third = make_scalar<S>(0, mpq_class(3, 4)) * (g(3) + g(12)) + M2.conj() * g(2);
  return third.is_zero();
}

template <Scalar S>
HermitianMetric<S> standard_metric(int n) {
  return HermitianMetric<S>::identity(n);
}

/// ddbar(omega^2) for the standard metric on the rank-4 family.
template <Scalar S>
Form<S> ft8_ddbar_omega2(const ParamMap<S>& a) {
  auto pres = ft8<S>(a);
  auto omega2 = form_power(fundamental_form(standard_metric<S>(4)), 2);
  return del(pres, delbar(pres, omega2));
}

/// Coefficients (L1, L2, L3, M1, M2, N) on eta^1234 ^ conj(eta^{12,13,14,23,24,34}).
template <Scalar S>
AnsatzSolution<S> ft8_closure(const ParamMap<S>& a) {
  auto pres = ft8<S>(a);
  auto omega = fundamental_form(standard_metric<S>(4));
  return closure_system(pres, 3, form_power(omega, 3), top_ansatz_basis(4, 3));
}

template <Scalar S>
struct St10Ansatz {
  S L1 = S::zero(), L2 = S::zero(), L3 = S::zero(), M1 = S::zero(), M2 = S::zero(), N1 = S::zero(),
    S1 = S::zero(), S2 = S::zero(), S3 = S::zero(), P = S::zero();

  /// Order matches top_ansatz_basis(5, 4): 123, 124, 125, 134, 135, 145, 234, 235, 245, 345.
  std::vector<S> as_vector() const { return {L1, L2, L3, M1, M2, N1, S1, S2, S3, P}; }
};

/// (3/2)(d4 + c4 + b4 + a4) - conj(L3) c1 + conj(M2) b2 - conj(N1) b1
/// - conj(S2) a3 + conj(S3) a2 - conj(P) a1.
template <Scalar S>
S st10_4symplectic_condition(const ParamMap<S>& l, const St10Ansatz<S>& x) {
  detail::check_names(l, st10_parameter_names(), "st10");
  auto g = [&](const char* s) { return detail::param(l, s, S::zero()); };
  const S c = make_scalar<S>(mpq_class(3, 2));
  return c * (g("d4") + g("c4") + g("b4") + g("a4")) - x.L3.conj() * g("c1") + x.M2.conj() * g("b2") -
         x.N1.conj() * g("b1") - x.S2.conj() * g("a3") + x.S3.conj() * g("a2") - x.P.conj() * g("a1");
}

/// Letters that the combined ST10 system assumes vanish.
inline const std::vector<std::string>& st10_combined_zero_letters() {
  static const std::vector<std::string> z = {"a2", "a3", "a5", "a6", "a7", "b1", "b2", "b3",
                                             "b5", "b6", "c2", "c3", "c5", "d1", "d2", "d3"};
  return z;
}

/// Per-line truth values of the combined ST10 system (five lines).
template <Scalar S>
std::vector<bool> st10_combined_lines(const ParamMap<S>& l, const S& L3, const S& P) {
  detail::check_names(l, st10_parameter_names(), "st10");
  auto g = [&](const std::string& s) { return detail::param(l, s, S::zero()); };
  for (const auto& z : st10_combined_zero_letters())
    if (!g(z).is_zero()) throw std::invalid_argument("the combined system assumes " + z + " = 0");
  auto re = [](const S& z) { return S::from_real(z.real()); };
  const S a4 = g("a4"), b4 = g("b4"), c4 = g("c4"), d4 = g("d4"), a1 = g("a1"), c1 = g("c1");
  const S two(2);
  std::vector<bool> lines;
  lines.push_back((two * re(d4 * a4.conj() + d4 * b4.conj() + d4 * c4.conj()) - c1 * c1.conj()).is_zero());
  lines.push_back((two * re(c4 * a4.conj() + c4 * b4.conj() + b4 * a4.conj()) - a1 * a1.conj()).is_zero());
  lines.push_back(re(c4 * b4.conj() - d4 * a4.conj()).is_zero());
  lines.push_back(re(b4 * d4.conj() - c4 * a4.conj()).is_zero());
  lines.push_back((make_scalar<S>(mpq_class(3, 2)) * (a4 + b4 + c4 + d4) - c1 * L3.conj() - a1 * P.conj()).is_zero());
  return lines;
}

template <Scalar S>
bool st10_combined_system(const ParamMap<S>& l, const S& L3, const S& P) {
  auto lines = st10_combined_lines(l, L3, P);
  return std::all_of(lines.begin(), lines.end(), [](bool b) { return b; });
}

template <Scalar S>
AnsatzSolution<S> st10_closure(const ParamMap<S>& l) {
  auto pres = st10<S>(l);
  auto omega = fundamental_form(standard_metric<S>(5));
  return closure_system(pres, 4, form_power(omega, 4), top_ansatz_basis(5, 4));
}

// ---------------------------------------------------------------------------
// Obstruction certificates.

enum class CertificateMode { D, DelbarDel };

inline std::string to_string(CertificateMode m) { return m == CertificateMode::D ? "d" : "delbar-del"; }

struct CertificateError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// d(beta) (or the (n-p,n-p) part of ddbar(beta)) = sum c_i psi_i ^ conj(psi_i).
template <Scalar S>
struct ObstructionCertificate {
  Form<S> beta;
  CertificateMode mode = CertificateMode::D;
  int p = 0;
  std::vector<std::pair<S, SimpleForm<S>>> decomposition;
};

template <Scalar S>
struct CertificateReport {
  bool valid = false;
  std::string reason;
  Form<S> computed;
  Form<S> claimed;
  std::vector<S> raw_coefficients;
  /// c_i / sigma_{n-p}, the coefficients against sigma_{n-p} psi ^ conj(psi).
  std::vector<S> normalized_coefficients;
  std::string conclusion;
};

template <Scalar T, Scalar S>
ObstructionCertificate<T> convert_certificate(const ObstructionCertificate<S>& c) {
  ObstructionCertificate<T> out;
  out.beta = convert_form<T>(c.beta);
  out.mode = c.mode;
  out.p = c.p;
  for (const auto& [coeff, sf] : c.decomposition) {
    SimpleForm<T> t;
    for (const auto& f : sf.factors) {
      std::vector<T> row;
      for (const auto& x : f) {
        if constexpr (std::is_same_v<T, S>) row.push_back(x);
        else row.push_back(T(x.to_complex()));
      }
      t.factors.push_back(std::move(row));
    }
    if constexpr (std::is_same_v<T, S>) out.decomposition.emplace_back(coeff, std::move(t));
    else out.decomposition.emplace_back(T(coeff.to_complex()), std::move(t));
  }
  return out;
}

namespace detail {

/// z / w is real and positive.
template <Scalar S>
bool same_phase(const S& z, const S& w) {
  S r = z * w.conj();
  if (!r.is_real()) return false;
  if constexpr (S::is_exact) return sgn(r.real()) > 0;
  else return r.real() > 0.0 && !r.is_zero();
}

template <Scalar S>
Form<S> certificate_target(const StructurePresentation<S>& pres, const Form<S>& beta, CertificateMode mode, int p) {
  const int n = pres.rank();
  if (mode == CertificateMode::D) return differential(pres, beta);
  return bidegree_project(del(pres, delbar(pres, beta)), n - p, n - p);
}

}  // namespace detail

template <Scalar S>
CertificateReport<S> verify_obstruction_certificate(const StructurePresentation<S>& pres,
                                                    const ObstructionCertificate<S>& cert) {
  const int n = pres.rank();
  const int p = cert.p;
  if (p < 1 || p > n) throw CertificateError("certificate degree p out of range");
  if (cert.beta.rank() != n) throw CertificateError("certificate form has the wrong rank");
  const int want = cert.mode == CertificateMode::D ? 2 * n - 2 * p - 1 : 2 * n - 2 * p - 2;
  if (want < 0) throw CertificateError("no certificate of this mode exists for p = " + std::to_string(p));
  auto deg = cert.beta.degree();
  if (!deg || *deg != want)
    throw CertificateError("beta must be homogeneous of degree " + std::to_string(want));
  if (cert.decomposition.empty()) throw CertificateError("empty decomposition");
  for (const auto& [c, sf] : cert.decomposition)
    if (sf.degree() != n - p) throw CertificateError("each simple form must have degree n - p = " + std::to_string(n - p));

  CertificateReport<S> rep;
  rep.computed = detail::certificate_target(pres, cert.beta, cert.mode, p);
  rep.claimed = Form<S>(n);
  const S sig = sigma<S>(n - p);
  for (const auto& [c, sf] : cert.decomposition) {
    Form<S> psi = sf.to_form(n);
    rep.claimed += wedge(psi, conjugate(psi)) * c;
    rep.raw_coefficients.push_back(c);
    rep.normalized_coefficients.push_back(c / sig);
  }
  if (!(rep.computed == rep.claimed)) {
    rep.reason = "computed form differs from the claimed decomposition";
    return rep;
  }
  if (rep.computed.is_zero()) {
    rep.reason = "decomposition sums to zero";
    return rep;
  }
  for (std::size_t k = 0; k < rep.raw_coefficients.size(); ++k) {
    if (rep.raw_coefficients[k].is_zero()) {
      rep.reason = "zero coefficient in decomposition";
      return rep;
    }
    if (SimpleForm<S> sf = cert.decomposition[k].second; sf.to_form(n).is_zero()) {
      rep.reason = "a simple form in the decomposition vanishes";
      return rep;
    }
    if (!detail::same_phase(rep.raw_coefficients[k], rep.raw_coefficients[0])) {
      rep.reason = "coefficients do not share a common sign";
      return rep;
    }
  }
  rep.valid = true;
  const std::string pk = std::to_string(p);
  rep.conclusion = cert.mode == CertificateMode::D ? "no " + pk + "-symplectic form (invariant certificate verified)"
                                                   : "no " + pk + "-pluriclosed form (invariant certificate verified)";
  return rep;
}

namespace detail {

inline SimpleForm<GaussianRational> coordinate_simple(int n, std::initializer_list<int> idx) {
  SimpleForm<GaussianRational> s;
  for (int i : idx) {
    std::vector<GaussianRational> row(n, GaussianRational(0));
    row[i - 1] = GaussianRational(1);
    s.factors.push_back(std::move(row));
  }
  return s;
}

inline Form<GaussianRational> mono(int n, std::initializer_list<int> h, std::initializer_list<int> a,
                                   GaussianRational c = 1) {
  std::uint32_t hm = 0, am = 0;
  for (int i : h) hm |= index_bit(i);
  for (int i : a) am |= index_bit(i);
  return Form<GaussianRational>::monomial(n, Monomial{hm, am}, c);
}

}  // namespace detail

struct LibraryCertificate {
  std::string name;
  std::string structure;  // catalog key
  ParamMap<GaussianRational> params;
  ObstructionCertificate<GaussianRational> certificate;
};

/// Certificates for the worked nonexistence cases.
inline const std::vector<LibraryCertificate>& certificate_library() {
  static const std::vector<LibraryCertificate> lib = [] {
    using detail::coordinate_simple;
    using detail::mono;
    using Q = GaussianRational;
    std::vector<LibraryCertificate> out;
    out.push_back({"nakamura-iv-6", "nakamura-iv-6", {},
                   {mono(4, {1, 2}, {2}), CertificateMode::D, 2, {{Q(1), coordinate_simple(4, {1, 2})}}}});
    out.push_back({"nakamura-v-5", "nakamura-v-5", {},
                   {mono(5, {2, 3}, {4}), CertificateMode::D, 3, {{Q(-1), coordinate_simple(5, {2, 3})}}}});
    out.push_back({"nakamura-v-14", "nakamura-v-14", {},
                   {mono(5, {1, 2, 3}, {2, 3}), CertificateMode::D, 2, {{Q(-1), coordinate_simple(5, {1, 2, 3})}}}});
    out.push_back({"s1-pi2", "s1-pi2", {},
                   {mono(3, {1}, {}), CertificateMode::D, 2,
                    {{Q(mpq_class(0), mpq_class(-1, 2)), coordinate_simple(3, {1})}}}});
    auto omega2 = form_power(fundamental_form(HermitianMetric<Q>::identity(4)), 2);
    out.push_back({"ft8-a4", "ft8", {{"a4", Q(1)}},
                   {omega2, CertificateMode::DelbarDel, 1, {{Q(mpq_class(1, 2)), coordinate_simple(4, {1, 2, 3})}}}});
    return out;
  }();
  return lib;
}

inline const LibraryCertificate& library_certificate(const std::string& name) {
  for (const auto& c : certificate_library())
    if (c.name == name) return c;
  throw std::invalid_argument("unknown certificate: " + name);
}

/// Brute force over beta = single monomials and then +-1 combinations of two,
/// accepting when the target is a sum of phi^I ^ conj(phi^I) with one phase.
template <Scalar S>
std::vector<ObstructionCertificate<S>> search_obstruction_certificates(const StructurePresentation<S>& pres, int p,
                                                                       CertificateMode mode, long budget,
                                                                       std::size_t max_results = 1) {
  const int n = pres.rank();
  if (budget <= 0) throw std::invalid_argument("budget must be positive");
  const int deg = mode == CertificateMode::D ? 2 * n - 2 * p - 1 : 2 * n - 2 * p - 2;
  std::vector<ObstructionCertificate<S>> found;
  if (deg < 0 || p < 1 || p > n) return found;
  const auto basis = degree_basis(n, deg);
  long spent = 0;
  auto try_beta = [&](const Form<S>& beta) {
    ++spent;
    Form<S> t = detail::certificate_target(pres, beta, mode, p);
    if (t.is_zero()) return;
    std::optional<S> phase;
    ObstructionCertificate<S> cert{beta, mode, p, {}};
    for (const auto& [m, c] : t.terms()) {
      if (m.holo != m.anti || m.p() != n - p) return;
      if (phase && !detail::same_phase(c, *phase)) return;
      if (!phase) phase = c;
      SimpleForm<S> sf;
      for (int idx : indices_of(m.holo)) {
        std::vector<S> row(n, S::zero());
        row[idx - 1] = S::one();
        sf.factors.push_back(std::move(row));
      }
      // psi ^ conj(psi) for psi = phi^I is exactly the monomial phi^I ^ conj(phi^I).
      cert.decomposition.emplace_back(c, std::move(sf));
    }
    found.push_back(std::move(cert));
  };
  for (std::size_t a = 0; a < basis.size() && spent < budget && found.size() < max_results; ++a)
    try_beta(Form<S>::monomial(n, basis[a]));
  for (std::size_t a = 0; a < basis.size() && spent < budget && found.size() < max_results; ++a)
    for (std::size_t b = a + 1; b < basis.size() && spent < budget && found.size() < max_results; ++b)
      for (int sgn_b : {1, -1}) {
        if (spent >= budget || found.size() >= max_results) break;
        try_beta(Form<S>::monomial(n, basis[a]) + Form<S>::monomial(n, basis[b], S(sgn_b)));
      }
  return found;
}

// ---------------------------------------------------------------------------
// Exact, simple, holomorphic forms on complex-parallelizable structures.

enum class HolomorphicVerdict { NoObstruction, ObstructionFound, Undecided };

inline std::string to_string(HolomorphicVerdict v) {
  switch (v) {
    case HolomorphicVerdict::NoObstruction: return "NoObstruction";
    case HolomorphicVerdict::ObstructionFound: return "ObstructionFound";
    case HolomorphicVerdict::Undecided: return "Undecided";
  }
  return "?";
}

template <Scalar S>
struct HolomorphicSearchResult {
  HolomorphicVerdict verdict = HolomorphicVerdict::Undecided;
  int q = 0;
  std::vector<Form<S>> exact_basis;  // basis of d(Lambda^{q-1,0})
  std::optional<Form<S>> witness;    // exact simple holomorphic q-form
  std::optional<Form<S>> primitive;  // eta with d(eta) = witness
  std::string method;
  std::string detail;
};

namespace detail {

template <Scalar S>
void trim(std::vector<S>& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

/// Remainder of a by b (coefficients low to high).
template <Scalar S>
std::vector<S> poly_mod(std::vector<S> a, const std::vector<S>& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    S f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

template <Scalar S>
std::vector<S> poly_gcd(std::vector<S> a, std::vector<S> b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Whether ker(alpha -> alpha ^ xi) on (1,0)-forms has dimension deg(xi).
template <Scalar S>
bool is_simple_holomorphic(const Form<S>& xi) {
  const int n = xi.rank();
  auto deg = xi.degree();
  if (!deg) return false;
  const int q = *deg;
  auto dom = bidegree_basis(n, 1, 0);
  auto cod = bidegree_basis(n, q + 1, 0);
  if (cod.empty()) return true;
  auto m = operator_matrix<S>(n, dom, cod, [&](const Form<S>& a) { return wedge(a, xi); });
  return static_cast<int>(dom.size() - linalg::rank(m)) == q;
}

}  // namespace detail

/// Looks for a nonzero simple element of V = d(Lambda^{q-1,0}) inside Lambda^{q,0}.
template <Scalar S>
HolomorphicSearchResult<S> exact_simple_holomorphic_search(const StructurePresentation<S>& pres, int q,
                                                           const std::optional<Form<S>>& certificate = std::nullopt,
                                                           std::uint64_t seed = 0) {
  if (!pres.is_complex_parallelizable())
    throw std::invalid_argument("structure is not complex-parallelizable (some d(phi^i) has a (1,1) part)");
  const int n = pres.rank();
  if (q < 1 || q > n) throw std::invalid_argument("degree q out of range");
  HolomorphicSearchResult<S> res;
  res.q = q;
  auto dom = bidegree_basis(n, q - 1, 0);
  auto cod = bidegree_basis(n, q, 0);
  auto dmat = operator_matrix<S>(n, dom, cod, [&](const Form<S>& f) { return differential(pres, f); });
  for (const auto& col : linalg::column_space(dmat)) res.exact_basis.push_back(from_coordinates(n, cod, col));
  auto finish = [&](const Form<S>& xi, const std::string& method) {
    res.verdict = HolomorphicVerdict::ObstructionFound;
    res.witness = xi;
    res.method = method;
    auto sol = linalg::solve(dmat, coordinates(xi, cod));
    if (sol) res.primitive = from_coordinates(n, dom, sol->particular);
    return res;
  };

  if (certificate) {
    const Form<S>& xi = *certificate;
    if (xi.is_zero()) throw std::invalid_argument("certificate form is zero");
    auto b = xi.bidegree();
    if (!b || b->first != q || b->second != 0) throw std::invalid_argument("certificate must be of bidegree (q,0)");
    if (!in_image(dmat, coordinates(xi, cod))) {
      res.verdict = HolomorphicVerdict::Undecided;
      res.method = "certificate";
      res.detail = "certificate is not exact";
      return res;
    }
    if (!detail::is_simple_holomorphic(xi)) {
      res.verdict = HolomorphicVerdict::Undecided;
      res.method = "certificate";
      res.detail = "certificate is not simple";
      return res;
    }
    return finish(xi, "certificate");
  }

  if (res.exact_basis.empty()) {
    res.verdict = HolomorphicVerdict::NoObstruction;
    res.method = "exact forms vanish";
    return res;
  }
  if (q == 1 || q == n - 1 || q == n) return finish(res.exact_basis.front(), "every form of this degree is simple");
  if (q != 2) {
    res.verdict = HolomorphicVerdict::Undecided;
    res.method = "certificate required";
    res.detail = "degree " + std::to_string(q) + " needs a supplied certificate";
    return res;
  }

  // q = 2: xi simple iff xi ^ xi = 0.
  auto pair_search = [&](const Form<S>& v1, const std::optional<Form<S>>& v2) -> std::optional<Form<S>> {
    Form<S> a = wedge(v1, v1);
    if (a.is_zero()) return v1;
    if (!v2) return std::nullopt;
    Form<S> b = wedge(v1, *v2);
    Form<S> c = wedge(*v2, *v2);
    // Root [1:0] excluded above; on t2 = 1 each coefficient is a(s^2) + 2b s + c.
    std::set<Monomial> mons;
    for (const auto* f : {&a, &b, &c})
      for (const auto& [m, x] : f->terms()) mons.insert(m);
    std::vector<S> g;
    bool first = true;
    for (const auto& m : mons) {
      std::vector<S> poly = {c.coefficient(m), S(2) * b.coefficient(m), a.coefficient(m)};
      detail::trim(poly);
      if (poly.empty()) continue;
      g = first ? poly : detail::poly_gcd(g, poly);
      first = false;
    }
    detail::trim(g);
    if (g.size() < 2) return std::nullopt;
    if (g.size() == 2) {
      S s = -g[0] / g[1];
      return v1 * s + *v2;
    }
    // Quadratic gcd: both roots are common; use one when it lies in the field.
    const S disc = g[1] * g[1] - S(4) * g[2] * g[0];
    if (disc.is_zero()) return v1 * (-g[1] / (S(2) * g[2])) + *v2;
    if constexpr (!S::is_exact) {
      S s((-g[1].to_complex() + std::sqrt(disc.to_complex())) / (2.0 * g[2].to_complex()));
      return v1 * s + *v2;
    }
    return std::nullopt;
  };

  const auto& V = res.exact_basis;
  if (V.size() <= 2) {
    auto w = pair_search(V[0], V.size() == 2 ? std::optional<Form<S>>(V[1]) : std::nullopt);
    if (w) return finish(*w, "exact quadratic system");
    res.verdict = HolomorphicVerdict::NoObstruction;
    res.method = "exact quadratic system";
    res.detail = "xi ^ xi = 0 has no nonzero solution in the exact forms";
    return res;
  }
  for (std::size_t i = 0; i < V.size(); ++i)
    for (std::size_t j = i + 1; j < V.size(); ++j)
      if (auto w = pair_search(V[i], V[j])) return finish(*w, "exact quadratic system on a plane of exact forms");

  // Numeric multi-start minimization of |xi ^ xi|^2 / |t|^4.
  auto cod4 = bidegree_basis(n, 4, 0);
  const std::size_t d = V.size();
  std::vector<Eigen::MatrixXcd> Q(cod4.size(), Eigen::MatrixXcd::Zero(d, d));
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t l = 0; l < d; ++l) {
      auto w = coordinates(wedge(V[k], V[l]), cod4);
      for (std::size_t m = 0; m < cod4.size(); ++m) Q[m](k, l) = w[m].to_complex();
    }
  auto objective = [&](const Eigen::VectorXd& x, Eigen::VectorXd& grad) {
    Eigen::VectorXcd t(d);
    for (std::size_t k = 0; k < d; ++k) t(k) = cplx(x(2 * k), x(2 * k + 1));
    const double tn = t.squaredNorm();
    const double D = tn * tn;
    double N = 0.0;
    Eigen::VectorXcd dN = Eigen::VectorXcd::Zero(d);
    for (const auto& q4 : Q) {
      cplx w = (t.transpose() * q4 * t)(0, 0);
      N += std::norm(w);
      dN += w * (2.0 * q4 * t).conjugate();
    }
    const double f = N / D;
    Eigen::VectorXcd g = dN / D - (2.0 * f / tn) * t;
    grad.resize(2 * d);
    for (std::size_t k = 0; k < d; ++k) {
      grad(2 * k) = 2.0 * g(k).real();
      grad(2 * k + 1) = 2.0 * g(k).imag();
    }
    return f;
  };
  detail::StreamRng rng(seed, 0);
  double best = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 64; ++s) {
    Eigen::VectorXd x(2 * d);
    for (std::size_t k = 0; k < d; ++k) {
      cplx c = rng.gaussian();
      x(2 * k) = c.real();
      x(2 * k + 1) = c.imag();
    }
    best = std::min(best, bfgs_minimize(objective, x));
  }
  res.method = "numeric search over the exact forms";
  res.detail = "min |xi^xi|^2/|t|^4 = " + std::to_string(best);
  res.verdict = best <= 1e-20 ? HolomorphicVerdict::ObstructionFound : HolomorphicVerdict::Undecided;
  return res;
}

// ---------------------------------------------------------------------------
// Invariant-level ddbar lemma and Bott-Chern dimensions.

struct DdbarReport {
  bool holds = false;
  std::size_t exact_dimension = 0;  // dim(ker del ∩ ker delbar ∩ im d) in bidegree (p,q)
  std::size_t ddbar_rank = 0;       // dim im(del delbar) in bidegree (p,q)
  std::string scope = "invariant-level";
};

namespace detail {

template <Scalar S>
linalg::Matrix<S> ddbar_matrix(const StructurePresentation<S>& pres, int p, int q) {
  const int n = pres.rank();
  auto cod = bidegree_basis(n, p, q);
  if (p < 1 || q < 1) return linalg::Matrix<S>(cod.size(), 0);
  auto dom = bidegree_basis(n, p - 1, q - 1);
  return operator_matrix<S>(n, dom, cod, [&](const Form<S>& f) { return del(pres, delbar(pres, f)); });
}

template <typename F>
std::size_t safe_rank(const linalg::Matrix<F>& m) {
  return m.cols() == 0 || m.rows() == 0 ? 0 : linalg::rank(m);
}

}  // namespace detail

/// Compares im d ∩ Lambda^{p,q} (which lies in ker del ∩ ker delbar) with im ddbar.
template <Scalar S>
DdbarReport invariant_ddbar_lemma_check(const StructurePresentation<S>& pres, int p, int q) {
  const int n = pres.rank();
  if (p < 0 || q < 0 || p > n || q > n) throw std::invalid_argument("bidegree out of range");
  if (!pres.is_integrable()) throw std::domain_error("structure is not integrable");
  DdbarReport rep;
  const int k = p + q;
  auto pq = bidegree_basis(n, p, q);
  if (k >= 1) {
    auto dom = degree_basis(n, k - 1);
    auto cod = degree_basis(n, k);
    auto dm = operator_matrix<S>(n, dom, cod, [&](const Form<S>& f) { return differential(pres, f); });
    linalg::Matrix<S> inc(cod.size(), pq.size());
    for (std::size_t c = 0; c < pq.size(); ++c) {
      auto it = std::find(cod.begin(), cod.end(), pq[c]);
      inc(it - cod.begin(), c) = S::one();
    }
    linalg::Matrix<S> both(cod.size(), dm.cols() + inc.cols());
    for (std::size_t r = 0; r < cod.size(); ++r) {
      for (std::size_t c = 0; c < dm.cols(); ++c) both(r, c) = dm(r, c);
      for (std::size_t c = 0; c < inc.cols(); ++c) both(r, dm.cols() + c) = inc(r, c);
    }
    rep.exact_dimension = detail::safe_rank(dm) + pq.size() - detail::safe_rank(both);
  }
  rep.ddbar_rank = detail::safe_rank(detail::ddbar_matrix(pres, p, q));
  rep.holds = rep.exact_dimension == rep.ddbar_rank;
  return rep;
}

/// h[p][q] = dim(ker del ∩ ker delbar) - rank(del delbar) in bidegree (p,q).
template <Scalar S>
std::vector<std::vector<std::size_t>> bott_chern_dimensions(const StructurePresentation<S>& pres) {
  const int n = pres.rank();
  if (!pres.is_integrable()) throw std::domain_error("structure is not integrable");
  std::vector<std::vector<std::size_t>> h(n + 1, std::vector<std::size_t>(n + 1, 0));
  for (int p = 0; p <= n; ++p)
    for (int q = 0; q <= n; ++q) {
      auto dom = bidegree_basis(n, p, q);
      std::size_t kernel = dom.size();
      std::vector<Monomial> cod1 = p < n ? bidegree_basis(n, p + 1, q) : std::vector<Monomial>{};
      std::vector<Monomial> cod2 = q < n ? bidegree_basis(n, p, q + 1) : std::vector<Monomial>{};
      if (!cod1.empty() || !cod2.empty()) {
        auto m1 = operator_matrix<S>(n, dom, cod1, [&](const Form<S>& f) { return del(pres, f); });
        auto m2 = operator_matrix<S>(n, dom, cod2, [&](const Form<S>& f) { return delbar(pres, f); });
        kernel -= detail::safe_rank(vstack(m1, m2));
      }
      h[p][q] = kernel - detail::safe_rank(detail::ddbar_matrix(pres, p, q));
    }
  return h;
}

}  // namespace geowb
