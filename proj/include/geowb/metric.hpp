#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "geowb/operators.hpp"
#include "geowb/presentation.hpp"

namespace geowb {

/// Hermitian metric given by its coefficient matrix H (H = H*) in the coframe.
/// The fundamental form is omega = (i/2) sum H_jk phi^j ^ conj(phi^k).
template <Scalar S>
class HermitianMetric {
 public:
  HermitianMetric() = default;
  HermitianMetric(int n, std::vector<std::vector<S>> h) : n_(n), h_(std::move(h)) {
    if (n < 1 || n > kMaxRank) throw std::invalid_argument("rank out of range");
    if (static_cast<int>(h_.size()) != n) throw std::invalid_argument("metric matrix must be n x n");
    for (const auto& row : h_)
      if (static_cast<int>(row.size()) != n) throw std::invalid_argument("metric matrix must be n x n");
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (!(h_[j][k] == h_[k][j].conj())) throw std::invalid_argument("metric matrix is not Hermitian");
  }

  static HermitianMetric identity(int n) {
    std::vector<std::vector<S>> h(n, std::vector<S>(n, S::zero()));
    for (int j = 0; j < n; ++j) h[j][j] = S::one();
    return HermitianMetric(n, std::move(h));
  }

  static HermitianMetric diagonal(const std::vector<S>& d) {
    const int n = static_cast<int>(d.size());
    std::vector<std::vector<S>> h(n, std::vector<S>(n, S::zero()));
    for (int j = 0; j < n; ++j) h[j][j] = d[j];
    return HermitianMetric(n, std::move(h));
  }

  /// Rank-3 metric from the letters r^2, s^2, t^2 (real) and u, v, w, with
  /// u = i H12, v = i H13, w = i H23.
  static HermitianMetric from_letters(const S& r2, const S& s2, const S& t2, const S& u, const S& v, const S& w) {
    const S minus_i = -S::imag_unit();
    std::vector<std::vector<S>> h(3, std::vector<S>(3, S::zero()));
    h[0][0] = r2;
    h[1][1] = s2;
    h[2][2] = t2;
    h[0][1] = minus_i * u;
    h[0][2] = minus_i * v;
    h[1][2] = minus_i * w;
    h[1][0] = h[0][1].conj();
    h[2][0] = h[0][2].conj();
    h[2][1] = h[1][2].conj();
    return HermitianMetric(3, std::move(h));
  }

  /// (r^2, s^2, t^2, u, v, w) for a rank-3 metric.
  std::array<S, 6> letters() const {
    if (n_ != 3) throw std::invalid_argument("metric letters are defined for rank 3 only");
    const S i = S::imag_unit();
    return {h_[0][0], h_[1][1], h_[2][2], i * h_[0][1], i * h_[0][2], i * h_[1][2]};
  }

  int rank() const { return n_; }
  const std::vector<std::vector<S>>& matrix() const { return h_; }
  const S& operator()(int j, int k) const { return h_[j][k]; }

  bool is_diagonal() const {
    for (int j = 0; j < n_; ++j)
      for (int k = 0; k < n_; ++k)
        if (j != k && !h_[j][k].is_zero()) return false;
    return true;
  }

  /// Leading principal minors det(H[0..k, 0..k]), k = 1..n (real for Hermitian H).
  std::vector<S> leading_minors() const {
    std::vector<S> out;
    for (int k = 1; k <= n_; ++k) {
      linalg::Matrix<S> m(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) m(a, b) = h_[a][b];
      out.push_back(linalg::determinant(m));
    }
    return out;
  }

  /// Sylvester's criterion; exact on the exact backend.
  bool is_positive_definite() const {
    for (const auto& d : leading_minors()) {
      if (!d.is_real()) return false;
      if constexpr (S::is_exact) {
        if (sgn(d.real()) <= 0) return false;
      } else {
        if (d.is_zero() || d.real() <= 0.0) return false;
      }
    }
    return true;
  }

 private:
  int n_ = 0;
  std::vector<std::vector<S>> h_;
};

template <Scalar S>
Form<S> fundamental_form(const HermitianMetric<S>& m) {
  if (!m.is_positive_definite()) throw std::invalid_argument("metric is not positive definite");
  const int n = m.rank();
  const S half_i = S::imag_unit() / S(2);
  Form<S> omega(n);
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k)
      if (!m(j - 1, k - 1).is_zero())
        omega += Form<S>::wedge_of(n, {holo(j), anti(k)}, half_i * m(j - 1, k - 1));
  return omega;
}

/// k-fold wedge power; the 0th power is the unit 1.
template <Scalar S>
Form<S> form_power(const Form<S>& f, int k) {
  if (k < 0) throw std::invalid_argument("negative power");
  Form<S> out = Form<S>::one(f.rank());
  for (int j = 0; j < k; ++j) out = wedge(out, f);
  return out;
}

struct MetricFlag {
  bool value = false;
  std::string evidence;
};

struct MetricReport {
  MetricFlag kahler, skt, astheno, balanced, gauduchon, strongly_gauduchon;
  bool tolerance_dependent = false;
  std::vector<std::string> notes;
};

namespace detail {

template <Scalar S>
MetricFlag zero_flag(const Form<S>& f, const std::string& what) {
  MetricFlag flag;
  flag.value = f.is_zero();
  flag.evidence = what + (flag.value ? " = 0" : " = " + f.to_string());
  return flag;
}

}  // namespace detail

/// Whether del(omega^{n-1}) is delbar-exact among invariant (n, n-2)-forms.
template <Scalar S>
bool is_delbar_exact_top(const StructurePresentation<S>& pres, const Form<S>& target) {
  const int n = pres.rank();
  if (target.is_zero()) return true;
  if (n < 2) return false;
  auto dom = bidegree_basis(n, n, n - 2);
  auto cod = bidegree_basis(n, n, n - 1);
  auto mat = operator_matrix<S>(n, dom, cod, [&](const Form<S>& g) { return delbar(pres, g); });
  return in_image(mat, coordinates(target, cod));
}

/// Evaluates the six metric conditions for omega on the given complex structure.
template <Scalar S>
MetricReport classify(const StructurePresentation<S>& pres, const HermitianMetric<S>& metric) {
  if (metric.rank() != pres.rank()) throw std::invalid_argument("metric rank differs from presentation rank");
  const int n = pres.rank();
  MetricReport rep;
  const Form<S> omega = fundamental_form(metric);
  auto ddbar = [&](const Form<S>& f) { return del(pres, delbar(pres, f)); };

  rep.kahler = detail::zero_flag(differential(pres, omega), "d(omega)");
  rep.skt = detail::zero_flag(ddbar(omega), "ddbar(omega)");
  rep.astheno = detail::zero_flag(ddbar(form_power(omega, std::max(n - 2, 0))), "ddbar(omega^{n-2})");
  const Form<S> top = form_power(omega, n - 1);
  rep.balanced = detail::zero_flag(differential(pres, top), "d(omega^{n-1})");
  rep.gauduchon = detail::zero_flag(ddbar(top), "ddbar(omega^{n-1})");
  const Form<S> dtop = del(pres, top);
  rep.strongly_gauduchon.value = is_delbar_exact_top(pres, dtop);
  rep.strongly_gauduchon.evidence = dtop.is_zero()
                                        ? "del(omega^{n-1}) = 0"
                                        : std::string("del(omega^{n-1}) is ") +
                                              (rep.strongly_gauduchon.value ? "" : "not ") +
                                              "delbar of an invariant (n,n-2)-form";
  rep.tolerance_dependent = !S::is_exact;
  if (rep.tolerance_dependent) rep.notes.push_back("float backend: every flag is decided up to the configured tolerance");
  if (n == 3)
    rep.notes.push_back("metric letters: r^2 = H11, s^2 = H22, t^2 = H33, u = i*H12, v = i*H13, w = i*H23");
  return rep;
}

}  // namespace geowb
