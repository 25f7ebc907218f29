#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geowb {

/// Process-wide absolute tolerance used by the floating-point backend.
/// Set once at startup (the CLI does this from --epsilon); defaults to 1e-12.
inline double& float_tolerance_ref() {
  static double eps = 1e-12;
  return eps;
}
inline double float_tolerance() { return float_tolerance_ref(); }
inline void set_float_tolerance(double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("tolerance must be positive");
  float_tolerance_ref() = eps;
}

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }
inline bool is_zero(double x) { return std::abs(x) <= float_tolerance(); }

/// Parses "p/q", "p" or a decimal literal such as "-0.75" / "1e-3" exactly.
inline mpq_class parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& t) {
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  if (s.find_first_of(".eE") == std::string::npos) {
    mpq_class q;
    if (s.front() == '+') s.erase(s.begin());
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + std::string(text));
    if (s.find('/') != std::string::npos && sgn(q.get_den()) == 0)
      throw std::invalid_argument("zero denominator: " + std::string(text));
    q.canonicalize();
    return q;
  }
  // Decimal with optional exponent, converted without rounding.
  std::string mant = s;
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    mant = s.substr(0, e);
    try {
      exp10 = std::stol(s.substr(e + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
  }
  bool neg = false;
  if (!mant.empty() && (mant.front() == '-' || mant.front() == '+')) {
    neg = mant.front() == '-';
    mant.erase(mant.begin());
  }
  std::string digits;
  long frac = 0;
  bool seen_dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal literal: " + std::string(text));
      seen_dot = true;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac;
    } else {
      throw std::invalid_argument("bad decimal literal: " + std::string(text));
    }
  }
  if (digits.empty()) throw std::invalid_argument("bad decimal literal: " + std::string(text));
  mpz_class num(digits, 10);
  mpz_class den = 1;
  long shift = exp10 - frac;
  mpz_class p10;
  mpz_ui_pow_ui(p10.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
  if (shift >= 0) num *= p10; else den = p10;
  mpq_class q(num, den);
  q.canonicalize();
  return neg ? mpq_class(-q) : q;
}

/// Exact element of Q[i]: a pair of arbitrary-precision rationals.
class GaussianRational {
 public:
  using real_type = mpq_class;
  static constexpr std::string_view backend_name = "exact";
  static constexpr bool is_exact = true;

  GaussianRational() = default;
  GaussianRational(int v) : re_(v), im_(0) {}  // NOLINT: integer literals convert implicitly
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT
  GaussianRational(mpq_class re, mpq_class im = 0) : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational zero() { return {}; }
  static GaussianRational one() { return GaussianRational(1); }
  static GaussianRational imag_unit() { return {mpq_class(0), mpq_class(1)}; }
  static GaussianRational from_rational(const mpq_class& re, const mpq_class& im = 0) { return {re, im}; }
  static GaussianRational from_real(const real_type& re) { return {re, 0}; }

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  GaussianRational conj() const { return {re_, -im_}; }
  /// |z|^2
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  std::complex<double> to_complex() const { return {re_.get_d(), im_.get_d()}; }

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    mpq_class d = o.norm();
    if (sgn(d) == 0) throw std::domain_error("division by zero in Q[i]");
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / d;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / d;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::string to_string() const {
    if (sgn(im_) == 0) return re_.get_str();
    auto imag_part = [](const mpq_class& v) {
      if (v == 1) return std::string("i");
      if (v == -1) return std::string("-i");
      return v.get_str() + "*i";
    };
    if (sgn(re_) == 0) return imag_part(im_);
    std::string s = re_.get_str();
    if (sgn(im_) > 0) s += "+";
    return s + imag_part(im_);
  }
  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& z) { return os << z.to_string(); }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Complex double with tolerance-aware comparisons.
class ComplexFloat {
 public:
  using real_type = double;
  static constexpr std::string_view backend_name = "float";
  static constexpr bool is_exact = false;

  ComplexFloat() = default;
  ComplexFloat(int v) : v_(static_cast<double>(v), 0.0) {}  // NOLINT
  ComplexFloat(long v) : v_(static_cast<double>(v), 0.0) {}  // NOLINT
  ComplexFloat(double re, double im = 0.0) : v_(re, im) {}
  explicit ComplexFloat(std::complex<double> v) : v_(v) {}

  static ComplexFloat zero() { return {}; }
  static ComplexFloat one() { return ComplexFloat(1.0); }
  static ComplexFloat imag_unit() { return {0.0, 1.0}; }
  static ComplexFloat from_rational(const mpq_class& re, const mpq_class& im = 0) {
    return {re.get_d(), im.get_d()};
  }
  static ComplexFloat from_real(double re) { return {re, 0.0}; }

  double real() const { return v_.real(); }
  double imag() const { return v_.imag(); }
  bool is_zero() const { return geowb::is_zero(v_.real()) && geowb::is_zero(v_.imag()); }
  bool is_real() const { return geowb::is_zero(v_.imag()); }
  ComplexFloat conj() const { return ComplexFloat(std::conj(v_)); }
  double norm() const { return std::norm(v_); }
  std::complex<double> to_complex() const { return v_; }

  ComplexFloat operator-() const { return ComplexFloat(-v_); }
  ComplexFloat& operator+=(const ComplexFloat& o) { v_ += o.v_; return *this; }
  ComplexFloat& operator-=(const ComplexFloat& o) { v_ -= o.v_; return *this; }
  ComplexFloat& operator*=(const ComplexFloat& o) { v_ *= o.v_; return *this; }
  ComplexFloat& operator/=(const ComplexFloat& o) {
    if (o.v_ == std::complex<double>(0.0, 0.0)) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }
  friend ComplexFloat operator+(ComplexFloat a, const ComplexFloat& b) { return a += b; }
  friend ComplexFloat operator-(ComplexFloat a, const ComplexFloat& b) { return a -= b; }
  friend ComplexFloat operator*(ComplexFloat a, const ComplexFloat& b) { return a *= b; }
  friend ComplexFloat operator/(ComplexFloat a, const ComplexFloat& b) { return a /= b; }
  friend bool operator==(const ComplexFloat& a, const ComplexFloat& b) { return (a - b).is_zero(); }

  std::string to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << v_.real();
    if (v_.imag() != 0.0) os << (v_.imag() < 0 ? "" : "+") << v_.imag() << "i";
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const ComplexFloat& z) { return os << z.to_string(); }

 private:
  std::complex<double> v_{0.0, 0.0};
};

template <typename S>
concept Scalar = requires(S a, S b, const mpq_class& q) {
  typename S::real_type;
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a.conj() } -> std::convertible_to<S>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.to_complex() } -> std::convertible_to<std::complex<double>>;
  { S::zero() } -> std::convertible_to<S>;
  { S::one() } -> std::convertible_to<S>;
  { S::imag_unit() } -> std::convertible_to<S>;
  { S::from_rational(q, q) } -> std::convertible_to<S>;
};

inline bool is_zero(const GaussianRational& z) { return z.is_zero(); }
inline bool is_zero(const ComplexFloat& z) { return z.is_zero(); }

/// Builds re + i*im in backend S from exact rationals.
template <Scalar S>
S make_scalar(const mpq_class& re, const mpq_class& im = 0) {
  return S::from_rational(re, im);
}

/// Real value of a backend's real_type as a double.
inline double to_double(const mpq_class& q) { return q.get_d(); }
inline double to_double(double d) { return d; }

}  // namespace geowb
