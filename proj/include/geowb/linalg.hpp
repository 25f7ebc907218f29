#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "geowb/scalar.hpp"

namespace geowb::linalg {

// Field helpers for the four coefficient types used by the library.
inline double magnitude(const mpq_class& x) { return sgn(x) == 0 ? 0.0 : 1.0; }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const GaussianRational& x) { return x.is_zero() ? 0.0 : 1.0; }
inline double magnitude(const ComplexFloat& x) { return std::sqrt(x.norm()); }

template <typename F>
inline constexpr bool exact_field_v = std::is_same_v<F, mpq_class> || std::is_same_v<F, GaussianRational>;

template <typename F>
F field_zero() {
  if constexpr (std::is_same_v<F, mpq_class>) return mpq_class(0);
  else if constexpr (std::is_same_v<F, double>) return 0.0;
  else return F::zero();
}

template <typename F>
F field_one() {
  if constexpr (std::is_same_v<F, mpq_class>) return mpq_class(1);
  else if constexpr (std::is_same_v<F, double>) return 1.0;
  else return F::one();
}

template <typename F>
bool field_is_zero(const F& x) {
  return geowb::is_zero(x);
}

/// Row-major dense matrix.
template <typename F>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, field_zero<F>()) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  F& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const F& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<F> column(std::size_t c) const {
    std::vector<F> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

  /// Stacks columns given as vectors of equal length.
  static Matrix from_columns(const std::vector<std::vector<F>>& cols, std::size_t rows) {
    Matrix m(rows, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
      if (cols[c].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
    }
    return m;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<F> data_;
};

template <typename F>
struct Echelon {
  Matrix<F> reduced;               // reduced row echelon form
  std::vector<std::size_t> pivots; // pivot column of each nonzero row
};

/// Gauss-Jordan elimination. Exact fields take the first nonzero pivot; float
/// fields use partial pivoting and treat entries within the tolerance as zero.
template <typename F>
Echelon<F> rref(Matrix<F> m) {
  Echelon<F> out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    double best_mag = 0.0;
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (field_is_zero(m(r, col))) continue;
      double mag = magnitude(m(r, col));
      if (best == m.rows() || (!exact_field_v<F> && mag > best_mag)) {
        best = r;
        best_mag = mag;
        if constexpr (exact_field_v<F>) break;
      }
    }
    if (best == m.rows()) continue;
    m.swap_rows(row, best);
    F inv = field_one<F>() / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c)
      if (!field_is_zero(m(row, c))) m(row, c) = m(row, c) * inv;
    m(row, col) = field_one<F>();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || field_is_zero(m(r, col))) continue;
      F factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (field_is_zero(m(row, c))) continue;
        m(r, c) = m(r, c) - factor * m(row, c);
      }
      m(r, col) = field_zero<F>();
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.reduced = std::move(m);
  return out;
}

template <typename F>
std::size_t rank(const Matrix<F>& m) {
  return rref(m).pivots.size();
}

/// Basis of {x : m x = 0}.
template <typename F>
std::vector<std::vector<F>> nullspace(const Matrix<F>& m) {
  auto e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::vector<F>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<F> v(m.cols(), field_zero<F>());
    v[free] = field_one<F>();
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = F(field_zero<F>() - e.reduced(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <typename F>
struct AffineSolution {
  std::vector<F> particular;
  std::vector<std::vector<F>> kernel;
};

/// Solves m x = rhs; nullopt when inconsistent.
template <typename F>
std::optional<AffineSolution<F>> solve(const Matrix<F>& m, const std::vector<F>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  Matrix<F> aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  auto e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  AffineSolution<F> sol;
  sol.particular.assign(m.cols(), field_zero<F>());
  for (std::size_t r = 0; r < e.pivots.size(); ++r) sol.particular[e.pivots[r]] = e.reduced(r, m.cols());
  sol.kernel = nullspace(m);
  return sol;
}

/// Basis (as columns) of the column space of m.
template <typename F>
std::vector<std::vector<F>> column_space(const Matrix<F>& m) {
  auto e = rref(m);
  std::vector<std::vector<F>> out;
  for (auto p : e.pivots) out.push_back(m.column(p));
  return out;
}

template <typename F>
std::vector<F> multiply(const Matrix<F>& m, const std::vector<F>& x) {
  if (x.size() != m.cols()) throw std::invalid_argument("multiply: length mismatch");
  std::vector<F> y(m.rows(), field_zero<F>());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!field_is_zero(m(r, c)) && !field_is_zero(x[c])) y[r] = y[r] + m(r, c) * x[c];
  return y;
}

/// Determinant by elimination.
template <typename F>
F determinant(Matrix<F> m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
  F det = field_one<F>();
  const std::size_t n = m.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t best = n;
    double best_mag = 0.0;
    for (std::size_t r = col; r < n; ++r) {
      if (field_is_zero(m(r, col))) continue;
      double mag = magnitude(m(r, col));
      if (best == n || (!exact_field_v<F> && mag > best_mag)) {
        best = r;
        best_mag = mag;
        if constexpr (exact_field_v<F>) break;
      }
    }
    if (best == n) return field_zero<F>();
    if (best != col) {
      m.swap_rows(best, col);
      det = field_zero<F>() - det;
    }
    det = det * m(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (field_is_zero(m(r, col))) continue;
      F factor = m(r, col) / m(col, col);
      for (std::size_t c = col; c < n; ++c) m(r, c) = m(r, c) - factor * m(col, c);
    }
  }
  return det;
}

}  // namespace geowb::linalg
