#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

#include "geowb/form.hpp"
#include "geowb/linalg.hpp"

namespace geowb {

/// Coordinates of f in the given monomial basis; throws if f has a term outside it.
template <Scalar S>
std::vector<S> coordinates(const Form<S>& f, const std::vector<Monomial>& basis) {
  std::map<Monomial, std::size_t> pos;
  for (std::size_t k = 0; k < basis.size(); ++k) pos.emplace(basis[k], k);
  std::vector<S> v(basis.size(), S::zero());
  for (const auto& [m, c] : f.terms()) {
    auto it = pos.find(m);
    if (it == pos.end()) throw std::invalid_argument("form has a term " + monomial_label(m) + " outside the basis");
    v[it->second] = c;
  }
  return v;
}

template <Scalar S>
Form<S> from_coordinates(int n, const std::vector<Monomial>& basis, const std::vector<S>& v) {
  if (v.size() != basis.size()) throw std::invalid_argument("coordinate vector length mismatch");
  Form<S> f(n);
  for (std::size_t k = 0; k < basis.size(); ++k) f.add_term(basis[k], v[k]);
  return f;
}

/// Matrix of a linear operator on forms between two monomial bases (columns = images).
template <Scalar S>
linalg::Matrix<S> operator_matrix(int n, const std::vector<Monomial>& domain, const std::vector<Monomial>& codomain,
                                  const std::function<Form<S>(const Form<S>&)>& op) {
  linalg::Matrix<S> m(codomain.size(), domain.size());
  for (std::size_t c = 0; c < domain.size(); ++c) {
    auto col = coordinates(op(Form<S>::monomial(n, domain[c])), codomain);
    for (std::size_t r = 0; r < codomain.size(); ++r) m(r, c) = col[r];
  }
  return m;
}

/// Stacks two matrices with the same column count.
template <typename F>
linalg::Matrix<F> vstack(const linalg::Matrix<F>& a, const linalg::Matrix<F>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  linalg::Matrix<F> m(a.rows() + b.rows(), a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
  for (std::size_t r = 0; r < b.rows(); ++r)
    for (std::size_t c = 0; c < b.cols(); ++c) m(a.rows() + r, c) = b(r, c);
  return m;
}

/// Whether target lies in the image of the operator with matrix m.
template <Scalar S>
bool in_image(const linalg::Matrix<S>& m, const std::vector<S>& target) {
  if (m.cols() == 0) {
    for (const auto& t : target)
      if (!t.is_zero()) return false;
    return true;
  }
  return linalg::solve(m, target).has_value();
}

}  // namespace geowb
