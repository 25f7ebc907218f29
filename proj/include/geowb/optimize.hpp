#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <functional>

namespace geowb {

/// f(x, grad) returns the value and fills the gradient.
using Objective = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

/// BFGS with Armijo backtracking; x is updated in place, the final value returned.
inline double bfgs_minimize(const Objective& f, Eigen::VectorXd& x, int max_iter = 400) {
  const Eigen::Index dim = x.size();
  Eigen::VectorXd g, gn;
  double fx = f(x, g);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(dim, dim);
  for (int it = 0; it < max_iter; ++it) {
    if (!std::isfinite(fx) || g.norm() < 1e-13) break;
    Eigen::VectorXd dir = -H * g;
    if (dir.dot(g) >= 0) {
      H.setIdentity();
      dir = -g;
    }
    double step = 1.0, fn = fx;
    Eigen::VectorXd xn;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      xn = x + step * dir;
      fn = f(xn, gn);
      if (std::isfinite(fn) && fn <= fx + 1e-4 * step * dir.dot(g)) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    Eigen::VectorXd s = xn - x, y = gn - g;
    const double sy = s.dot(y);
    if (sy > 1e-300) {
      const double rho = 1.0 / sy;
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    const double improvement = fx - fn;
    x = xn;
    fx = fn;
    g = gn;
    if (improvement >= 0 && improvement < 1e-18) break;
  }
  return fx;
}

}  // namespace geowb
