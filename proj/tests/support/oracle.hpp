#pragma once

// Test-only oracles. Nothing here calls the library's products, eigensolver
// or propagators, so the checks below stay independent of the code under test.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "qgeom/matrix.hpp"

namespace oracle {

using qgeom::ComplexMatrix;
using qgeom::cplx;
using qgeom::StateVector;

inline ComplexMatrix mul(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s{};
      for (std::size_t k = 0; k < n; ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXcd e(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      e(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(static_cast<std::size_t>(e.rows()));
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = e(i, j);
  return m;
}

/// Ascending eigenvalues from Eigen's Householder tridiagonal + QL solver.
inline std::vector<double> eigenvalues(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(m), Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(es.eigenvalues().size()));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = es.eigenvalues()(static_cast<Eigen::Index>(k));
  return out;
}

/// exp(-i t A / hbar) by Eigen's dense eigendecomposition.
inline ComplexMatrix propagator(const ComplexMatrix& a, double t, double hbar = 1.0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(a));
  const auto& v = es.eigenvectors();
  Eigen::VectorXcd ph(v.cols());
  for (Eigen::Index k = 0; k < v.cols(); ++k) ph(k) = std::polar(1.0, -t * es.eigenvalues()(k) / hbar);
  return from_eigen(v * ph.asDiagonal() * v.adjoint());
}

/// Central-difference gradient packed as d/dq + i d/dp.
inline StateVector fd_gradient(const std::function<double(const StateVector&)>& f,
                               const StateVector& psi, double h = 1e-6) {
  StateVector g(psi.dim());
  for (std::size_t k = 0; k < psi.dim(); ++k) {
    StateVector a = psi, b = psi;
    a[k] += h;
    b[k] -= h;
    const double dq = (f(a) - f(b)) / (2 * h);
    a = psi;
    b = psi;
    a[k] += cplx{0, h};
    b[k] -= cplx{0, h};
    const double dp = (f(a) - f(b)) / (2 * h);
    g[k] = {dq, dp};
  }
  return g;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace oracle
