#include "qgeom/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgeom/errors.hpp"

namespace qgeom {
namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

// Annihilates a(p,q) with W = diag(1, e^{-i phi}) * [[c, s], [-s, c]] where
// a(p,q) = |a(p,q)| e^{i phi}:  a <- W^dagger a W,  v <- v W.
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double tau = (aqq - app) / (2.0 * mag);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const cplx sp = s * std::conj(phase);  // s e^{-i phi}
  const cplx cp = c * std::conj(phase);  // c e^{-i phi}

  const std::size_t n = a.dim();
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - sp * akq;
    a(k, q) = s * akp + cp * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - std::conj(sp) * aqk;
    a(q, k) = s * apk + std::conj(cp) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - sp * vkq;
    v(k, q) = s * vkp + cp * vkq;
  }
}

}  // namespace

SpectralDecomposition eig_hermitian(const ComplexMatrix& input, JacobiOptions opts) {
  const std::size_t n = input.dim();
  ComplexMatrix a = input;
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = input.frobenius_norm();

  double off = off_diagonal_norm(a);
  const double floor = 1e-15 * scale;
  for (int sweep = 0; sweep < opts.max_sweeps && off > floor; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) rotate(a, v, p, q);
    off = off_diagonal_norm(a);
  }
  if (off > opts.tol * scale) {
    throw NumericalError("eig_hermitian: Jacobi sweeps did not converge", off);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() < a(j, j).real();
  });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

SpectralDecomposition eig_hermitian(const Observable& a, JacobiOptions opts) {
  return eig_hermitian(a.matrix(), opts);
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s{};
      for (std::size_t k = 0; k < n; ++k)
        s += eigenvectors(i, k) * eigenvalues[k] * std::conj(eigenvectors(j, k));
      r(i, j) = s;
    }
  return r;
}

ComplexMatrix SpectralDecomposition::eigenspace_projector(double value, double cluster_tol) const {
  const std::size_t n = eigenvalues.size();
  ComplexMatrix proj(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (std::abs(eigenvalues[k] - value) > cluster_tol) continue;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        proj(i, j) += eigenvectors(i, k) * std::conj(eigenvectors(j, k));
  }
  return proj;
}

ComplexMatrix unitary_exp(const SpectralDecomposition& spectrum, double t, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("unitary_exp: hbar must be positive");
  const std::size_t n = spectrum.eigenvalues.size();
  if (t == 0.0) return ComplexMatrix::identity(n);
  std::vector<cplx> phases(n);
  for (std::size_t k = 0; k < n; ++k)
    phases[k] = std::polar(1.0, -t * spectrum.eigenvalues[k] / hbar);
  const ComplexMatrix& v = spectrum.eigenvectors;
  ComplexMatrix u(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s{};
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * phases[k] * std::conj(v(j, k));
      u(i, j) = s;
    }
  return u;
}

ComplexMatrix unitary_exp(const Observable& a, double t, double hbar) {
  if (!(hbar > 0.0)) throw DomainError("unitary_exp: hbar must be positive");
  return unitary_exp(eig_hermitian(a), t, hbar);
}

double unitarity_defect(const ComplexMatrix& u) {
  return distance(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& a) {
  return u * a * u.adjoint();
}

}  // namespace qgeom
