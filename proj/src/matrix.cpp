#include "qgeom/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qgeom/errors.hpp"

namespace qgeom {

ComplexMatrix::ComplexMatrix(std::size_t n, std::vector<cplx> entries)
    : n_(n), data_(std::move(entries)) {
  if (data_.size() != n_ * n_) {
    throw DimensionError("ComplexMatrix: expected " + std::to_string(n_ * n_) +
                         " entries, got " + std::to_string(data_.size()));
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : n_(rows.size()) {
  data_.reserve(n_ * n_);
  for (const auto& row : rows) {
    if (row.size() != n_) throw DimensionError("ComplexMatrix: matrix is not square");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](const cplx& z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(n_, rhs.n_, "matrix +");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(n_, rhs.n_, "matrix -");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b, Execution exec) {
  require_same_dim(a.dim(), b.dim(), "matrix product");
  ComplexMatrix c(a.dim());
  if (exec == Execution::parallel) {
    kernels::matmul_parallel(a.dim(), a.data(), b.data(), c.data());
  } else {
    kernels::matmul_serial(a.dim(), a.data(), b.data(), c.data());
  }
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  return multiply(a, b,
                  a.dim() >= kernels::kParallelMatmulThreshold ? Execution::parallel
                                                               : Execution::serial);
}

double distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "distance");
  double s = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) s += std::norm(a.data()[k] - b.data()[k]);
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  double defect = 0.0;
  const std::size_t n = m.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) defect += std::norm(m(i, j) - std::conj(m(j, i)));
  return std::sqrt(defect) <= tol * std::max(1.0, m.frobenius_norm());
}

// --- StateVector -----------------------------------------------------------

StateVector StateVector::basis(std::size_t n, std::size_t k) {
  StateVector v(n);
  v[k] = 1.0;
  return v;
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& z : amps_) s += std::norm(z);
  return s;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

StateVector StateVector::normalized() const {
  const double nrm = norm();
  if (nrm == 0.0) throw DomainError("StateVector::normalized: zero vector");
  return (1.0 / nrm) * *this;
}

StateVector& StateVector::operator+=(const StateVector& rhs) {
  require_same_dim(dim(), rhs.dim(), "vector +");
  for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] += rhs.amps_[k];
  return *this;
}

StateVector& StateVector::operator-=(const StateVector& rhs) {
  require_same_dim(dim(), rhs.dim(), "vector -");
  for (std::size_t k = 0; k < amps_.size(); ++k) amps_[k] -= rhs.amps_[k];
  return *this;
}

StateVector& StateVector::operator*=(cplx s) {
  for (auto& z : amps_) z *= s;
  return *this;
}

StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
StateVector operator*(cplx s, StateVector a) { return a *= s; }

StateVector operator*(const ComplexMatrix& a, const StateVector& x) {
  require_same_dim(a.dim(), x.dim(), "matrix-vector product");
  StateVector y(x.dim());
  kernels::matvec_serial(a.dim(), a.data(), x.amplitudes(), y.amplitudes());
  return y;
}

cplx inner(const StateVector& a, const StateVector& b) {
  require_same_dim(a.dim(), b.dim(), "inner product");
  cplx s{};
  for (std::size_t k = 0; k < a.dim(); ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double distance(const StateVector& a, const StateVector& b) { return (a - b).norm(); }

namespace detail {

template <class Tag>
HermitianMatrix<Tag>::HermitianMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (!is_hermitian(m_, tol)) throw DomainError("matrix is not Hermitian within tolerance");
}

template class HermitianMatrix<ObservableTag>;
template class HermitianMatrix<DualTag>;
template class HermitianMatrix<TangentTag>;

}  // namespace detail
}  // namespace qgeom
