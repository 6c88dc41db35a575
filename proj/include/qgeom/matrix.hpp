#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "qgeom/kernels.hpp"

namespace qgeom {

/// Default relative tolerances for the Hermitian, eigen and unitary checks.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kEigenTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

/// Square n x n complex matrix, row-major, value semantics.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}
  /// Throws DimensionError unless entries.size() == n*n.
  ComplexMatrix(std::size_t n, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return n_; }
  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool all_finite() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
/// Matrix product; dispatches to the parallel kernel for large n.
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b, Execution exec);

/// ||a - b||_F.
double distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// true iff ||M - M^dagger||_F <= tol * max(1, ||M||_F). A ComplexMatrix is
/// square by construction; ragged input is rejected by its constructors.
bool is_hermitian(const ComplexMatrix& m, double tol = kHermitianTol);

/// Element of C^n with its realification q = Re(psi), p = Im(psi).
class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t n) : amps_(n) {}
  explicit StateVector(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {}
  StateVector(std::initializer_list<cplx> amplitudes) : amps_(amplitudes) {}

  static StateVector basis(std::size_t n, std::size_t k);

  std::size_t dim() const noexcept { return amps_.size(); }
  cplx& operator[](std::size_t k) { return amps_[k]; }
  const cplx& operator[](std::size_t k) const { return amps_[k]; }
  std::span<const cplx> amplitudes() const noexcept { return amps_; }
  std::span<cplx> amplitudes() noexcept { return amps_; }

  double q(std::size_t k) const { return amps_[k].real(); }
  double p(std::size_t k) const { return amps_[k].imag(); }

  double norm() const;
  double norm_squared() const;
  StateVector normalized() const;

  StateVector& operator+=(const StateVector& rhs);
  StateVector& operator-=(const StateVector& rhs);
  StateVector& operator*=(cplx s);

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  std::vector<cplx> amps_;
};

StateVector operator+(StateVector a, const StateVector& b);
StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(cplx s, StateVector a);
StateVector operator*(const ComplexMatrix& a, const StateVector& x);

/// <a|b> = sum conj(a_k) b_k.
cplx inner(const StateVector& a, const StateVector& b);
double distance(const StateVector& a, const StateVector& b);

// Hermitian matrices play three roles (observable, point of the dual space,
// tangent vector at such a point). They share storage but are distinct types.
namespace detail {

template <class Tag>
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  /// Throws DomainError unless m is Hermitian within tol.
  explicit HermitianMatrix(ComplexMatrix m, double tol = kHermitianTol);

  /// Wraps a matrix that is Hermitian by construction.
  static HermitianMatrix unchecked(ComplexMatrix m) {
    HermitianMatrix h;
    h.m_ = std::move(m);
    return h;
  }

  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::size_t dim() const noexcept { return m_.dim(); }
  double frobenius_norm() const { return m_.frobenius_norm(); }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  ComplexMatrix m_;
};

struct ObservableTag {};
struct DualTag {};
struct TangentTag {};

}  // namespace detail

using Observable = detail::HermitianMatrix<detail::ObservableTag>;
using DualElement = detail::HermitianMatrix<detail::DualTag>;
using TangentVector = detail::HermitianMatrix<detail::TangentTag>;

/// Re-labels a Hermitian matrix in another role; the matrix is unchanged.
template <class To, class From>
To as(const From& h) {
  return To::unchecked(h.matrix());
}

}  // namespace qgeom
