#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "json.hpp"
#include "qgeom/conventions.hpp"
#include "qgeom/matrix.hpp"
#include "qgeom/report.hpp"

namespace qgeom {

inline constexpr double kStateTol = 1e-10;

/// The linear function xi -> Tr(xi A)/2 on the dual space defined by A.
struct LinearFunction {
  Observable generator;
  double operator()(const DualElement& xi) const;
};

/// Positive semidefinite, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  /// Throws DomainError unless is_state(xi, tol).
  explicit DensityMatrix(DualElement xi, double tol = kStateTol);
  const DualElement& dual() const noexcept { return xi_; }
  const ComplexMatrix& matrix() const noexcept { return xi_.matrix(); }
  std::size_t dim() const noexcept { return xi_.dim(); }

 private:
  DualElement xi_;
};

/// Tr(xi A)/2.
double hat_eval(const Observable& a, const DualElement& xi);
double hat_eval(const LinearFunction& f, const DualElement& xi);
/// Poisson tensor: Lambda(dA, dB)(xi) = hat([A,B]_-)(xi).
double lambda_eval(const Observable& a, const Observable& b, const DualElement& xi);
/// Jordan tensor: R(dA, dB)(xi) = Tr(xi (AB + BA))/2 = 2 hat(A o B)(xi).
double r_eval(const Observable& a, const Observable& b, const DualElement& xi);
/// (hat A * hat B)(xi) = Tr(xi A B)/2 = r/2 + i lambda/2.
cplx star_eval(const Observable& a, const Observable& b, const DualElement& xi);

/// AB = jordan + i * lie, with jordan = A o B and lie = [A,B]_-/2, both Hermitian:
/// the star product of two real linear functions is a complex combination of
/// two real linear functions.
struct StarGenerator {
  Observable jordan;
  Observable lie;
};
StarGenerator star_generator(const Observable& a, const Observable& b);

/// X_H(xi) = [H, xi]_-, the Hamiltonian vector field of hat(H) on the dual.
TangentVector hamiltonian_field_dual(const Observable& h, const DualElement& xi);

/// |d/dt R(dA(t), dB(t))(xi(t))| at t = 0 by central difference with step h,
/// where A, B, xi are all conjugated by exp(-i t H).
double r_invariance_defect(const Observable& h, const Observable& a, const Observable& b,
                           const DualElement& xi, double step);
/// The same derivative in closed form:
/// R([H,A]_-, B)(xi) + R(A, [H,B]_-)(xi) + R(A, B)([H,xi]_-).
double r_invariance_defect_exact(const Observable& h, const Observable& a, const Observable& b,
                                 const DualElement& xi);

/// min eigenvalue >= -tol and |Tr xi - 1| <= tol.
bool is_state(const DualElement& xi, double tol = kStateTol);
/// T^dagger T / Tr(T^dagger T) for a seeded complex Gaussian T.
DensityMatrix random_state(std::size_t n, std::uint64_t seed);

/// The spin-1/2 example: orthonormal basis {U, X, Y, Z} (w.r.t. Tr(AB)/2),
/// coordinates u, x, y, z, and the Lambda, R and star tables expressed as
/// generator matrices, i.e. entry (a, b) is the matrix G with
/// T(da, db)(xi) = Tr(xi G)/2.
///
/// R convention: R(du, dx) = 2x and R(dx, dx) = 2u. This equals the displayed
/// coordinate expression of R when the symmetrized product on mixed pairs is
/// a (x) b + b (x) a while the diagonal terms are read as plain a (x) a.
struct Su2Tables {
  std::array<std::string, 4> names{"u", "x", "y", "z"};
  std::array<Observable, 4> basis;
  std::array<std::array<ComplexMatrix, 4>, 4> lambda;
  std::array<std::array<ComplexMatrix, 4>, 4> r;
  std::array<std::array<ComplexMatrix, 4>, 4> star;

  /// Coefficients c with G = sum_a c_a basis[a].
  std::array<cplx, 4> coordinates(const ComplexMatrix& g) const;
  /// Human-readable linear combination such as "2z" or "-i x".
  std::string describe(const ComplexMatrix& g) const;
  nlohmann::json to_json() const;
};

Su2Tables su2_golden_tables();

/// Random (A, B, C, H, xi) residuals of the dual-space identities: Lambda is the
/// hat of the bracket, Lambda antisymmetric, R symmetric with R = 2 hat(A o B),
/// star = r/2 + i lambda/2, AB = jordan + i lie, Jacobi for Lambda, exact
/// R-invariance along X_H, and Tr X_H(xi) = 0. Residuals are relative to
/// max(1, product of the norms involved).
VerificationReport verify_dual_geometry(std::size_t n, std::size_t trials, std::uint64_t seed,
                                        double tol, Execution exec = Execution::parallel,
                                        const ConventionSet& conventions = ConventionSet{});

Observable pauli_x();
Observable pauli_y();
Observable pauli_z();

}  // namespace qgeom
