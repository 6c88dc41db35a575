#pragma once

#include <string>

namespace qgeom {

/// Sign and normalization conventions shared by every module. Immutable;
/// recorded verbatim in every VerificationReport.
///
///  - Lie bracket:       [A,B]_- = -i(AB - BA)
///  - Jordan product:    A o B = (AB + BA)/2
///  - pairing:           hat(A)(xi) = Tr(xi A)/2, xi Hermitian
///  - star product:      (hat A * hat B)(xi) = Tr(xi A B)/2
///  - associator:        (AoB)oC - Ao(BoC) = (1/4)[[A,C]_-,B]_-   (constant 1)
///  - dual flow:         d xi/dt = [H, xi]_- / hbar   (von Neumann)
///  - Heisenberg flow:   dA/dt = -[H, A]_- / hbar     (A(t) = U^dagger A U)
///  - Hamiltonian field: i_X omega = df, X_f = -J grad f, so X_{f_H} = -i H psi
///  - dispersion:        G(de_A, de_A) = kappa * var_A / <psi|psi>, kappa = 4
class ConventionSet {
 public:
  explicit ConventionSet(double hbar = 1.0);

  double hbar() const noexcept { return hbar_; }
  /// Constant in the associator identity under this bracket.
  static constexpr double associator_constant() { return 1.0; }
  /// G(de_A, de_A) / dispersion for unit vectors, frozen from the n = 2
  /// finite-difference determination in the test suite.
  static constexpr double dispersion_kappa() { return 4.0; }
  /// Sign s in dA/dt = s [H, A]_- / hbar for the Heisenberg picture.
  static constexpr int heisenberg_sign() { return -1; }
  /// Sign s in d xi/dt = s [H, xi]_- / hbar for the von Neumann picture.
  static constexpr int dual_flow_sign() { return +1; }

  const std::string& description() const noexcept { return description_; }

 private:
  double hbar_;
  std::string description_;
};

}  // namespace qgeom
