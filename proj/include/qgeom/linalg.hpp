#pragma once

#include <vector>

#include "qgeom/matrix.hpp"

namespace qgeom {

/// A = V diag(eigenvalues) V^dagger, eigenvalues ascending.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;  // orthonormal columns

  ComplexMatrix reconstruct() const;
  /// Orthogonal projector onto the span of eigenvectors whose eigenvalue is
  /// within `cluster_tol` of `value`. Used to compare degenerate eigenspaces.
  ComplexMatrix eigenspace_projector(double value, double cluster_tol) const;
};

struct JacobiOptions {
  double tol = kEigenTol;   // relative off-diagonal target
  int max_sweeps = 100;
};

/// Cyclic complex Jacobi rotations. Ties in the sorted spectrum keep the
/// original column order. Throws NumericalError (carrying the off-diagonal
/// residual) if max_sweeps is exhausted.
SpectralDecomposition eig_hermitian(const ComplexMatrix& a, JacobiOptions opts = {});
SpectralDecomposition eig_hermitian(const Observable& a, JacobiOptions opts = {});

/// exp(-i t A / hbar) via the spectral decomposition of A.
ComplexMatrix unitary_exp(const Observable& a, double t, double hbar = 1.0);
ComplexMatrix unitary_exp(const SpectralDecomposition& spectrum, double t, double hbar = 1.0);

/// ||U^dagger U - I||_F.
double unitarity_defect(const ComplexMatrix& u);

/// U A U^dagger.
ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& a);

}  // namespace qgeom
