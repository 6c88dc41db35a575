#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qgeom/matrix.hpp"
#include "qgeom/report.hpp"

namespace qgeom {

/// Relative singular-value cutoff for numerical rank.
inline constexpr double kRankTol = 1e-8;

enum class DistributionKind { Lambda, R, Zero, One };

std::string to_string(DistributionKind kind);
/// Accepts "lambda", "r", "zero", "one" (case-insensitive).
DistributionKind parse_distribution_kind(const std::string& text);

/// J_xi(A) = [A, xi]_-.
TangentVector jhat(const DualElement& xi, const Observable& a);
/// R_xi(A) = A o xi.
TangentVector rhat(const DualElement& xi, const Observable& a);
/// max(||J(R(A)) - R(J(A))||_F, ||J(R(A)) - [A, xi^2]_-/2||_F).
double commutation_defect(const DualElement& xi, const Observable& a);

/// Generalized Gell-Mann basis plus sqrt(2/n) I, orthonormal under Tr(AB)/2.
/// Order: for j < k the symmetric then antisymmetric off-diagonal pair, then
/// the n-1 diagonal traceless elements, then the identity.
std::vector<ComplexMatrix> hermitian_basis(std::size_t n);
/// Real coordinates c_a = Tr(E_a M)/2 in hermitian_basis(n).
std::vector<double> to_coordinates(const ComplexMatrix& m);
ComplexMatrix from_coordinates(std::span<const double> c, std::size_t n);

/// commutation_defect over random (xi, A), relative to max(1, |A| |xi|^2).
VerificationReport verify_commutation(std::size_t n, std::size_t trials, std::uint64_t seed,
                                      double tol, Execution exec = Execution::parallel,
                                      const ConventionSet& conventions = ConventionSet{});

struct DistributionBasis {
  DualElement point;
  DistributionKind kind = DistributionKind::Lambda;
  std::vector<TangentVector> basis;  // orthonormal under Tr(AB)/2
  std::size_t rank = 0;
};

/// Orthonormal basis of D_Lambda = Im J, D_R = Im R, D_0 = D_Lambda cap D_R,
/// or D_1 = D_Lambda + D_R at xi.
DistributionBasis distribution_basis(const DualElement& xi, DistributionKind kind,
                                     double rank_tol = kRankTol);

/// ||v - P v|| / max(1, ||v||) in the Tr(AB)/2 norm, P the orthogonal
/// projector onto the distribution.
double projection_residual(const DistributionBasis& d, const ComplexMatrix& v);

struct InvolutivityOptions {
  ConventionSet conventions{};
  Execution execution = Execution::parallel;
  double tol = 1e-9;
};

/// Samples points and pairs of spanning vector fields, computes their Lie
/// bracket in closed form, and measures how far the bracket leaves the
/// distribution. Spanning fields: V_A(xi) = J_xi(A) for Lambda,
/// W_A(xi) = R_xi(A) for R, Z_A(xi) = J_xi(R_xi(A)) for Zero, and both
/// families (all three bracket types) for One.
///
/// Points: distinct spectrum (gap > 1e-6) for Lambda and Zero; the stratum
/// where two eigenvalues cancel (lambda_1 = -lambda_2) for R, which is where
/// D_R drops rank; alternately generic and rank-deficient points for One.
/// For R the report passes iff a witness with residual > 10 tol is found.
VerificationReport involutivity_evidence(DistributionKind kind, std::size_t n, std::size_t trials,
                                         std::uint64_t seed, const InvolutivityOptions& opts = {});

struct OrbitInvariants {
  std::vector<double> spectrum;  // ascending; labels the unitary orbit
  std::size_t rank = 0;          // (rank, signature) labels the GL orbit
  int signature = 0;             // #positive - #negative
};

OrbitInvariants orbit_invariants(const DualElement& xi, double rank_tol = kRankTol);

}  // namespace qgeom
