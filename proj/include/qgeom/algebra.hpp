#pragma once

#include <cstdint>
#include <functional>

#include "qgeom/conventions.hpp"
#include "qgeom/matrix.hpp"
#include "qgeom/report.hpp"

namespace qgeom {

/// [A,B]_- = -i(AB - BA). Hermitian and antisymmetric.
Observable lie_bracket(const Observable& a, const Observable& b);
/// A o B = (AB + BA)/2. Hermitian and commutative.
Observable jordan_product(const Observable& a, const Observable& b);
/// <A,B> = Tr(AB)/2.
double trace_form(const Observable& a, const Observable& b);
/// (A o B) o C - A o (B o C).
Observable associator_defect(const Observable& a, const Observable& b, const Observable& c);

// Matrix-level forms, used where intermediate results are not yet labelled.
ComplexMatrix lie_bracket(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix jordan_product(const ComplexMatrix& a, const ComplexMatrix& b);

using BracketFn = std::function<ComplexMatrix(const ComplexMatrix&, const ComplexMatrix&)>;

struct JordanLieOptions {
  ConventionSet conventions{};
  Execution execution = Execution::parallel;
  /// Replaces [.,.]_- throughout the suite. Test hook for injecting a known
  /// violation; leave empty for the real bracket.
  BracketFn bracket{};
};

/// Random-triple residuals of the Jordan-Lie identities: antisymmetry, Jacobi,
/// Jordan commutativity, Jordan identity, both invariances of the trace form,
/// the Leibniz rule and the associator identity. Residuals are relative to
/// max(1, product of the Frobenius norms of the factors involved).
VerificationReport verify_jordan_lie(std::size_t n, std::size_t trials, std::uint64_t seed,
                                     double tol, const JordanLieOptions& opts = {});

}  // namespace qgeom
