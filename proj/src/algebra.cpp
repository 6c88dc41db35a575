#include "qgeom/algebra.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qgeom/errors.hpp"
#include "qgeom/random.hpp"

namespace qgeom {
namespace {

constexpr cplx kI{0.0, 1.0};

double scale_of(std::initializer_list<double> norms) {
  double p = 1.0;
  for (double x : norms) p *= x;
  return std::max(1.0, p);
}

double trace_form(const ComplexMatrix& a, const ComplexMatrix& b) {
  return 0.5 * (a * b).trace().real();
}

double hermitian_defect(const ComplexMatrix& m) {
  return distance(m, m.adjoint()) / std::max(1.0, m.frobenius_norm());
}

constexpr double kClosureTol = 1e-12;

constexpr std::array<const char*, 9> kChecks = {
    "antisymmetry",        "jacobi",      "jordan_commutativity",
    "jordan_identity",     "lie_invariance", "jordan_invariance",
    "leibniz",             "associator",  "closure_hermitian"};

}  // namespace

ComplexMatrix lie_bracket(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "lie_bracket");
  return -kI * (a * b - b * a);
}

ComplexMatrix jordan_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a.dim(), b.dim(), "jordan_product");
  return 0.5 * (a * b + b * a);
}

Observable lie_bracket(const Observable& a, const Observable& b) {
  return Observable::unchecked(lie_bracket(a.matrix(), b.matrix()));
}

Observable jordan_product(const Observable& a, const Observable& b) {
  return Observable::unchecked(jordan_product(a.matrix(), b.matrix()));
}

double trace_form(const Observable& a, const Observable& b) {
  require_same_dim(a.dim(), b.dim(), "trace_form");
  return trace_form(a.matrix(), b.matrix());
}

Observable associator_defect(const Observable& a, const Observable& b, const Observable& c) {
  require_same_dim(a.dim(), b.dim(), "associator_defect");
  require_same_dim(a.dim(), c.dim(), "associator_defect");
  const ComplexMatrix& A = a.matrix();
  const ComplexMatrix& B = b.matrix();
  const ComplexMatrix& C = c.matrix();
  return Observable::unchecked(jordan_product(jordan_product(A, B), C) -
                               jordan_product(A, jordan_product(B, C)));
}

VerificationReport verify_jordan_lie(std::size_t n, std::size_t trials, std::uint64_t seed,
                                     double tol, const JordanLieOptions& opts) {
  if (n < 1 || trials < 1) throw DomainError("verify_jordan_lie: need n >= 1 and trials >= 1");
  const BracketFn bracket =
      opts.bracket ? opts.bracket
                   : BracketFn([](const ComplexMatrix& x, const ComplexMatrix& y) {
                       return lie_bracket(x, y);
                     });
  const auto jordan = [](const ComplexMatrix& x, const ComplexMatrix& y) {
    return jordan_product(x, y);
  };
  const double assoc_c = 0.25 * ConventionSet::associator_constant();

  std::vector<std::array<double, kChecks.size()>> residuals(trials);
  kernels::for_each_index(trials, opts.execution, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const ComplexMatrix A = random_hermitian(n, rng).matrix();
    const ComplexMatrix B = random_hermitian(n, rng).matrix();
    const ComplexMatrix C = random_hermitian(n, rng).matrix();
    const double na = A.frobenius_norm(), nb = B.frobenius_norm(), nc = C.frobenius_norm();

    const ComplexMatrix AB = bracket(A, B);
    const ComplexMatrix BC = bracket(B, C);
    const ComplexMatrix CA = bracket(C, A);
    const ComplexMatrix A2 = jordan(A, A);
    auto& r = residuals[t];

    r[0] = (AB + bracket(B, A)).frobenius_norm() / scale_of({na, nb});
    r[1] = (bracket(AB, C) + bracket(BC, A) + bracket(CA, B)).frobenius_norm() /
           scale_of({na, nb, nc});
    r[2] = distance(jordan(A, B), jordan(B, A)) / scale_of({na, nb});
    r[3] = distance(jordan(jordan(A, B), A2), jordan(A, jordan(B, A2))) /
           scale_of({na, na, na, nb});
    r[4] = std::abs(trace_form(AB, C) - trace_form(A, BC)) / scale_of({na, nb, nc});
    r[5] = std::abs(trace_form(jordan(A, B), C) - trace_form(A, jordan(B, C))) /
           scale_of({na, nb, nc});
    r[6] = distance(bracket(A, jordan(B, C)),
                    jordan(AB, C) + jordan(B, bracket(A, C))) /
           scale_of({na, nb, nc});
    r[7] = distance(jordan(jordan(A, B), C) - jordan(A, jordan(B, C)),
                    assoc_c * bracket(bracket(A, C), B)) /
           scale_of({na, nb, nc});
    r[8] = std::max(hermitian_defect(AB), hermitian_defect(jordan(A, B)));
  });

  VerificationReport report("jordan_lie", opts.conventions, seed);
  report.set_parameter("dim", static_cast<double>(n));
  report.set_parameter("trials", static_cast<double>(trials));
  for (const auto& r : residuals)
    for (std::size_t k = 0; k < kChecks.size(); ++k)
      report.record(kChecks[k], r[k], k + 1 == kChecks.size() ? kClosureTol : tol);
  return report;
}

}  // namespace qgeom
