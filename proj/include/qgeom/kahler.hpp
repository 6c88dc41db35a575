#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qgeom/conventions.hpp"
#include "qgeom/matrix.hpp"
#include "qgeom/report.hpp"

namespace qgeom {

inline constexpr double kNormTol = 1e-12;

/// Tangent vector to R^{2n} = C^n stored as (dq_1..dq_n, dp_1..dp_n).
class RealTangent {
 public:
  RealTangent() = default;
  explicit RealTangent(std::vector<double> components);
  /// dq = Re v, dp = Im v.
  static RealTangent from_complex(const StateVector& v);

  std::size_t dim() const noexcept { return c_.size() / 2; }
  double dq(std::size_t k) const { return c_[k]; }
  double dp(std::size_t k) const { return c_[dim() + k]; }
  std::span<const double> components() const noexcept { return c_; }
  StateVector to_complex() const;
  double norm() const;

  friend bool operator==(const RealTangent&, const RealTangent&) = default;

 private:
  std::vector<double> c_;
};

/// G = sum dq dq' + dp dp'.
double g_eval(const RealTangent& u, const RealTangent& v);
/// Omega = sum dq dp' - dp dq'.  omega(u, v) = g(J u, v).
double omega_eval(const RealTangent& u, const RealTangent& v);
/// J(dq, dp) = (-dp, dq), i.e. multiplication by i.
RealTangent j_apply(const RealTangent& u);

/// Smooth real function on C^n with its exact gradient, packed as the complex
/// vector grad_q f + i grad_p f.
struct ScalarField {
  std::function<double(const StateVector&)> value;
  std::function<StateVector(const StateVector&)> gradient;
};

/// f_A(psi) = <psi|A psi>/2; gradient A psi.
ScalarField quadratic_field(const Observable& a);
/// e_A(psi) = <psi|A psi>/<psi|psi>; gradient 2(A psi - e psi)/<psi|psi>.
ScalarField expectation_field(const Observable& a);

struct FunctionBrackets {
  double poisson = 0.0;    // sum df/dq dg/dp - df/dp dg/dq
  double symmetric = 0.0;  // sum df/dq dg/dp + df/dp dg/dq
  double metric = 0.0;     // G(df, dg) = sum df/dq dg/dq + df/dp dg/dp
  cplx hermitian{};        // 4 sum df/dz dg/dzbar = metric + i poisson
};

FunctionBrackets function_brackets(const ScalarField& f, const ScalarField& g,
                                   const StateVector& psi);

double f_quadratic(const Observable& a, const StateVector& psi);

/// mu(psi) = |psi><psi|.
DualElement momentum_map(const StateVector& psi);

/// Checks hat(A)(mu psi) = f_A, Lambda(dA, dB)(mu psi) = {f_A, f_B} and
/// R(dA, dB)(mu psi) = G(df_A, df_B) at psi. Residuals are relative to
/// max(1, ||A|| ||B|| |psi|^2).
VerificationReport pullback_checks(const Observable& a, const Observable& b, const StateVector& psi,
                                   double tol, const ConventionSet& conventions = ConventionSet{});
/// pullback_checks over random (A, B, psi) triples, trial i seeded by stream i.
VerificationReport pullback_suite(std::size_t n, std::size_t trials, std::uint64_t seed, double tol,
                                  Execution exec = Execution::parallel,
                                  const ConventionSet& conventions = ConventionSet{});

/// Rayleigh quotient. DomainError if |psi| <= kNormTol.
double expectation(const Observable& a, const StateVector& psi);
/// <A^2> - <A>^2, computed as |A psi - e psi|^2 / |psi|^2.
double dispersion(const Observable& a, const StateVector& psi);
/// G(de_A, de_A) = kappa * dispersion / |psi|^2.
double gradient_norm_squared(const Observable& a, const StateVector& psi);

/// Over random (A, psi): dispersion against <A^2> - <A>^2 on unit psi,
/// G(de_A, de_A) against kappa * dispersion / |psi|^2, and dispersion >= 0.
/// Residuals are relative to max(1, |A|^2).
VerificationReport verify_dispersion(std::size_t n, std::size_t trials, std::uint64_t seed,
                                     double tol, Execution exec = Execution::parallel,
                                     const ConventionSet& conventions = ConventionSet{});

/// G(de_A): the gradient of e_A in (q, p) coordinates.
RealTangent gradient_field_e(const Observable& a, const StateVector& psi);
/// Hamiltonian field X with i_X omega = de_A, i.e. -J(gradient).
RealTangent hamiltonian_field_e(const Observable& a, const StateVector& psi);
/// Hamiltonian field of f_A; equals -i A psi.
RealTangent hamiltonian_field_f(const Observable& a, const StateVector& psi);

enum class FlowDirection { ascent, descent };

struct GradientFlowOptions {
  double step = 0.0;  // 0 selects 0.1 / ||A||_F
  double tol = 1e-9;  // on |A psi - e psi|
  std::size_t max_iter = 100000;
  FlowDirection direction = FlowDirection::descent;
};

struct GradientFlowResult {
  double eigenvalue = 0.0;
  StateVector eigenvector;  // unit norm
  std::size_t iterations = 0;
  double residual = 0.0;
};

/// psi <- normalize(psi +/- step * grad e_A). Descent reaches the lowest
/// eigenvalue and ascent the highest for generic psi0. Throws DomainError for a
/// zero start and NumericalError (with the last residual) when max_iter runs out.
GradientFlowResult eigensolve_gradient_flow(const Observable& a, const StateVector& psi0,
                                            const GradientFlowOptions& opts = {});

/// Repeated gradient flow restricted to the orthogonal complement of the
/// eigenvectors already found. Returns `count` eigenpairs in flow order
/// (ascending for descent, descending for ascent), reaching interior eigenvalues.
std::vector<GradientFlowResult> deflated_eigensolve(const Observable& a, std::size_t count,
                                                    std::uint64_t seed,
                                                    const GradientFlowOptions& opts = {});

}  // namespace qgeom
