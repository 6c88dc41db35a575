#include "qgeom/kahler.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "qgeom/algebra.hpp"
#include "qgeom/dual_geometry.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/random.hpp"

namespace qgeom {
namespace {

void require_nonzero(const StateVector& psi, const char* op) {
  if (psi.norm() <= kNormTol) throw DomainError(std::string(op) + ": state vector is (near) zero");
}

void require_same_length(const RealTangent& u, const RealTangent& v, const char* op) {
  require_same_dim(u.components().size(), v.components().size(), op);
}

// X_f = -J grad f, the field with i_X omega = df.
RealTangent minus_j(const RealTangent& grad) {
  const RealTangent g = j_apply(grad);
  std::vector<double> c(g.components().begin(), g.components().end());
  for (auto& x : c) x = -x;
  return RealTangent(std::move(c));
}

// Removes the components along each (unit) vector in `against`.
void project_out(StateVector& psi, const std::vector<StateVector>& against) {
  for (const auto& v : against) psi -= inner(v, psi) * v;
}

GradientFlowResult run_flow(const Observable& a, const StateVector& psi0,
                            const GradientFlowOptions& opts,
                            const std::vector<StateVector>& deflate) {
  require_same_dim(a.dim(), psi0.dim(), "eigensolve_gradient_flow");
  StateVector psi = psi0;
  project_out(psi, deflate);
  require_nonzero(psi, "eigensolve_gradient_flow");
  psi = psi.normalized();

  const double anorm = a.frobenius_norm();
  const double step = opts.step > 0.0 ? opts.step : (anorm > 0.0 ? 0.1 / anorm : 0.1);
  if (!(step > 0.0)) throw DomainError("eigensolve_gradient_flow: step must be positive");
  const double sign = opts.direction == FlowDirection::ascent ? 1.0 : -1.0;
  const ComplexMatrix& A = a.matrix();

  for (std::size_t iter = 0;; ++iter) {
    const StateVector apsi = A * psi;
    const double e = inner(psi, apsi).real();
    StateVector r = apsi - e * psi;
    const double residual = r.norm();
    if (residual <= opts.tol) return {e, psi, iter, residual};
    if (iter >= opts.max_iter) {
      throw NumericalError("eigensolve_gradient_flow: no convergence after " +
                               std::to_string(opts.max_iter) + " iterations",
                           residual);
    }
    // grad e_A = 2 (A psi - e psi) for |psi| = 1.
    psi += (sign * step * 2.0) * r;
    project_out(psi, deflate);
    psi = psi.normalized();
  }
}

}  // namespace

RealTangent::RealTangent(std::vector<double> components) : c_(std::move(components)) {
  if (c_.size() % 2 != 0) throw DimensionError("RealTangent: length must be even (dq, dp)");
}

RealTangent RealTangent::from_complex(const StateVector& v) {
  const std::size_t n = v.dim();
  std::vector<double> c(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = v[k].real();
    c[n + k] = v[k].imag();
  }
  return RealTangent(std::move(c));
}

StateVector RealTangent::to_complex() const {
  StateVector v(dim());
  for (std::size_t k = 0; k < dim(); ++k) v[k] = {dq(k), dp(k)};
  return v;
}

double RealTangent::norm() const { return std::sqrt(g_eval(*this, *this)); }

double g_eval(const RealTangent& u, const RealTangent& v) {
  require_same_length(u, v, "g_eval");
  double s = 0.0;
  for (std::size_t k = 0; k < u.components().size(); ++k) s += u.components()[k] * v.components()[k];
  return s;
}

double omega_eval(const RealTangent& u, const RealTangent& v) {
  require_same_length(u, v, "omega_eval");
  double s = 0.0;
  for (std::size_t k = 0; k < u.dim(); ++k) s += u.dq(k) * v.dp(k) - u.dp(k) * v.dq(k);
  return s;
}

RealTangent j_apply(const RealTangent& u) {
  const std::size_t n = u.dim();
  std::vector<double> c(2 * n);
  for (std::size_t k = 0; k < n; ++k) {
    c[k] = -u.dp(k);
    c[n + k] = u.dq(k);
  }
  return RealTangent(std::move(c));
}

ScalarField quadratic_field(const Observable& a) {
  return {[a](const StateVector& psi) { return f_quadratic(a, psi); },
          [a](const StateVector& psi) { return a.matrix() * psi; }};
}

ScalarField expectation_field(const Observable& a) {
  return {[a](const StateVector& psi) { return expectation(a, psi); },
          [a](const StateVector& psi) {
            require_nonzero(psi, "expectation gradient");
            const double nsq = psi.norm_squared();
            const StateVector apsi = a.matrix() * psi;
            const double e = inner(psi, apsi).real() / nsq;
            return (2.0 / nsq) * (apsi - e * psi);
          }};
}

FunctionBrackets function_brackets(const ScalarField& f, const ScalarField& g,
                                   const StateVector& psi) {
  const StateVector df = f.gradient(psi);
  const StateVector dg = g.gradient(psi);
  require_same_dim(df.dim(), dg.dim(), "function_brackets");
  FunctionBrackets out;
  for (std::size_t k = 0; k < df.dim(); ++k) {
    const double fq = df[k].real(), fp = df[k].imag();
    const double gq = dg[k].real(), gp = dg[k].imag();
    out.poisson += fq * gp - fp * gq;
    out.symmetric += fq * gp + fp * gq;
    out.metric += fq * gq + fp * gp;
    // d/dz = (d/dq - i d/dp)/2,  d/dzbar = (d/dq + i d/dp)/2.
    const cplx df_dz = 0.5 * cplx{fq, -fp};
    const cplx dg_dzbar = 0.5 * cplx{gq, gp};
    out.hermitian += 4.0 * df_dz * dg_dzbar;
  }
  return out;
}

double f_quadratic(const Observable& a, const StateVector& psi) {
  require_same_dim(a.dim(), psi.dim(), "f_quadratic");
  return 0.5 * inner(psi, a.matrix() * psi).real();
}

DualElement momentum_map(const StateVector& psi) {
  const std::size_t n = psi.dim();
  ComplexMatrix rho(n);
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = std::norm(psi[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      rho(i, j) = psi[i] * std::conj(psi[j]);
      rho(j, i) = std::conj(rho(i, j));
    }
  }
  return DualElement::unchecked(std::move(rho));
}

VerificationReport pullback_checks(const Observable& a, const Observable& b, const StateVector& psi,
                                   double tol, const ConventionSet& conventions) {
  VerificationReport report("momentum_map_pullback", conventions, 0);
  const DualElement rho = momentum_map(psi);
  const double nsq = psi.norm_squared();
  const double scale_a = std::max(1.0, a.frobenius_norm() * nsq);
  const double scale_ab = std::max(1.0, a.frobenius_norm() * b.frobenius_norm() * nsq);
  const auto fb = function_brackets(quadratic_field(a), quadratic_field(b), psi);

  report.record("hat_pullback", std::abs(hat_eval(a, rho) - f_quadratic(a, psi)) / scale_a, tol);
  report.record("poisson_pullback", std::abs(lambda_eval(a, b, rho) - fb.poisson) / scale_ab, tol);
  report.record("jordan_pullback", std::abs(r_eval(a, b, rho) - fb.metric) / scale_ab, tol);
  return report;
}

VerificationReport pullback_suite(std::size_t n, std::size_t trials, std::uint64_t seed, double tol,
                                  Execution exec, const ConventionSet& conventions) {
  std::vector<std::array<double, 3>> residuals(trials);
  kernels::for_each_index(trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const Observable a = random_hermitian(n, rng);
    const Observable b = random_hermitian(n, rng);
    const StateVector psi = random_state_vector(n, rng);
    const auto r = pullback_checks(a, b, psi, tol, conventions);
    residuals[t] = {r.check("hat_pullback").max_residual, r.check("poisson_pullback").max_residual,
                    r.check("jordan_pullback").max_residual};
  });
  VerificationReport report("momentum_map_pullback", conventions, seed);
  report.set_parameter("dim", static_cast<double>(n));
  report.set_parameter("trials", static_cast<double>(trials));
  for (const auto& r : residuals) {
    report.record("hat_pullback", r[0], tol);
    report.record("poisson_pullback", r[1], tol);
    report.record("jordan_pullback", r[2], tol);
  }
  return report;
}

double expectation(const Observable& a, const StateVector& psi) {
  require_same_dim(a.dim(), psi.dim(), "expectation");
  require_nonzero(psi, "expectation");
  return inner(psi, a.matrix() * psi).real() / psi.norm_squared();
}

double dispersion(const Observable& a, const StateVector& psi) {
  require_same_dim(a.dim(), psi.dim(), "dispersion");
  require_nonzero(psi, "dispersion");
  const double nsq = psi.norm_squared();
  const StateVector apsi = a.matrix() * psi;
  const double e = inner(psi, apsi).real() / nsq;
  return (apsi - e * psi).norm_squared() / nsq;
}

double gradient_norm_squared(const Observable& a, const StateVector& psi) {
  const RealTangent g = gradient_field_e(a, psi);
  return g_eval(g, g);
}

RealTangent gradient_field_e(const Observable& a, const StateVector& psi) {
  require_same_dim(a.dim(), psi.dim(), "gradient_field_e");
  return RealTangent::from_complex(expectation_field(a).gradient(psi));
}

RealTangent hamiltonian_field_e(const Observable& a, const StateVector& psi) {
  return minus_j(gradient_field_e(a, psi));
}

RealTangent hamiltonian_field_f(const Observable& a, const StateVector& psi) {
  require_same_dim(a.dim(), psi.dim(), "hamiltonian_field_f");
  return minus_j(RealTangent::from_complex(quadratic_field(a).gradient(psi)));
}

GradientFlowResult eigensolve_gradient_flow(const Observable& a, const StateVector& psi0,
                                            const GradientFlowOptions& opts) {
  return run_flow(a, psi0, opts, {});
}

std::vector<GradientFlowResult> deflated_eigensolve(const Observable& a, std::size_t count,
                                                    std::uint64_t seed,
                                                    const GradientFlowOptions& opts) {
  if (count > a.dim()) throw DomainError("deflated_eigensolve: count exceeds dimension");
  std::vector<GradientFlowResult> found;
  std::vector<StateVector> vectors;
  for (std::size_t k = 0; k < count; ++k) {
    Rng rng(derive_seed(seed, k));
    const StateVector start = random_state_vector(a.dim(), rng);
    found.push_back(run_flow(a, start, opts, vectors));
    vectors.push_back(found.back().eigenvector);
  }
  return found;
}

VerificationReport verify_dispersion(std::size_t n, std::size_t trials, std::uint64_t seed,
                                     double tol, Execution exec,
                                     const ConventionSet& conventions) {
  if (n < 1 || trials < 1) throw DomainError("verify_dispersion: need n >= 1 and trials >= 1");
  std::vector<std::array<double, 3>> residuals(trials);
  kernels::for_each_index(trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const Observable a = random_hermitian(n, rng);
    const StateVector psi = random_state_vector(n, rng);
    const StateVector unit = psi.normalized();
    const double scale = std::max(1.0, a.frobenius_norm() * a.frobenius_norm());
    const StateVector au = a.matrix() * unit;
    const double mean = inner(unit, au).real();
    const double second = inner(au, au).real();
    const double var = dispersion(a, unit);
    auto& r = residuals[t];
    r[0] = std::abs(var - (second - mean * mean)) / scale;
    r[1] = std::abs(gradient_norm_squared(a, psi) -
                    ConventionSet::dispersion_kappa() * dispersion(a, psi) / psi.norm_squared()) /
           scale;
    r[2] = std::max(0.0, -var) / scale;
  });
  VerificationReport report("dispersion", conventions, seed);
  report.set_parameter("dim", static_cast<double>(n));
  report.set_parameter("trials", static_cast<double>(trials));
  report.set_parameter("kappa", ConventionSet::dispersion_kappa());
  for (const auto& r : residuals) {
    report.record("dispersion_definition", r[0], tol);
    report.record("kappa_identity", r[1], tol);
    report.record("dispersion_nonnegative", r[2], tol);
  }
  return report;
}

}  // namespace qgeom
