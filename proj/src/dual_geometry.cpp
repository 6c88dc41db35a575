#include "qgeom/dual_geometry.hpp"

#include <cmath>
#include <sstream>

#include "qgeom/algebra.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/matrix_io.hpp"
#include "qgeom/random.hpp"

namespace qgeom {
namespace {

cplx half_trace_product(const ComplexMatrix& xi, const ComplexMatrix& g) {
  require_same_dim(xi.dim(), g.dim(), "dual pairing");
  const std::size_t n = xi.dim();
  cplx s{};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s += xi(i, k) * g(k, i);
  return 0.5 * s;
}

}  // namespace

Observable pauli_x() { return Observable(ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}}); }
Observable pauli_y() {
  return Observable(ComplexMatrix{{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}});
}
Observable pauli_z() { return Observable(ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}}); }

double LinearFunction::operator()(const DualElement& xi) const { return hat_eval(generator, xi); }

DensityMatrix::DensityMatrix(DualElement xi, double tol) : xi_(std::move(xi)) {
  if (!is_state(xi_, tol)) throw DomainError("DensityMatrix: not positive with unit trace");
}

double hat_eval(const Observable& a, const DualElement& xi) {
  return half_trace_product(xi.matrix(), a.matrix()).real();
}

double hat_eval(const LinearFunction& f, const DualElement& xi) { return hat_eval(f.generator, xi); }

double lambda_eval(const Observable& a, const Observable& b, const DualElement& xi) {
  return hat_eval(lie_bracket(a, b), xi);
}

double r_eval(const Observable& a, const Observable& b, const DualElement& xi) {
  const ComplexMatrix& A = a.matrix();
  const ComplexMatrix& B = b.matrix();
  return half_trace_product(xi.matrix(), A * B + B * A).real();
}

cplx star_eval(const Observable& a, const Observable& b, const DualElement& xi) {
  return half_trace_product(xi.matrix(), a.matrix() * b.matrix());
}

StarGenerator star_generator(const Observable& a, const Observable& b) {
  return {jordan_product(a, b),
          Observable::unchecked(0.5 * lie_bracket(a.matrix(), b.matrix()))};
}

TangentVector hamiltonian_field_dual(const Observable& h, const DualElement& xi) {
  return TangentVector::unchecked(lie_bracket(h.matrix(), xi.matrix()));
}

double r_invariance_defect(const Observable& h, const Observable& a, const Observable& b,
                           const DualElement& xi, double step) {
  const SpectralDecomposition spec = eig_hermitian(h);
  auto along = [&](double t) {
    const ComplexMatrix u = unitary_exp(spec, t);
    return r_eval(Observable::unchecked(conjugate(u, a.matrix())),
                  Observable::unchecked(conjugate(u, b.matrix())),
                  DualElement::unchecked(conjugate(u, xi.matrix())));
  };
  return std::abs((along(step) - along(-step)) / (2.0 * step));
}

double r_invariance_defect_exact(const Observable& h, const Observable& a, const Observable& b,
                                 const DualElement& xi) {
  return std::abs(r_eval(lie_bracket(h, a), b, xi) + r_eval(a, lie_bracket(h, b), xi) +
                  r_eval(a, b, as<DualElement>(hamiltonian_field_dual(h, xi))));
}

bool is_state(const DualElement& xi, double tol) {
  const auto spec = eig_hermitian(xi.matrix());
  const double min_eig = spec.eigenvalues.empty() ? 0.0 : spec.eigenvalues.front();
  return min_eig >= -tol && std::abs(xi.matrix().trace().real() - 1.0) <= tol;
}

DensityMatrix random_state(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  const ComplexMatrix t = random_complex_matrix(n, rng);
  ComplexMatrix rho = t.adjoint() * t;
  rho *= 1.0 / rho.trace().real();
  // Exact Hermitian symmetry so the checked constructor sees no rounding skew.
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) rho(j, i) = std::conj(rho(i, j));
  }
  return DensityMatrix(DualElement(std::move(rho)));
}

Su2Tables su2_golden_tables() {
  Su2Tables t;
  t.basis = {Observable(ComplexMatrix::identity(2)), pauli_x(), pauli_y(), pauli_z()};
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) {
      const ComplexMatrix& A = t.basis[a].matrix();
      const ComplexMatrix& B = t.basis[b].matrix();
      t.lambda[a][b] = lie_bracket(A, B);
      t.r[a][b] = A * B + B * A;
      t.star[a][b] = A * B;
    }
  return t;
}

std::array<cplx, 4> Su2Tables::coordinates(const ComplexMatrix& g) const {
  std::array<cplx, 4> c{};
  for (std::size_t a = 0; a < 4; ++a) c[a] = half_trace_product(basis[a].matrix(), g);
  return c;
}

std::string Su2Tables::describe(const ComplexMatrix& g) const {
  const auto c = coordinates(g);
  std::ostringstream out;
  bool any = false;
  for (std::size_t a = 0; a < 4; ++a) {
    if (std::abs(c[a]) < 1e-14) continue;
    if (any) out << " + ";
    any = true;
    const double re = c[a].real(), im = c[a].imag();
    if (std::abs(im) < 1e-14) {
      out << format_double(re) << names[a];
    } else if (std::abs(re) < 1e-14) {
      out << (im == 1.0 ? "" : im == -1.0 ? "-" : format_double(im)) << "i " << names[a];
    } else {
      out << "(" << format_double(re) << (im < 0 ? "-" : "+") << format_double(std::abs(im))
          << "i) " << names[a];
    }
  }
  return any ? out.str() : "0";
}

nlohmann::json Su2Tables::to_json() const {
  nlohmann::json j;
  j["basis"] = nlohmann::json::object();
  for (std::size_t a = 0; a < 4; ++a)
    j["basis"][names[a]] = nlohmann::json::parse(serialize_matrix(basis[a].matrix()));
  for (const auto& [key, table] : {std::pair{"lambda", &lambda}, std::pair{"r", &r},
                                   std::pair{"star", &star}}) {
    nlohmann::json tj = nlohmann::json::object();
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        tj[names[a] + "," + names[b]] = nlohmann::json::parse(serialize_matrix((*table)[a][b]));
    j[key] = tj;
  }
  return j;
}

VerificationReport verify_dual_geometry(std::size_t n, std::size_t trials, std::uint64_t seed,
                                        double tol, Execution exec,
                                        const ConventionSet& conventions) {
  if (n < 1 || trials < 1) throw DomainError("verify_dual_geometry: need n >= 1 and trials >= 1");
  static constexpr std::array<const char*, 9> kNames{
      "lambda_is_hat_of_bracket", "lambda_antisymmetry", "r_symmetry",
      "r_is_twice_hat_jordan",    "star_decomposition",  "star_generator",
      "lambda_jacobi",            "r_invariance",        "hamiltonian_field_traceless"};
  std::vector<std::array<double, kNames.size()>> residuals(trials);
  kernels::for_each_index(trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const Observable a = random_hermitian(n, rng);
    const Observable b = random_hermitian(n, rng);
    const Observable c = random_hermitian(n, rng);
    const Observable h = random_hermitian(n, rng);
    const DualElement xi = as<DualElement>(random_hermitian(n, rng));
    const double na = a.frobenius_norm(), nb = b.frobenius_norm(), nc = c.frobenius_norm();
    const double nh = h.frobenius_norm(), nx = xi.frobenius_norm();
    const double s2 = std::max(1.0, na * nb * nx);
    const double s3 = std::max(1.0, na * nb * nc * nx);

    const double lam = lambda_eval(a, b, xi);
    const double r = r_eval(a, b, xi);
    const cplx star = star_eval(a, b, xi);
    const StarGenerator g = star_generator(a, b);
    auto& out = residuals[t];
    out[0] = std::abs(lam - hat_eval(lie_bracket(a, b), xi)) / s2;
    out[1] = std::abs(lam + lambda_eval(b, a, xi)) / s2;
    out[2] = std::abs(r - r_eval(b, a, xi)) / s2;
    out[3] = std::abs(r - 2.0 * hat_eval(jordan_product(a, b), xi)) / s2;
    out[4] = std::abs(star - cplx(0.5 * r, 0.5 * lam)) / s2;
    out[5] = distance(g.jordan.matrix() + cplx(0, 1) * g.lie.matrix(), a.matrix() * b.matrix()) /
             std::max(1.0, na * nb);
    out[6] = std::abs(lambda_eval(lie_bracket(a, b), c, xi) + lambda_eval(lie_bracket(b, c), a, xi) +
                      lambda_eval(lie_bracket(c, a), b, xi)) / s3;
    out[7] = r_invariance_defect_exact(h, a, b, xi) / std::max(1.0, na * nb * nh * nx);
    const Observable id(ComplexMatrix::identity(n));
    out[8] = std::abs(hat_eval(id, as<DualElement>(hamiltonian_field_dual(h, xi)))) /
             std::max(1.0, nh * nx);
  });
  VerificationReport report("dual_geometry", conventions, seed);
  report.set_parameter("dim", static_cast<double>(n));
  report.set_parameter("trials", static_cast<double>(trials));
  for (const auto& r : residuals)
    for (std::size_t k = 0; k < kNames.size(); ++k) report.record(kNames[k], r[k], tol);
  return report;
}

}  // namespace qgeom
