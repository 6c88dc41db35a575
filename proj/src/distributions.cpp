#include "qgeom/distributions.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>

#include "qgeom/algebra.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/random.hpp"

namespace qgeom {
namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kSpectralGap = 1e-6;

using RealMatrix = Eigen::MatrixXd;

// Columns of `m` spanning its column space, orthonormal, with relative cutoff.
RealMatrix column_space(const RealMatrix& m, double rank_tol) {
  if (m.cols() == 0) return RealMatrix(m.rows(), 0);
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Eigen::Index r = 0;
  if (smax > 0.0)
    while (r < s.size() && s(r) > rank_tol * smax) ++r;
  return svd.matrixU().leftCols(r);
}

// Orthonormal basis of span(P) cap span(Q) for orthonormal P, Q.
RealMatrix intersection(const RealMatrix& p, const RealMatrix& q, double rank_tol) {
  const Eigen::Index dp = p.cols(), dq = q.cols();
  if (dp == 0 || dq == 0) return RealMatrix(p.rows(), 0);
  RealMatrix stacked(p.rows(), dp + dq);
  stacked << p, -q;
  Eigen::JacobiSVD<RealMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > rank_tol * smax) ++r;
  const Eigen::Index null_dim = dp + dq - r;
  if (null_dim <= 0) return RealMatrix(p.rows(), 0);
  const RealMatrix null = svd.matrixV().rightCols(null_dim);
  return column_space(p * null.topRows(dp), rank_tol);
}

RealMatrix map_matrix(const DualElement& xi, DistributionKind kind) {
  const std::size_t n = xi.dim();
  const auto basis = hermitian_basis(n);
  const std::size_t d = basis.size();
  RealMatrix lam(d, d), rr(d, d);
  for (std::size_t a = 0; a < d; ++a) {
    const Observable e = Observable::unchecked(basis[a]);
    if (kind != DistributionKind::R) {
      const auto c = to_coordinates(jhat(xi, e).matrix());
      for (std::size_t k = 0; k < d; ++k) lam(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) = c[k];
    }
    if (kind != DistributionKind::Lambda) {
      const auto c = to_coordinates(rhat(xi, e).matrix());
      for (std::size_t k = 0; k < d; ++k) rr(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(a)) = c[k];
    }
  }
  if (kind == DistributionKind::Lambda) return lam;
  if (kind == DistributionKind::R) return rr;
  RealMatrix both(d, 2 * d);
  both << lam, rr;
  return both;
}

double min_gap(std::vector<double> spectrum) {
  std::sort(spectrum.begin(), spectrum.end());
  double gap = INFINITY;
  for (std::size_t k = 1; k < spectrum.size(); ++k) gap = std::min(gap, spectrum[k] - spectrum[k - 1]);
  return gap;
}

// Distinct spectrum drawn from a Gaussian, rejecting near-degenerate draws.
std::vector<double> distinct_spectrum(std::size_t n, Rng& rng) {
  for (;;) {
    std::vector<double> s(n);
    for (auto& x : s) x = rng.normal();
    if (min_gap(s) > kSpectralGap) return s;
  }
}

DualElement point_with_spectrum(const std::vector<double>& spectrum, Rng& rng) {
  const ComplexMatrix u = random_unitary(spectrum.size(), rng);
  ComplexMatrix xi = conjugate(u, ComplexMatrix::diagonal(spectrum));
  for (std::size_t i = 0; i < xi.dim(); ++i) {
    xi(i, i) = xi(i, i).real();
    for (std::size_t j = i + 1; j < xi.dim(); ++j) xi(j, i) = std::conj(xi(i, j));
  }
  return DualElement::unchecked(std::move(xi));
}

DualElement sample_point(DistributionKind kind, std::size_t n, std::size_t trial, Rng& rng) {
  std::vector<double> s = distinct_spectrum(n, rng);
  switch (kind) {
    case DistributionKind::R: {
      // lambda_1 + lambda_2 = 0 with all eigenvalues still distinct.
      for (;;) {
        s[1] = -s[0];
        if (min_gap(s) > kSpectralGap) break;
        s = distinct_spectrum(n, rng);
      }
      break;
    }
    case DistributionKind::One:
      if (trial % 2 == 1) {
        for (;;) {
          s[0] = 0.0;
          if (min_gap(s) > kSpectralGap) break;
          s = distinct_spectrum(n, rng);
        }
      }
      break;
    default:
      break;
  }
  return point_with_spectrum(s, rng);
}

// Linear fields. V_A(xi) = [A, xi]_-,  W_A(xi) = A o xi.
ComplexMatrix field_v(const ComplexMatrix& a, const ComplexMatrix& xi) { return lie_bracket(a, xi); }
ComplexMatrix field_w(const ComplexMatrix& a, const ComplexMatrix& xi) { return jordan_product(a, xi); }
// Z_A(xi) = [A o xi, xi]_- = [A, xi^2]_-/2 and its derivative along w.
ComplexMatrix field_z(const ComplexMatrix& a, const ComplexMatrix& xi) {
  return 0.5 * lie_bracket(a, xi * xi);
}
ComplexMatrix field_z_derivative(const ComplexMatrix& a, const ComplexMatrix& xi,
                                 const ComplexMatrix& w) {
  return 0.5 * lie_bracket(a, xi * w + w * xi);
}

// [X, Y](xi) = DY(xi)[X(xi)] - DX(xi)[Y(xi)]; for linear fields DY(xi)[w] = Y(w).
template <class F, class G>
ComplexMatrix linear_bracket(F x, G y, const ComplexMatrix& xi) {
  return y(x(xi)) - x(y(xi));
}

}  // namespace

std::string to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::Lambda: return "lambda";
    case DistributionKind::R: return "r";
    case DistributionKind::Zero: return "zero";
    case DistributionKind::One: return "one";
  }
  return "?";
}

DistributionKind parse_distribution_kind(const std::string& text) {
  std::string t = text;
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "lambda") return DistributionKind::Lambda;
  if (t == "r") return DistributionKind::R;
  if (t == "zero" || t == "0") return DistributionKind::Zero;
  if (t == "one" || t == "1") return DistributionKind::One;
  throw DomainError("unknown distribution kind: " + text);
}

TangentVector jhat(const DualElement& xi, const Observable& a) {
  return TangentVector::unchecked(lie_bracket(a.matrix(), xi.matrix()));
}

TangentVector rhat(const DualElement& xi, const Observable& a) {
  return TangentVector::unchecked(jordan_product(a.matrix(), xi.matrix()));
}

double commutation_defect(const DualElement& xi, const Observable& a) {
  const ComplexMatrix jr = jhat(xi, as<Observable>(rhat(xi, a))).matrix();
  const ComplexMatrix rj = rhat(xi, as<Observable>(jhat(xi, a))).matrix();
  const ComplexMatrix half = 0.5 * lie_bracket(a.matrix(), xi.matrix() * xi.matrix());
  return std::max(distance(jr, rj), distance(jr, half));
}

std::vector<ComplexMatrix> hermitian_basis(std::size_t n) {
  std::vector<ComplexMatrix> basis;
  basis.reserve(n * n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      ComplexMatrix s(n), t(n);
      s(j, k) = s(k, j) = 1.0;
      t(j, k) = -kI;
      t(k, j) = kI;
      basis.push_back(std::move(s));
      basis.push_back(std::move(t));
    }
  for (std::size_t l = 1; l < n; ++l) {
    ComplexMatrix d(n);
    const double c = std::sqrt(2.0 / static_cast<double>(l * (l + 1)));
    for (std::size_t m = 0; m < l; ++m) d(m, m) = c;
    d(l, l) = -c * static_cast<double>(l);
    basis.push_back(std::move(d));
  }
  basis.push_back(std::sqrt(2.0 / static_cast<double>(n)) * ComplexMatrix::identity(n));
  return basis;
}

std::vector<double> to_coordinates(const ComplexMatrix& m) {
  const auto basis = hermitian_basis(m.dim());
  std::vector<double> c(basis.size());
  const std::size_t n = m.dim();
  for (std::size_t a = 0; a < basis.size(); ++a) {
    cplx s{};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) s += basis[a](i, k) * m(k, i);
    c[a] = 0.5 * s.real();
  }
  return c;
}

ComplexMatrix from_coordinates(std::span<const double> c, std::size_t n) {
  const auto basis = hermitian_basis(n);
  require_same_dim(c.size(), basis.size(), "from_coordinates");
  ComplexMatrix m(n);
  for (std::size_t a = 0; a < basis.size(); ++a) m += c[a] * basis[a];
  return m;
}

DistributionBasis distribution_basis(const DualElement& xi, DistributionKind kind, double rank_tol) {
  const std::size_t n = xi.dim();
  RealMatrix cols;
  switch (kind) {
    case DistributionKind::Lambda:
    case DistributionKind::R:
    case DistributionKind::One:
      cols = column_space(map_matrix(xi, kind), rank_tol);
      break;
    case DistributionKind::Zero:
      cols = intersection(column_space(map_matrix(xi, DistributionKind::Lambda), rank_tol),
                          column_space(map_matrix(xi, DistributionKind::R), rank_tol), rank_tol);
      break;
  }
  DistributionBasis out{xi, kind, {}, static_cast<std::size_t>(cols.cols())};
  for (Eigen::Index k = 0; k < cols.cols(); ++k) {
    std::vector<double> c(cols.col(k).data(), cols.col(k).data() + cols.rows());
    out.basis.push_back(TangentVector::unchecked(from_coordinates(c, n)));
  }
  return out;
}

double projection_residual(const DistributionBasis& d, const ComplexMatrix& v) {
  std::vector<double> c = to_coordinates(v);
  double norm_sq = 0.0;
  for (double x : c) norm_sq += x * x;
  for (const auto& b : d.basis) {
    const auto bc = to_coordinates(b.matrix());
    double dot = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) dot += bc[k] * c[k];
    for (std::size_t k = 0; k < c.size(); ++k) c[k] -= dot * bc[k];
  }
  double res_sq = 0.0;
  for (double x : c) res_sq += x * x;
  return std::sqrt(res_sq) / std::max(1.0, std::sqrt(norm_sq));
}

VerificationReport involutivity_evidence(DistributionKind kind, std::size_t n, std::size_t trials,
                                         std::uint64_t seed, const InvolutivityOptions& opts) {
  if (n < 2) throw DomainError("involutivity_evidence: need n >= 2");
  struct Trial {
    double residual = 0.0;
    DualElement xi;
    ComplexMatrix a, b, bracket;
  };
  std::vector<Trial> results(trials);

  kernels::for_each_index(trials, opts.execution, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const DualElement xi = sample_point(kind, n, t, rng);
    const ComplexMatrix a = random_hermitian(n, rng).matrix();
    const ComplexMatrix b = random_hermitian(n, rng).matrix();
    const ComplexMatrix& x = xi.matrix();
    const DistributionBasis d = distribution_basis(xi, kind);

    auto v = [](const ComplexMatrix& g) { return [g](const ComplexMatrix& p) { return field_v(g, p); }; };
    auto w = [](const ComplexMatrix& g) { return [g](const ComplexMatrix& p) { return field_w(g, p); }; };

    std::vector<ComplexMatrix> brackets;
    switch (kind) {
      case DistributionKind::Lambda:
        brackets.push_back(linear_bracket(v(a), v(b), x));
        break;
      case DistributionKind::R:
        brackets.push_back(linear_bracket(w(a), w(b), x));
        break;
      case DistributionKind::Zero:
        brackets.push_back(field_z_derivative(b, x, field_z(a, x)) -
                           field_z_derivative(a, x, field_z(b, x)));
        break;
      case DistributionKind::One:
        brackets.push_back(linear_bracket(v(a), v(b), x));
        brackets.push_back(linear_bracket(w(a), w(b), x));
        brackets.push_back(linear_bracket(v(a), w(b), x));
        break;
    }
    Trial& out = results[t];
    out.xi = xi;
    out.a = a;
    out.b = b;
    for (const auto& br : brackets) {
      const double r = projection_residual(d, br);
      if (r >= out.residual) {
        out.residual = r;
        out.bracket = br;
      }
    }
  });

  VerificationReport report("involutivity_" + to_string(kind), opts.conventions, seed);
  report.set_parameter("dim", static_cast<double>(n));
  report.set_parameter("trials", static_cast<double>(trials));
  const std::string check = "bracket_in_distribution";
  if (kind == DistributionKind::R) {
    const std::string violation = "non_involutivity_witness";
    report.expect_violation(violation, 10.0 * opts.tol);
    std::size_t best = 0;
    for (std::size_t t = 0; t < trials; ++t) {
      report.record(violation, results[t].residual, 10.0 * opts.tol);
      if (results[t].residual > results[best].residual) best = t;
    }
    const Trial& w = results[best];
    report.add_witness(Witness{"D_R bracket [W_A, W_B](xi) outside D_R(xi)", w.residual,
                               {{"xi", w.xi.matrix()}, {"A", w.a}, {"B", w.b},
                                {"bracket", w.bracket}}});
  } else {
    for (const auto& r : results) report.record(check, r.residual, opts.tol);
  }
  return report;
}

OrbitInvariants orbit_invariants(const DualElement& xi, double rank_tol) {
  OrbitInvariants out;
  out.spectrum = eig_hermitian(xi.matrix()).eigenvalues;
  double scale = 0.0;
  for (double x : out.spectrum) scale = std::max(scale, std::abs(x));
  for (double x : out.spectrum) {
    if (scale == 0.0 || std::abs(x) <= rank_tol * scale) continue;
    ++out.rank;
    out.signature += x > 0 ? 1 : -1;
  }
  return out;
}

VerificationReport verify_commutation(std::size_t n, std::size_t trials, std::uint64_t seed,
                                      double tol, Execution exec,
                                      const ConventionSet& conventions) {
  if (n < 1 || trials < 1) throw DomainError("verify_commutation: need n >= 1 and trials >= 1");
  std::vector<double> residuals(trials);
  kernels::for_each_index(trials, exec, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    const DualElement xi = as<DualElement>(random_hermitian(n, rng));
    const Observable a = random_hermitian(n, rng);
    const double nx = xi.frobenius_norm();
    residuals[t] = commutation_defect(xi, a) / std::max(1.0, a.frobenius_norm() * nx * nx);
  });
  VerificationReport report("commutation", conventions, seed);
  report.set_parameter("dim", static_cast<double>(n));
  report.set_parameter("trials", static_cast<double>(trials));
  for (double r : residuals) report.record("jr_equals_rj_equals_half_bracket_xi2", r, tol);
  return report;
}

}  // namespace qgeom
