#include <cmath>

#include "doctest.h"
#include "oracle.hpp"
#include "qgeom/algebra.hpp"
#include "qgeom/distributions.hpp"
#include "qgeom/dual_geometry.hpp"
#include "qgeom/dynamics.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/random.hpp"

using namespace qgeom;

namespace {

const Observable X = pauli_x();
const Observable Y = pauli_y();
const Observable Z = pauli_z();

DualElement dual(const Observable& a) { return as<DualElement>(a); }
DualElement random_dual(std::size_t n, std::uint64_t seed) { return as<DualElement>(random_hermitian(n, seed)); }
DualElement diag_dual(std::vector<double> d) { return DualElement(ComplexMatrix::diagonal(d)); }

// Real matrix of a linear map on Hermitian matrices in a basis orthonormal under Tr(AB)/2
Eigen::MatrixXd map_matrix(std::size_t n, const std::function<ComplexMatrix(const ComplexMatrix&)>& f) {
  auto basis = hermitian_basis(n);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd m(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    auto image = f(basis[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < d; ++i)
      m(i, j) = 0.5 * oracle::mul(basis[static_cast<std::size_t>(i)], image).trace().real();
  }
  return m;
}

std::size_t oracle_rank(const Eigen::MatrixXd& m) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
  qr.setThreshold(1e-8);
  return static_cast<std::size_t>(qr.rank());
}

}  // namespace

TEST_CASE("jhat examples") {
  auto a = random_hermitian(3, 1);
  CHECK(jhat(DualElement(ComplexMatrix::identity(3)), a).matrix() == ComplexMatrix(3));
  CHECK(jhat(dual(Z), X).matrix() == cplx(-2) * Y.matrix());
  CHECK(jhat(diag_dual({1, 2, 3}), Observable(ComplexMatrix::diagonal(std::vector<double>{4, 5, 6}))).matrix() ==
        ComplexMatrix(3));
}

TEST_CASE("rhat examples") {
  auto a = random_hermitian(3, 1);
  CHECK(distance(rhat(DualElement(ComplexMatrix::identity(3)), a).matrix(), a.matrix()) < 1e-15);
  CHECK(rhat(dual(Z), Z).matrix() == ComplexMatrix::identity(2));
  CHECK(rhat(DualElement(ComplexMatrix(3)), a).matrix() == ComplexMatrix(3));
}

TEST_CASE("commutation_defect examples and property") {
  auto xi3 = random_dual(3, 4);
  auto a3 = random_hermitian(3, 5);
  CHECK(commutation_defect(xi3, a3) <= 1e-10 * std::max(1.0, a3.frobenius_norm() * std::pow(xi3.frobenius_norm(), 2)));
  CHECK(commutation_defect(DualElement(ComplexMatrix::identity(3)), a3) == 0.0);
  CHECK(commutation_defect(xi3, as<Observable>(xi3)) < 1e-12);
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::uint64_t s = 0; s < 10; ++s) {
      auto xi = random_dual(n, 2 * s);
      auto a = random_hermitian(n, 2 * s + 1);
      const double scale = std::max(1.0, a.frobenius_norm() * std::pow(xi.frobenius_norm(), 2));
      CHECK(commutation_defect(xi, a) <= 1e-10 * scale);
    }
}

TEST_CASE("hermitian basis is orthonormal and coordinates round trip") {
  for (std::size_t n = 1; n <= 5; ++n) {
    auto b = hermitian_basis(n);
    REQUIRE(b.size() == n * n);
    for (std::size_t i = 0; i < b.size(); ++i) {
      CHECK(is_hermitian(b[i], 1e-15));
      for (std::size_t j = 0; j < b.size(); ++j) {
        const double ip = 0.5 * oracle::mul(b[i], b[j]).trace().real();
        CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-14);
      }
    }
    auto m = random_hermitian(n, n).matrix();
    CHECK(distance(from_coordinates(to_coordinates(m), n), m) < 1e-13);
  }
}

TEST_CASE("distribution_basis examples") {
  CHECK(distribution_basis(diag_dual({0.3, -1.2}), DistributionKind::Lambda).rank == 2);
  CHECK(distribution_basis(DualElement(ComplexMatrix::identity(3)), DistributionKind::Lambda).rank == 0);
  CHECK(distribution_basis(random_dual(2, 8), DistributionKind::One).rank == 4);
}

TEST_CASE("distribution ranks match an independent QR rank oracle") {
  for (std::size_t n = 2; n <= 5; ++n)
    for (std::uint64_t s = 0; s < 5; ++s) {
      auto xi = random_dual(n, 10 * n + s);
      auto jm = map_matrix(n, [&](const ComplexMatrix& a) { return jhat(xi, Observable::unchecked(a)).matrix(); });
      auto rm = map_matrix(n, [&](const ComplexMatrix& a) { return rhat(xi, Observable::unchecked(a)).matrix(); });
      Eigen::MatrixXd both(jm.rows(), jm.cols() * 2);
      both << jm, rm;
      const auto rl = oracle_rank(jm), rr = oracle_rank(rm), r1 = oracle_rank(both);
      CHECK(distribution_basis(xi, DistributionKind::Lambda).rank == rl);
      CHECK(distribution_basis(xi, DistributionKind::R).rank == rr);
      CHECK(distribution_basis(xi, DistributionKind::One).rank == r1);
      CHECK(distribution_basis(xi, DistributionKind::Zero).rank == rl + rr - r1);
      // generic xi: unitary orbit has dimension n^2 - n
      CHECK(rl == n * n - n);
    }
}

TEST_CASE("rank formula, inclusions and orthonormality at generic and degenerate points") {
  std::vector<DualElement> points;
  for (std::uint64_t s = 0; s < 4; ++s) points.push_back(random_dual(3, s));
  points.push_back(diag_dual({1, -1, 0.5}));
  points.push_back(diag_dual({2, 2, -1}));
  points.push_back(diag_dual({1, 0, 0}));
  Rng rng(3);
  auto u = random_unitary(3, rng);
  points.push_back(DualElement::unchecked(conjugate(u, ComplexMatrix::diagonal(std::vector<double>{1, -1, 0}))));
  for (const auto& xi : points) {
    auto dl = distribution_basis(xi, DistributionKind::Lambda);
    auto dr = distribution_basis(xi, DistributionKind::R);
    auto d0 = distribution_basis(xi, DistributionKind::Zero);
    auto d1 = distribution_basis(xi, DistributionKind::One);
    CHECK(d0.rank + d1.rank == dl.rank + dr.rank);
    for (const auto* d : {&dl, &dr, &d0, &d1}) {
      CHECK(d->basis.size() == d->rank);
      for (std::size_t i = 0; i < d->rank; ++i)
        for (std::size_t j = 0; j < d->rank; ++j) {
          const double ip = 0.5 * oracle::mul(d->basis[i].matrix(), d->basis[j].matrix()).trace().real();
          CHECK(std::abs(ip - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }
    for (const auto& v : dl.basis) CHECK(projection_residual(d1, v.matrix()) <= 1e-9);
    for (const auto& v : dr.basis) CHECK(projection_residual(d1, v.matrix()) <= 1e-9);
    for (const auto& v : d0.basis) {
      CHECK(projection_residual(dl, v.matrix()) <= 1e-9);
      CHECK(projection_residual(dr, v.matrix()) <= 1e-9);
    }
    // images of random A really lie in their distributions
    auto a = random_hermitian(3, 77);
    CHECK(projection_residual(dl, jhat(xi, a).matrix()) <= 1e-9);
    CHECK(projection_residual(dr, rhat(xi, a).matrix()) <= 1e-9);
    CHECK(projection_residual(d0, jhat(xi, as<Observable>(rhat(xi, a))).matrix()) <= 1e-9);
  }
}

TEST_CASE("D_R drops rank where two eigenvalues cancel") {
  // R_xi(A) = 0 needs A_ij (l_i + l_j) = 0, so l_1 = -l_2 kills one complex entry
  CHECK(distribution_basis(diag_dual({1, 2}), DistributionKind::R).rank == 4);
  CHECK(distribution_basis(diag_dual({1, -1}), DistributionKind::R).rank == 2);
}

TEST_CASE("involutivity evidence examples") {
  auto lam = involutivity_evidence(DistributionKind::Lambda, 3, 50, 0);
  CHECK(lam.passed());
  CHECK(lam.check("bracket_in_distribution").max_residual <= 1e-9);

  auto r = involutivity_evidence(DistributionKind::R, 2, 50, 0);
  CHECK(r.passed());
  CHECK(r.check("non_involutivity_witness").expects_violation);
  CHECK(r.check("non_involutivity_witness").max_residual > 1e-8);
  REQUIRE_FALSE(r.witnesses().empty());
  const auto& w = r.witnesses().front();
  for (const char* key : {"xi", "A", "B", "bracket"}) CHECK(w.matrices.count(key) == 1);

  CHECK(involutivity_evidence(DistributionKind::One, 2, 50, 0).passed());
  CHECK(involutivity_evidence(DistributionKind::Zero, 3, 30, 0).passed());
}

TEST_CASE("the D_R witness is genuine") {
  auto r = involutivity_evidence(DistributionKind::R, 2, 50, 0);
  const auto& w = r.witnesses().front();
  auto xi = DualElement::unchecked(w.matrices.at("xi"));
  auto a = w.matrices.at("A"), b = w.matrices.at("B");
  // [W_A, W_B](xi) = W_B(W_A(xi)) - W_A(W_B(xi)) with W_A(xi) = A o xi, recomputed with the oracle product
  auto jo = [](const ComplexMatrix& p, const ComplexMatrix& q) {
    return cplx(0.5) * (oracle::mul(p, q) + oracle::mul(q, p));
  };
  auto bracket = jo(b, jo(a, xi.matrix())) - jo(a, jo(b, xi.matrix()));
  auto dr = distribution_basis(xi, DistributionKind::R);
  CHECK(projection_residual(dr, bracket) > 1e-8);
  CHECK(std::abs(projection_residual(dr, bracket) - w.residual) < 1e-10);
}

TEST_CASE("involutivity across dimensions and execution modes") {
  for (std::size_t n = 2; n <= 4; ++n) {
    CHECK(involutivity_evidence(DistributionKind::Lambda, n, 20, n).passed());
    CHECK(involutivity_evidence(DistributionKind::Zero, n, 20, n).passed());
    CHECK(involutivity_evidence(DistributionKind::One, n, 20, n).passed());
    CHECK(involutivity_evidence(DistributionKind::R, n, 20, n).passed());
  }
  InvolutivityOptions s, p;
  s.execution = Execution::serial;
  p.execution = Execution::parallel;
  CHECK(involutivity_evidence(DistributionKind::One, 3, 20, 5, s).to_json() ==
        involutivity_evidence(DistributionKind::One, 3, 20, 5, p).to_json());
}

TEST_CASE("distribution kind names") {
  CHECK(parse_distribution_kind("Lambda") == DistributionKind::Lambda);
  CHECK(parse_distribution_kind("zero") == DistributionKind::Zero);
  CHECK(to_string(DistributionKind::One) == "one");
  CHECK_THROWS(parse_distribution_kind("two"));
}

TEST_CASE("orbit invariants") {
  auto inv = orbit_invariants(diag_dual({1, -1}));
  CHECK(inv.spectrum == std::vector<double>{-1, 1});
  CHECK(inv.rank == 2);
  CHECK(inv.signature == 0);

  Rng rng(12);
  for (int k = 0; k < 10; ++k) {
    auto xi = DualElement::unchecked(ComplexMatrix::diagonal(std::vector<double>{3, -2, 0, 1}));
    auto t = random_complex_matrix(4, rng);
    auto txt = DualElement::unchecked(oracle::mul(oracle::mul(t, xi.matrix()), t.adjoint()));
    auto a = orbit_invariants(xi), b = orbit_invariants(txt);
    CHECK(a.rank == 3);
    CHECK(a.signature == 1);
    CHECK(b.rank == a.rank);
    CHECK(b.signature == a.signature);

    auto u = random_unitary(4, rng);
    auto x2 = random_dual(4, 100 + k);
    auto c = orbit_invariants(DualElement::unchecked(conjugate(u, x2.matrix())));
    CHECK(oracle::max_abs_diff(c.spectrum, orbit_invariants(x2).spectrum) < 1e-10);
  }
}

TEST_CASE("spectrum is constant along numerically integrated V_A flows") {
  // V_A(xi) = [A, xi]_- is the von Neumann field of A; integrate it with RK4
  auto a = random_hermitian(3, 41);
  auto xi0 = random_dual(3, 42);
  EvolutionSpec spec;
  spec.hamiltonian = a;
  spec.t_final = 2.0;
  spec.steps = 400;
  spec.picture = Picture::vonneumann;
  spec.method = Method::rk4;
  auto traj = vonneumann_flow(spec, xi0);
  const auto s0 = oracle::eigenvalues(xi0.matrix());
  double worst = 0.0;
  for (const auto& m : traj.matrices) worst = std::max(worst, oracle::max_abs_diff(oracle::eigenvalues(m), s0));
  CHECK(worst < 1e-7);
  // and the trajectory stays on one leaf of D_Lambda: the velocity is tangent
  auto mid = DualElement::unchecked(traj.matrices[200]);
  CHECK(projection_residual(distribution_basis(mid, DistributionKind::Lambda), jhat(mid, a).matrix()) < 1e-9);
}

TEST_CASE("verify_commutation suite") {
  for (std::size_t n : {1, 2, 4, 7}) {
    auto report = verify_commutation(n, 50, 11 + n, 1e-10);
    CHECK(report.passed());
    CHECK(report.check("jr_equals_rj_equals_half_bracket_xi2").samples == 50);
    CHECK(report.check("jr_equals_rj_equals_half_bracket_xi2").max_residual <= 1e-13);
  }
  auto s = verify_commutation(3, 30, 5, 1e-10, Execution::serial);
  auto p = verify_commutation(3, 30, 5, 1e-10, Execution::parallel);
  CHECK(s.to_json() == p.to_json());
}
