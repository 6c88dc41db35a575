#include <cmath>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "oracle.hpp"
#include "qgeom/algebra.hpp"
#include "qgeom/dual_geometry.hpp"
#include "qgeom/dynamics.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/kahler.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/random.hpp"

using namespace qgeom;
using namespace std::complex_literals;

namespace {

const Observable X = pauli_x();
const Observable Y = pauli_y();
const Observable Z = pauli_z();

EvolutionSpec make_spec(const Observable& h, double t, std::size_t steps, Picture p,
                        Method m = Method::exact, double hbar = 1.0) {
  EvolutionSpec s;
  s.hamiltonian = h;
  s.t_final = t;
  s.steps = steps;
  s.hbar = hbar;
  s.picture = p;
  s.method = m;
  return s;
}

}  // namespace

TEST_CASE("spec validation and sampling") {
  auto s = make_spec(Z, 2.0, 4, Picture::schrodinger);
  CHECK(s.time(0) == 0.0);
  CHECK(s.time(4) == 2.0);
  CHECK(schrodinger_flow(s, StateVector{1, 0}).size() == 5);
  s.steps = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.steps = 3;
  s.hbar = 0.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.hbar = 1.0;
  s.t_final = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(s.validate(), DomainError);
  CHECK_THROWS_AS(schrodinger_flow(make_spec(Z, 1, 2, Picture::schrodinger), StateVector{1, 0, 0}), DimensionError);
  CHECK(parse_picture("heisenberg") == Picture::heisenberg);
  CHECK(parse_method("rk4") == Method::rk4);
  CHECK_THROWS(parse_picture("interaction"));
}

TEST_CASE("schrodinger_flow examples") {
  Rng rng(1);
  auto psi0 = random_state_vector(3, rng);
  auto zero = schrodinger_flow(make_spec(Observable(ComplexMatrix(3)), 5.0, 10, Picture::schrodinger), psi0);
  for (const auto& psi : zero.states) CHECK(psi == psi0);

  auto tz = schrodinger_flow(make_spec(Z, 3.0, 30, Picture::schrodinger), StateVector::basis(2, 0));
  for (std::size_t k = 0; k < tz.size(); ++k) {
    StateVector expected{std::polar(1.0, -tz.times[k]), 0};
    CHECK(distance(tz.states[k], expected) < 1e-12);
  }

  // exp(-i t X) = cos t - i sin t X: -i X at t = pi/2 and -I at t = pi
  auto tx = schrodinger_flow(make_spec(X, std::numbers::pi, 2, Picture::schrodinger), StateVector::basis(2, 0));
  CHECK(distance(tx.states[1], StateVector{0, -1i}) < 1e-10);
  CHECK(distance(tx.states[2], StateVector{-1, 0}) < 1e-10);
}

TEST_CASE("heisenberg_flow examples and orientation") {
  auto h = random_hermitian(3, 2);
  auto th = heisenberg_flow(make_spec(h, 2.0, 20, Picture::heisenberg), h);
  for (const auto& m : th.matrices) CHECK(distance(m, h.matrix()) < 1e-12);

  auto tz = heisenberg_flow(make_spec(Z, 2.0, 40, Picture::heisenberg), X);
  for (std::size_t k = 0; k < tz.size(); ++k) {
    const double t = tz.times[k];
    auto expected = cplx(std::cos(2 * t)) * X.matrix() - cplx(std::sin(2 * t)) * Y.matrix();
    CHECK(distance(tz.matrices[k], expected) < 1e-12);
  }

  auto ti = heisenberg_flow(make_spec(random_hermitian(2, 3), 2.0, 10, Picture::heisenberg),
                            Observable(ComplexMatrix::identity(2)));
  for (const auto& m : ti.matrices) CHECK(distance(m, ComplexMatrix::identity(2)) < 1e-12);
}

TEST_CASE("heisenberg orientation: dA/dt = -[H, A]_- / hbar") {
  auto h = random_hermitian(3, 4), a = random_hermitian(3, 5);
  const double hbar = 0.7, step = 1e-5;
  auto tr = heisenberg_flow(make_spec(h, step, 1, Picture::heisenberg, Method::exact, hbar), a);
  auto back = heisenberg_flow(make_spec(h, -step, 1, Picture::heisenberg, Method::exact, hbar), a);
  auto fd = cplx(1.0 / (2 * step)) * (tr.matrices[1] - back.matrices[1]);
  auto expected = cplx(double(ConventionSet::heisenberg_sign()) / hbar) * lie_bracket(h, a).matrix();
  CHECK(distance(fd, expected) < 1e-7 * std::max(1.0, expected.frobenius_norm()));
}

TEST_CASE("vonneumann_flow examples") {
  std::vector<double> mixed{1.0 / 3, 1.0 / 3, 1.0 / 3};
  auto tm = vonneumann_flow(make_spec(random_hermitian(3, 6), 4.0, 10, Picture::vonneumann),
                            DualElement(ComplexMatrix::diagonal(mixed)));
  for (const auto& m : tm.matrices) CHECK(distance(m, ComplexMatrix::diagonal(mixed)) < 1e-12);

  auto tr = vonneumann_flow(make_spec(X, std::numbers::pi / 2, 1, Picture::vonneumann),
                            DualElement(ComplexMatrix{{1, 0}, {0, 0}}));
  CHECK(distance(tr.matrices.back(), ComplexMatrix{{0, 0}, {0, 1}}) < 1e-9);

  for (std::size_t n = 2; n <= 6; ++n) {
    auto rho = random_state(n, n);
    auto t = vonneumann_flow(make_spec(random_hermitian(n, 10 + n), 3.0, 12, Picture::vonneumann), rho.dual());
    auto s0 = oracle::eigenvalues(rho.matrix());
    for (const auto& m : t.matrices) {
      CHECK(oracle::max_abs_diff(oracle::eigenvalues(m), s0) < 1e-10);
      CHECK(is_state(DualElement::unchecked(m), 1e-10));
    }
  }
}

TEST_CASE("dual orientation: d/dt hat(A)(xi(t)) = lambda(A, H)(xi) / hbar") {
  auto h = random_hermitian(3, 7), a = random_hermitian(3, 8);
  auto xi = as<DualElement>(random_hermitian(3, 9));
  const double hbar = 1.3, step = 1e-5;
  auto fwd = vonneumann_flow(make_spec(h, step, 1, Picture::vonneumann, Method::exact, hbar), xi);
  auto bwd = vonneumann_flow(make_spec(h, -step, 1, Picture::vonneumann, Method::exact, hbar), xi);
  const double fd = (hat_eval(a, DualElement::unchecked(fwd.matrices[1])) -
                     hat_eval(a, DualElement::unchecked(bwd.matrices[1]))) / (2 * step);
  CHECK(fd == doctest::Approx(lambda_eval(a, h, xi) / hbar).epsilon(1e-7));
  CHECK(fd == doctest::Approx(-lambda_eval(h, a, xi) / hbar).epsilon(1e-7));
}

TEST_CASE("exact flows against the oracle propagator and the group law") {
  Rng rng(10);
  for (std::size_t n = 1; n <= 8; ++n) {
    auto h = random_hermitian(n, 20 + n);
    auto psi0 = random_state_vector(n, rng);
    const double hbar = 0.5 + 0.25 * double(n);
    auto tr = schrodinger_flow(make_spec(h, 2.0, 8, Picture::schrodinger, Method::exact, hbar), psi0);
    for (std::size_t k = 0; k < tr.size(); ++k)
      CHECK(distance(tr.states[k], oracle::propagator(h.matrix(), tr.times[k], hbar) * psi0) < 1e-10);
    // flow to t then s equals flow to t + s
    auto a = schrodinger_flow(make_spec(h, 0.8, 1, Picture::schrodinger, Method::exact, hbar), psi0).states[1];
    auto ab = schrodinger_flow(make_spec(h, 1.1, 1, Picture::schrodinger, Method::exact, hbar), a).states[1];
    auto direct = schrodinger_flow(make_spec(h, 1.9, 1, Picture::schrodinger, Method::exact, hbar), psi0).states[1];
    CHECK(distance(ab, direct) < 1e-10);
    auto xi = as<DualElement>(random_hermitian(n, 50 + n));
    auto x1 = vonneumann_flow(make_spec(h, 0.8, 1, Picture::vonneumann, Method::exact, hbar), xi).matrices[1];
    auto x2 = vonneumann_flow(make_spec(h, 1.1, 1, Picture::vonneumann, Method::exact, hbar),
                              DualElement::unchecked(x1)).matrices[1];
    auto x3 = vonneumann_flow(make_spec(h, 1.9, 1, Picture::vonneumann, Method::exact, hbar), xi).matrices[1];
    CHECK(distance(x2, x3) < 1e-10 * std::max(1.0, xi.frobenius_norm()));
  }
}

TEST_CASE("mu-relatedness") {
  Rng rng(11);
  auto h = random_hermitian(3, 30), a = random_hermitian(3, 31);
  CHECK(mu_relatedness_check(make_spec(h, 3.0, 30, Picture::schrodinger), random_state_vector(3, rng), a, 1e-9).passed());
  auto zero = mu_relatedness_check(make_spec(Observable(ComplexMatrix(3)), 3.0, 10, Picture::schrodinger),
                                   random_state_vector(3, rng), a, 1e-9);
  CHECK(zero.passed());
  CHECK(zero.check("mu_intertwines_schrodinger_vonneumann").max_residual < 1e-15);

  for (std::size_t n = 1; n <= 8; ++n)
    for (std::uint64_t s = 0; s < 12; ++s) {
      Rng r(derive_seed(s, n));
      auto hh = random_hermitian(n, r), aa = random_hermitian(n, r);
      CHECK(mu_relatedness_check(make_spec(hh, 2.0, 10, Picture::schrodinger), random_state_vector(n, r), aa, 1e-9)
                .passed());
    }

  // rk4 cross-check: residual bounded by the integrator error
  auto psi0 = random_state_vector(3, rng).normalized();
  auto coarse = mu_relatedness_check(make_spec(h, 3.0, 30, Picture::schrodinger, Method::rk4), psi0, a, 1e-9);
  auto fine = mu_relatedness_check(make_spec(h, 3.0, 60, Picture::schrodinger, Method::rk4), psi0, a, 1e-9);
  const double rc = coarse.check("mu_intertwines_schrodinger_vonneumann").max_residual;
  const double rf = fine.check("mu_intertwines_schrodinger_vonneumann").max_residual;
  CHECK(rc > 0.0);
  CHECK(rf < rc / 8);
}

TEST_CASE("conserved_report on exact flows") {
  auto h = random_hermitian(4, 40);
  Rng rng(12);
  auto sp = make_spec(h, 5.0, 25, Picture::schrodinger);
  auto rs = conserved_report(sp, schrodinger_flow(sp, random_state_vector(4, rng)), 1, 1e-9);
  CHECK(rs.passed());
  for (const char* name : {"norm", "energy", "jordan_product_preserved", "lie_product_preserved"})
    CHECK(rs.check(name).max_residual <= 1e-10);

  auto hp = make_spec(h, 5.0, 25, Picture::heisenberg);
  CHECK(conserved_report(hp, heisenberg_flow(hp, random_hermitian(4, 41)), 2, 1e-9).passed());

  auto vp = make_spec(h, 5.0, 25, Picture::vonneumann);
  auto rv = conserved_report(vp, vonneumann_flow(vp, random_state(4, 42).dual()), 3, 1e-9);
  CHECK(rv.passed());
  for (const char* name : {"trace", "spectrum", "purity", "energy"}) CHECK(rv.check(name).samples == 26);
}

TEST_CASE("rk4 examples") {
  Rng rng(13);
  auto psi0 = random_state_vector(3, rng);
  auto zero = schrodinger_flow(make_spec(Observable(ComplexMatrix(3)), 4.0, 10, Picture::schrodinger, Method::rk4), psi0);
  for (const auto& psi : zero.states) CHECK(psi == psi0);
  auto xi = random_hermitian(3, 44).matrix();
  auto zm = rk4_flow(make_spec(Observable(ComplexMatrix(3)), 4.0, 10, Picture::vonneumann, Method::rk4), xi);
  for (const auto& m : zm.matrices) CHECK(m == xi);

  CHECK_THROWS_AS(rk4_flow(make_spec(Z, 1, 2, Picture::heisenberg, Method::rk4), StateVector{1, 0}), DomainError);
  CHECK_THROWS_AS(rk4_flow(make_spec(Z, 1, 2, Picture::schrodinger, Method::rk4), Z.matrix()), DomainError);
}

TEST_CASE("rk4: fourth-order convergence for H = Z over t = 10") {
  const double s = 1.0 / std::sqrt(2.0);
  auto study = rk4_refinement(Z, StateVector{s, cplx(0, s)}, 10.0, 1000, 3);
  REQUIRE(study.orders.size() == 2);
  for (double p : study.orders) CHECK(p == doctest::Approx(4.0).epsilon(0.05));
  CHECK(study.state_error[1] * 14 < study.state_error[0]);
  CHECK(study.state_error[1] * 18 > study.state_error[0]);
  // norm drift is nonzero and shrinks under refinement
  CHECK(study.norm_drift[0] > 0.0);
  CHECK(study.norm_drift[2] < study.norm_drift[0]);
}

TEST_CASE("rk4 in the matrix pictures agrees with the exact flow and reports drift") {
  auto h = random_hermitian(3, 50);
  auto xi = random_state(3, 51);
  auto ex = vonneumann_flow(make_spec(h, 2.0, 200, Picture::vonneumann), xi.dual());
  auto rk = vonneumann_flow(make_spec(h, 2.0, 200, Picture::vonneumann, Method::rk4), xi.dual());
  auto a = random_hermitian(3, 52);
  auto hx = heisenberg_flow(make_spec(h, 2.0, 200, Picture::heisenberg), a);
  auto hr = heisenberg_flow(make_spec(h, 2.0, 200, Picture::heisenberg, Method::rk4), a);
  for (std::size_t k = 0; k < ex.size(); ++k) {
    CHECK(distance(ex.matrices[k], rk.matrices[k]) < 1e-7);
    CHECK(distance(hx.matrices[k], hr.matrices[k]) < 1e-6);
  }
  auto spec = make_spec(h, 2.0, 200, Picture::vonneumann, Method::rk4);
  auto report = conserved_report(spec, rk, 1, 1e-15);
  CHECK(report.check("purity").max_residual > 0.0);
  auto coarse_spec = make_spec(h, 2.0, 50, Picture::vonneumann, Method::rk4);
  auto coarse = conserved_report(coarse_spec, vonneumann_flow(coarse_spec, xi.dual()), 1, 1e-15);
  CHECK(coarse.check("purity").max_residual > report.check("purity").max_residual);
}

TEST_CASE("serial and parallel trajectories are identical") {
  auto h = random_hermitian(5, 60);
  Rng rng(14);
  auto psi0 = random_state_vector(5, rng);
  auto s = make_spec(h, 3.0, 64, Picture::schrodinger);
  s.execution = Execution::serial;
  auto p = s;
  p.execution = Execution::parallel;
  CHECK(schrodinger_flow(s, psi0).states == schrodinger_flow(p, psi0).states);
}

TEST_CASE("trajectory CSV layout") {
  auto s = make_spec(Z, 1.0, 2, Picture::schrodinger);
  std::ostringstream out;
  write_trajectory_csv(out, schrodinger_flow(s, StateVector{1, 0}), Z);
  std::istringstream in(out.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "t,re_0,im_0,re_1,im_1,norm,energy");
  std::string first;
  std::getline(in, first);
  CHECK(first == "0,1,0,0,0,1,1");

  auto v = make_spec(X, 1.0, 1, Picture::vonneumann);
  std::ostringstream vout;
  write_trajectory_csv(vout, vonneumann_flow(v, DualElement(ComplexMatrix{{1, 0}, {0, 0}})), X);
  CHECK(vout.str().rfind("t,re_0_0,im_0_0,re_0_1,im_0_1,re_1_0,im_1_0,re_1_1,im_1_1,trace,purity,energy\n", 0) == 0);

  auto h = make_spec(X, 1.0, 1, Picture::heisenberg);
  std::ostringstream hout;
  write_trajectory_csv(hout, heisenberg_flow(h, Z), X);
  CHECK(hout.str().find(",trace,overlap_h\n") != std::string::npos);
}
