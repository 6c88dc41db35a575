#include "qgeom/dynamics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

#include "qgeom/algebra.hpp"
#include "qgeom/dual_geometry.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/kahler.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/matrix_io.hpp"
#include "qgeom/random.hpp"

namespace qgeom {
namespace {

constexpr cplx kI{0.0, 1.0};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

Trajectory empty_trajectory(const EvolutionSpec& spec) {
  Trajectory tr;
  tr.picture = spec.picture;
  tr.method = spec.method;
  tr.times.resize(spec.steps + 1);
  for (std::size_t k = 0; k <= spec.steps; ++k) tr.times[k] = spec.time(k);
  return tr;
}

// Right-hand side of each picture's linear ODE.
StateVector rhs(const EvolutionSpec& spec, const StateVector& psi) {
  return (-kI / spec.hbar) * (spec.hamiltonian.matrix() * psi);
}

ComplexMatrix rhs(const EvolutionSpec& spec, Picture picture, const ComplexMatrix& x) {
  const ComplexMatrix& h = spec.hamiltonian.matrix();
  const double sign = picture == Picture::heisenberg ? ConventionSet::heisenberg_sign()
                                                     : ConventionSet::dual_flow_sign();
  return (sign / spec.hbar) * lie_bracket(h, x);
}

template <class T, class F>
T rk4_step(const T& y, double dt, F f) {
  const T k1 = f(y);
  const T k2 = f(y + (0.5 * dt) * k1);
  const T k3 = f(y + (0.5 * dt) * k2);
  const T k4 = f(y + dt * k3);
  return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double spectrum_deviation(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

// Hermitian part, used before eigen-analysis of RK4 iterates (which drift off
// the Hermitian subspace only by rounding, since the ODE preserves it).
ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

// Flow map of the Heisenberg/von Neumann picture from 0 to t_final.
ComplexMatrix flow_map(const EvolutionSpec& spec, Picture picture, const ComplexMatrix& x) {
  EvolutionSpec s = spec;
  s.picture = picture;
  s.execution = Execution::serial;
  Trajectory tr = picture == Picture::heisenberg
                      ? heisenberg_flow(s, Observable::unchecked(x))
                      : vonneumann_flow(s, DualElement::unchecked(x));
  return tr.matrices.back();
}

}  // namespace

std::string to_string(Picture p) {
  switch (p) {
    case Picture::schrodinger: return "schrodinger";
    case Picture::heisenberg: return "heisenberg";
    case Picture::vonneumann: return "vonneumann";
  }
  return "?";
}

std::string to_string(Method m) { return m == Method::exact ? "exact" : "rk4"; }

Picture parse_picture(const std::string& text) {
  const std::string t = lower(text);
  if (t == "schrodinger") return Picture::schrodinger;
  if (t == "heisenberg") return Picture::heisenberg;
  if (t == "vonneumann") return Picture::vonneumann;
  throw DomainError("unknown picture: " + text);
}

Method parse_method(const std::string& text) {
  const std::string t = lower(text);
  if (t == "exact") return Method::exact;
  if (t == "rk4") return Method::rk4;
  throw DomainError("unknown method: " + text);
}

void EvolutionSpec::validate() const {
  if (steps < 1) throw DomainError("evolution: steps must be >= 1");
  if (!std::isfinite(t_final)) throw DomainError("evolution: t_final must be finite");
  if (!(hbar > 0.0)) throw DomainError("evolution: hbar must be positive");
}

double EvolutionSpec::time(std::size_t k) const {
  return t_final * static_cast<double>(k) / static_cast<double>(steps);
}

Trajectory schrodinger_flow(const EvolutionSpec& spec, const StateVector& psi0) {
  spec.validate();
  require_same_dim(spec.hamiltonian.dim(), psi0.dim(), "schrodinger_flow");
  if (spec.method == Method::rk4) {
    EvolutionSpec s = spec;
    s.picture = Picture::schrodinger;
    return rk4_flow(s, psi0);
  }
  Trajectory tr = empty_trajectory(spec);
  tr.picture = Picture::schrodinger;
  tr.states.resize(tr.size());
  const SpectralDecomposition eig = eig_hermitian(spec.hamiltonian);
  kernels::for_each_index(tr.size(), spec.execution, [&](std::size_t k) {
    tr.states[k] = unitary_exp(eig, tr.times[k], spec.hbar) * psi0;
  });
  return tr;
}

Trajectory heisenberg_flow(const EvolutionSpec& spec, const Observable& a0) {
  spec.validate();
  require_same_dim(spec.hamiltonian.dim(), a0.dim(), "heisenberg_flow");
  if (spec.method == Method::rk4) {
    EvolutionSpec s = spec;
    s.picture = Picture::heisenberg;
    return rk4_flow(s, a0.matrix());
  }
  Trajectory tr = empty_trajectory(spec);
  tr.picture = Picture::heisenberg;
  tr.matrices.resize(tr.size());
  const SpectralDecomposition eig = eig_hermitian(spec.hamiltonian);
  kernels::for_each_index(tr.size(), spec.execution, [&](std::size_t k) {
    const ComplexMatrix u = unitary_exp(eig, tr.times[k], spec.hbar);
    tr.matrices[k] = u.adjoint() * a0.matrix() * u;
  });
  return tr;
}

Trajectory vonneumann_flow(const EvolutionSpec& spec, const DualElement& xi0) {
  spec.validate();
  require_same_dim(spec.hamiltonian.dim(), xi0.dim(), "vonneumann_flow");
  if (spec.method == Method::rk4) {
    EvolutionSpec s = spec;
    s.picture = Picture::vonneumann;
    return rk4_flow(s, xi0.matrix());
  }
  Trajectory tr = empty_trajectory(spec);
  tr.picture = Picture::vonneumann;
  tr.matrices.resize(tr.size());
  const SpectralDecomposition eig = eig_hermitian(spec.hamiltonian);
  kernels::for_each_index(tr.size(), spec.execution, [&](std::size_t k) {
    tr.matrices[k] = conjugate(unitary_exp(eig, tr.times[k], spec.hbar), xi0.matrix());
  });
  return tr;
}

Trajectory rk4_flow(const EvolutionSpec& spec, const InitialValue& initial) {
  spec.validate();
  Trajectory tr = empty_trajectory(spec);
  tr.method = Method::rk4;
  const double dt = spec.t_final / static_cast<double>(spec.steps);
  if (const auto* psi0 = std::get_if<StateVector>(&initial)) {
    if (spec.picture != Picture::schrodinger)
      throw DomainError("rk4_flow: a state vector needs the Schrodinger picture");
    require_same_dim(spec.hamiltonian.dim(), psi0->dim(), "rk4_flow");
    tr.states.reserve(tr.size());
    tr.states.push_back(*psi0);
    for (std::size_t k = 0; k < spec.steps; ++k)
      tr.states.push_back(rk4_step(tr.states.back(), dt, [&](const StateVector& y) { return rhs(spec, y); }));
  } else {
    const auto& x0 = std::get<ComplexMatrix>(initial);
    if (spec.picture == Picture::schrodinger)
      throw DomainError("rk4_flow: a matrix needs the Heisenberg or von Neumann picture");
    require_same_dim(spec.hamiltonian.dim(), x0.dim(), "rk4_flow");
    tr.matrices.reserve(tr.size());
    tr.matrices.push_back(x0);
    for (std::size_t k = 0; k < spec.steps; ++k)
      tr.matrices.push_back(rk4_step(tr.matrices.back(), dt, [&](const ComplexMatrix& y) {
        return rhs(spec, spec.picture, y);
      }));
  }
  return tr;
}

VerificationReport mu_relatedness_check(const EvolutionSpec& spec, const StateVector& psi0,
                                        const Observable& a, double tol) {
  EvolutionSpec exact = spec;
  exact.method = Method::exact;
  const Trajectory psi = schrodinger_flow(spec, psi0);
  const Trajectory xi = vonneumann_flow(exact, momentum_map(psi0));
  const Trajectory heis = heisenberg_flow(spec, a);

  const double nsq = psi0.norm_squared();
  const double scale_mu = std::max(1.0, nsq);
  const double scale_a = std::max(1.0, a.frobenius_norm() * nsq);
  VerificationReport report("mu_relatedness", ConventionSet(spec.hbar), 0);
  report.set_parameter("dim", static_cast<double>(psi0.dim()));
  report.set_parameter("t_final", spec.t_final);
  report.set_parameter("steps", static_cast<double>(spec.steps));
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const DualElement mu = momentum_map(psi.states[k]);
    report.record("mu_intertwines_schrodinger_vonneumann",
                  distance(mu.matrix(), xi.matrices[k]) / scale_mu, tol);
    const double schr = inner(psi.states[k], a.matrix() * psi.states[k]).real();
    const double hsb = inner(psi0, heis.matrices[k] * psi0).real();
    report.record("heisenberg_schrodinger_expectation", std::abs(schr - hsb) / scale_a, tol);
    report.record("hat_pullback_along_flow",
                  std::abs(hat_eval(a, mu) - f_quadratic(a, psi.states[k])) / scale_a, tol);
  }
  return report;
}

VerificationReport conserved_report(const EvolutionSpec& spec, const Trajectory& tr,
                                    std::uint64_t seed, double tol) {
  VerificationReport report("conservation_" + to_string(tr.picture) + "_" + to_string(tr.method),
                            ConventionSet(spec.hbar), seed);
  report.set_parameter("t_final", spec.t_final);
  report.set_parameter("steps", static_cast<double>(spec.steps));
  const Observable& h = spec.hamiltonian;

  if (tr.picture == Picture::schrodinger) {
    const StateVector& psi0 = tr.states.front();
    const double n0 = psi0.norm();
    const double e0 = expectation(h, psi0);
    const double scale_e = std::max(1.0, h.frobenius_norm());
    for (const auto& psi : tr.states) {
      report.record("norm", std::abs(psi.norm() - n0) / std::max(1.0, n0), tol);
      report.record("energy", std::abs(expectation(h, psi) - e0) / scale_e, tol);
    }
  } else {
    const ComplexMatrix& x0 = tr.matrices.front();
    const auto spec0 = eig_hermitian(hermitian_part(x0)).eigenvalues;
    const double tr0 = x0.trace().real();
    const double scale = std::max(1.0, x0.frobenius_norm());
    const double purity0 = (x0 * x0).trace().real();
    const double energy0 = (x0 * h.matrix()).trace().real();
    for (const auto& x : tr.matrices) {
      report.record("trace", std::abs(x.trace().real() - tr0) / scale, tol);
      report.record("spectrum",
                    spectrum_deviation(eig_hermitian(hermitian_part(x)).eigenvalues, spec0) / scale, tol);
      if (tr.picture == Picture::vonneumann) {
        report.record("purity", std::abs((x * x).trace().real() - purity0) / (scale * scale), tol);
        report.record("energy", std::abs((x * h.matrix()).trace().real() - energy0) /
                                    (scale * std::max(1.0, h.frobenius_norm())), tol);
      }
    }
  }

  // Product preservation by the flow map on random observables.
  Rng rng(seed);
  const std::size_t n = h.dim();
  const ComplexMatrix a = random_hermitian(n, rng).matrix();
  const ComplexMatrix b = random_hermitian(n, rng).matrix();
  const Picture map_picture = tr.picture == Picture::vonneumann ? Picture::vonneumann : Picture::heisenberg;
  EvolutionSpec map_spec = spec;
  map_spec.method = tr.method;
  auto phi = [&](const ComplexMatrix& x) { return flow_map(map_spec, map_picture, x); };
  const ComplexMatrix pa = phi(a), pb = phi(b);
  const double scale_ab = std::max(1.0, a.frobenius_norm() * b.frobenius_norm());
  report.record("jordan_product_preserved",
                distance(phi(jordan_product(a, b)), jordan_product(pa, pb)) / scale_ab, tol);
  report.record("lie_product_preserved",
                distance(phi(lie_bracket(a, b)), lie_bracket(pa, pb)) / scale_ab, tol);
  return report;
}

RefinementStudy rk4_refinement(const Observable& h, const StateVector& psi0, double t_final,
                               std::size_t steps, std::size_t levels, double hbar) {
  RefinementStudy study;
  for (std::size_t level = 0; level < levels; ++level) {
    EvolutionSpec spec{h, t_final, steps << level, hbar, Picture::schrodinger, Method::exact,
                       Execution::serial};
    const Trajectory exact = schrodinger_flow(spec, psi0);
    spec.method = Method::rk4;
    const Trajectory rk = schrodinger_flow(spec, psi0);
    double err = 0.0, drift = 0.0;
    for (std::size_t k = 0; k < rk.size(); ++k) {
      err = std::max(err, distance(rk.states[k], exact.states[k]));
      drift = std::max(drift, std::abs(rk.states[k].norm() - psi0.norm()));
    }
    study.steps.push_back(spec.steps);
    study.state_error.push_back(err);
    study.norm_drift.push_back(drift);
  }
  for (std::size_t k = 0; k + 1 < study.state_error.size(); ++k)
    study.orders.push_back(std::log2(study.state_error[k] / study.state_error[k + 1]));
  return study;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& tr, const Observable& h) {
  const std::size_t n = h.dim();
  out << "t";
  if (tr.picture == Picture::schrodinger) {
    for (std::size_t k = 0; k < n; ++k) out << ",re_" << k << ",im_" << k;
    out << ",norm,energy\n";
    for (std::size_t s = 0; s < tr.size(); ++s) {
      const StateVector& psi = tr.states[s];
      out << format_double(tr.times[s]);
      for (std::size_t k = 0; k < n; ++k)
        out << ',' << format_double(psi[k].real()) << ',' << format_double(psi[k].imag());
      out << ',' << format_double(psi.norm()) << ','
          << format_double(psi.norm() > kNormTol ? expectation(h, psi) : 0.0) << '\n';
    }
    return;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out << ",re_" << i << '_' << j << ",im_" << i << '_' << j;
  out << (tr.picture == Picture::heisenberg ? ",trace,overlap_h\n" : ",trace,purity,energy\n");
  for (std::size_t s = 0; s < tr.size(); ++s) {
    const ComplexMatrix& x = tr.matrices[s];
    out << format_double(tr.times[s]);
    for (const auto& z : x.data()) out << ',' << format_double(z.real()) << ',' << format_double(z.imag());
    const ComplexMatrix xh = x * h.matrix();
    out << ',' << format_double(x.trace().real());
    if (tr.picture == Picture::heisenberg) {
      out << ',' << format_double(0.5 * xh.trace().real()) << '\n';
    } else {
      out << ',' << format_double((x * x).trace().real()) << ',' << format_double(xh.trace().real())
          << '\n';
    }
  }
}

}  // namespace qgeom
