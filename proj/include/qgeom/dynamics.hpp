#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "qgeom/conventions.hpp"
#include "qgeom/matrix.hpp"
#include "qgeom/report.hpp"

namespace qgeom {

enum class Picture { schrodinger, heisenberg, vonneumann };
enum class Method { exact, rk4 };

std::string to_string(Picture p);
std::string to_string(Method m);
Picture parse_picture(const std::string& text);
Method parse_method(const std::string& text);

/// Time-independent evolution over [0, t_final] sampled at steps + 1
/// uniformly spaced times (both endpoints included).
struct EvolutionSpec {
  Observable hamiltonian;
  double t_final = 1.0;
  std::size_t steps = 100;
  double hbar = 1.0;
  Picture picture = Picture::schrodinger;
  Method method = Method::exact;
  Execution execution = Execution::parallel;

  /// Throws DomainError for steps == 0, non-finite t_final or hbar <= 0.
  void validate() const;
  double time(std::size_t k) const;
};

struct Trajectory {
  Picture picture = Picture::schrodinger;
  Method method = Method::exact;
  std::vector<double> times;
  std::vector<StateVector> states;      // Schrodinger picture
  std::vector<ComplexMatrix> matrices;  // Heisenberg / von Neumann pictures

  std::size_t size() const noexcept { return times.size(); }
};

/// psi(t) = exp(-i t H / hbar) psi0  (or RK4 if spec.method == rk4).
Trajectory schrodinger_flow(const EvolutionSpec& spec, const StateVector& psi0);
/// A(t) = U(t)^dagger A0 U(t), i.e. dA/dt = -[H, A]_- / hbar.
Trajectory heisenberg_flow(const EvolutionSpec& spec, const Observable& a0);
/// xi(t) = U(t) xi0 U(t)^dagger, i.e. d xi/dt = [H, xi]_- / hbar.
Trajectory vonneumann_flow(const EvolutionSpec& spec, const DualElement& xi0);

using InitialValue = std::variant<StateVector, ComplexMatrix>;

/// Classic fourth-order Runge-Kutta on the picture's linear ODE, one step per
/// sample interval. StateVector initial values require the Schrodinger picture.
Trajectory rk4_flow(const EvolutionSpec& spec, const InitialValue& initial);

/// At every sample: mu(psi(t)) against the von Neumann flow of mu(psi0), and
/// <psi(t)|A psi(t)> against <psi0|A(t) psi0> from the Heisenberg flow, and
/// hat(A)(mu psi(t)) against f_A(psi(t)). Schrodinger and Heisenberg flows use
/// spec.method; the von Neumann reference is exact.
VerificationReport mu_relatedness_check(const EvolutionSpec& spec, const StateVector& psi0,
                                        const Observable& a, double tol);

/// Maximum deviation over the trajectory of the quantities each picture
/// conserves (norm, energy, trace, spectrum, purity), plus preservation of the
/// Jordan and Lie products by the picture's flow map on random A, B.
VerificationReport conserved_report(const EvolutionSpec& spec, const Trajectory& trajectory,
                                    std::uint64_t seed, double tol = 1e-9);

/// Error of RK4 against the exact Schrodinger flow at t_final for step counts
/// steps, 2 steps, 4 steps, ...
struct RefinementStudy {
  std::vector<std::size_t> steps;
  std::vector<double> state_error;  // max over samples of |psi_rk4 - psi_exact|
  std::vector<double> norm_drift;   // max over samples of | |psi| - |psi0| |
  std::vector<double> orders;       // log2(error_k / error_{k+1})
};

RefinementStudy rk4_refinement(const Observable& h, const StateVector& psi0, double t_final,
                               std::size_t steps, std::size_t levels, double hbar = 1.0);

/// CSV with a header row. Columns:
///   schrodinger: t, re_0, im_0, ..., re_{n-1}, im_{n-1}, norm, energy
///   heisenberg:  t, re_i_j, im_i_j (row-major), trace, overlap_h
///   vonneumann:  t, re_i_j, im_i_j (row-major), trace, purity, energy
/// energy is <psi|H psi>/<psi|psi> or Tr(xi H); overlap_h is Tr(A H)/2.
/// Every monitored column is conserved by the exact flow.
void write_trajectory_csv(std::ostream& out, const Trajectory& trajectory, const Observable& h);

}  // namespace qgeom
