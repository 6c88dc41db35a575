#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "qgeom/algebra.hpp"
#include "qgeom/distributions.hpp"
#include "qgeom/dual_geometry.hpp"
#include "qgeom/dynamics.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/kahler.hpp"
#include "qgeom/linalg.hpp"
#include "qgeom/matrix_io.hpp"
#include "qgeom/random.hpp"

namespace qgeom::cli {
namespace {

using nlohmann::json;

// eigen: agreement with the Jacobi oracle and dispersion at the returned vector
constexpr double kEigenAgreementTol = 1e-8;
constexpr double kEigenDispersionTol = 1e-8;
// su2demo: golden values are exact up to rounding
constexpr double kGoldenTol = 1e-12;

Execution execution_of(const CommonOptions& c) { return c.serial ? Execution::serial : Execution::parallel; }

json matrix_json(const ComplexMatrix& m) { return json::parse(serialize_matrix(m)); }
json state_json(const StateVector& v) { return json::parse(serialize_state(v)); }

std::string describe_parse_error(const std::string& path, const ParseError& e) {
  return path + ": " + e.what();
}

ComplexMatrix load_matrix(const std::string& path, const char* what) {
  if (path.empty()) throw UsageError(std::string("missing --") + what + " FILE");
  try {
    return parse_matrix(read_text_file(path));
  } catch (const ParseError& e) {
    throw UsageError(describe_parse_error(path, e));
  } catch (const DimensionError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Observable load_hermitian(const std::string& path, const char* what) {
  ComplexMatrix m = load_matrix(path, what);
  if (!is_hermitian(m)) throw UsageError(path + ": matrix is not Hermitian (--" + what + ")");
  return Observable(std::move(m));
}

StateVector load_state(const std::string& path) {
  if (path.empty()) throw UsageError("missing --initial FILE");
  try {
    return parse_state(read_text_file(path));
  } catch (const ParseError& e) {
    throw UsageError(describe_parse_error(path, e));
  }
}

void require_dims(std::size_t a, std::size_t b, const std::string& what) {
  if (a != b)
    throw UsageError(what + ": dimension mismatch (" + std::to_string(a) + " vs " + std::to_string(b) + ")");
}

json common_parameters(const CommonOptions& c) {
  return {{"dim", c.dim}, {"trials", c.trials}, {"seed", c.seed}, {"tol", c.tol},
          {"threads", kernels::thread_count()}, {"execution", c.serial ? "serial" : "parallel"}};
}

Outcome make_outcome(const std::string& command, const ConventionSet& conventions, json parameters,
                     const std::vector<VerificationReport>& reports, json results, bool extra_ok = true) {
  bool passed = extra_ok;
  json rs = json::array();
  for (const auto& r : reports) {
    passed = passed && r.passed();
    rs.push_back(r.to_json());
  }
  Outcome out;
  out.envelope = {{"command", command},
                  {"passed", passed},
                  {"exit_code", passed ? 0 : 1},
                  {"conventions", conventions_to_json(conventions)},
                  {"parameters", std::move(parameters)},
                  {"reports", std::move(rs)},
                  {"results", std::move(results)}};
  return out;
}

json ranks_at(const DualElement& xi) {
  json ranks = json::object();
  for (auto kind : {DistributionKind::Lambda, DistributionKind::R, DistributionKind::Zero, DistributionKind::One})
    ranks[to_string(kind)] = distribution_basis(xi, kind).rank;
  return ranks;
}

std::vector<VerificationReport> involutivity_all(std::size_t n, const CommonOptions& c) {
  std::vector<VerificationReport> out;
  InvolutivityOptions opts;
  opts.execution = execution_of(c);
  opts.tol = c.tol;
  for (auto kind : {DistributionKind::Lambda, DistributionKind::R, DistributionKind::Zero, DistributionKind::One})
    out.push_back(involutivity_evidence(kind, n, c.trials, c.seed, opts));
  return out;
}

}  // namespace

Outcome run_verify(const CommonOptions& c) {
  const ConventionSet conventions{};
  const Execution exec = execution_of(c);
  JordanLieOptions jl;
  jl.execution = exec;
  std::vector<VerificationReport> reports;
  reports.push_back(verify_jordan_lie(c.dim, c.trials, c.seed, c.tol, jl));
  reports.push_back(verify_dual_geometry(c.dim, c.trials, c.seed, c.tol, exec));
  reports.push_back(verify_commutation(c.dim, c.trials, c.seed, c.tol, exec));
  json results = json::object();
  if (c.dim >= 2) {
    for (auto& r : involutivity_all(c.dim, c)) reports.push_back(std::move(r));
  } else {
    results["involutivity"] = "skipped: distributions need dim >= 2";
  }
  reports.push_back(pullback_suite(c.dim, c.trials, c.seed, c.tol, exec));
  reports.push_back(verify_dispersion(c.dim, c.trials, c.seed, c.tol, exec));
  json suites = json::object();
  for (const auto& r : reports) suites[r.suite()] = r.passed();
  results["suites"] = suites;
  return make_outcome("verify", conventions, common_parameters(c), reports, results);
}

Outcome run_evolve(const CommonOptions& c, const EvolveOptions& o) {
  EvolutionSpec spec;
  try {
    spec.picture = parse_picture(o.picture);
    spec.method = parse_method(o.method);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  spec.hamiltonian = load_hermitian(o.hamiltonian, "hamiltonian");
  spec.t_final = o.t;
  spec.steps = o.steps;
  spec.hbar = o.hbar;
  spec.execution = execution_of(c);
  try {
    spec.validate();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  if (o.check_mu && spec.picture != Picture::schrodinger)
    throw UsageError("--check-mu needs --picture schrodinger");
  const std::size_t n = spec.hamiltonian.dim();
  const ConventionSet conventions(spec.hbar);

  json parameters = common_parameters(c);
  parameters["dim"] = n;
  parameters["picture"] = to_string(spec.picture);
  parameters["method"] = to_string(spec.method);
  parameters["t"] = spec.t_final;
  parameters["steps"] = spec.steps;
  parameters["hbar"] = spec.hbar;
  parameters["hamiltonian"] = o.hamiltonian;
  parameters["initial"] = o.initial;

  json results = json::object();
  Trajectory traj;
  StateVector psi0;
  if (spec.picture == Picture::schrodinger) {
    psi0 = load_state(o.initial);
    require_dims(n, psi0.dim(), "--initial");
    traj = schrodinger_flow(spec, psi0);
  } else {
    ComplexMatrix x0 = load_matrix(o.initial, "initial");
    require_dims(n, x0.dim(), "--initial");
    if (!is_hermitian(x0)) throw UsageError(o.initial + ": initial matrix is not Hermitian");
    if (spec.picture == Picture::heisenberg) {
      traj = heisenberg_flow(spec, Observable(std::move(x0)));
    } else {
      DualElement xi0(std::move(x0));
      const bool state = is_state(xi0);
      results["initial_is_state"] = state;
      if (!state)
        std::cerr << "warning: initial dual element is not a state (not positive semidefinite with unit "
                     "trace); evolving it anyway\n";
      traj = vonneumann_flow(spec, xi0);
    }
  }

  std::ostringstream csv;
  write_trajectory_csv(csv, traj, spec.hamiltonian);
  results["samples"] = traj.size();
  results["csv_columns"] = [&] {
    std::string header = csv.str().substr(0, csv.str().find('\n'));
    json cols = json::array();
    std::istringstream in(header);
    for (std::string col; std::getline(in, col, ',');) cols.push_back(col);
    return cols;
  }();

  std::vector<VerificationReport> reports;
  VerificationReport conserved = conserved_report(spec, traj, c.seed, c.tol);
  // RK4 drift is expected; it is reported but does not fail the command
  if (spec.method == Method::exact) {
    reports.push_back(conserved);
  } else {
    results["drift"] = conserved.to_json();
  }
  if (o.check_mu) {
    const Observable a = o.observable.empty() ? random_hermitian(n, c.seed) : load_hermitian(o.observable, "observable");
    require_dims(n, a.dim(), "--observable");
    reports.push_back(mu_relatedness_check(spec, psi0, a, c.tol));
  }
  Outcome out = make_outcome("evolve", conventions, parameters, reports, results);
  out.side_output = csv.str();
  return out;
}

Outcome run_eigen(const CommonOptions& c, const EigenOptions& o) {
  const Observable a = load_hermitian(o.op, "operator");
  const std::size_t n = a.dim();
  GradientFlowOptions flow;
  if (o.direction == "ascent") {
    flow.direction = FlowDirection::ascent;
  } else if (o.direction != "descent") {
    throw UsageError("--direction must be ascent or descent");
  }
  if (o.step < 0.0) throw UsageError("--step must be positive (0 selects 0.1/||A||_F)");
  if (o.count < 1 || o.count > n) throw UsageError("--count must be between 1 and the matrix dimension");
  flow.step = o.step;
  flow.tol = c.tol;
  flow.max_iter = o.max_iter;

  const ConventionSet conventions{};
  json parameters = common_parameters(c);
  parameters["dim"] = n;
  parameters["operator"] = o.op;
  parameters["direction"] = o.direction;
  parameters["step"] = o.step > 0.0 ? o.step : 0.1 / std::max(a.frobenius_norm(), 1e-300);
  parameters["max_iter"] = o.max_iter;
  parameters["count"] = o.count;

  const SpectralDecomposition oracle = eig_hermitian(a);
  std::vector<double> expected = oracle.eigenvalues;
  if (flow.direction == FlowDirection::ascent) std::reverse(expected.begin(), expected.end());

  VerificationReport report("eigen", conventions, c.seed);
  report.set_parameter("dim", static_cast<double>(n));
  json results = json::object();
  results["oracle_spectrum"] = oracle.eigenvalues;

  Rng rng(derive_seed(c.seed, 0));
  const StateVector psi0 = random_state_vector(n, rng);
  const double scale = std::max(1.0, a.frobenius_norm() * a.frobenius_norm());
  report.record("kappa_identity_at_start",
                std::abs(gradient_norm_squared(a, psi0) -
                         ConventionSet::dispersion_kappa() * dispersion(a, psi0) / psi0.norm_squared()) / scale,
                c.tol);

  std::vector<GradientFlowResult> found;
  try {
    if (o.count == 1) {
      found.push_back(eigensolve_gradient_flow(a, psi0, flow));
    } else {
      found = deflated_eigensolve(a, o.count, c.seed, flow);
    }
    results["converged"] = true;
  } catch (const NumericalError& e) {
    results["converged"] = false;
    results["message"] = e.what();
    report.record("converged", e.residual(), c.tol);
    return make_outcome("eigen", conventions, parameters, {report}, results);
  }

  json pairs = json::array();
  for (std::size_t k = 0; k < found.size(); ++k) {
    const auto& r = found[k];
    const double disp = dispersion(a, r.eigenvector);
    report.record("converged", r.residual, c.tol);
    report.record("oracle_agreement", std::abs(r.eigenvalue - expected[k]), kEigenAgreementTol);
    report.record("dispersion_at_convergence", disp, kEigenDispersionTol);
    pairs.push_back({{"eigenvalue", r.eigenvalue},
                     {"oracle_eigenvalue", expected[k]},
                     {"abs_error", std::abs(r.eigenvalue - expected[k])},
                     {"residual", r.residual},
                     {"iterations", r.iterations},
                     {"dispersion", disp},
                     {"eigenvector", state_json(r.eigenvector)}});
  }
  results["eigenvalue"] = found.front().eigenvalue;
  results["eigenpairs"] = pairs;
  return make_outcome("eigen", conventions, parameters, {report}, results);
}

Outcome run_star(const CommonOptions& c, const StarOptions& o) {
  const Observable a = load_hermitian(o.a, "a");
  const Observable b = load_hermitian(o.b, "b");
  const ComplexMatrix xm = load_matrix(o.xi, "xi");
  if (!is_hermitian(xm)) throw UsageError(o.xi + ": matrix is not Hermitian (--xi)");
  require_dims(a.dim(), b.dim(), "--b");
  require_dims(a.dim(), xm.dim(), "--xi");
  const DualElement xi(xm);

  const ConventionSet conventions{};
  const cplx star = star_eval(a, b, xi);
  const double r = r_eval(a, b, xi);
  const double lam = lambda_eval(a, b, xi);
  const StarGenerator g = star_generator(a, b);
  const double scale = std::max(1.0, a.frobenius_norm() * b.frobenius_norm() * xi.frobenius_norm());

  VerificationReport report("star", conventions, c.seed);
  report.record("star_equals_half_r_plus_half_i_lambda", std::abs(star - cplx(0.5 * r, 0.5 * lam)) / scale, c.tol);
  report.record("generator_equals_product",
                distance(g.jordan.matrix() + cplx(0, 1) * g.lie.matrix(), a.matrix() * b.matrix()) /
                    std::max(1.0, a.frobenius_norm() * b.frobenius_norm()),
                c.tol);
  json results = {{"star", {{"re", star.real()}, {"im", star.imag()}}},
                  {"jordan_part", 0.5 * r},
                  {"lie_part", 0.5 * lam},
                  {"r", r},
                  {"lambda", lam},
                  {"jordan_generator", matrix_json(g.jordan.matrix())},
                  {"lie_generator", matrix_json(g.lie.matrix())}};
  json parameters = common_parameters(c);
  parameters["dim"] = a.dim();
  return make_outcome("star", conventions, parameters, {report}, results);
}

Outcome run_distributions(const CommonOptions& c, const DistributionsOptions& o) {
  DualElement xi;
  if (o.xi.empty()) {
    xi = as<DualElement>(random_hermitian(c.dim, c.seed));
  } else {
    ComplexMatrix m = load_matrix(o.xi, "xi");
    if (!is_hermitian(m)) throw UsageError(o.xi + ": matrix is not Hermitian (--xi)");
    xi = DualElement(std::move(m));
  }
  const std::size_t n = xi.dim();
  const ConventionSet conventions{};
  json parameters = common_parameters(c);
  parameters["dim"] = n;
  parameters["xi"] = o.xi.empty() ? "random" : o.xi;

  const OrbitInvariants inv = orbit_invariants(xi);
  json results = {{"point", matrix_json(xi.matrix())},
                  {"ranks", ranks_at(xi)},
                  {"orbit", {{"spectrum", inv.spectrum}, {"rank", inv.rank}, {"signature", inv.signature}}}};
  std::vector<VerificationReport> reports;
  if (n >= 2) {
    reports = involutivity_all(n, c);
  } else {
    results["involutivity"] = "skipped: distributions need dim >= 2";
  }
  return make_outcome("distributions", conventions, parameters, reports, results);
}

Outcome run_su2demo(const CommonOptions& c) {
  const ConventionSet conventions{};
  const Su2Tables t = su2_golden_tables();
  const ComplexMatrix& U = t.basis[0].matrix();
  const ComplexMatrix& X = t.basis[1].matrix();
  const ComplexMatrix& Y = t.basis[2].matrix();
  const ComplexMatrix& Z = t.basis[3].matrix();
  const cplx i{0, 1};

  VerificationReport report("su2_golden", conventions, c.seed);
  report.record("star_Z_Y_equals_minus_i_X", distance(t.star[3][2], -i * X), kGoldenTol);
  report.record("star_X_Y_equals_i_Z", distance(t.star[1][2], i * Z), kGoldenTol);
  report.record("star_Z_X_equals_i_Y", distance(t.star[3][1], i * Y), kGoldenTol);
  report.record("lambda_x_y_equals_2z", distance(t.lambda[1][2], cplx(2) * Z), kGoldenTol);
  report.record("lambda_y_z_equals_2x", distance(t.lambda[2][3], cplx(2) * X), kGoldenTol);
  report.record("lambda_z_x_equals_2y", distance(t.lambda[3][1], cplx(2) * Y), kGoldenTol);
  double central = 0.0;
  for (int a = 0; a < 4; ++a) central = std::max(central, t.lambda[0][a].frobenius_norm());
  report.record("lambda_u_is_central", central, kGoldenTol);
  report.record("r_u_x_equals_2x", distance(t.r[0][1], cplx(2) * X), kGoldenTol);
  report.record("r_x_x_equals_2u", distance(t.r[1][1], cplx(2) * U), kGoldenTol);

  json readable = json::object();
  const char* names[] = {"lambda", "r", "star"};
  const std::array<std::array<ComplexMatrix, 4>, 4>* tables[] = {&t.lambda, &t.r, &t.star};
  for (int k = 0; k < 3; ++k) {
    json table = json::object();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) table[t.names[a] + "," + t.names[b]] = t.describe((*tables[k])[a][b]);
    readable[names[k]] = table;
  }
  json results = {{"tables", readable}, {"generators", t.to_json()}};
  json parameters = {{"seed", c.seed}, {"tol", kGoldenTol}};
  return make_outcome("su2demo", conventions, parameters, {report}, results);
}

namespace {

std::string number_text(const json& v) {
  if (v.is_number_float()) return format_double(v.get<double>());
  return v.dump();
}

bool is_matrix(const json& v) { return v.is_object() && v.contains("dim") && v.contains("data"); }

void render_value(std::ostringstream& out, const std::string& key, const json& v, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (v.is_object() && !is_matrix(v)) {
    out << pad << key << ":\n";
    for (const auto& [k, item] : v.items()) render_value(out, k, item, depth + 1);
    return;
  }
  out << pad << key << " = ";
  if (v.is_number()) {
    out << number_text(v);
  } else if (v.is_string()) {
    out << v.get<std::string>();
  } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_number(); })) {
    out << '[';
    for (std::size_t k = 0; k < v.size(); ++k) out << (k ? ", " : "") << number_text(v[k]);
    out << ']';
  } else if (v.is_array() && !v.empty() && v[0].is_object() && !is_matrix(v[0])) {
    out << '\n';
    for (std::size_t k = 0; k < v.size(); ++k) render_value(out, "[" + std::to_string(k) + "]", v[k], depth + 1);
    return;
  } else {
    out << v.dump();
  }
  out << '\n';
}

void render_report(std::ostringstream& out, const json& r) {
  out << "report " << r["suite"].get<std::string>() << "  seed " << r["seed"].dump() << "  "
      << (r["passed"].get<bool>() ? "PASS" : "FAIL") << '\n';
  for (const auto& [k, v] : r["parameters"].items()) out << "  param " << k << " = " << number_text(v) << '\n';
  for (const auto& ch : r["checks"]) {
    const bool violation = ch["expects_violation"].get<bool>();
    out << "  [" << (ch["passed"].get<bool>() ? "PASS" : "FAIL") << "] " << ch["name"].get<std::string>()
        << "  max_residual=" << (ch["max_residual"].is_null() ? "nan" : number_text(ch["max_residual"]))
        << (violation ? "  must_exceed=" : "  tol=") << number_text(ch["tolerance"])
        << "  samples=" << ch["samples"].dump() << '\n';
  }
  for (const auto& w : r["witnesses"]) {
    out << "  witness " << w["label"].get<std::string>() << "  residual=" << number_text(w["residual"]) << '\n';
    for (const auto& [k, m] : w["matrices"].items()) out << "    " << k << " = " << m.dump() << '\n';
  }
}

}  // namespace

std::string render_text(const json& e) {
  std::ostringstream out;
  out << "qgeom " << e["command"].get<std::string>() << ": " << (e["passed"].get<bool>() ? "PASS" : "FAIL")
      << " (exit " << e["exit_code"].dump() << ")\n";
  render_value(out, "conventions", e["conventions"], 0);
  render_value(out, "parameters", e["parameters"], 0);
  for (const auto& r : e["reports"]) render_report(out, r);
  render_value(out, "results", e["results"], 0);
  return out.str();
}

}  // namespace qgeom::cli
