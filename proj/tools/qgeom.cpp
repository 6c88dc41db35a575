#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "qgeom/errors.hpp"
#include "qgeom/kernels.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;

const char* kExitCodes =
    "Exit codes: 0 success, 1 verification or convergence failure, 2 usage or input error.\n"
    "Threads: --threads, else the QGEOM_THREADS environment variable, else the OpenMP default.";

void add_common(CLI::App* sub, qgeom::cli::CommonOptions& c, bool with_dim = true) {
  if (with_dim) sub->add_option("--dim", c.dim, "Matrix dimension n")->check(CLI::Range(1, 64))->capture_default_str();
  sub->add_option("--trials", c.trials, "Random trials per suite")->check(CLI::Range(1, 1000000))->capture_default_str();
  sub->add_option("--seed", c.seed, "Base seed; trial i uses stream i")->capture_default_str();
  sub->add_option("--tol", c.tol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  sub->add_flag("--json", c.json, "Emit the JSON report (see schemas/report.schema.json)");
  sub->add_option("--output", c.output, "Write the report (evolve: the trajectory CSV) to FILE");
  sub->add_option("--threads", c.threads, "OpenMP thread count")->check(CLI::Range(1, 1024));
  sub->add_flag("--serial", c.serial, "Run trial loops on the serial reference path");
}

void configure_threads(int requested) {
  int threads = requested;
  if (threads == 0) {
    if (const char* env = std::getenv("QGEOM_THREADS")) {
      try {
        threads = std::stoi(env);
      } catch (const std::exception&) {
        throw qgeom::cli::UsageError(std::string("QGEOM_THREADS is not an integer: ") + env);
      }
      if (threads < 1) throw qgeom::cli::UsageError("QGEOM_THREADS must be positive");
    }
  }
  if (threads > 0) qgeom::kernels::set_thread_count(threads);
}

void emit(const qgeom::cli::CommonOptions& c, const qgeom::cli::Outcome& out, bool report_to_stderr) {
  const std::string text = c.json ? out.envelope.dump(2) + "\n" : qgeom::cli::render_text(out.envelope);
  if (!c.output.empty() && !report_to_stderr && out.side_output.empty()) {
    std::ofstream f(c.output);
    if (!f) throw qgeom::cli::UsageError("cannot write " + c.output);
    f << text;
    return;
  }
  (report_to_stderr ? std::cerr : std::cout) << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qgeom: geometric quantum mechanics toolkit"};
  app.footer(kExitCodes);
  app.require_subcommand(1);

  qgeom::cli::CommonOptions common;
  qgeom::cli::EvolveOptions evolve;
  qgeom::cli::EigenOptions eigen;
  qgeom::cli::StarOptions star;
  qgeom::cli::DistributionsOptions dist;

  auto* verify = app.add_subcommand(
      "verify", "Jordan-Lie identities, dual-space tensors, commutation of J and R, involutivity of the four "
                "distributions, momentum-map pullbacks and the dispersion identity");
  add_common(verify, common);

  auto* ev = app.add_subcommand(
      "evolve",
      "Evolve in one picture and write a trajectory CSV.\n"
      "Columns: schrodinger: t, re_k, im_k (k = 0..n-1), norm, energy; "
      "heisenberg: t, re_i_j, im_i_j (row-major), trace, overlap_h = Tr(A H)/2; "
      "vonneumann: t, re_i_j, im_i_j, trace, purity, energy = Tr(xi H).\n"
      "With --output the CSV goes to FILE and the report to stdout; otherwise the CSV goes to stdout and "
      "the report to stderr.");
  add_common(ev, common, false);
  ev->add_option("--picture", evolve.picture, "schrodinger, heisenberg or vonneumann")
      ->check(CLI::IsMember({"schrodinger", "heisenberg", "vonneumann"}))
      ->capture_default_str();
  ev->add_option("--method", evolve.method, "exact or rk4")->check(CLI::IsMember({"exact", "rk4"}))->capture_default_str();
  ev->add_option("--hamiltonian", evolve.hamiltonian, "Hamiltonian matrix JSON")->required();
  ev->add_option("--initial", evolve.initial, "Initial state vector (schrodinger) or matrix JSON")->required();
  ev->add_option("--observable", evolve.observable, "Observable for --check-mu (default: random from --seed)");
  ev->add_option("--t", evolve.t, "Final time")->capture_default_str();
  ev->add_option("--steps", evolve.steps, "Sample intervals (steps + 1 samples)")->check(CLI::Range(1, 100000000))->capture_default_str();
  ev->add_option("--hbar", evolve.hbar, "Reduced Planck constant")->check(CLI::PositiveNumber)->capture_default_str();
  ev->add_flag("--check-mu", evolve.check_mu, "Also check mu-relatedness of the Schrodinger and von Neumann flows");

  auto* eg = app.add_subcommand("eigen", "Extremal eigenpair by gradient flow of the expectation value, compared "
                                         "with the Jacobi eigensolver");
  add_common(eg, common, false);
  eg->add_option("--operator", eigen.op, "Hermitian matrix JSON")->required();
  eg->add_option("--direction", eigen.direction, "descent (lowest) or ascent (highest)")
      ->check(CLI::IsMember({"ascent", "descent"}))
      ->capture_default_str();
  eg->add_option("--step", eigen.step, "Flow step; 0 selects 0.1/||A||_F")->check(CLI::NonNegativeNumber)->capture_default_str();
  eg->add_option("--max-iter", eigen.max_iter, "Iteration limit")->check(CLI::PositiveNumber)->capture_default_str();
  eg->add_option("--count", eigen.count, "Eigenpairs to find by deflation")->check(CLI::PositiveNumber)->capture_default_str();

  auto* st = app.add_subcommand("star", "Star product of hat(A) and hat(B) at xi with its Jordan and Lie parts");
  add_common(st, common, false);
  st->add_option("--a", star.a, "Observable A (matrix JSON)")->required();
  st->add_option("--b", star.b, "Observable B (matrix JSON)")->required();
  st->add_option("--xi", star.xi, "Point xi of the dual space (matrix JSON)")->required();

  auto* ds = app.add_subcommand("distributions", "Ranks of D_Lambda, D_R, D_0, D_1 and orbit invariants at xi, "
                                                 "plus involutivity evidence");
  add_common(ds, common);
  ds->add_option("--xi", dist.xi, "Point xi (matrix JSON); default: random of size --dim");

  auto* su = app.add_subcommand("su2demo", "Spin-1/2 golden tables and the three star values");
  add_common(su, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    configure_threads(common.threads);
    qgeom::cli::Outcome out;
    bool report_to_stderr = false;
    if (verify->parsed()) {
      out = qgeom::cli::run_verify(common);
    } else if (ev->parsed()) {
      out = qgeom::cli::run_evolve(common, evolve);
      if (common.output.empty()) {
        std::cout << out.side_output;
        report_to_stderr = true;
      } else {
        std::ofstream f(common.output);
        if (!f) throw qgeom::cli::UsageError("cannot write " + common.output);
        f << out.side_output;
      }
    } else if (eg->parsed()) {
      out = qgeom::cli::run_eigen(common, eigen);
    } else if (st->parsed()) {
      out = qgeom::cli::run_star(common, star);
    } else if (ds->parsed()) {
      out = qgeom::cli::run_distributions(common, dist);
    } else {
      out = qgeom::cli::run_su2demo(common);
    }
    emit(common, out, report_to_stderr);
    return out.exit_code();
  } catch (const qgeom::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const qgeom::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const qgeom::DimensionError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const qgeom::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitUsage;
}
