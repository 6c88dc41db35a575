#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace qgeom::cli {

/// Bad flags or unusable input; maps to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::size_t dim = 4;
  std::size_t trials = 100;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  bool json = false;
  std::string output;
  int threads = 0;  // 0: QGEOM_THREADS or the OpenMP default
  bool serial = false;
};

struct EvolveOptions {
  std::string picture = "schrodinger";
  std::string method = "exact";
  std::string hamiltonian;
  std::string initial;
  std::string observable;
  double t = 1.0;
  std::size_t steps = 100;
  double hbar = 1.0;
  bool check_mu = false;
};

struct EigenOptions {
  std::string op;
  std::string direction = "descent";
  double step = 0.0;
  std::size_t max_iter = 100000;
  std::size_t count = 1;
};

struct StarOptions {
  std::string a, b, xi;
};

struct DistributionsOptions {
  std::string xi;
};

/// Envelope: {command, passed, exit_code, conventions, parameters, reports, results}.
/// exit_code is 0 when every report passed and 1 otherwise.
struct Outcome {
  nlohmann::json envelope;
  std::string side_output;  // evolve: the trajectory CSV
  int exit_code() const { return envelope.at("exit_code").get<int>(); }
};

Outcome run_verify(const CommonOptions& common);
Outcome run_evolve(const CommonOptions& common, const EvolveOptions& opts);
Outcome run_eigen(const CommonOptions& common, const EigenOptions& opts);
Outcome run_star(const CommonOptions& common, const StarOptions& opts);
Outcome run_distributions(const CommonOptions& common, const DistributionsOptions& opts);
Outcome run_su2demo(const CommonOptions& common);

/// Human-readable rendering of an envelope; numbers use the same shortest
/// round-trip text as the JSON form.
std::string render_text(const nlohmann::json& envelope);

}  // namespace qgeom::cli
