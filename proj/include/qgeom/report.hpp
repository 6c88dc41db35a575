#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgeom/conventions.hpp"
#include "qgeom/matrix.hpp"

namespace qgeom {

/// Max residual of one identity over all samples, against its tolerance.
struct CheckResult {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  std::size_t samples = 0;
  bool passed = true;
  /// For checks that must FAIL (non-involutivity), passed means "violation found".
  bool expects_violation = false;
};

/// Concrete inputs that exhibit a property, e.g. a non-involutivity witness.
struct Witness {
  std::string label;
  double residual = 0.0;
  std::map<std::string, ComplexMatrix> matrices;
};

/// Structured record of residuals, pass/fail flags, tolerances and seeds.
class VerificationReport {
 public:
  VerificationReport(std::string suite, ConventionSet conventions, std::uint64_t seed);

  const std::string& suite() const noexcept { return suite_; }
  const ConventionSet& conventions() const noexcept { return conventions_; }
  std::uint64_t seed() const noexcept { return seed_; }

  /// Records a residual for the named check; creates the check on first use.
  void record(const std::string& check, double residual, double tolerance);
  /// Marks a check as expecting a violation larger than `threshold`.
  void expect_violation(const std::string& check, double threshold);
  void add_witness(Witness w) { witnesses_.push_back(std::move(w)); }
  void set_parameter(const std::string& key, double value) { parameters_[key] = value; }

  const std::vector<CheckResult>& checks() const noexcept { return checks_; }
  const std::vector<Witness>& witnesses() const noexcept { return witnesses_; }
  const CheckResult& check(const std::string& name) const;
  bool passed() const;

  nlohmann::json to_json() const;
  std::string to_text() const;

 private:
  CheckResult& find_or_add(const std::string& name);

  std::string suite_;
  ConventionSet conventions_;
  std::uint64_t seed_;
  std::map<std::string, double> parameters_;
  std::vector<CheckResult> checks_;
  std::vector<Witness> witnesses_;
};

nlohmann::json conventions_to_json(const ConventionSet& c);

}  // namespace qgeom
