#include "qgeom/report.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "qgeom/matrix_io.hpp"

namespace qgeom {

VerificationReport::VerificationReport(std::string suite, ConventionSet conventions,
                                       std::uint64_t seed)
    : suite_(std::move(suite)), conventions_(std::move(conventions)), seed_(seed) {}

CheckResult& VerificationReport::find_or_add(const std::string& name) {
  auto it = std::find_if(checks_.begin(), checks_.end(),
                         [&](const CheckResult& c) { return c.name == name; });
  if (it != checks_.end()) return *it;
  checks_.push_back(CheckResult{name});
  return checks_.back();
}

void VerificationReport::record(const std::string& name, double residual, double tolerance) {
  CheckResult& c = find_or_add(name);
  c.tolerance = tolerance;
  c.max_residual = std::max(c.max_residual, residual);
  if (!(residual == residual)) c.max_residual = residual;  // NaN poisons the check
  ++c.samples;
  c.passed = c.expects_violation ? c.max_residual > c.tolerance : c.max_residual <= c.tolerance;
}

void VerificationReport::expect_violation(const std::string& name, double threshold) {
  CheckResult& c = find_or_add(name);
  c.expects_violation = true;
  c.tolerance = threshold;
  c.passed = c.max_residual > threshold;
}

const CheckResult& VerificationReport::check(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return c;
  throw std::out_of_range("no check named " + name + " in suite " + suite_);
}

bool VerificationReport::passed() const {
  return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json conventions_to_json(const ConventionSet& c) {
  return {{"hbar", c.hbar()},
          {"associator_constant", ConventionSet::associator_constant()},
          {"dispersion_kappa", ConventionSet::dispersion_kappa()},
          {"heisenberg_sign", ConventionSet::heisenberg_sign()},
          {"dual_flow_sign", ConventionSet::dual_flow_sign()},
          {"description", c.description()}};
}

nlohmann::json VerificationReport::to_json() const {
  nlohmann::json j;
  j["suite"] = suite_;
  j["seed"] = seed_;
  j["passed"] = passed();
  j["conventions"] = conventions_to_json(conventions_);
  j["parameters"] = nlohmann::json::object();
  for (const auto& [k, v] : parameters_) j["parameters"][k] = v;
  j["checks"] = nlohmann::json::array();
  for (const auto& c : checks_) {
    j["checks"].push_back({{"name", c.name},
                           {"max_residual", c.max_residual},
                           {"tolerance", c.tolerance},
                           {"samples", c.samples},
                           {"expects_violation", c.expects_violation},
                           {"passed", c.passed}});
  }
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : witnesses_) {
    nlohmann::json mats = nlohmann::json::object();
    for (const auto& [k, m] : w.matrices) mats[k] = nlohmann::json::parse(serialize_matrix(m));
    j["witnesses"].push_back({{"label", w.label}, {"residual", w.residual}, {"matrices", mats}});
  }
  return j;
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "suite " << suite_ << "  seed " << seed_ << "  " << (passed() ? "PASS" : "FAIL") << '\n';
  for (const auto& [k, v] : parameters_) out << "  param " << k << " = " << format_double(v) << '\n';
  for (const auto& c : checks_) {
    out << "  [" << (c.passed ? "PASS" : "FAIL") << "] " << c.name
        << "  max_residual=" << format_double(c.max_residual)
        << (c.expects_violation ? "  must_exceed=" : "  tol=") << format_double(c.tolerance)
        << "  samples=" << c.samples << '\n';
  }
  for (const auto& w : witnesses_) {
    out << "  witness " << w.label << "  residual=" << format_double(w.residual) << '\n';
    for (const auto& [k, m] : w.matrices) out << "    " << k << " = " << serialize_matrix(m) << '\n';
  }
  return out.str();
}

}  // namespace qgeom
