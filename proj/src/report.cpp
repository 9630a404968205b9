#include "qho/report.hpp"

#include <algorithm>
#include <cmath>

namespace qho {

CheckResult& VerificationReport::add(std::string name, std::string reference, double max_err,
                                     double tol, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.reference = std::move(reference);
  c.max_err = max_err;
  c.tol = tol;
  c.pass = !std::isnan(max_err) && max_err <= tol;
  c.detail = std::move(detail);
  checks.push_back(std::move(c));
  return checks.back();
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double VerificationReport::max_err() const {
  double m = 0.0;
  for (const auto& c : checks) {
    if (std::isnan(c.max_err)) return c.max_err;
    m = std::max(m, c.max_err);
  }
  return m;
}

std::vector<const CheckResult*> VerificationReport::failures() const {
  std::vector<const CheckResult*> out;
  for (const auto& c : checks) {
    if (!c.pass) out.push_back(&c);
  }
  return out;
}

}  // namespace qho
