#pragma once

#include <string>
#include <vector>

namespace qho {

/// One closed-form-vs-reference comparison.
struct CheckResult {
  std::string name;
  std::string reference;  // which formula or identity the check exercises
  double max_err = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;  // free text: worst case location, failure notes
};

/// Failures are recorded, never thrown.
struct VerificationReport {
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  /// Appends a check; pass is max_err <= tol (and max_err is not NaN).
  CheckResult& add(std::string name, std::string reference, double max_err, double tol,
                   std::string detail = {});
  void merge(const VerificationReport& other);

  bool all_pass() const;
  double max_err() const;
  std::vector<const CheckResult*> failures() const;
};

/// Running maximum that keeps the location of the worst case.
struct WorstCase {
  double err = 0.0;
  std::string where;

  void update(double e, const std::string& location) {
    if (!(e <= err)) {  // NaN also lands here
      err = e;
      where = location;
    }
  }
};

}  // namespace qho
