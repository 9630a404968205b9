#pragma once

#include <cstdint>
#include <optional>

#include "qho/oscillator.hpp"
#include "qho/report.hpp"

namespace qho {

struct VerifyConfig {
  OscillatorParams params = dimensionless_params();
  int n_max = 10;
  std::uint64_t seed = 42;
  /// When set, replaces every check's tolerance (used to exercise the failure path).
  std::optional<double> tol_override;
};

/// Runs every closed-form check against its reference and returns one entry
/// per check family. Random abscissae come from a generator seeded with
/// config.seed, so identical configs give identical reports.
VerificationReport run_verification(const VerifyConfig& config);

}  // namespace qho
