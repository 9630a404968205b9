#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qho/oscillator.hpp"

namespace qho::cli {

enum ExitCode : int { kPass = 0, kVerifyFailed = 1, kUsage = 2, kIo = 3 };

/// Raised for flag values that parse but violate a module precondition.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an output file cannot be written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json };

struct RunConfig {
  std::string command;
  std::vector<int> n_list{0, 1, 2, 3};
  int n_max = 10;
  Axis axis = Axis::coordinate;
  double range_lo = -4.0;
  double range_hi = 4.0;
  int samples = 801;
  UnitMode mode = UnitMode::dimensionless;
  double m = 1.0;
  double omega = 1.0;
  double hbar = 2.0;
  std::string out;  // directory for profile, file for the others
  Format format = Format::json;
  std::uint64_t seed = 42;
  std::optional<double> tol;
};

/// "3", "0..3", "0,2,5" or a mix such as "0..2,7". Throws UsageError.
std::vector<int> parse_n_list(const std::string& text);
/// "lo:hi" with lo < hi. Throws UsageError.
std::pair<double, double> parse_range(const std::string& text);

/// %.17g
std::string format_number(double v);

/// Writes to path + ".tmp" then renames over path. Throws IoError.
void write_atomic(const std::string& path, const std::string& content);

OscillatorParams params_of(const RunConfig& config);

/// Each returns an ExitCode. Usage and I/O failures surface as exceptions
/// that run_command maps onto exit codes.
int cmd_profile(const RunConfig& config);
int cmd_moments(const RunConfig& config);
int cmd_coeffs(const RunConfig& config);
int cmd_verify(const RunConfig& config);
int cmd_residual(const RunConfig& config);

/// Dispatches on config.command, translating exceptions into exit codes and
/// a message on stderr.
int run_command(const RunConfig& config);

}  // namespace qho::cli
