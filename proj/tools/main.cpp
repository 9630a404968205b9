#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace qho::cli;

namespace {

struct RawOptions {
  std::string n = "0..3";
  std::string range;
  std::string axis = "x";
  std::string mode = "dimensionless";
  std::string format = "json";
  int samples = 0;
  int n_max = 10;
  double m = 1.0;
  double omega = 1.0;
  double hbar = 2.0;
  std::string out;
  std::uint64_t seed = 42;
  double tol = 0.0;
};

void add_common(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--mode", raw.mode, "dimensionless | physical")
      ->check(CLI::IsMember({"dimensionless", "physical"}));
  sub->add_option("--m", raw.m, "mass (physical mode)");
  sub->add_option("--omega", raw.omega, "angular frequency (physical mode)");
  sub->add_option("--hbar", raw.hbar, "reduced Planck constant (physical mode)");
  sub->add_option("-o,--out", raw.out, "output path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space moments, energy profiles and Wigner states of the quantum harmonic oscillator"};
  app.require_subcommand(1);

  RawOptions raw;
  std::map<std::string, std::pair<std::string, int>> defaults = {
      {"profile", {"-4:4", 801}}, {"residual", {"-6:6", 101}}};

  auto* profile = app.add_subcommand("profile", "energy profiles, Wigner slices and marginals with pole metadata");
  profile->add_option("--n", raw.n, "states, e.g. 0..3 or 0,2,5");
  profile->add_option("--axis", raw.axis, "x | v")->check(CLI::IsMember({"x", "v"}));
  profile->add_option("--range", raw.range, "lo:hi in axis sigma units (default -4:4)");
  profile->add_option("--samples", raw.samples, "number of abscissae (default 801)");
  add_common(profile, raw);

  auto* moments = app.add_subcommand("moments", "global second moments and energy, closed form and oracle");
  moments->add_option("--n", raw.n, "states");
  moments->add_option("--format", raw.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  add_common(moments, raw);

  auto* coeffs = app.add_subcommand("coeffs", "exact C, Cbar and J/sqrt(pi) tables as JSON");
  coeffs->add_option("--n", raw.n, "largest index (or list; the maximum is used)");
  add_common(coeffs, raw);

  auto* verify = app.add_subcommand("verify", "check every closed form against the quadrature oracle");
  verify->add_option("--n-max", raw.n_max, "largest state checked (default 10)");
  verify->add_option("--seed", raw.seed, "seed for random abscissae (default 42)");
  auto* tol_opt = verify->add_option("--tol", raw.tol, "override every tolerance");
  add_common(verify, raw);

  auto* residual = app.add_subcommand("residual", "stationarity residual on a phase grid");
  residual->add_option("--n", raw.n, "states");
  residual->add_option("--range", raw.range, "lo:hi in sigma units, both axes (default -6:6)");
  residual->add_option("--samples", raw.samples, "points per axis (default 101)");
  residual->add_option("--format", raw.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  add_common(residual, raw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  RunConfig config;
  config.command = app.get_subcommands().front()->get_name();
  try {
    config.n_list = parse_n_list(raw.n);
    const auto it = defaults.find(config.command);
    if (it != defaults.end()) {
      const auto [lo, hi] = parse_range(raw.range.empty() ? it->second.first : raw.range);
      config.range_lo = lo;
      config.range_hi = hi;
      config.samples = raw.samples > 0 ? raw.samples : it->second.second;
      if (raw.samples < 0 || raw.samples == 1) throw UsageError("--samples must be at least 2");
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
  config.n_max = raw.n_max;
  config.axis = raw.axis == "v" ? qho::Axis::velocity : qho::Axis::coordinate;
  config.mode = raw.mode == "physical" ? qho::UnitMode::physical : qho::UnitMode::dimensionless;
  config.m = raw.m;
  config.omega = raw.omega;
  config.hbar = raw.hbar;
  config.out = raw.out;
  config.format = raw.format == "csv" ? Format::csv : Format::json;
  config.seed = raw.seed;
  if (tol_opt->count() > 0) config.tol = raw.tol;

  return run_command(config);
}
