#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "qho/coeffs.hpp"
#include "qho/dynamics.hpp"
#include "qho/errors.hpp"
#include "qho/moments.hpp"
#include "qho/oracle.hpp"
#include "qho/polyspecial.hpp"
#include "qho/verify.hpp"

namespace qho::cli {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kReportVersion = "1.0";

int parse_int(const std::string& s) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not an integer: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw UsageError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw UsageError("not a number: '" + s + "'");
  return v;
}

// Range bounds are in units of the axis deviation.
std::vector<double> abscissae(const RunConfig& c, double sigma) {
  std::vector<double> out(c.samples);
  for (int i = 0; i < c.samples; ++i) {
    out[i] = sigma * (c.range_lo + (c.range_hi - c.range_lo) * i / (c.samples - 1));
  }
  return out;
}

const char* axis_name(Axis a) { return a == Axis::coordinate ? "x" : "v"; }

json config_echo(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["n"] = c.n_list;
  j["n_max"] = c.n_max;
  j["axis"] = axis_name(c.axis);
  j["range"] = {c.range_lo, c.range_hi};
  j["samples"] = c.samples;
  j["mode"] = c.mode == UnitMode::dimensionless ? "dimensionless" : "physical";
  const auto p = params_of(c);
  j["params"] = {{"m", p.m}, {"omega", p.omega}, {"hbar", p.hbar}, {"sigma_x", p.sigma_x},
                 {"sigma_v", p.sigma_v}};
  if (c.tol) j["tol_override"] = *c.tol;
  return j;
}

void check_states(const RunConfig& c) {
  for (int n : c.n_list) {
    if (n < 0 || n > kMaxDegree) {
      throw UsageError("state index " + std::to_string(n) + " outside [0, " +
                       std::to_string(kMaxDegree) + "]");
    }
  }
}

std::string output_path(const RunConfig& c, const std::string& fallback) {
  return c.out.empty() ? fallback : c.out;
}

json rational_json(const Rational& r) {
  return {{"num", boost::multiprecision::numerator(r).str()},
          {"den", boost::multiprecision::denominator(r).str()}};
}

}  // namespace

std::vector<int> parse_n_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw UsageError("empty entry in n list '" + text + "'");
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_int(item));
      continue;
    }
    const int lo = parse_int(item.substr(0, dots));
    const int hi = parse_int(item.substr(dots + 2));
    if (lo > hi) throw UsageError("descending n range '" + item + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
  }
  if (out.empty()) throw UsageError("empty n list");
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  // Split on the last ':' so that "-4:4" and "-4.5:-1" both work.
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw UsageError("range must be lo:hi, got '" + text + "'");
  const double lo = parse_double(text.substr(0, colon));
  const double hi = parse_double(text.substr(colon + 1));
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw UsageError("range must satisfy lo < hi, got '" + text + "'");
  }
  return {lo, hi};
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  std::error_code ec;
  if (target.has_parent_path()) fs::create_directories(target.parent_path(), ec);
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + target.string());
  }
}

OscillatorParams params_of(const RunConfig& c) {
  try {
    return make_params(c.mode, c.m, c.omega, c.hbar);
  } catch (const InvalidParameter& e) {
    throw UsageError(e.what());
  }
}

int cmd_profile(const RunConfig& c) {
  check_states(c);
  if (c.samples < 2) throw UsageError("--samples must be at least 2");
  const auto p = params_of(c);
  const int n_top = *std::max_element(c.n_list.begin(), c.n_list.end());
  const auto table = table_for(n_top);
  const bool coord = c.axis == Axis::coordinate;
  const auto xs = abscissae(c, coord ? p.sigma_x : p.sigma_v);
  const std::string dir = output_path(c, ".");

  for (int n : c.n_list) {
    const auto profile = energy_profile(p, *table, n, c.axis, xs);
    std::string csv = std::string(axis_name(c.axis)) + ",energy," +
                      (coord ? "wigner_slice_v0" : "wigner_slice_x0") + ",marginal\n";
    for (const auto& s : profile.samples) {
      const PhasePoint pt = coord ? PhasePoint{s.abscissa, 0.0} : PhasePoint{0.0, s.abscissa};
      const double marginal = coord ? marginal_x(p, n, s.abscissa) : marginal_v(p, n, s.abscissa);
      csv += format_number(s.abscissa) + "," + format_number(s.value) + "," +
             format_number(wigner(p, n, pt)) + "," + format_number(marginal) + "\n";
    }
    const std::string stem =
        dir + "/profile_n" + std::to_string(n) + "_" + axis_name(c.axis);

    json meta;
    meta["version"] = kReportVersion;
    meta["n"] = n;
    meta["axis"] = axis_name(c.axis);
    meta["csv"] = std::filesystem::path(stem + ".csv").filename().string();
    meta["columns"] = {axis_name(c.axis), "energy", coord ? "wigner_slice_v0" : "wigner_slice_x0",
                       "marginal"};
    meta["poles"] = profile.poles;
    meta["pole_guard"] = kPoleGuard;
    meta["samples_requested"] = xs.size();
    meta["samples_written"] = profile.samples.size();
    meta["config"] = config_echo(c);

    write_atomic(stem + ".csv", csv);
    write_atomic(stem + ".json", meta.dump(2) + "\n");
  }
  return kPass;
}

int cmd_moments(const RunConfig& c) {
  check_states(c);
  const auto p = params_of(c);
  json rows = json::array();
  std::string csv =
      "n,vv,xx,energy,sigma_eps,vv_oracle,xx_oracle,energy_quanta_oracle,energy_variance_oracle\n";
  for (int n : c.n_list) {
    const auto g = global_moments(p, n);
    const double vv_o = oracle::global_moment_oracle(p, n, oracle::Weight::v2);
    const double xx_o = oracle::global_moment_oracle(p, n, oracle::Weight::x2);
    const double e_o = oracle::global_moment_oracle(p, n, oracle::Weight::energy);
    const double var_o = oracle::global_moment_oracle(p, n, oracle::Weight::energy_var);
    csv += std::to_string(n) + "," + format_number(g.vv) + "," + format_number(g.xx) + "," +
           format_number(g.energy) + "," + format_number(g.sigma_eps) + "," +
           format_number(vv_o) + "," + format_number(xx_o) + "," + format_number(e_o) + "," +
           format_number(var_o) + "\n";
    rows.push_back({{"n", n},
                    {"vv", g.vv},
                    {"xx", g.xx},
                    {"energy", g.energy},
                    {"sigma_eps", g.sigma_eps},
                    {"oracle", {{"vv", vv_o}, {"xx", xx_o}, {"energy_quanta", e_o},
                                {"energy_variance", var_o}}}});
  }
  if (c.format == Format::csv) {
    write_atomic(output_path(c, "moments.csv"), csv);
  } else {
    json doc;
    doc["version"] = kReportVersion;
    doc["config"] = config_echo(c);
    doc["moments"] = rows;
    write_atomic(output_path(c, "moments.json"), doc.dump(2) + "\n");
  }
  return kPass;
}

int cmd_coeffs(const RunConfig& c) {
  check_states(c);
  const int n = *std::max_element(c.n_list.begin(), c.n_list.end());
  const auto table = table_for(n);
  json doc;
  doc["version"] = kReportVersion;
  doc["n"] = n;
  json cs = json::array(), cbars = json::array(), js = json::array();
  for (int k = 0; k <= n; ++k) {
    cs.push_back(rational_json(table->c[k]));
    cbars.push_back(rational_json(table->cbar[k]));
    js.push_back(rational_json(table->j_over_sqrt_pi[k]));
  }
  doc["C"] = cs;
  doc["Cbar"] = cbars;
  doc["J_over_sqrt_pi"] = js;
  write_atomic(output_path(c, "coeffs.json"), doc.dump(2) + "\n");
  return kPass;
}

int cmd_verify(const RunConfig& c) {
  if (c.n_max < 0 || c.n_max > kMaxDegree) throw UsageError("--n-max outside [0, 64]");
  VerifyConfig vc;
  vc.params = params_of(c);
  vc.n_max = c.n_max;
  vc.seed = c.seed;
  vc.tol_override = c.tol;
  const auto report = run_verification(vc);

  json doc;
  doc["version"] = kReportVersion;
  doc["config"] = config_echo(c);
  doc["seed"] = c.seed;
  json checks = json::array();
  for (const auto& chk : report.checks) {
    checks.push_back({{"name", chk.name},
                      {"paper_ref", chk.reference},
                      {"max_err", chk.max_err},
                      {"tol", chk.tol},
                      {"pass", chk.pass},
                      {"detail", chk.detail}});
  }
  doc["checks"] = checks;
  doc["notes"] = report.notes;
  doc["pass"] = report.all_pass();
  write_atomic(output_path(c, "verify_report.json"), doc.dump(2) + "\n");

  if (report.all_pass()) return kPass;
  for (const auto* f : report.failures()) {
    std::cerr << "FAIL " << f->name << ": max_err " << format_number(f->max_err) << " > tol "
              << format_number(f->tol) << " (" << f->detail << ")\n";
  }
  return kVerifyFailed;
}

int cmd_residual(const RunConfig& c) {
  check_states(c);
  if (c.samples < 2) throw UsageError("--samples must be at least 2");
  const auto p = params_of(c);
  const PhaseGrid grid(c.range_lo * p.sigma_x, c.range_hi * p.sigma_x,
                       static_cast<std::size_t>(c.samples), c.range_lo * p.sigma_v,
                       c.range_hi * p.sigma_v, static_cast<std::size_t>(c.samples));
  json rows = json::array();
  std::string csv = "n,max_abs_residual,rms_residual,gradient_scale\n";
  for (int n : c.n_list) {
    const auto r = vlasov_residual(p, n, grid);
    csv += std::to_string(n) + "," + format_number(r.max_abs_residual) + "," +
           format_number(r.rms_residual) + "," + format_number(r.gradient_scale) + "\n";
    rows.push_back({{"n", n},
                    {"grid", {{"x", {r.x_min, r.x_max, r.nx}}, {"v", {r.v_min, r.v_max, r.nv}}}},
                    {"max_abs_residual", r.max_abs_residual},
                    {"rms_residual", r.rms_residual},
                    {"gradient_scale", r.gradient_scale}});
  }
  if (c.format == Format::csv) {
    write_atomic(output_path(c, "residual.csv"), csv);
  } else {
    json doc;
    doc["version"] = kReportVersion;
    doc["config"] = config_echo(c);
    doc["residuals"] = rows;
    write_atomic(output_path(c, "residual.json"), doc.dump(2) + "\n");
  }
  return kPass;
}

int run_command(const RunConfig& c) {
  try {
    if (c.command == "profile") return cmd_profile(c);
    if (c.command == "moments") return cmd_moments(c);
    if (c.command == "coeffs") return cmd_coeffs(c);
    if (c.command == "verify") return cmd_verify(c);
    if (c.command == "residual") return cmd_residual(c);
    std::cerr << "unknown command '" << c.command << "'\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const DegreeOverflow& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidParameter& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  }
}

}  // namespace qho::cli
