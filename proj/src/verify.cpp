#include "qho/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qho/coeffs.hpp"
#include "qho/dynamics.hpp"
#include "qho/errors.hpp"
#include "qho/moments.hpp"
#include "qho/oracle.hpp"
#include "qho/polyspecial.hpp"

namespace qho {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}
  // Portable uniform on [lo, hi): the top 53 bits of the engine output.
  double uniform(double lo, double hi) {
    const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  }

 private:
  std::mt19937_64 rng_;
};

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) out[i] = lo + (hi - lo) * i / (count - 1);
  return out;
}

bool outside_guard(const OscillatorParams& p, int n, Axis axis, double a) {
  try {
    check_pole_guard(p, n, axis, a);
    return true;
  } catch (const PoleProximity&) {
    return false;
  }
}

std::string at(int n, double a) {
  std::ostringstream s;
  s.precision(17);
  s << "n = " << n << ", at " << a;
  return s.str();
}

double rel(double got, double want) {
  const double d = std::abs(got - want);
  return want == 0.0 ? d : d / std::abs(want);
}

struct Builder {
  VerificationReport report;
  const VerifyConfig& cfg;

  void add(const std::string& name, const std::string& ref, const WorstCase& w, double tol) {
    report.add(name, ref, w.err, cfg.tol_override.value_or(tol), w.where);
  }
};

}  // namespace

VerificationReport run_verification(const VerifyConfig& cfg) {
  const OscillatorParams& p = cfg.params;
  validate(p);
  if (cfg.n_max < 0 || cfg.n_max > kMaxDegree) throw DegreeOverflow("verify: n_max out of range");
  const int n_max = cfg.n_max;
  const int identity_n_max = std::max(20, n_max);
  const auto table = table_for(identity_n_max);
  Sampler sampler(cfg.seed);
  Builder b{{}, cfg};

  {
    const bool ok = table->c[0] == Rational(1, 2) && table->cbar[0] == Rational(1, 2) &&
                    table->c[1] == Rational(-3, 2) && table->cbar[1] == Rational(-1, 2) &&
                    table->j_over_sqrt_pi[0] == Rational(1, 2) &&
                    table->j_over_sqrt_pi[1] == Rational(-1);
    WorstCase w;
    w.update(ok ? 0.0 : 1.0, ok ? "exact" : "rational spot values differ");
    b.add("coefficient_spot_values", "c_0, cbar_0, c_1, cbar_1, J_0, J_1 in exact arithmetic", w,
          0.0);
  }

  {
    WorstCase w;
    const auto xs = linspace(-6.0 * p.sigma_x, 6.0 * p.sigma_x, 101);
    for (int n = 0; n <= identity_n_max; ++n) {
      const auto r = verify_hermite_laguerre_identity(p, n, xs);
      w.update(r.checks.front().max_err, "n = " + std::to_string(n) + ", " + r.checks.front().detail);
    }
    b.add("hermite_laguerre_identity", "H_n^2 as a cbar-weighted Laguerre sum", w, 1e-10);
  }

  for (Axis axis : {Axis::coordinate, Axis::velocity}) {
    const bool coord = axis == Axis::coordinate;
    const double sigma = coord ? p.sigma_x : p.sigma_v;
    WorstCase w;
    for (int n = 0; n <= n_max; ++n) {
      for (double a : linspace(-5.0 * sigma, 5.0 * sigma, 41)) {
        if (!outside_guard(p, n, axis, a)) continue;
        const double closed = coord ? v2_conditional(p, *table, n, a) : x2_conditional(p, *table, n, a);
        const double ref = oracle::conditional_moment_oracle(p, n, axis, a);
        w.update(rel(closed, ref), at(n, a));
      }
    }
    b.add(coord ? "conditional_v2_vs_oracle" : "conditional_x2_vs_oracle",
          coord ? "<v^2>_{v,n}(x) as a ratio of c and cbar Laguerre series"
                : "<x^2>_{x,n}(v) as a ratio of c and cbar Laguerre series",
          w, 1e-9);
  }

  {
    WorstCase w;
    for (int n = 0; n <= n_max; ++n) {
      for (int i = 0; i < 25;) {
        const double x = sampler.uniform(-5.0 * p.sigma_x, 5.0 * p.sigma_x);
        if (!outside_guard(p, n, Axis::coordinate, x)) continue;
        ++i;
        w.update(rel(v2_conditional(p, *table, n, x), v2_via_quantum_potential(p, n, x)), at(n, x));
      }
    }
    b.add("quantum_potential_route", "<v^2> from -(hbar/2m)^2 (ln f_1)'' vs the table form", w,
          1e-9);
  }

  {
    WorstCase mean_w, closed_w, vv_w, xx_w, var_w, norm_w;
    for (int n = 0; n <= n_max; ++n) {
      const auto g = global_moments(p, n);
      const double e_oracle = oracle::global_moment_oracle(p, n, oracle::Weight::energy);
      mean_w.update(std::abs(e_oracle - (n + 0.5)), at(n, 0.0));
      closed_w.update(rel(g.energy, energy_from_second_moments(p, g)), at(n, 0.0));
      closed_w.update(rel(g.energy / (p.hbar * p.omega), n + 0.5), at(n, 0.0));
      vv_w.update(rel(oracle::global_moment_oracle(p, n, oracle::Weight::v2), g.vv), at(n, 0.0));
      xx_w.update(rel(oracle::global_moment_oracle(p, n, oracle::Weight::x2), g.xx), at(n, 0.0));
      var_w.update(std::abs(oracle::global_moment_oracle(p, n, oracle::Weight::energy_var) - 0.25),
                   at(n, 0.0));
      norm_w.update(std::abs(oracle::global_moment_oracle(p, n, oracle::Weight::one) - 1.0),
                    at(n, 0.0));
    }
    b.add("energy_mean", "<<eps>>_n = n + 1/2 (oracle, units of hbar omega)", mean_w, 1e-10);
    b.add("energy_closed_form", "E_n = hbar omega (n + 1/2) = (m/2)<<v^2>> + (m omega^2/2)<<x^2>>",
          closed_w, 1e-14);
    b.add("global_v2", "<<v^2>>_n = sigma_v^2 (2n + 1)", vv_w, 1e-10);
    b.add("global_x2", "<<x^2>>_n = sigma_x^2 (2n + 1)", xx_w, 1e-10);
    b.add("energy_variance", "<<(eps - E_n)^2>> = 1/4 in units of (hbar omega)^2", var_w, 1e-10);
    b.add("normalization", "integral of f_{2,n} over phase space = 1", norm_w, 1e-9);
    b.report.notes.push_back(
        "energy deviation: the oracle gives variance 1/4 (hbar omega)^2, i.e. sigma_E = hbar omega/2 "
        "and level spacing 2 sigma_E; a variance written as hbar omega/2 is dimensionally "
        "inconsistent and is not asserted");
  }

  {
    WorstCase w;
    for (int n = 0; n <= n_max; ++n) {
      for (double x : linspace(-5.0 * p.sigma_x, 5.0 * p.sigma_x, 21)) {
        const double ref = oracle::marginal_oracle(p, n, Axis::coordinate, x);
        w.update(std::abs(ref - marginal_x(p, n, x)), at(n, x));
      }
    }
    b.add("marginal_consistency", "integral of f_{2,n} dv = f_{1,n}(x)", w, 1e-9);
  }

  {
    WorstCase w;
    const PhaseGrid grid(-6.0 * p.sigma_x, 6.0 * p.sigma_x, 101, -6.0 * p.sigma_v,
                         6.0 * p.sigma_v, 101);
    for (int n = 0; n <= n_max; ++n) {
      const auto r = vlasov_residual(p, n, grid);
      w.update(r.max_abs_residual / r.gradient_scale, "n = " + std::to_string(n));
    }
    b.add("vlasov_stationarity", "v df/dx - omega^2 x df/dv = 0, relative to max |grad f|", w,
          1e-10);
  }

  {
    WorstCase w;
    const auto potential = PolynomialPotential::harmonic(p);
    const double w2 = p.omega * p.omega;
    for (int count = 0; count < 100;) {
      const int n = static_cast<int>(sampler.uniform(0.0, n_max + 1.0));
      const PhasePoint pt{sampler.uniform(-5.0 * p.sigma_x, 5.0 * p.sigma_x),
                          sampler.uniform(-5.0 * p.sigma_v, 5.0 * p.sigma_v)};
      if (std::abs(wigner(p, n, pt)) < kDensityFloor * wigner_peak(p)) continue;
      ++count;
      for (int trunc = 0; trunc <= 3; ++trunc) {
        const double acc = vlasov_moyal_acceleration(potential, p, n, pt, trunc);
        w.update(rel(acc, -w2 * pt.x), at(n, pt.x) + ", L = " + std::to_string(trunc));
      }
    }
    b.add("harmonic_moyal_reduction", "acceleration series reduces to -omega^2 x for U = m omega^2 x^2/2",
          w, 1e-12);
  }

  {
    WorstCase loc_w, neg_w;
    for (int n = 0; n <= n_max; ++n) {
      const auto poles = pole_set(p, n, Axis::coordinate);
      const auto found = locate_denominator_zeros(p, *table, n, Axis::coordinate);
      if (found.size() != poles.size()) {
        loc_w.update(std::numeric_limits<double>::infinity(),
                     "n = " + std::to_string(n) + ": found " + std::to_string(found.size()) +
                         " denominator zeros, expected " + std::to_string(poles.size()));
        continue;
      }
      for (std::size_t i = 0; i < poles.size(); ++i) {
        loc_w.update(std::abs(found[i] - poles[i]) / p.sigma_x, at(n, poles[i]));
        const double f = wigner(p, n, {poles[i], 0.0});
        neg_w.update(f < 0.0 ? 0.0 : 1.0, at(n, poles[i]));
      }
    }
    b.add("pole_localization", "denominator zeros = sqrt2 sigma_x * zeros of H_n", loc_w, 1e-10);
    b.add("pole_negativity", "f_{2,n}(pole, 0) < 0 (count of violations)", neg_w, 0.0);
  }

  {
    WorstCase w;
    const auto xs = linspace(-5.0 * p.sigma_x, 5.0 * p.sigma_x, 41);
    for (int n = 0; n <= std::min(8, n_max); ++n) {
      const auto r = quantum_pressure_check(p, n, xs);
      w.update(r.checks.front().max_err, "n = " + std::to_string(n) + ", " + r.checks.front().detail);
    }
    b.add("momentum_balance", "(1/f_1) dP/dx = -omega^2 x with P from the c-table", w, 1e-8);
  }

  {
    WorstCase w;
    const auto potential = PolynomialPotential::harmonic(p);
    for (int n = 0; n <= std::min(6, n_max); ++n) {
      const double e = p.hbar * p.omega * (n + 0.5);
      for (int i = 0; i < 25;) {
        const double x = sampler.uniform(-5.0 * p.sigma_x, 5.0 * p.sigma_x);
        double q = 0.0;
        try {
          q = quantum_potential(p, n, x);
        } catch (const ZeroDensity&) {
          continue;
        }
        ++i;
        w.update(rel(q + potential(x), e), at(n, x));
      }
    }
    b.add("schrodinger_balance", "Q(x) + U(x) = E_n wherever psi_n != 0", w, 1e-8);
  }

  {
    WorstCase w;
    const auto& rule = oracle::gauss_hermite_rule();
    for (int n = 0; n <= n_max; ++n) {
      const double s = std::numbers::sqrt2 * p.sigma_x;
      const double integral =
          s * oracle::integrate_gaussian_weighted(
                  [&](double tau) {
                    return velocity_pressure(p, *table, n, s * tau) * std::exp(tau * tau);
                  },
                  rule);
      w.update(rel(integral, global_moments(p, n).vv), "n = " + std::to_string(n));
    }
    b.add("global_from_conditional", "integral of f_1 <v^2> dx = sigma_v^2 (2n + 1)", w, 1e-8);
  }

  return b.report;
}

}  // namespace qho
