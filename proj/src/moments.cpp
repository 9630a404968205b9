#include "qho/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qho/detail/summation.hpp"
#include "qho/errors.hpp"
#include "qho/polyspecial.hpp"

namespace qho {

namespace {

double axis_sigma(const OscillatorParams& params, Axis axis) {
  return axis == Axis::coordinate ? params.sigma_x : params.sigma_v;
}

double other_sigma(const OscillatorParams& params, Axis axis) {
  return axis == Axis::coordinate ? params.sigma_v : params.sigma_x;
}

void require_table(const CoefficientTable& table, int n) {
  check_degree(n);
  if (n > table.n) {
    throw IndexOutOfRange("coefficient table covers n <= " + std::to_string(table.n) +
                          ", state " + std::to_string(n) + " requested");
  }
}

// Ratio of the c and cbar series, the shared core of <v^2> and <x^2>.
double conditional_ratio(const OscillatorParams& params, const CoefficientTable& table, int n,
                         Axis axis, double abscissa, double guard) {
  require_table(table, n);
  check_pole_guard(params, n, axis, abscissa, guard);
  const double u = abscissa / axis_sigma(params, axis);
  const double t = u * u;
  return c_series(table, n, t) / cbar_series(table, n, t);
}

// sum_k c[k] L'_{n-k}(t)
double c_series_derivative(const CoefficientTable& table, int n, double t) {
  detail::CompensatedSum sum;
  for (int k = 0; k < n; ++k) sum.add(table.c_f[k] * laguerre_derivative(n - k, t));
  return sum.value();
}

struct SeriesPoint {
  double value;
  double magnitude;
  double slope;  // d/dt
};

SeriesPoint denominator_at(const CoefficientTable& table, int n, double t) {
  detail::CompensatedSum value;
  detail::CompensatedSum slope;
  for (int k = 0; k <= n; ++k) {
    value.add(table.cbar_f[k] * laguerre(n - k, 0, t));
    slope.add(table.cbar_f[k] * laguerre_derivative(n - k, t));
  }
  return {value.value(), value.magnitude(), slope.value()};
}

}  // namespace

std::vector<double> pole_set(const OscillatorParams& params, int n, Axis axis) {
  check_degree(n);
  if (n == 0) return {};
  const double scale = std::numbers::sqrt2 * axis_sigma(params, axis);
  std::vector<double> poles;
  poles.reserve(n);
  for (double y : hermite_zeros(n).zeros) poles.push_back(scale * y);
  return poles;
}

void check_pole_guard(const OscillatorParams& params, int n, Axis axis, double abscissa,
                      double guard) {
  const double band = guard * axis_sigma(params, axis);
  for (double p : pole_set(params, n, axis)) {
    if (std::abs(abscissa - p) < band) {
      std::ostringstream msg;
      msg << "abscissa " << abscissa << " lies within " << band << " of the pole at " << p
          << " (n = " << n << ")";
      throw PoleProximity(msg.str(), p);
    }
  }
}

double v2_conditional(const OscillatorParams& params, const CoefficientTable& table, int n,
                      double x, double guard) {
  return params.sigma_v * params.sigma_v *
         conditional_ratio(params, table, n, Axis::coordinate, x, guard);
}

double x2_conditional(const OscillatorParams& params, const CoefficientTable& table, int n,
                      double v, double guard) {
  return params.sigma_x * params.sigma_x *
         conditional_ratio(params, table, n, Axis::velocity, v, guard);
}

double v2_via_quantum_potential(const OscillatorParams& params, int n, double x, double guard) {
  check_degree(n);
  check_pole_guard(params, n, Axis::coordinate, x, guard);
  const double y = x / (std::numbers::sqrt2 * params.sigma_x);
  // Ratios are scale free, so the overflow-safe normalized triple is used.
  const auto h = hermite_derivatives_normalized(n, y);
  const double r1 = h.d1 / h.value;
  const double r2 = h.d2 / h.value;
  return params.sigma_v * params.sigma_v * (1.0 - r2 + r1 * r1);
}

namespace {

// 2 (-1)^n / (sqrt(2 pi) sigma_x) exp(-t/2): the factor linking the series
// to densities, since f_{1,n} = that * sum cbar L.
double density_prefactor(const OscillatorParams& params, int n, double t) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return sign * 2.0 / (std::sqrt(2.0 * std::numbers::pi) * params.sigma_x) * std::exp(-0.5 * t);
}

}  // namespace

double velocity_pressure(const OscillatorParams& params, const CoefficientTable& table, int n,
                         double x) {
  require_table(table, n);
  const double u = x / params.sigma_x;
  const double t = u * u;
  return params.sigma_v * params.sigma_v * density_prefactor(params, n, t) *
         c_series(table, n, t);
}

double velocity_pressure_gradient(const OscillatorParams& params,
                                  const CoefficientTable& table, int n, double x) {
  require_table(table, n);
  const double u = x / params.sigma_x;
  const double t = u * u;
  const double dt_dx = 2.0 * x / (params.sigma_x * params.sigma_x);
  const double inner = c_series_derivative(table, n, t) - 0.5 * c_series(table, n, t);
  return params.sigma_v * params.sigma_v * density_prefactor(params, n, t) * dt_dx * inner;
}

std::vector<double> locate_denominator_zeros(const OscillatorParams& params,
                                             const CoefficientTable& table, int n, Axis axis) {
  require_table(table, n);
  if (n == 0) return {};
  constexpr double accept = 1e-8;
  const double sigma = axis_sigma(params, axis);

  std::vector<double> t_roots;
  {
    const auto at0 = denominator_at(table, n, 0.0);
    if (std::abs(at0.value) <= accept * at0.magnitude) t_roots.push_back(0.0);
  }

  // Every zero of H_n satisfies y^2 < 2n + 1, i.e. t = 2 y^2 < 4n + 2.
  const double t_max = 4.0 * n + 6.0;
  const int steps = 2000 * (n + 1);
  const double dt = t_max / steps;
  double t_lo = dt * 1e-3;
  double g_lo = denominator_at(table, n, t_lo).slope;
  for (int i = 1; i <= steps; ++i) {
    const double t_hi = i * dt;
    const double g_hi = denominator_at(table, n, t_hi).slope;
    if (g_lo == 0.0 || (g_lo < 0.0) != (g_hi < 0.0)) {
      double a = t_lo;
      double b = t_hi;
      double ga = g_lo;
      for (int it = 0; it < 200 && b - a > 2.0 * std::numeric_limits<double>::epsilon() * b; ++it) {
        const double mid = 0.5 * (a + b);
        const double gm = denominator_at(table, n, mid).slope;
        if (gm == 0.0) {
          a = b = mid;
          break;
        }
        if ((gm < 0.0) == (ga < 0.0)) {
          a = mid;
          ga = gm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      const auto d = denominator_at(table, n, root);
      if (std::abs(d.value) <= accept * d.magnitude) t_roots.push_back(root);
    }
    t_lo = t_hi;
    g_lo = g_hi;
  }

  std::vector<double> zeros;
  for (double t : t_roots) {
    const double u = sigma * std::sqrt(t);
    zeros.push_back(u);
    if (t > 0.0) zeros.push_back(-u);
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

MomentProfile moment_profile(const OscillatorParams& params, const CoefficientTable& table,
                             int n, Axis axis, std::span<const double> abscissae,
                             ProfileKind kind, double guard) {
  require_table(table, n);
  for (std::size_t i = 1; i < abscissae.size(); ++i) {
    if (!(abscissae[i] > abscissae[i - 1])) {
      throw InvalidParameter("moment_profile: abscissae must be strictly increasing");
    }
  }
  MomentProfile profile;
  profile.n = n;
  profile.axis = axis;
  profile.kind = kind;
  profile.poles = pole_set(params, n, axis);

  const double sigma = axis_sigma(params, axis);
  const double free_sigma = other_sigma(params, axis);
  const double band = guard * sigma;
  for (double a : abscissae) {
    const bool inside = std::any_of(profile.poles.begin(), profile.poles.end(),
                                    [&](double p) { return std::abs(a - p) < band; });
    if (inside) continue;
    const double second = (axis == Axis::coordinate) ? v2_conditional(params, table, n, a, guard)
                                                     : x2_conditional(params, table, n, a, guard);
    double value = second;
    if (kind == ProfileKind::energy) {
      const double u = a / sigma;
      value = second / (2.0 * free_sigma * free_sigma) + 0.5 * u * u;
    }
    profile.samples.push_back({a, value});
  }
  return profile;
}

MomentProfile energy_profile(const OscillatorParams& params, const CoefficientTable& table,
                             int n, Axis axis, std::span<const double> abscissae, double guard) {
  return moment_profile(params, table, n, axis, abscissae, ProfileKind::energy, guard);
}

GlobalMoments global_moments(const OscillatorParams& params, int n) {
  check_degree(n);
  GlobalMoments g;
  g.n = n;
  const double level = 2.0 * n + 1.0;
  g.vv = params.sigma_v * params.sigma_v * level;
  g.xx = params.sigma_x * params.sigma_x * level;
  g.energy = params.hbar * params.omega * (n + 0.5);
  g.sigma_eps = 0.5;
  return g;
}

double energy_from_second_moments(const OscillatorParams& params, const GlobalMoments& g) {
  return 0.5 * params.m * g.vv + 0.5 * params.m * params.omega * params.omega * g.xx;
}

}  // namespace qho
