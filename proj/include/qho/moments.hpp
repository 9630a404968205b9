#pragma once

#include <span>
#include <vector>

#include "qho/coeffs.hpp"
#include "qho/oscillator.hpp"

namespace qho {

/// Default half-width of the exclusion band around each pole, in units of
/// the axis deviation (sigma_x or sigma_v).
inline constexpr double kPoleGuard = 1e-6;

/// Poles of the conditional second moment along an axis: sqrt2 sigma y0
/// for every zero y0 of H_n. Empty for n = 0. Sorted ascending.
std::vector<double> pole_set(const OscillatorParams& params, int n, Axis axis);

/// Throws PoleProximity if |abscissa - p| < guard * sigma for some pole p.
void check_pole_guard(const OscillatorParams& params, int n, Axis axis, double abscissa,
                      double guard = kPoleGuard);

/// <v^2>_{v,n}(x) = sigma_v^2 * sum_k c[k] L_{n-k}(t) / sum_k cbar[k] L_{n-k}(t),
/// t = x^2 / sigma_x^2. The table must cover n.
double v2_conditional(const OscillatorParams& params, const CoefficientTable& table, int n,
                      double x, double guard = kPoleGuard);

/// <x^2>_{x,n}(v), the axis mirror of v2_conditional.
double x2_conditional(const OscillatorParams& params, const CoefficientTable& table, int n,
                      double v, double guard = kPoleGuard);

/// <v^2> from the log-density of the marginal:
/// -(hbar/2m)^2 d^2/dx^2 ln f_{1,n} = sigma_v^2 (1 - H''_n/H_n + (H'_n/H_n)^2)
/// at y = x / (sqrt2 sigma_x).
double v2_via_quantum_potential(const OscillatorParams& params, int n, double x,
                                double guard = kPoleGuard);

/// P(x) = f_{1,n}(x) <v^2>(x) = int v^2 f_{2,n} dv, in closed form through
/// the c-table. Finite everywhere, including at the poles of <v^2>.
double velocity_pressure(const OscillatorParams& params, const CoefficientTable& table, int n,
                         double x);

/// dP/dx, analytic.
double velocity_pressure_gradient(const OscillatorParams& params,
                                  const CoefficientTable& table, int n, double x);

/// Zeros of the denominator sum_k cbar[k] L_{n-k}(u^2/sigma^2), found
/// without reference to the Hermite zeros: sign changes of its
/// derivative are bracketed and bisected, and the critical points where
/// the denominator itself vanishes (to 1e-8 of its term magnitude) are kept.
std::vector<double> locate_denominator_zeros(const OscillatorParams& params,
                                             const CoefficientTable& table, int n, Axis axis);

enum class ProfileKind { second_moment, energy };

struct ProfileSample {
  double abscissa;
  double value;
};

/// A sampled conditional moment or energy curve together with its poles.
struct MomentProfile {
  int n = 0;
  Axis axis = Axis::coordinate;
  ProfileKind kind = ProfileKind::energy;
  std::vector<ProfileSample> samples;
  std::vector<double> poles;
};

/// Samples the requested kind at strictly increasing abscissae. Points
/// inside a guard band are dropped, never evaluated.
MomentProfile moment_profile(const OscillatorParams& params, const CoefficientTable& table,
                             int n, Axis axis, std::span<const double> abscissae,
                             ProfileKind kind, double guard = kPoleGuard);

/// <eps~>_{v,n}(x) = <v^2>/(2 sigma_v^2) + x^2/(2 sigma_x^2) (or the velocity mirror).
MomentProfile energy_profile(const OscillatorParams& params, const CoefficientTable& table,
                             int n, Axis axis, std::span<const double> abscissae,
                             double guard = kPoleGuard);

struct GlobalMoments {
  int n = 0;
  double vv = 0.0;         ///< <<v^2>> = sigma_v^2 (2n + 1)
  double xx = 0.0;         ///< <<x^2>> = sigma_x^2 (2n + 1)
  double energy = 0.0;     ///< hbar omega (n + 1/2)
  double sigma_eps = 0.5;  ///< energy deviation in units of hbar omega
};

GlobalMoments global_moments(const OscillatorParams& params, int n);

/// (m/2) vv + (m omega^2/2) xx.
double energy_from_second_moments(const OscillatorParams& params, const GlobalMoments& g);

}  // namespace qho
