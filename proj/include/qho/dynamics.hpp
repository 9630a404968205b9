#pragma once

#include <span>
#include <vector>

#include "qho/oscillator.hpp"
#include "qho/report.hpp"

namespace qho {

inline constexpr int kMaxPotentialDegree = 8;

/// Fields that divide by a density are undefined where it falls below
/// this fraction of the state's peak.
inline constexpr double kDensityFloor = 1e-12;

/// U(x) = sum_j c_j x^j.
class PolynomialPotential {
 public:
  explicit PolynomialPotential(std::vector<double> coefficients);

  /// U = m omega^2 x^2 / 2.
  static PolynomialPotential harmonic(const OscillatorParams& params);

  const std::vector<double>& coefficients() const { return coef_; }
  /// Highest power with a nonzero coefficient (0 for the zero polynomial).
  int degree() const;
  /// d^order U / dx^order.
  double derivative(int order, double x) const;
  double operator()(double x) const { return derivative(0, x); }

 private:
  std::vector<double> coef_;
};

struct ResidualReport {
  int n = 0;
  double x_min = 0, x_max = 0, v_min = 0, v_max = 0;
  std::size_t nx = 0, nv = 0;
  double max_abs_residual = 0.0;
  double rms_residual = 0.0;
  /// max over the grid of |grad f| (Euclidean, (d/dx, d/dv)).
  double gradient_scale = 0.0;
};

/// Sup and rms of |v df/dx - omega^2 x df/dv| over the grid, with analytic
/// derivatives of f_{2,n}.
ResidualReport vlasov_residual(const OscillatorParams& params, int n, const PhaseGrid& grid);

enum class DerivativeMethod {
  automatic,          ///< analytic for degree <= 2 potentials, finite differences otherwise
  analytic,           ///< exact polynomial-times-Gaussian differentiation
  finite_difference,  ///< central stencils, one Richardson step
};

/// (1/f) d^order f / dv^order for f = f_{2,n}(x, .), order even.
double relative_velocity_derivative(const OscillatorParams& params, int n, PhasePoint p,
                                    int order, DerivativeMethod method);

/// Individual terms k = 0..truncation of the acceleration series
///   (-1)^{k+1} (hbar/2)^{2k} / (m^{2k+1} (2k+1)!) U^{(2k+1)}(x) (1/f) d^{2k} f / dv^{2k}.
/// Terms whose potential derivative vanishes identically are exactly zero
/// and their velocity derivative is not evaluated. Throws ZeroDensity when
/// |f_{2,n}(x, v)| is below kDensityFloor * peak.
std::vector<double> vlasov_moyal_terms(const PolynomialPotential& potential,
                                       const OscillatorParams& params, int n, PhasePoint p,
                                       int truncation,
                                       DerivativeMethod method = DerivativeMethod::automatic);

/// Sum of vlasov_moyal_terms.
double vlasov_moyal_acceleration(const PolynomialPotential& potential,
                                 const OscillatorParams& params, int n, PhasePoint p,
                                 int truncation,
                                 DerivativeMethod method = DerivativeMethod::automatic);

/// Q(x) = -(hbar^2 / 2m) psi''/psi with psi = sqrt(f_{1,n}), from analytic
/// Hermite derivatives. Throws ZeroDensity when |psi| is below
/// kDensityFloor times the ground-state peak amplitude.
double quantum_potential(const OscillatorParams& params, int n, double x);

/// Checks (1/f_{1,n}) dP/dx = -omega^2 x with P = int v^2 f_{2,n} dv taken in
/// closed form. Samples inside a pole guard band are skipped and counted
/// in the detail string. The error is relative to omega^2 max(|x|, sigma_x).
VerificationReport quantum_pressure_check(const OscillatorParams& params, int n,
                                          std::span<const double> x_samples,
                                          double tol = 1e-8);

}  // namespace qho
