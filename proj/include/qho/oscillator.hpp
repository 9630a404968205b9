#pragma once

#include <cstddef>
#include <vector>

namespace qho {

enum class UnitMode { dimensionless, physical };

/// Which phase-space variable a 1-D profile runs along.
enum class Axis { coordinate, velocity };

/// Oscillator parameters. sigma_x and sigma_v are the ground-state
/// deviations: sigma_x^2 = hbar/(2 m omega), sigma_v^2 = hbar omega/(2 m),
/// so sigma_x sigma_v = hbar/(2m) and omega = sigma_v / sigma_x.
struct OscillatorParams {
  double m = 1.0;
  double omega = 1.0;
  double hbar = 2.0;
  double sigma_x = 1.0;
  double sigma_v = 1.0;
};

/// Dimensionless mode ignores the arguments and returns m = omega = 1,
/// hbar = 2 so that sigma_x = sigma_v = 1. Physical mode derives the
/// deviations from (m, omega, hbar). Throws InvalidParameter on
/// non-positive or non-finite input.
OscillatorParams make_params(UnitMode mode, double m = 1.0, double omega = 1.0,
                             double hbar = 2.0);

inline OscillatorParams dimensionless_params() { return make_params(UnitMode::dimensionless); }

/// Throws InvalidParameter if any field is non-positive or the
/// uncertainty relations are violated beyond 1e-14 relative.
void validate(const OscillatorParams& params);

struct PhasePoint {
  double x = 0.0;
  double v = 0.0;
};

/// eps~(x, v) = v^2/(2 sigma_v^2) + x^2/(2 sigma_x^2).
double energy_dimensionless(const OscillatorParams& params, PhasePoint p);

/// eps = eps~/2, the energy in units of hbar*omega.
double energy_in_quanta(const OscillatorParams& params, PhasePoint p);

/// (p^2/2m + m omega^2 x^2/2) / (hbar omega), evaluated in momentum form.
double energy_from_momentum(const OscillatorParams& params, double x, double momentum);

/// Wigner state f_{2,n}(x, v) in (x, v) variables:
/// (-1)^n / (2 pi sigma_v sigma_x) exp(-eps~) L_n(2 eps~).
double wigner(const OscillatorParams& params, int n, PhasePoint p);

/// Wigner function over (x, p): W_n(x, p) = f_{2,n}(x, p/m) / m.
double wigner_momentum(const OscillatorParams& params, int n, double x, double momentum);

/// Peak |f_{2,n}|, attained at the origin for every n.
double wigner_peak(const OscillatorParams& params);

/// Derivative of f_{2,n} with respect to eps~ at fixed n.
double wigner_energy_derivative(const OscillatorParams& params, int n, double eps_tilde);

struct WignerGradient {
  double value;
  double d_x;
  double d_v;
};

/// f_{2,n} and its analytic partial derivatives (chain rule through eps~).
WignerGradient wigner_gradient(const OscillatorParams& params, int n, PhasePoint p);

/// Coordinate marginal f_{1,n}(x) =
/// exp(-x^2/2 sigma_x^2) H_n^2(x / sqrt2 sigma_x) / (2^n n! sqrt(2 pi) sigma_x).
double marginal_x(const OscillatorParams& params, int n, double x);

/// Velocity marginal, the same formula with (x, sigma_x) -> (v, sigma_v).
double marginal_v(const OscillatorParams& params, int n, double v);

/// Rectangular (x, v) sampling. values is row-major with the x index
/// outermost: values[i * nv + j] = f(x_at(i), v_at(j)).
class PhaseGrid {
 public:
  PhaseGrid(double x_min, double x_max, std::size_t nx, double v_min, double v_max,
            std::size_t nv);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  double v_min() const { return v_min_; }
  double v_max() const { return v_max_; }
  std::size_t nx() const { return nx_; }
  std::size_t nv() const { return nv_; }
  double dx() const { return (x_max_ - x_min_) / static_cast<double>(nx_ - 1); }
  double dv() const { return (v_max_ - v_min_) / static_cast<double>(nv_ - 1); }
  double x_at(std::size_t i) const;
  double v_at(std::size_t j) const;

  bool has_values() const { return !values_.empty(); }
  const std::vector<double>& values() const { return values_; }
  double at(std::size_t i, std::size_t j) const { return values_.at(i * nv_ + j); }
  void set_values(std::vector<double> values);

 private:
  double x_min_, x_max_;
  std::size_t nx_;
  double v_min_, v_max_;
  std::size_t nv_;
  std::vector<double> values_;
};

/// Returns a copy of grid filled with f_{2,n}.
PhaseGrid sample_grid(const OscillatorParams& params, int n, PhaseGrid grid);

/// 2-D trapezoid integral of a filled grid.
double integrate_trapezoid(const PhaseGrid& grid);

}  // namespace qho
