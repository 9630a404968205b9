#include "qho/oscillator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qho/errors.hpp"
#include "qho/polyspecial.hpp"

namespace qho {

namespace {

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

double sign_of_state(int n) { return (n % 2 == 0) ? 1.0 : -1.0; }

}  // namespace

OscillatorParams make_params(UnitMode mode, double m, double omega, double hbar) {
  if (mode == UnitMode::dimensionless) {
    return OscillatorParams{1.0, 1.0, 2.0, 1.0, 1.0};
  }
  if (!positive_finite(m) || !positive_finite(omega) || !positive_finite(hbar)) {
    throw InvalidParameter("make_params: m, omega and hbar must be positive and finite");
  }
  OscillatorParams p;
  p.m = m;
  p.omega = omega;
  p.hbar = hbar;
  p.sigma_x = std::sqrt(hbar / (2.0 * m * omega));
  p.sigma_v = std::sqrt(hbar * omega / (2.0 * m));
  validate(p);
  return p;
}

void validate(const OscillatorParams& p) {
  if (!positive_finite(p.m) || !positive_finite(p.omega) || !positive_finite(p.hbar) ||
      !positive_finite(p.sigma_x) || !positive_finite(p.sigma_v)) {
    throw InvalidParameter("oscillator parameters must be positive and finite");
  }
  constexpr double tol = 1e-14;
  if (!close_rel(p.sigma_x * p.sigma_v, p.hbar / (2.0 * p.m), tol) ||
      !close_rel(p.omega, p.sigma_v / p.sigma_x, tol)) {
    throw InvalidParameter("oscillator parameters violate sigma_x sigma_v = hbar/2m, omega = sigma_v/sigma_x");
  }
}

double energy_dimensionless(const OscillatorParams& params, PhasePoint p) {
  const double a = p.v / params.sigma_v;
  const double b = p.x / params.sigma_x;
  return 0.5 * (a * a + b * b);
}

double energy_in_quanta(const OscillatorParams& params, PhasePoint p) {
  return 0.5 * energy_dimensionless(params, p);
}

double energy_from_momentum(const OscillatorParams& params, double x, double momentum) {
  const double kinetic = momentum * momentum / (2.0 * params.m);
  const double potential = 0.5 * params.m * params.omega * params.omega * x * x;
  return (kinetic + potential) / (params.hbar * params.omega);
}

double wigner_peak(const OscillatorParams& params) {
  return 1.0 / (2.0 * std::numbers::pi * params.sigma_x * params.sigma_v);
}

double wigner(const OscillatorParams& params, int n, PhasePoint p) {
  check_degree(n);
  const double e = energy_dimensionless(params, p);
  return sign_of_state(n) * wigner_peak(params) * std::exp(-e) * laguerre(n, 0, 2.0 * e);
}

double wigner_momentum(const OscillatorParams& params, int n, double x, double momentum) {
  return wigner(params, n, {x, momentum / params.m}) / params.m;
}

double wigner_energy_derivative(const OscillatorParams& params, int n, double eps_tilde) {
  check_degree(n);
  const double t = 2.0 * eps_tilde;
  return sign_of_state(n) * wigner_peak(params) * std::exp(-eps_tilde) *
         (-laguerre(n, 0, t) + 2.0 * laguerre_derivative(n, t));
}

WignerGradient wigner_gradient(const OscillatorParams& params, int n, PhasePoint p) {
  const double e = energy_dimensionless(params, p);
  const double dfde = wigner_energy_derivative(params, n, e);
  return {wigner(params, n, p), dfde * p.x / (params.sigma_x * params.sigma_x),
          dfde * p.v / (params.sigma_v * params.sigma_v)};
}

namespace {

double marginal(int n, double u, double sigma) {
  check_degree(n);
  const double y = u / (std::numbers::sqrt2 * sigma);
  const double h = hermite_normalized(n, y);
  return std::exp(-y * y) * h * h / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

}  // namespace

double marginal_x(const OscillatorParams& params, int n, double x) {
  return marginal(n, x, params.sigma_x);
}

double marginal_v(const OscillatorParams& params, int n, double v) {
  return marginal(n, v, params.sigma_v);
}

PhaseGrid::PhaseGrid(double x_min, double x_max, std::size_t nx, double v_min, double v_max,
                     std::size_t nv)
    : x_min_(x_min), x_max_(x_max), nx_(nx), v_min_(v_min), v_max_(v_max), nv_(nv) {
  if (nx < 2 || nv < 2) throw InvalidParameter("PhaseGrid: need at least 2 points per axis");
  if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(v_min) ||
      !std::isfinite(v_max) || !(x_min < x_max) || !(v_min < v_max)) {
    throw InvalidParameter("PhaseGrid: bounds must be finite and strictly ordered");
  }
}

double PhaseGrid::x_at(std::size_t i) const {
  if (i == nx_ - 1) return x_max_;
  return x_min_ + static_cast<double>(i) * dx();
}

double PhaseGrid::v_at(std::size_t j) const {
  if (j == nv_ - 1) return v_max_;
  return v_min_ + static_cast<double>(j) * dv();
}

void PhaseGrid::set_values(std::vector<double> values) {
  if (values.size() != nx_ * nv_) {
    throw InvalidParameter("PhaseGrid: value array length must be nx * nv");
  }
  values_ = std::move(values);
}

PhaseGrid sample_grid(const OscillatorParams& params, int n, PhaseGrid grid) {
  check_degree(n);
  std::vector<double> values(grid.nx() * grid.nv());
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double x = grid.x_at(i);
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      values[i * grid.nv() + j] = wigner(params, n, {x, grid.v_at(j)});
    }
  }
  grid.set_values(std::move(values));
  return grid;
}

double integrate_trapezoid(const PhaseGrid& grid) {
  if (!grid.has_values()) throw InvalidParameter("integrate_trapezoid: grid has no values");
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double wx = (i == 0 || i == grid.nx() - 1) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      const double wv = (j == 0 || j == grid.nv() - 1) ? 0.5 : 1.0;
      sum += wx * wv * grid.at(i, j);
    }
  }
  return sum * grid.dx() * grid.dv();
}

}  // namespace qho
