#include "qho/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qho/coeffs.hpp"
#include "qho/errors.hpp"
#include "qho/moments.hpp"
#include "qho/polyspecial.hpp"

namespace qho {

PolynomialPotential::PolynomialPotential(std::vector<double> coefficients)
    : coef_(std::move(coefficients)) {
  if (coef_.empty()) coef_.push_back(0.0);
  if (static_cast<int>(coef_.size()) > kMaxPotentialDegree + 1) {
    throw InvalidParameter("PolynomialPotential: degree exceeds " +
                           std::to_string(kMaxPotentialDegree));
  }
  for (double c : coef_) {
    if (!std::isfinite(c)) throw InvalidParameter("PolynomialPotential: non-finite coefficient");
  }
}

PolynomialPotential PolynomialPotential::harmonic(const OscillatorParams& params) {
  return PolynomialPotential({0.0, 0.0, 0.5 * params.m * params.omega * params.omega});
}

int PolynomialPotential::degree() const {
  for (int j = static_cast<int>(coef_.size()) - 1; j > 0; --j) {
    if (coef_[j] != 0.0) return j;
  }
  return 0;
}

double PolynomialPotential::derivative(int order, double x) const {
  if (order < 0) throw InvalidParameter("PolynomialPotential: negative derivative order");
  // Horner over the differentiated coefficients j!/(j-order)! c_j.
  double acc = 0.0;
  for (int j = static_cast<int>(coef_.size()) - 1; j >= order; --j) {
    double falling = 1.0;
    for (int i = 0; i < order; ++i) falling *= (j - i);
    acc = acc * x + falling * coef_[j];
  }
  return acc;
}

ResidualReport vlasov_residual(const OscillatorParams& params, int n, const PhaseGrid& grid) {
  check_degree(n);
  ResidualReport r;
  r.n = n;
  r.x_min = grid.x_min();
  r.x_max = grid.x_max();
  r.v_min = grid.v_min();
  r.v_max = grid.v_max();
  r.nx = grid.nx();
  r.nv = grid.nv();
  const double w2 = params.omega * params.omega;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double x = grid.x_at(i);
    for (std::size_t j = 0; j < grid.nv(); ++j) {
      const double v = grid.v_at(j);
      const auto g = wigner_gradient(params, n, {x, v});
      const double res = std::abs(v * g.d_x - w2 * x * g.d_v);
      r.max_abs_residual = std::max(r.max_abs_residual, res);
      r.gradient_scale = std::max(r.gradient_scale, std::hypot(g.d_x, g.d_v));
      sum_sq += res * res;
    }
  }
  r.rms_residual = std::sqrt(sum_sq / static_cast<double>(grid.nx() * grid.nv()));
  return r;
}

namespace {

// f_{2,n}(x, sigma_v w) is proportional to exp(-w^2/2) P(w) with
// P(w) = L_n(c + w^2), c = x^2/sigma_x^2. Returns the power-series
// coefficients of P in w, using L_n(c + s) = sum_j s^j/j! L_n^{(j)}(c).
std::vector<double> velocity_polynomial(int n, double c) {
  std::vector<double> coef(2 * n + 1, 0.0);
  double inv_fact = 1.0;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) inv_fact /= j;
    coef[2 * j] = laguerre_derivative(n, 0, j, c) * inv_fact;
  }
  return coef;
}

double horner(const std::vector<double>& coef, double w) {
  double acc = 0.0;
  for (auto it = coef.rbegin(); it != coef.rend(); ++it) acc = acc * w + *it;
  return acc;
}

double analytic_relative_derivative(const OscillatorParams& params, int n, PhasePoint p,
                                    int order) {
  const double u = p.x / params.sigma_x;
  const double w = p.v / params.sigma_v;
  std::vector<double> q = velocity_polynomial(n, u * u);
  const double base = horner(q, w);
  // d/dw [Q exp(-w^2/2)] = (Q' - w Q) exp(-w^2/2)
  for (int step = 0; step < order; ++step) {
    std::vector<double> next(q.size() + 1, 0.0);
    for (std::size_t i = 1; i < q.size(); ++i) next[i - 1] += static_cast<double>(i) * q[i];
    for (std::size_t i = 0; i < q.size(); ++i) next[i + 1] -= q[i];
    q = std::move(next);
  }
  return horner(q, w) / base / std::pow(params.sigma_v, order);
}

double binomial(int n, int k) {
  double b = 1.0;
  for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
  return b;
}

double central_difference(const OscillatorParams& params, int n, PhasePoint p, int order,
                          double h) {
  const int half = order / 2;
  double acc = 0.0;
  for (int i = 0; i <= order; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    acc += sign * binomial(order, i) * wigner(params, n, {p.x, p.v + (half - i) * h});
  }
  return acc / std::pow(h, order);
}

double finite_difference_relative_derivative(const OscillatorParams& params, int n,
                                             PhasePoint p, int order) {
  // Second order uses h = 1e-3 sigma_v; higher orders balance the O(h^4)
  // Richardson truncation against roundoff growing like 4^k eps / h^{2k}.
  const int k = order / 2;
  const double eps = std::numeric_limits<double>::epsilon();
  const double rel_step =
      (order == 2) ? 1e-3 : std::pow(eps * std::pow(4.0, k), 1.0 / (order + 4.0));
  const double h = rel_step * params.sigma_v;
  const double coarse = central_difference(params, n, p, order, h);
  const double fine = central_difference(params, n, p, order, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0 / wigner(params, n, p);
}

}  // namespace

double relative_velocity_derivative(const OscillatorParams& params, int n, PhasePoint p,
                                    int order, DerivativeMethod method) {
  check_degree(n);
  if (order < 0 || order % 2 != 0) {
    throw InvalidParameter("relative_velocity_derivative: order must be even and non-negative");
  }
  if (order == 0) return 1.0;
  if (method == DerivativeMethod::finite_difference) {
    return finite_difference_relative_derivative(params, n, p, order);
  }
  return analytic_relative_derivative(params, n, p, order);
}

std::vector<double> vlasov_moyal_terms(const PolynomialPotential& potential,
                                       const OscillatorParams& params, int n, PhasePoint p,
                                       int truncation, DerivativeMethod method) {
  check_degree(n);
  if (truncation < 0) throw InvalidParameter("vlasov_moyal_terms: negative truncation");
  const double f = wigner(params, n, p);
  if (!(std::abs(f) >= kDensityFloor * wigner_peak(params))) {
    std::ostringstream msg;
    msg << "Wigner density " << f << " below floor at (" << p.x << ", " << p.v << ")";
    throw ZeroDensity(msg.str());
  }
  if (method == DerivativeMethod::automatic) {
    method = potential.degree() <= 2 ? DerivativeMethod::analytic
                                     : DerivativeMethod::finite_difference;
  }

  std::vector<double> terms(truncation + 1, 0.0);
  const double half_hbar_sq = 0.25 * params.hbar * params.hbar;
  double scale = -1.0 / params.m;  // (-1)^{k+1} (hbar/2)^{2k} / (m^{2k+1} (2k+1)!)
  for (int k = 0; k <= truncation; ++k) {
    if (k > 0) {
      scale *= -half_hbar_sq / (params.m * params.m * (2.0 * k) * (2.0 * k + 1.0));
    }
    const int order = 2 * k + 1;
    if (order > potential.degree()) continue;
    const double du = potential.derivative(order, p.x);
    terms[k] = scale * du * relative_velocity_derivative(params, n, p, 2 * k, method);
  }
  return terms;
}

double vlasov_moyal_acceleration(const PolynomialPotential& potential,
                                 const OscillatorParams& params, int n, PhasePoint p,
                                 int truncation, DerivativeMethod method) {
  double sum = 0.0;
  for (double t : vlasov_moyal_terms(potential, params, n, p, truncation, method)) sum += t;
  return sum;
}

double quantum_potential(const OscillatorParams& params, int n, double x) {
  check_degree(n);
  const double psi = std::sqrt(marginal_x(params, n, x));
  const double peak = std::pow(2.0 * std::numbers::pi * params.sigma_x * params.sigma_x, -0.25);
  if (!(psi >= kDensityFloor * peak)) {
    std::ostringstream msg;
    msg << "|psi| = " << psi << " below floor at x = " << x << " (n = " << n << ")";
    throw ZeroDensity(msg.str());
  }
  const double y = x / (std::numbers::sqrt2 * params.sigma_x);
  const auto h = hermite_derivatives_normalized(n, y);
  // psi ~ exp(-y^2/2) H_n(y): psi_yy / psi = y^2 - 1 + H''/H - 2y H'/H
  const double ratio_y = y * y - 1.0 + h.d2 / h.value - 2.0 * y * h.d1 / h.value;
  const double ratio_x = ratio_y / (2.0 * params.sigma_x * params.sigma_x);
  return -(params.hbar * params.hbar / (2.0 * params.m)) * ratio_x;
}

VerificationReport quantum_pressure_check(const OscillatorParams& params, int n,
                                          std::span<const double> x_samples, double tol) {
  check_degree(n);
  const auto table = table_for(n);
  const double w2 = params.omega * params.omega;
  WorstCase worst;
  int skipped = 0;
  for (double x : x_samples) {
    try {
      check_pole_guard(params, n, Axis::coordinate, x);
    } catch (const PoleProximity&) {
      ++skipped;
      continue;
    }
    const double lhs = velocity_pressure_gradient(params, *table, n, x) / marginal_x(params, n, x);
    const double err = std::abs(lhs + w2 * x) / (w2 * std::max(std::abs(x), params.sigma_x));
    std::ostringstream where;
    where << "x = " << x;
    worst.update(err, where.str());
  }
  VerificationReport report;
  std::ostringstream detail;
  detail << worst.where << "; " << skipped << " sample(s) inside guard bands skipped";
  report.add("momentum_balance_n" + std::to_string(n),
             "divergence of the velocity pressure balances the harmonic force", worst.err, tol,
             detail.str());
  return report;
}

}  // namespace qho
