#include "qho/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "qho/detail/summation.hpp"
#include "qho/errors.hpp"

namespace qho::oracle {

int QuadratureRule::exactness_degree() const {
  return kind == RuleKind::gauss_hermite ? 2 * static_cast<int>(nodes.size()) - 1 : 0;
}

namespace {

struct Orthonormal {
  double sum_sq;  // sum_{k<N} h_k^2
  double last;    // h_N
  double prev;    // h_{N-1}
};

// h_k = H_k / sqrt(2^k k!), h_0 = 1.
Orthonormal orthonormal_hermite(int order, double y) {
  double prev = 0.0;
  double cur = 1.0;
  double sum_sq = 0.0;
  for (int k = 0; k < order; ++k) {
    sum_sq += cur * cur;
    const double next = std::sqrt(2.0 / (k + 1)) * y * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return {sum_sq, cur, prev};
}

QuadratureRule golub_welsch(int nodes) {
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(nodes, nodes);
  for (int k = 1; k < nodes; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("gauss_hermite_rule: eigen decomposition failed");
  }
  QuadratureRule rule;
  rule.kind = RuleKind::gauss_hermite;
  rule.nodes.resize(nodes);
  rule.weights.resize(nodes);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < nodes; ++i) {
    double x = solver.eigenvalues()(i);
    for (int it = 0; it < 8; ++it) {
      const Orthonormal h = orthonormal_hermite(nodes, x);
      const double step = h.last / (std::sqrt(2.0 * nodes) * h.prev);
      x -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(x))) break;
    }
    rule.nodes[i] = x;
    // Christoffel weights; eigenvector components lose the far tail.
    rule.weights[i] = mu0 / orthonormal_hermite(nodes, x).sum_sq;
  }
  // Symmetrize: the exact rule is even.
  for (int i = 0; i < nodes / 2; ++i) {
    const int j = nodes - 1 - i;
    const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
    rule.nodes[i] = -x;
    rule.nodes[j] = x;
    rule.weights[i] = rule.weights[j] = w;
  }
  if (nodes % 2 == 1) rule.nodes[nodes / 2] = 0.0;
  return rule;
}

}  // namespace

const QuadratureRule& gauss_hermite_rule(int nodes) {
  if (nodes < 2) throw InvalidParameter("gauss_hermite_rule: need at least 2 nodes");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const QuadratureRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[nodes];
  if (!slot) slot = std::make_unique<const QuadratureRule>(golub_welsch(nodes));
  return *slot;
}

QuadratureRule trapezoid_rule(int nodes, double half_width_sigma) {
  if (nodes < 2) throw InvalidParameter("trapezoid_rule: need at least 2 nodes");
  if (!(half_width_sigma > 0.0)) throw InvalidParameter("trapezoid_rule: half width must be positive");
  QuadratureRule rule;
  rule.kind = RuleKind::trapezoid_truncated;
  rule.half_width_sigma = half_width_sigma;
  const double h_tau = half_width_sigma / std::numbers::sqrt2;
  const double step = 2.0 * h_tau / (nodes - 1);
  rule.nodes.resize(nodes);
  rule.weights.resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    const double tau = -h_tau + i * step;
    rule.nodes[i] = tau;
    const double end = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
    rule.weights[i] = end * step * std::exp(-tau * tau);
  }
  return rule;
}

double integrate_gaussian_weighted(const std::function<double(double)>& g,
                                   const QuadratureRule& rule) {
  detail::CompensatedSum sum;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double value = g(rule.nodes[i]);
    if (!std::isfinite(value)) {
      throw QuadratureError("integrand is not finite at node tau = " +
                            std::to_string(rule.nodes[i]));
    }
    sum.add(rule.weights[i] * value);
  }
  return sum.value();
}

namespace {

// f_{2,n} at the fixed abscissa and free-axis value u = sqrt2 sigma tau,
// with the Gaussian factor exp(-tau^2) divided back out.
double stripped_wigner(const OscillatorParams& params, int n, Axis axis, double abscissa,
                       double tau) {
  if (axis == Axis::coordinate) {
    const double v = std::numbers::sqrt2 * params.sigma_v * tau;
    return wigner(params, n, {abscissa, v}) * std::exp(tau * tau);
  }
  const double x = std::numbers::sqrt2 * params.sigma_x * tau;
  return wigner(params, n, {x, abscissa}) * std::exp(tau * tau);
}

double free_sigma(const OscillatorParams& params, Axis axis) {
  return axis == Axis::coordinate ? params.sigma_v : params.sigma_x;
}

double fixed_sigma(const OscillatorParams& params, Axis axis) {
  return axis == Axis::coordinate ? params.sigma_x : params.sigma_v;
}

}  // namespace

double marginal_oracle(const OscillatorParams& params, int n, Axis axis, double abscissa,
                       const QuadratureRule& rule) {
  const double jac = std::numbers::sqrt2 * free_sigma(params, axis);
  return jac * integrate_gaussian_weighted(
                   [&](double tau) { return stripped_wigner(params, n, axis, abscissa, tau); },
                   rule);
}

double conditional_moment_oracle(const OscillatorParams& params, int n, Axis axis,
                                 double abscissa, const QuadratureRule& rule) {
  const double s = std::numbers::sqrt2 * free_sigma(params, axis);
  const double den = integrate_gaussian_weighted(
      [&](double tau) { return stripped_wigner(params, n, axis, abscissa, tau); }, rule);
  const double num = integrate_gaussian_weighted(
      [&](double tau) {
        const double u = s * tau;
        return u * u * stripped_wigner(params, n, axis, abscissa, tau);
      },
      rule);
  // den is the marginal divided by s; compare against the ground-state peak.
  const double floor = 1e-15 / (std::sqrt(2.0 * std::numbers::pi) * fixed_sigma(params, axis) * s);
  if (!(std::abs(den) > floor)) {
    throw QuadratureError("conditional_moment_oracle: vanishing denominator at abscissa " +
                          std::to_string(abscissa));
  }
  return num / den;
}

double global_moment_oracle(const OscillatorParams& params, int n, Weight weight,
                            const QuadratureRule& rule) {
  const double sx = std::numbers::sqrt2 * params.sigma_x;
  const double sv = std::numbers::sqrt2 * params.sigma_v;
  const double mean = n + 0.5;
  detail::CompensatedSum outer;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double tx = rule.nodes[i];
    const double x = sx * tx;
    detail::CompensatedSum inner;
    for (std::size_t j = 0; j < rule.size(); ++j) {
      const double tv = rule.nodes[j];
      const double v = sv * tv;
      const double f = wigner(params, n, {x, v}) * std::exp(tx * tx + tv * tv);
      double w = 1.0;
      switch (weight) {
        case Weight::v2: w = v * v; break;
        case Weight::x2: w = x * x; break;
        case Weight::energy: w = energy_from_momentum(params, x, params.m * v); break;
        case Weight::energy_var: {
          const double d = energy_from_momentum(params, x, params.m * v) - mean;
          w = d * d;
          break;
        }
        case Weight::one: break;
      }
      const double term = f * w;
      if (!std::isfinite(term)) {
        throw QuadratureError("global_moment_oracle: non-finite integrand");
      }
      inner.add(rule.weights[j] * term);
    }
    outer.add(rule.weights[i] * inner.value());
  }
  return sx * sv * outer.value();
}

}  // namespace qho::oracle
