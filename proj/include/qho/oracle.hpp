#pragma once

#include <functional>
#include <vector>

#include "qho/oscillator.hpp"
#include "qho/polyspecial.hpp"

// Brute-force quadrature reference. Everything here is built only on
// polyspecial and oscillator evaluations; it never touches the coefficient
// tables or the moment closed forms it is used to check.

namespace qho::oracle {

enum class RuleKind { gauss_hermite, trapezoid_truncated };

/// Nodes and weights for int exp(-tau^2) g(tau) dtau ~= sum_i w_i g(tau_i).
struct QuadratureRule {
  RuleKind kind = RuleKind::gauss_hermite;
  std::vector<double> nodes;
  std::vector<double> weights;
  double half_width_sigma = 0.0;  // trapezoid only

  std::size_t size() const { return nodes.size(); }
  /// Highest polynomial degree integrated exactly (gauss_hermite), else 0.
  int exactness_degree() const;
};

/// 2 * kMaxDegree + 8: exact for every polynomial-times-Gaussian integrand
/// reachable with n <= kMaxDegree.
inline constexpr int kDefaultNodes = 2 * kMaxDegree + 8;

/// Gauss-Hermite rule. Nodes are Jacobi-matrix eigenvalues Newton-polished
/// on H_N; weights come from the Christoffel sum sqrt(pi) / sum_k h_k(tau)^2
/// over the orthonormalized recurrence. Weights sum to sqrt(pi). Cached per
/// node count.
const QuadratureRule& gauss_hermite_rule(int nodes = kDefaultNodes);

/// Composite trapezoid on tau in [-H, H] with H = half_width_sigma / sqrt2
/// (the substitution u = sqrt2 sigma tau maps +-half_width_sigma standard
/// deviations onto +-H). Weights carry the exp(-tau^2) factor.
QuadratureRule trapezoid_rule(int nodes = 4097, double half_width_sigma = 10.0);

/// int exp(-tau^2) g(tau) dtau. Throws QuadratureError when g is not finite at a node.
double integrate_gaussian_weighted(const std::function<double(double)>& g,
                                   const QuadratureRule& rule = gauss_hermite_rule());

/// int u^2 f_{2,n} du / int f_{2,n} du along the free axis at the given
/// fixed abscissa (axis = coordinate: fixed x, integrate over v).
/// Throws QuadratureError when the denominator vanishes.
double conditional_moment_oracle(const OscillatorParams& params, int n, Axis axis,
                                 double abscissa,
                                 const QuadratureRule& rule = gauss_hermite_rule());

/// int f_{2,n}(x, v) dv at fixed x (or dx at fixed v for Axis::velocity).
double marginal_oracle(const OscillatorParams& params, int n, Axis axis, double abscissa,
                       const QuadratureRule& rule = gauss_hermite_rule());

enum class Weight {
  v2,          ///< <<v^2>>
  x2,          ///< <<x^2>>
  energy,      ///< <<eps>> in units of hbar*omega
  energy_var,  ///< <<(eps - (n + 1/2))^2>>, dimensionless
  one,         ///< normalization
};

/// Tensorized 2-D phase-space average of the requested weight against f_{2,n}.
double global_moment_oracle(const OscillatorParams& params, int n, Weight weight,
                            const QuadratureRule& rule = gauss_hermite_rule());

}  // namespace qho::oracle
