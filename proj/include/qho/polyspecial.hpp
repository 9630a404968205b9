#pragma once

#include <vector>

namespace qho {

/// Largest polynomial degree / state index accepted by the floating-point
/// evaluators. H_n grows super-exponentially; past this the double path
/// no longer holds its invariants.
inline constexpr int kMaxDegree = 64;

/// Tolerance on the Hermite function h_n(z) exp(-z^2/2) at a returned zero.
inline constexpr double kZeroTol = 1e-12;

/// Throws DegreeOverflow unless 0 <= n <= kMaxDegree.
void check_degree(int n);

/// Physicists' Hermite polynomial H_n(y).
double hermite(int n, double y);

/// H_n(y) / sqrt(2^n n!), evaluated by the scaled recurrence so that it
/// neither overflows nor requires a factorial.
double hermite_normalized(int n, double y);

/// Hermite function hermite_normalized(n, y) * exp(-y^2/2); bounded by 1 in
/// magnitude for every n.
double hermite_function(int n, double y);

struct HermiteTriple {
  double value;
  double d1;
  double d2;
};

/// (H_n, H'_n, H''_n) from H'_n = 2n H_{n-1} and H''_n = 4n(n-1) H_{n-2}.
HermiteTriple hermite_derivatives(int n, double y);

/// Same triple divided by sqrt(2^n n!).
HermiteTriple hermite_derivatives_normalized(int n, double y);

/// Generalized Laguerre polynomial L_n^{(alpha)}(t); alpha = 0 is ordinary L_n.
/// Returns 0 for n < 0 so that shifted-index sums need no special cases.
double laguerre(int n, int alpha, double t);

/// d/dt L_n(t) = -L_{n-1}^{(1)}(t).
double laguerre_derivative(int n, double t);

/// j-th derivative of L_n^{(alpha)}: (-1)^j L_{n-j}^{(alpha+j)}(t).
double laguerre_derivative(int n, int alpha, int order, double t);

/// The n real zeros of H_n, sorted ascending.
struct HermiteZeroSet {
  int n = 0;
  std::vector<double> zeros;
};

/// All zeros of H_n for 1 <= n <= kMaxDegree. Starting values come from the
/// symmetric tridiagonal Jacobi matrix; each is then Newton-polished on the
/// orthonormalized polynomial; the Hermite function at each zero is within kZeroTol.
/// Results are cached per degree.
const HermiteZeroSet& hermite_zeros(int n);

}  // namespace qho
