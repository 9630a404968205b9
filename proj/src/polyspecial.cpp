#include "qho/polyspecial.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>

#include "qho/errors.hpp"

namespace qho {

void check_degree(int n) {
  if (n < 0 || n > kMaxDegree) {
    throw DegreeOverflow("degree " + std::to_string(n) + " outside [0, " +
                         std::to_string(kMaxDegree) + "]");
  }
}

namespace {

// Returns {H_n, H_{n-1}, H_{n-2}} with H_{-1} = H_{-2} = 0.
std::array<double, 3> hermite_run(int n, double y) {
  double prev2 = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = 2.0 * y * cur - 2.0 * k * prev;
    prev2 = prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev, prev2};
}

// Orthonormal-scaled run: h_k = H_k / sqrt(2^k k!),
// h_{k+1} = sqrt(2/(k+1)) y h_k - sqrt(k/(k+1)) h_{k-1}.
std::array<double, 3> hermite_run_normalized(int n, double y) {
  double prev2 = 0.0;
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * y * cur -
                        std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev2 = prev;
    prev = cur;
    cur = next;
  }
  return {cur, prev, prev2};
}

}  // namespace

double hermite(int n, double y) {
  check_degree(n);
  return hermite_run(n, y)[0];
}

double hermite_normalized(int n, double y) {
  check_degree(n);
  return hermite_run_normalized(n, y)[0];
}

double hermite_function(int n, double y) {
  return hermite_normalized(n, y) * std::exp(-0.5 * y * y);
}

HermiteTriple hermite_derivatives(int n, double y) {
  check_degree(n);
  const auto [h, h1, h2] = hermite_run(n, y);
  return {h, 2.0 * n * h1, 4.0 * n * (n - 1.0) * h2};
}

HermiteTriple hermite_derivatives_normalized(int n, double y) {
  check_degree(n);
  const auto [h, h1, h2] = hermite_run_normalized(n, y);
  // H_{n-1}/sqrt(2^n n!) = h_{n-1}/sqrt(2n), H_{n-2}/sqrt(2^n n!) = h_{n-2}/sqrt(4n(n-1)).
  const double d1 = n > 0 ? std::sqrt(2.0 * n) * h1 : 0.0;
  const double d2 = n > 1 ? std::sqrt(4.0 * n * (n - 1.0)) * h2 : 0.0;
  return {h, d1, d2};
}

double laguerre(int n, int alpha, double t) {
  if (n < 0) return 0.0;
  check_degree(n);
  if (alpha < 0) throw InvalidParameter("laguerre: alpha must be non-negative");
  double prev = 0.0;
  double cur = 1.0;
  for (int k = 0; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - t) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre_derivative(int n, double t) { return -laguerre(n - 1, 1, t); }

double laguerre_derivative(int n, int alpha, int order, double t) {
  if (order < 0) throw InvalidParameter("laguerre_derivative: negative order");
  const double v = laguerre(n - order, alpha + order, t);
  return (order % 2 == 0) ? v : -v;
}

namespace {

HermiteZeroSet compute_hermite_zeros(int n) {
  // Jacobi matrix of the Hermite weight: zero diagonal, off-diagonal sqrt(k/2).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(k / 2.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("hermite_zeros: eigen solver failed for n = " + std::to_string(n));
  }

  HermiteZeroSet out;
  out.n = n;
  out.zeros.resize(n);
  for (int i = 0; i < n; ++i) {
    double z = solver.eigenvalues()(i);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      const auto t = hermite_derivatives_normalized(n, z);
      const double step = t.value / t.d1;
      z -= step;
      if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(z))) {
        converged = true;
        break;
      }
    }
    if (!converged && std::abs(hermite_function(n, z)) > kZeroTol) {
      throw ConvergenceFailure("hermite_zeros: Newton polish did not converge for n = " +
                               std::to_string(n));
    }
    out.zeros[i] = z;
  }

  // Enforce exact symmetry: H_n is even/odd, so its zeros come in +- pairs,
  // with an exact zero at the origin for odd n.
  std::sort(out.zeros.begin(), out.zeros.end());
  for (int i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (out.zeros[n - 1 - i] - out.zeros[i]);
    out.zeros[i] = -a;
    out.zeros[n - 1 - i] = a;
  }
  if (n % 2 == 1) out.zeros[n / 2] = 0.0;
  return out;
}

}  // namespace

const HermiteZeroSet& hermite_zeros(int n) {
  check_degree(n);
  if (n < 1) throw DegreeOverflow("hermite_zeros: degree must be at least 1");

  static std::mutex mutex;
  static std::array<std::unique_ptr<const HermiteZeroSet>, kMaxDegree + 1> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[static_cast<std::size_t>(n)];
  if (!slot) slot = std::make_unique<const HermiteZeroSet>(compute_hermite_zeros(n));
  return *slot;
}

}  // namespace qho
