#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qho/oscillator.hpp"
#include "qho/report.hpp"

namespace qho {

using BigInt = boost::multiprecision::cpp_int;
/// Always stored reduced with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

/// Exact H_k(0)^2: ((2m)!)^2 / (m!)^2 for k = 2m, 0 for odd k. Zero for k < 0.
BigInt hermite_sq_zero(int k);

/// Exact coefficient tables for the conditional second moment.
///
///   c[k]    = (-1)^k sum_s w(s) (H_{k-s}^2(0) + 2(k-s) H_{k-s-1}^2(0)) / (2^{k-s} (k-s)!)
///   cbar[k] = (-1)^k sum_s w(s) (H_{k-s}^2(0) - 2(k-s) H_{k-s-1}^2(0)) / (2^{k-s} (k-s)!)
///
/// with w(0) = 1/2, w(s > 0) = 1. j_over_sqrt_pi[k] is the Gaussian moment
/// J_k = int tau^2 exp(-tau^2) L_k(2 tau^2) dtau divided by sqrt(pi).
/// The *_f vectors are the same values rounded to double once.
struct CoefficientTable {
  int n = 0;
  std::vector<Rational> c;
  std::vector<Rational> cbar;
  std::vector<Rational> j_over_sqrt_pi;

  std::vector<double> c_f;
  std::vector<double> cbar_f;
  std::vector<long double> c_l;
  std::vector<long double> cbar_l;
};

/// Builds the table for k = 0..n in rational arithmetic.
CoefficientTable coefficient_table(int n);

/// Shared immutable table, built once per n.
std::shared_ptr<const CoefficientTable> table_for(int n);

/// (J_k + J_{k-1}) / sqrt(pi) for 1 <= k <= table.n.
Rational j_sum(int k, const CoefficientTable& table);

/// sum_k cbar[k] L_{n-k}(t) for the state n <= table.n.
double cbar_series(const CoefficientTable& table, int n, double t);
/// sum_k c[k] L_{n-k}(t).
double c_series(const CoefficientTable& table, int n, double t);

/// Checks (-1)^n / (2^{n+1} n!) H_n^2(x / sqrt2 sigma_x) = sum_k cbar[k] L_{n-k}(x^2/sigma_x^2)
/// at every sample. The deviation is measured relative to
/// max(|lhs|, sum_k |cbar[k] L_{n-k}|), which stays meaningful at the zeros of H_n.
VerificationReport verify_hermite_laguerre_identity(const OscillatorParams& params, int n,
                                                    std::span<const double> x_samples,
                                                    double tol = 1e-10);

/// "num/den" (or "num" when den == 1).
std::string to_string(const Rational& r);

}  // namespace qho
