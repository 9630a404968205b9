#include "qho/coeffs.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <mutex>
#include <sstream>

#include "qho/detail/summation.hpp"
#include "qho/errors.hpp"
#include "qho/polyspecial.hpp"

namespace qho {

namespace {

BigInt factorial(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// 2^j j!
BigInt double_factorial_scale(int j) {
  BigInt f = 1;
  for (int i = 1; i <= j; ++i) f *= 2 * i;
  return f;
}

Rational signed_by(int k, Rational r) { return (k % 2 == 0) ? r : Rational(-r); }

// Inner double sum shared by c and cbar; sign = +1 for c, -1 for cbar.
Rational c_like(int k, int sign) {
  Rational total = 0;
  for (int s = 0; s <= k; ++s) {
    const int j = k - s;
    const BigInt top = hermite_sq_zero(j) + BigInt(sign * 2 * j) * hermite_sq_zero(j - 1);
    Rational term(top, double_factorial_scale(j));
    if (s == 0) term /= 2;
    total += term;
  }
  return signed_by(k, total);
}

Rational j_closed_form(int k) {
  // (-1)^k { H_k^2(0) / (2^{k+1} k!) + sum_{s=1}^{k} H_{k-s}^2(0) / (2^{k-s} (k-s)!) }
  Rational total(hermite_sq_zero(k), 2 * double_factorial_scale(k));
  for (int s = 1; s <= k; ++s) {
    total += Rational(hermite_sq_zero(k - s), double_factorial_scale(k - s));
  }
  return signed_by(k, total);
}

}  // namespace

BigInt hermite_sq_zero(int k) {
  if (k < 0 || k % 2 == 1) return 0;
  const int m = k / 2;
  const BigInt ratio = factorial(2 * m) / factorial(m);
  return ratio * ratio;
}

CoefficientTable coefficient_table(int n) {
  if (n < 0) throw IndexOutOfRange("coefficient_table: n must be non-negative");
  CoefficientTable t;
  t.n = n;
  t.c.reserve(n + 1);
  t.cbar.reserve(n + 1);
  t.j_over_sqrt_pi.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    t.c.push_back(c_like(k, +1));
    t.cbar.push_back(c_like(k, -1));
    t.j_over_sqrt_pi.push_back(j_closed_form(k));
    t.c_f.push_back(static_cast<double>(t.c.back()));
    t.cbar_f.push_back(static_cast<double>(t.cbar.back()));
    t.c_l.push_back(t.c.back().convert_to<long double>());
    t.cbar_l.push_back(t.cbar.back().convert_to<long double>());
  }
  return t;
}

std::shared_ptr<const CoefficientTable> table_for(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const CoefficientTable>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const CoefficientTable>(coefficient_table(n));
  cache.emplace(n, table);
  return table;
}

Rational j_sum(int k, const CoefficientTable& table) {
  if (k < 1 || k > table.n) {
    throw IndexOutOfRange("j_sum: k = " + std::to_string(k) + " outside [1, " +
                          std::to_string(table.n) + "]");
  }
  return table.j_over_sqrt_pi[k] + table.j_over_sqrt_pi[k - 1];
}

namespace {

// Extended precision: the cbar series has a double root at every pole.
double series(const std::vector<long double>& coef, int table_n, int n, double t) {
  check_degree(n);
  if (n > table_n) {
    throw IndexOutOfRange("coefficient table holds k <= " + std::to_string(table_n) +
                          ", state " + std::to_string(n) + " requested");
  }
  const long double tl = t;
  long double prev = 0.0L;
  long double cur = 1.0L;
  long double sum = coef[n] * cur;
  for (int m = 0; m < n; ++m) {
    const long double next = ((2.0L * m + 1.0L - tl) * cur - m * prev) / (m + 1.0L);
    prev = cur;
    cur = next;
    sum += coef[n - m - 1] * cur;
  }
  return static_cast<double>(sum);
}

}  // namespace

double cbar_series(const CoefficientTable& table, int n, double t) {
  return series(table.cbar_l, table.n, n, t);
}

double c_series(const CoefficientTable& table, int n, double t) {
  return series(table.c_l, table.n, n, t);
}

VerificationReport verify_hermite_laguerre_identity(const OscillatorParams& params, int n,
                                                    std::span<const double> x_samples,
                                                    double tol) {
  check_degree(n);
  const auto table = table_for(n);
  WorstCase worst;
  for (double x : x_samples) {
    const double y = x / (std::numbers::sqrt2 * params.sigma_x);
    const double h = hermite_normalized(n, y);
    const double lhs = ((n % 2 == 0) ? 0.5 : -0.5) * h * h;

    const double t = (x / params.sigma_x) * (x / params.sigma_x);
    detail::CompensatedSum rhs;
    for (int k = 0; k <= n; ++k) rhs.add(table->cbar_f[k] * laguerre(n - k, 0, t));

    const double scale = std::max(std::abs(lhs), rhs.magnitude());
    const double err = scale > 0.0 ? std::abs(lhs - rhs.value()) / scale : 0.0;
    std::ostringstream where;
    where << "x = " << x;
    worst.update(err, where.str());
  }
  VerificationReport report;
  report.add("hermite_laguerre_identity_n" + std::to_string(n),
             "H_n^2 expansion in Laguerre polynomials with cbar coefficients", worst.err, tol,
             worst.where);
  return report;
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace qho
