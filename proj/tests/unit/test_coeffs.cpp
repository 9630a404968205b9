#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "doctest.h"
#include "qho/coeffs.hpp"
#include "qho/errors.hpp"
#include "qho/oracle.hpp"
#include "qho/polyspecial.hpp"
#include "support.hpp"

using namespace qho;
using qho::test::Gen;

namespace {

Rational q(long long num, long long den = 1) { return Rational(num, den); }

BigInt factorial(int k) {
  BigInt f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

// J_k / sqrt(pi) by Gauss-Hermite quadrature of tau^2 L_k(2 tau^2).
double j_quadrature(int k) {
  const auto& rule = oracle::gauss_hermite_rule(32);
  return oracle::integrate_gaussian_weighted(
             [k](double tau) { return tau * tau * laguerre(k, 0, 2.0 * tau * tau); }, rule) /
         std::sqrt(std::numbers::pi);
}

}  // namespace

TEST_CASE("hermite_sq_zero: values and parity") {
  CHECK(hermite_sq_zero(0) == 1);
  CHECK(hermite_sq_zero(1) == 0);
  CHECK(hermite_sq_zero(2) == 4);
  CHECK(hermite_sq_zero(4) == 144);
  CHECK(hermite_sq_zero(-1) == 0);
  for (int m = 0; m <= 30; ++m) {
    // H_{2m}(0) = (-1)^m (2m)! / m!
    const BigInt h = factorial(2 * m) / factorial(m);
    CHECK(hermite_sq_zero(2 * m) == h * h);
    CHECK(hermite_sq_zero(2 * m + 1) == 0);
  }
  for (int k = 0; k <= 20; ++k) {
    const double h = hermite(k, 0.0);
    CHECK(static_cast<double>(hermite_sq_zero(k)) == doctest::Approx(h * h).epsilon(1e-15));
  }
}

TEST_CASE("coefficient_table: leading entries") {
  const auto t = coefficient_table(5);
  REQUIRE(t.n == 5);
  REQUIRE(t.c.size() == 6);
  REQUIRE(t.cbar.size() == 6);
  REQUIRE(t.j_over_sqrt_pi.size() == 6);
  const std::vector<Rational> c = {q(1, 2), q(-3, 2), q(9, 4), q(-11, 4), q(51, 16)};
  const std::vector<Rational> cbar = {q(1, 2), q(-1, 2), q(1, 4), q(-1, 4), q(3, 16)};
  const std::vector<Rational> j = {q(1, 2), q(-1), q(5, 4), q(-3, 2), q(27, 16), q(-15, 8)};
  for (int k = 0; k < 5; ++k) {
    CHECK(t.c[k] == c[k]);
    CHECK(t.cbar[k] == cbar[k]);
  }
  for (int k = 0; k <= 5; ++k) CHECK(t.j_over_sqrt_pi[k] == j[k]);
}

TEST_CASE("coefficient_table: rationals are reduced and the float copies match") {
  const auto t = coefficient_table(40);
  for (int k = 0; k <= 40; ++k) {
    for (const Rational* r : {&t.c[k], &t.cbar[k], &t.j_over_sqrt_pi[k]}) {
      const BigInt num = boost::multiprecision::numerator(*r);
      const BigInt den = boost::multiprecision::denominator(*r);
      CHECK(den > 0);
      CHECK(boost::multiprecision::gcd(num, den) == 1);
    }
    CHECK(t.c_f[k] == static_cast<double>(t.c[k]));
    CHECK(t.cbar_f[k] == static_cast<double>(t.cbar[k]));
  }
}

TEST_CASE("coefficient_table: C_k and Cbar_k are differences and sums of neighbouring J") {
  const auto t = coefficient_table(40);
  CHECK(t.c[0] == t.j_over_sqrt_pi[0]);
  CHECK(t.cbar[0] == t.j_over_sqrt_pi[0]);
  for (int k = 1; k <= 40; ++k) {
    CHECK(t.c[k] == t.j_over_sqrt_pi[k] - t.j_over_sqrt_pi[k - 1]);
    CHECK(t.cbar[k] == t.j_over_sqrt_pi[k] + t.j_over_sqrt_pi[k - 1]);
  }
}

TEST_CASE("J closed form equals its Gaussian integral") {
  const auto t = coefficient_table(20);
  for (int k = 0; k <= 20; ++k) {
    CAPTURE(k);
    const double exact = static_cast<double>(t.j_over_sqrt_pi[k]);
    CHECK(std::abs(j_quadrature(k) - exact) <= 1e-12 * std::abs(exact));
  }
}

TEST_CASE("C and Cbar against quadrature J") {
  const auto t = coefficient_table(12);
  for (int k = 1; k <= 12; ++k) {
    const double jk = j_quadrature(k);
    const double jm = j_quadrature(k - 1);
    CHECK(t.c_f[k] == doctest::Approx(jk - jm).epsilon(1e-12));
    CHECK(t.cbar_f[k] == doctest::Approx(jk + jm).epsilon(1e-12));
  }
}

TEST_CASE("j_sum") {
  const auto t = coefficient_table(12);
  CHECK(j_sum(1, t) == q(-1, 2));
  for (int k = 1; k <= 12; ++k) {
    CHECK(j_sum(k, t) == t.j_over_sqrt_pi[k] + t.j_over_sqrt_pi[k - 1]);
    CHECK(boost::multiprecision::sign(j_sum(k, t)) == (k % 2 == 0 ? 1 : -1));
  }
  CHECK_THROWS_AS(j_sum(0, t), IndexOutOfRange);
  CHECK_THROWS_AS(j_sum(13, t), IndexOutOfRange);
}

TEST_CASE("Laguerre series: low states by hand") {
  const auto t = coefficient_table(3);
  for (double s : {0.0, 0.4, 2.0, 9.0}) {
    CHECK(cbar_series(t, 0, s) == 0.5);
    CHECK(c_series(t, 0, s) == 0.5);
    CHECK(cbar_series(t, 1, s) == doctest::Approx(-s / 2).epsilon(1e-15).scale(1e-15));
  }
  CHECK_THROWS_AS(cbar_series(t, 4, 1.0), IndexOutOfRange);
  CHECK_THROWS_AS(c_series(t, 4, 1.0), IndexOutOfRange);
}

TEST_CASE("Hermite-squared identity: the cbar series is the scaled marginal") {
  const auto p = dimensionless_params();
  std::vector<double> xs;
  for (int i = 0; i <= 100; ++i) xs.push_back(-6.0 + 12.0 * i / 100.0);
  for (int n = 0; n <= 20; ++n) {
    const auto r = verify_hermite_laguerre_identity(p, n, xs);
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].pass);
    CHECK(r.checks[0].max_err <= 1e-10);
  }
  const auto q1 = make_params(UnitMode::physical, 2.0, 3.0, 0.5);
  std::vector<double> scaled;
  for (double x : xs) scaled.push_back(x * q1.sigma_x);
  CHECK(verify_hermite_laguerre_identity(q1, 12, scaled).all_pass());
  const auto strict = verify_hermite_laguerre_identity(p, 7, xs, 0.0);
  CHECK(strict.checks[0].tol == 0.0);
  CHECK(strict.checks[0].pass == (strict.checks[0].max_err == 0.0));
}

TEST_CASE("Decomposition of the scaled Hermite square into J sums") {
  const auto t = coefficient_table(12);
  Gen gen(41);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(0, 12);
    const double x = gen.uniform(-5.0, 5.0);
    const double s = x * x;
    const double h = hermite_normalized(n, x / std::numbers::sqrt2);
    const double lhs = (n % 2 == 0 ? 0.5 : -0.5) * h * h;
    double rhs = laguerre(n, 0, s) * static_cast<double>(t.j_over_sqrt_pi[0]);
    double mag = std::abs(rhs);
    for (int k = 1; k <= n; ++k) {
      const double term = laguerre(n - k, 0, s) * static_cast<double>(j_sum(k, t));
      rhs += term;
      mag += std::abs(term);
    }
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::max(std::abs(lhs), mag));
  }
}

TEST_CASE("table_for: cached and shared across threads") {
  const auto a = table_for(9);
  const auto b = table_for(9);
  CHECK(a.get() == b.get());
  std::vector<std::shared_ptr<const CoefficientTable>> seen(6);
  std::vector<std::thread> pool;
  for (std::size_t i = 0; i < seen.size(); ++i) {
    pool.emplace_back([&seen, i] { seen[i] = table_for(23); });
  }
  for (auto& th : pool) th.join();
  for (const auto& s : seen) CHECK(s.get() == seen.front().get());
  CHECK(seen.front()->n == 23);
}

TEST_CASE("to_string") {
  CHECK(to_string(q(1, 2)) == "1/2");
  CHECK(to_string(q(-3, 2)) == "-3/2");
  CHECK(to_string(q(6, 2)) == "3");
}
