#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "qho/errors.hpp"
#include "qho/oracle.hpp"
#include "qho/polyspecial.hpp"
#include "support.hpp"

using namespace qho;
using namespace qho::oracle;
using qho::test::rel_err;

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

}  // namespace

TEST_CASE("gauss_hermite_rule: structure") {
  for (int nodes : {2, 3, 8, 33, 64, kDefaultNodes, 200}) {
    CAPTURE(nodes);
    const auto& r = gauss_hermite_rule(nodes);
    REQUIRE(r.size() == static_cast<std::size_t>(nodes));
    CHECK(r.kind == RuleKind::gauss_hermite);
    CHECK(r.exactness_degree() == 2 * nodes - 1);
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) {
      sum += r.weights[i];
      CHECK(r.weights[i] > 0.0);
      CHECK(r.nodes[i] == -r.nodes[nodes - 1 - i]);
      CHECK(r.weights[i] == r.weights[nodes - 1 - i]);
      if (i > 0) CHECK(r.nodes[i - 1] < r.nodes[i]);
    }
    CHECK(std::abs(sum - kSqrtPi) <= 1e-13);
  }
  CHECK(&gauss_hermite_rule(40) == &gauss_hermite_rule(40));
  CHECK_THROWS_AS(gauss_hermite_rule(1), InvalidParameter);
}

TEST_CASE("gauss_hermite_rule: nodes are zeros of H_N") {
  for (int nodes = 1; nodes <= kMaxDegree; nodes += 7) {
    if (nodes < 2) continue;
    const auto& r = gauss_hermite_rule(nodes);
    const auto& z = hermite_zeros(nodes).zeros;
    for (int i = 0; i < nodes; ++i) CHECK(std::abs(r.nodes[i] - z[i]) <= 1e-13 * std::max(1.0, std::abs(z[i])));
  }
}

TEST_CASE("gauss_hermite_rule: exact Gaussian moments up to its degree") {
  for (int nodes : {4, 16, 64, kDefaultNodes}) {
    const auto& r = gauss_hermite_rule(nodes);
    const int kmax = std::min(nodes - 1, 40);
    for (int k = 0; k <= kmax; ++k) {
      const double got = integrate_gaussian_weighted([k](double t) { return std::pow(t * t, k); }, r);
      CHECK(rel_err(got, std::tgamma(k + 0.5)) <= 1e-12);
    }
  }
}

TEST_CASE("integrate_gaussian_weighted: reference integrals") {
  CHECK(integrate_gaussian_weighted([](double) { return 1.0; }) == doctest::Approx(kSqrtPi).epsilon(1e-14));
  const auto& r64 = gauss_hermite_rule(64);
  CHECK(integrate_gaussian_weighted([](double t) { return t * t * laguerre(1, 0, 2 * t * t); }, r64) ==
        doctest::Approx(-kSqrtPi).epsilon(1e-14));
  CHECK(integrate_gaussian_weighted([](double t) { return t * t; }, r64) ==
        doctest::Approx(kSqrtPi / 2).epsilon(1e-14));
  CHECK_THROWS_AS(
      integrate_gaussian_weighted([](double) { return std::numeric_limits<double>::quiet_NaN(); }),
      QuadratureError);
  CHECK_THROWS_AS(
      integrate_gaussian_weighted([](double t) { return t > 5 ? std::numeric_limits<double>::infinity() : 0.0; }),
      QuadratureError);
}

TEST_CASE("trapezoid_rule") {
  const auto r = trapezoid_rule();
  CHECK(r.kind == RuleKind::trapezoid_truncated);
  CHECK(r.size() == 4097);
  CHECK(r.half_width_sigma == 10.0);
  CHECK(r.exactness_degree() == 0);
  CHECK(r.nodes.front() == doctest::Approx(-10.0 / std::numbers::sqrt2).epsilon(1e-15));
  CHECK(integrate_gaussian_weighted([](double) { return 1.0; }, r) == doctest::Approx(kSqrtPi).epsilon(1e-13));
  CHECK_THROWS_AS(trapezoid_rule(1), InvalidParameter);
  CHECK_THROWS_AS(trapezoid_rule(10, 0.0), InvalidParameter);
}

TEST_CASE("conditional_moment_oracle: reference values") {
  const auto p = dimensionless_params();
  for (double x : {-2.0, 0.0, 0.6, 3.3}) {
    CHECK(conditional_moment_oracle(p, 0, Axis::coordinate, x) == doctest::Approx(1.0).epsilon(1e-14));
  }
  CHECK(conditional_moment_oracle(p, 1, Axis::coordinate, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  CHECK(conditional_moment_oracle(p, 1, Axis::velocity, 1.0) == doctest::Approx(3.0).epsilon(1e-13));
  const auto q = make_params(UnitMode::physical, 1.0, 2.0, 1.0);
  CHECK(conditional_moment_oracle(q, 0, Axis::coordinate, 0.2) ==
        doctest::Approx(q.sigma_v * q.sigma_v).epsilon(1e-14));
  CHECK(conditional_moment_oracle(q, 0, Axis::velocity, 0.2) ==
        doctest::Approx(q.sigma_x * q.sigma_x).epsilon(1e-14));
  CHECK_THROWS_AS(conditional_moment_oracle(p, 1, Axis::coordinate, 0.0), QuadratureError);
}

TEST_CASE("conditional_moment_oracle: node count does not matter once exact") {
  const auto p = dimensionless_params();
  for (int n = 0; n <= 10; ++n) {
    const double a = conditional_moment_oracle(p, n, Axis::coordinate, 0.7, gauss_hermite_rule(32));
    const double b = conditional_moment_oracle(p, n, Axis::coordinate, 0.7, gauss_hermite_rule(128));
    CHECK(rel_err(a, b) <= 1e-13 * std::max(1.0, n * 1.0));
  }
}

TEST_CASE("trapezoid and Gauss-Hermite agree") {
  // A 10 sigma window drops ~1e-9 of the n = 9, 10 integrals; those use 12 sigma.
  const auto p = dimensionless_params();
  const auto trap10 = trapezoid_rule();
  const auto trap12 = trapezoid_rule(4097, 12.0);
  for (int n = 0; n <= 10; ++n) {
    const auto& trap = n <= 8 ? trap10 : trap12;
    for (double x : {-3.7, -1.25, 0.15, 0.9, 2.4}) {
      CAPTURE(n);
      CAPTURE(x);
      const double gh = conditional_moment_oracle(p, n, Axis::coordinate, x);
      const double tr = conditional_moment_oracle(p, n, Axis::coordinate, x, trap);
      CHECK(rel_err(tr, gh) <= 1e-10);
      const double mg = marginal_oracle(p, n, Axis::coordinate, x);
      const double mt = marginal_oracle(p, n, Axis::coordinate, x, trap);
      CHECK(std::abs(mt - mg) <= 1e-10 * std::max(std::abs(mg), 1e-3));
    }
  }
}

TEST_CASE("the 10 sigma trapezoid window truncates the n = 10 tail") {
  const auto p = dimensionless_params();
  const double gh = conditional_moment_oracle(p, 10, Axis::coordinate, 0.9);
  const double tr = conditional_moment_oracle(p, 10, Axis::coordinate, 0.9, trapezoid_rule());
  CHECK(rel_err(tr, gh) > 1e-10);
  CHECK(rel_err(tr, gh) < 1e-8);
}

TEST_CASE("global_moment_oracle: reference values") {
  const auto p = dimensionless_params();
  CHECK(global_moment_oracle(p, 2, Weight::energy) == doctest::Approx(2.5).epsilon(1e-13));
  CHECK(global_moment_oracle(p, 4, Weight::v2) == doctest::Approx(9.0).epsilon(1e-13));
  for (int n = 0; n <= 6; ++n) {
    CHECK(std::abs(global_moment_oracle(p, n, Weight::energy_var) - 0.25) <= 1e-10);
  }
  for (int n = 0; n <= 10; ++n) {
    CHECK(std::abs(global_moment_oracle(p, n, Weight::one) - 1.0) <= 1e-10);
  }
  const auto q = make_params(UnitMode::physical, 2.0, 0.5, 3.0);
  CHECK(rel_err(global_moment_oracle(q, 3, Weight::x2), 7 * q.sigma_x * q.sigma_x) <= 1e-12);
  CHECK(rel_err(global_moment_oracle(q, 3, Weight::energy), 3.5) <= 1e-12);
}
