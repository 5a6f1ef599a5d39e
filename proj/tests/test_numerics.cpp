#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "povmq/quadrature.hpp"
#include "povmq/special.hpp"

using namespace povmq;

namespace {
constexpr double kPi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }
}  // namespace

TEST_SUITE("numerics") {
  TEST_CASE("laguerre agrees with the standard library") {
    for (double alpha : {0.0, 0.5, 2.0, 3.0})
      for (int n : {0, 1, 2, 5, 12, 20})
        for (double x : {0.1, 1.0, 5.0, 30.0}) {
          const double expect = std::assoc_laguerre(n, static_cast<unsigned>(alpha), x);
          if (alpha != std::floor(alpha)) continue;
          CHECK(rel(laguerre(n, alpha, x), expect) < 1e-10);
        }
  }

  TEST_CASE("laguerre at half-integer alpha matches the explicit sum") {
    const double alpha = 0.5, x = 2.3;
    for (int n = 0; n <= 8; ++n) {
      double sum = 0.0;
      for (int k = 0; k <= n; ++k)
        sum += std::pow(-x, k) / std::tgamma(k + 1.0) *
               std::exp(std::lgamma(n + alpha + 1.0) - std::lgamma(n - k + 1.0) - std::lgamma(alpha + k + 1.0));
      CHECK(laguerre(n, alpha, x) == doctest::Approx(sum).epsilon(1e-12));
    }
  }

  TEST_CASE("complex laguerre reduces to the real one on the real axis") {
    for (int n : {0, 3, 9})
      CHECK(std::abs(laguerre(n, 1.0, std::complex<double>(1.7, 0.0)) - laguerre(n, 1.0, 1.7)) < 1e-12);
  }

  TEST_CASE("laguerre rejects bad arguments") {
    CHECK_THROWS_AS(laguerre(-1, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(laguerre(2, -1.5, 1.0), std::domain_error);
    CHECK_NOTHROW(laguerre(2, -2.0, 1.0));
  }

  TEST_CASE("modified Bessel I agrees with the standard library") {
    for (double nu : {0.0, 0.5, 1.0, 3.0})
      for (double x : {1e-3, 0.5, 5.0, 50.0}) CHECK(rel(bessel_i(nu, x), std::cyl_bessel_i(nu, x)) < 1e-12 * std::max(1.0, std::cyl_bessel_i(nu, x)));
  }

  TEST_CASE("scaled Bessel I follows the large-argument expansion") {
    const double x = 900.0;
    for (double nu : {0.0, 2.0}) {
      const double mu = 4.0 * nu * nu;
      const double asym = (1.0 - (mu - 1.0) / (8.0 * x) + (mu - 1.0) * (mu - 9.0) / (2.0 * 64.0 * x * x)) /
                          std::sqrt(2.0 * kPi * x);
      CHECK(bessel_i_scaled(nu, x) == doctest::Approx(asym).epsilon(1e-8));
    }
    const auto v = bessel_i_ex(0.0, 800.0);
    CHECK(v.scaled);
    CHECK(std::isinf(bessel_i(0.0, 800.0)));
  }

  TEST_CASE("terminating hypergeometric series") {
    const double b = 0.7, c = 2.5, x = 0.3;
    const double expect = 1.0 - 2.0 * b * x / c + b * (b + 1.0) * x * x / (c * (c + 1.0));
    CHECK(hyp2f1_terminating(2, b, c, x) == doctest::Approx(expect).epsilon(1e-14));
    CHECK(pochhammer(3.0, 4) == 360.0);
    CHECK(pochhammer(5.0, 0) == 1.0);
    CHECK_THROWS_AS(hyp2f1_terminating(3, 0.5, -1.0, 0.2), PoleError);
    // (b)_k vanishes first: the series stops before the pole.
    CHECK_NOTHROW(hyp2f1_terminating(4, -1.0, -2.0, 0.2));
  }

  TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const auto rule = make_rule(RuleKind::GaussLegendre, 10, {.lower = 0.0, .upper = 1.0});
    CHECK(integrate(rule, [](const Point& x) { return std::pow(x[0], 19); }) == doctest::Approx(1.0 / 20).epsilon(1e-14));
    CHECK(rule.total_weight() == doctest::Approx(1.0).epsilon(1e-15));
  }

  TEST_CASE("periodic trapezoid integrates low trigonometric modes exactly") {
    const int n = 8;
    const auto rule = make_rule(RuleKind::PeriodicTrapezoid, n);
    for (int k = 0; k < n; ++k) {
      const double v = integrate(rule, [k](const Point& x) { return std::cos(k * x[0] + 0.3); });
      CHECK(std::abs(v - (k == 0 ? 2.0 * kPi * std::cos(0.3) : 0.0)) < 1e-13);
    }
    const double shifted = integrate(make_rule(RuleKind::PeriodicTrapezoid, n, {.offset = 0.5}),
                                     [](const Point& x) { return std::sin(x[0]) * std::sin(x[0]); });
    CHECK(shifted == doctest::Approx(kPi).epsilon(1e-14));
  }

  TEST_CASE("generalized Gauss-Laguerre moments") {
    const double alpha = 0.5;
    const auto rule = make_rule(RuleKind::GaussLaguerre, 20, {.alpha = alpha});
    for (int k = 0; k <= 10; ++k) {
      const double v = integrate(rule, [k](const Point& x) { return std::pow(x[0], k); });
      CHECK(rel(v, std::tgamma(alpha + k + 1.0)) < 1e-11);
    }
    CHECK_THROWS(make_rule(RuleKind::GaussLaguerre, 151, {.alpha = 0.0}));
  }

  TEST_CASE("product rule enumerates the first factor slowest") {
    const auto a = make_rule(RuleKind::GaussLegendre, 3, {.lower = 0.0, .upper = 1.0});
    const auto b = make_rule(RuleKind::PeriodicTrapezoid, 4);
    const auto p = product_rule(a, b);
    REQUIRE(p.size() == 12);
    CHECK(p.nodes[0][0] == a.nodes[0][0]);
    CHECK(p.nodes[1][0] == a.nodes[0][0]);
    CHECK(p.nodes[4][0] == a.nodes[1][0]);
    CHECK(p.total_weight() == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  }
}
