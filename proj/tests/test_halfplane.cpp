#include <doctest.h>

#include <cmath>
#include <numbers>

#include "povmq/halfplane.hpp"

using namespace povmq;
using namespace povmq::halfplane;

namespace {
constexpr double kPi = std::numbers::pi;

// sqrt(n!/Gamma(n+a+1)) e^{-x/2} x^{a/2} L_n^{(a)}(x) with the standard library polynomial.
double basis_by_library(int n, unsigned a, double x) {
  return std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + a + 1.0)) - x / 2) * std::pow(x, a / 2.0) *
         std::assoc_laguerre(n, a, x);
}
}  // namespace

TEST_SUITE("halfplane") {
  TEST_CASE("Laguerre basis") {
    for (unsigned a : {1u, 2u, 3u})
      for (int n : {0, 1, 4, 9})
        for (double x : {0.2, 1.5, 6.0, 25.0})
          CHECK(laguerre_basis(n, a, x) == doctest::Approx(basis_by_library(n, a, x)).epsilon(1e-12));
    CHECK_THROWS_AS(laguerre_basis(0, 1.0, -0.1), std::domain_error);
    CHECK_THROWS_AS(laguerre_basis(-1, 1.0, 0.1), std::domain_error);
    CHECK_THROWS_AS(laguerre_basis(0, -1.0, 0.1), std::domain_error);
    for (double a : {0.5, 1.0, 2.5}) CHECK(gram_defect({a, 0.25, 40, 64}, 10) < 1e-11);
  }

  TEST_CASE("action of the affine group") {
    const double a = 1.5;
    const RadialFunction e0 = [a](double x) { return Complex(laguerre_basis(0, a, x)); };
    const auto id = affine_action(1.0, 0.0, e0);
    for (double x : {0.3, 2.0}) CHECK(std::abs(id(x) - e0(x)) == 0.0);
    const auto u = affine_action(2.0, 0.7, e0);
    CHECK(std::abs(u(1.3) - std::polar(1.0, 0.7 * 1.3) * e0(0.65) / std::sqrt(2.0)) < 1e-15);
    const Point g{2.0, 1.0}, g0{0.5, -1.0};
    const Point gg = affine_compose(g, g0);
    CHECK(gg[0] == doctest::Approx(1.0));
    CHECK(gg[1] == doctest::Approx(0.5));
    const auto two_step = affine_action(g[0], g[1], affine_action(g0[0], g0[1], e0));
    const auto one_step = affine_action(gg[0], gg[1], e0);
    for (double x : {0.2, 1.0, 3.0}) CHECK(std::abs(two_step(x) - one_step(x)) < 1e-13);
    const Point inv = affine_inverse({3.0, 0.4});
    const Point e = affine_compose({3.0, 0.4}, inv);
    CHECK(e[0] == doctest::Approx(1.0));
    CHECK(std::abs(e[1]) < 1e-15);
    CHECK_THROWS_AS(affine_action(0.0, 1.0, e0), std::domain_error);
  }

  TEST_CASE("matrix elements against direct quadrature") {
    const double a = 1.0, q = 1.6, p = -0.4;
    const auto rule = make_rule(RuleKind::GaussLegendre, 400, {.lower = 0.0, .upper = 80.0});
    for (int i : {0, 2})
      for (int n : {0, 1, 3}) {
        const auto un = affine_action(q, p, [&](double x) { return Complex(laguerre_basis(n, a, x)); });
        const Complex direct = integrate(rule, [&](const Point& x) { return laguerre_basis(i, a, x[0]) * un(x[0]); });
        CHECK(std::abs(affine_matrix_element(i, n, q, p, a) - direct) < 1e-10);
      }
  }

  TEST_CASE("thermal kernel") {
    const AffineParams p{1.0, 0.3, 40, 64};
    CHECK(thermal_kernel(0.4, 2.2, p) == thermal_kernel(2.2, 0.4, p));
    for (int n = 0; n <= 4; ++n)
      for (double x : {0.35, 1.6, 3.0}) {
        const auto en = [&](double y) { return laguerre_basis(n, 1.0, y); };
        CHECK(kernel_apply(x, en, p) / en(x) == doctest::Approx(0.7 * std::pow(0.3, n)).epsilon(1e-9));
      }
    CHECK(kernel_trace(p) == doctest::Approx(1.0).epsilon(1e-10));
    // the printed kernel is not an eigen-kernel of the basis
    const auto e0 = [](double y) { return laguerre_basis(0, 1.0, y); };
    CHECK(std::abs(kernel_apply(0.5, e0, p, true) / e0(0.5) - kernel_apply(2.0, e0, p, true) / e0(2.0)) > 1e-3);
  }

  TEST_CASE("admissibility constant") {
    for (double a : {0.5, 2.0}) {
      AffineParams p{a, 0.0, 40, 64};
      CHECK(covariant_c_rho(affine_orbit(p, 1)) == doctest::Approx(2 * kPi / a).epsilon(1e-9));
      p.t = 0.4;
      CHECK(covariant_c_rho(affine_orbit(p, 1)) == doctest::Approx(2 * kPi / a).epsilon(1e-9));
      CHECK(c_rho_printed(a, 0.4) == doctest::Approx(2 * kPi * 0.6 / a));
    }
  }

  TEST_CASE("truncated resolution") {
    const auto rep = affine_resolution_check({2.0, 0.25, 40, 64}, 3);
    CHECK(rep.defect < 1e-6);
    CHECK(rep.refinement_change < 1e-6);
    CHECK(rep.min_admissibility >= 0.0);
    CHECK(std::abs(rep.defect_printed - 1.0 / 3.0) < 1e-6);
    CHECK_THROWS_AS(affine_resolution_check({2.0, 0.25, 40, 64}, 7), std::invalid_argument);
    CHECK_THROWS_AS((AffineParams{0.0, 0.25, 40, 64}.validate()), std::invalid_argument);
  }
}
