#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "povmq/circle.hpp"

using namespace povmq;
using namespace povmq::circle;

namespace {
constexpr double kPi = std::numbers::pi;

// (1/2)[[1 + r cos P, r sin P], [r sin P, 1 - r cos P]] written out by hand.
OperatorMatrix density_by_hand(double r, double big_phi) {
  OperatorMatrix m(2, 2);
  m << 1.0 + r * std::cos(big_phi), r * std::sin(big_phi), r * std::sin(big_phi), 1.0 - r * std::cos(big_phi);
  return 0.5 * m;
}
}  // namespace

TEST_SUITE("circle") {
  TEST_CASE("parametrization and rotation") {
    CHECK(max_abs(density_r_phi(0.4, 1.3) - density_by_hand(0.4, 1.3)) < 1e-15);
    const OperatorMatrix rot = rotation(0.9);
    const OperatorMatrix rotated = rot * rho_circle(0.4, 0.2, 0.0).matrix() * rot.transpose();
    CHECK(max_abs(rotated - rho_circle(0.4, 0.2, 0.9).matrix()) < 1e-15);
    CHECK(max_abs(rho_circle(0.4, 0.2, 0.9).matrix() - density_by_hand(0.4, 2.0 * 1.1)) < 1e-15);
    CHECK_THROWS_AS(canonical({1.2, 0.0, 0.0}), std::domain_error);
    const auto c = canonical({0.5, kPi + 0.3, 2.0 * kPi + 0.1});
    CHECK(c.phi == doctest::Approx(0.3));
    CHECK(c.theta == doctest::Approx(0.1));
    CHECK(canonical({0.0, 1.0, 0.0}).phi == 0.0);
  }

  TEST_CASE("(a, b) decomposition") {
    for (double phi : {-1.2, -0.3, 0.0, 0.7, 1.4}) {
      const auto ab = to_ab(0.6, phi);
      const auto d = from_ab(ab[0], ab[1]);
      CHECK(d.params.r == doctest::Approx(0.6).epsilon(1e-13));
      CHECK(d.params.phi == doctest::Approx(phi).epsilon(1e-13));
      CHECK(d.lambda == doctest::Approx(0.8).epsilon(1e-13));
      CHECK(d.delta == doctest::Approx(0.8 * 0.2).epsilon(1e-13));
      const OperatorMatrix rec = spectral_reconstruction(d.lambda, d.params.phi);
      CHECK(std::abs(rec(0, 0).real() - ab[0]) < 1e-13);
      CHECK(std::abs(rec(0, 1).real() - ab[1]) < 1e-13);
    }
    CHECK_THROWS_AS(from_ab(1.2, 0.0), std::domain_error);
    CHECK_THROWS_AS(from_ab(0.5, 0.6), std::domain_error);
  }

  TEST_CASE("product formula holds while the printed commutator is twice too large") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 100; ++k) {
      const auto alg = product_and_algebra({u(rng), kPi * u(rng), 2 * kPi * u(rng)}, {u(rng), kPi * u(rng), 2 * kPi * u(rng)});
      CHECK(max_abs(alg.product - alg.product_formula) < 1e-14);
      CHECK(max_abs(alg.commutator - alg.commutator_formula) < 1e-14);
      CHECK(max_abs(alg.anticommutator - alg.anticommutator_formula) < 1e-14);
      CHECK(max_abs(2.0 * alg.commutator - alg.commutator_printed) < 1e-14);
    }
  }

  TEST_CASE("marginal integrals") {
    for (double r : {0.0, 0.5, 1.0})
      for (const auto& m : marginal_integrals(r)) CHECK(m.defect < 1e-12);
  }

  TEST_CASE("resolution of the identity for the rotation orbit") {
    for (double r : {0.0, 0.3, 0.7, 1.0}) CHECK(check_resolution(circle_family(r, 0.4)).defect < 1e-14);
    // Two nodes cannot integrate the doubled angle.
    CHECK(check_resolution(circle_family(0.7, 0.4, 2)).defect > 0.1);
  }

  TEST_CASE("angle operator spectrum") {
    for (double r : {0.2, 0.5, 1.0}) {
      const double phi = 0.35;
      const OperatorMatrix a = quantize(angle_family(r, phi), [](const Point& x) { return Complex(angle_function(x[0])); });
      const auto e = eig_hermitian(a);
      CHECK(e.values(0) == doctest::Approx(kPi - r / 2).epsilon(1e-12));
      CHECK(e.values(1) == doctest::Approx(kPi + r / 2).epsilon(1e-12));
      StateVector v(2);
      v << std::cos(phi + kPi / 4), std::sin(phi + kPi / 4);
      CHECK(std::abs(v.dot(e.vectors.col(0))) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(max_abs(a - angle_operator_closed(r, phi)) < 1e-11);
      for (double th : {0.3, 2.0, 5.0})
        CHECK(lower_symbol(angle_family(r, phi), a, {th, 0}).real() == doctest::Approx(angle_lower_symbol_closed(r, th)).epsilon(1e-11));
    }
  }

  TEST_CASE("Fourier route agrees with quadrature") {
    const ScalarField f = [](const Point& x) { return Complex(std::exp(std::cos(x[0])), 0.2 * std::sin(x[0])); };
    const auto data = circle_fourier(f, 0.3, make_rule(RuleKind::PeriodicTrapezoid, 64));
    CHECK(max_abs(circle_quantize_fourier(data, 0.8) - quantize(circle_family(0.8, 0.3, 64), f)) < 1e-13);
  }

  TEST_CASE("angle function wraps") {
    CHECK(angle_function(0.5) == doctest::Approx(0.5));
    CHECK(angle_function(-0.5) == doctest::Approx(2 * kPi - 0.5));
    CHECK(angle_function(2 * kPi + 0.1) == doctest::Approx(0.1));
  }
}
