#include <doctest.h>

#include <cmath>
#include <numbers>

#include "povmq/circle.hpp"
#include "povmq/core.hpp"
#include "povmq/suites.hpp"

using namespace povmq;

namespace {
constexpr double kPi = std::numbers::pi;

// Fourier modes e^{i n theta} / sqrt(2 pi) on the circle.
CsBasis fourier_basis(int size) {
  CsBasis b;
  b.size = size;
  b.phi = [](int n, const Point& x) { return std::polar(1.0 / std::sqrt(2.0 * kPi), n * x[0]); };
  b.base_rule = make_rule(RuleKind::PeriodicTrapezoid, 4 * size);
  return b;
}
}  // namespace

TEST_SUITE("core") {
  TEST_CASE("resolution check reports the worst entry") {
    const auto fam = circle::circle_family(0.6, 0.2);
    const auto res = check_resolution(fam);
    CHECK(res.defect < 1e-14);
    CHECK(res.accepted);

    auto skewed = fam;
    skewed.rule.weights[0] *= 1.5;
    const auto bad = check_resolution(skewed);
    CHECK_FALSE(bad.accepted);
    CHECK(bad.defect > 0.01);
  }

  TEST_CASE("coherent states from Fourier modes") {
    const auto basis = fourier_basis(3);
    CHECK(gram_defect(basis) < 1e-14);
    const auto cs = cs_build(basis, {0.4, 0.0});
    CHECK(cs.vector.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(cs.kernel_norm == doctest::Approx(3.0 / (2.0 * kPi)).epsilon(1e-14));
    // <x|x'> = (1/3) sum_n e^{i n (x - x')}
    const double d = 0.4 - 1.1;
    const Complex expect = (1.0 + std::polar(1.0, d) + std::polar(1.0, 2.0 * d)) / 3.0;
    CHECK(std::abs(reproducing_kernel(basis, {0.4, 0.0}, {1.1, 0.0}) - expect) < 1e-14);
    CHECK(check_resolution(cs_family(basis)).defect < 1e-13);
  }

  TEST_CASE("quantization of constants and linearity") {
    const auto fam = circle::circle_family(0.8, 0.1);
    const OperatorMatrix one = quantize(fam, [](const Point&) { return Complex(1.0); });
    CHECK(max_abs(one - OperatorMatrix::Identity(2, 2)) < 1e-14);
    const ScalarField f = [](const Point& x) { return Complex(std::cos(x[0]), 0.0); };
    const ScalarField g = [](const Point& x) { return Complex(0.0, std::sin(3.0 * x[0])); };
    const OperatorMatrix sum = quantize(fam, [&](const Point& x) { return 2.0 * f(x) - g(x); });
    CHECK(max_abs(sum - 2.0 * quantize(fam, f) + quantize(fam, g)) < 1e-14);
    CHECK_THROWS_AS(quantize(fam, [](const Point&) { return Complex(std::nan("")); }), std::domain_error);
  }

  TEST_CASE("measurement expectation by two routes") {
    const auto fam = circle::circle_family(0.5, 0.3, 16);
    const ScalarField f = [](const Point& x) { return Complex(std::exp(std::sin(x[0]))); };
    const OperatorMatrix rho_m = circle::rho_circle(0.9, 1.2, 0.0).matrix();
    CHECK(std::abs(measurement_expectation(rho_m, fam, f) - measurement_expectation_integral(rho_m, fam, f)) < 1e-14);
    CHECK_THROWS_AS(measurement_expectation(OperatorMatrix::Identity(3, 3), fam, f), std::invalid_argument);
  }

  TEST_CASE("Berezin transform equals the lower symbol of the quantized function") {
    const auto fam = circle::circle_family(0.7, 0.0, 16);
    const ScalarField f = [](const Point& x) { return Complex(x[0] < kPi ? 1.0 : 0.0); };
    const Point x{2.0, 0.0};
    CHECK(std::abs(berezin_transform(fam, f, x) - lower_symbol(fam, quantize(fam, f), x)) < 1e-14);
  }

  TEST_CASE("POVM of a partition sums to the identity") {
    const auto fam = circle::circle_family(0.7, 0.0, 12);
    OperatorMatrix total = OperatorMatrix::Zero(2, 2);
    for (int k = 0; k < 3; ++k)
      total += povm_region(fam, [k](const Point& x) { return x[0] >= 2.0 * kPi * k / 3 && x[0] < 2.0 * kPi * (k + 1) / 3; });
    CHECK(max_abs(total - OperatorMatrix::Identity(2, 2)) < 1e-14);
  }

  TEST_CASE("rotation orbit: admissibility constant and covariance") {
    const double r = 0.6;
    const auto orbit = circle::circle_orbit(r, 0.25, 16);
    // integral of (1 + r^2 cos 2 theta) / 2 over a period
    const double c = covariant_c_rho(orbit);
    CHECK(c == doctest::Approx(kPi).epsilon(1e-13));
    const auto fam = orbit_family(orbit, c);
    CHECK(check_resolution(fam).defect < 1e-13);
    const ScalarField f = [](const Point& x) { return Complex(std::exp(std::cos(x[0]))); };
    CHECK(covariance_check(orbit, fam, f, {0.8, 0.0}) < 1e-12);
  }

  TEST_CASE("property routine over random draws") {
    PropertyOptions opts;
    opts.draws = 50;
    opts.seed = 99;
    opts.sample = [](std::mt19937_64& g) { return Point{std::uniform_real_distribution<double>(0, 2 * kPi)(g), 0.0}; };
    const auto rep = check_properties(circle::circle_family(0.9, 0.4), opts);
    CHECK(rep.draws == 50);
    CHECK(rep.linearity < 1e-13);
    CHECK(rep.identity < 1e-14);
    CHECK(rep.row_normalization < 1e-14);
    CHECK(rep.contraction_excess == 0.0);
    CHECK(rep.measurement < 1e-13);
  }
}
