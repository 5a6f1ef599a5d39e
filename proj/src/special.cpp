#include "povmq/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace povmq {

namespace {

constexpr double kAsymptoticSwitch = 20.0;

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo <= 8) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

// e^{-x} I_nu(x) from the power series. Every term is positive, so the only
// error source is the multiplicative recurrence.
double scaled_series(double nu, double x) {
  const double q = 0.25 * x * x;
  double term = std::exp(nu * std::log(0.5 * x) - std::lgamma(nu + 1.0) - x);
  std::vector<double> terms;
  terms.reserve(64);
  double running = 0.0;
  for (int k = 0; k < 100000; ++k) {
    terms.push_back(term);
    running += term;
    term *= q / ((k + 1.0) * (k + 1.0 + nu));
    // Terms grow until k ~ x/2; only stop past the peak.
    if (k + 1.0 > 0.5 * x && term < 1e-18 * running) break;
  }
  return pairwise_sum(terms, 0, terms.size());
}

// Large-argument expansion e^{-x} I_nu(x) ~ (2 pi x)^{-1/2} sum (-1)^k a_k(nu) / x^k.
// Returns NaN when the series does not reach the requested accuracy before
// its terms start to grow.
double scaled_asymptotic(double nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  double last = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -(mu - odd * odd) / (8.0 * k * x);
    if (term == 0.0) break;
    if (std::abs(term) > std::abs(last)) return std::numeric_limits<double>::quiet_NaN();
    sum += term;
    last = term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  if (std::abs(last) > 1e-14 * std::abs(sum)) return std::numeric_limits<double>::quiet_NaN();
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

}  // namespace

double bessel_i_scaled(double nu, double x) {
  if (!(x >= 0.0)) throw std::domain_error("bessel_i: negative argument");
  if (!(nu >= 0.0)) throw std::domain_error("bessel_i: negative order");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x >= kAsymptoticSwitch) {
    const double a = scaled_asymptotic(nu, x);
    if (!std::isnan(a)) return a;
  }
  return scaled_series(nu, x);
}

BesselValue bessel_i_ex(double nu, double x) {
  const double s = bessel_i_scaled(nu, x);
  if (x > kBesselOverflowArgument) return {s, true};
  return {s * std::exp(x), false};
}

double bessel_i(double nu, double x) {
  const BesselValue v = bessel_i_ex(nu, x);
  if (v.scaled) return std::numeric_limits<double>::infinity();
  return v.value;
}

double pochhammer(double a, int k) {
  double p = 1.0;
  for (int j = 0; j < k; ++j) p *= a + j;
  return p;
}

double hyp2f1_terminating(int m, double b, double c, double x) {
  if (m < 0) throw std::domain_error("hyp2f1_terminating: m must be nonnegative");
  std::vector<double> terms{1.0};
  double term = 1.0;
  for (int k = 0; k < m; ++k) {
    const double num = (k - m) * (b + k);
    if (num == 0.0) break;
    if (c + k == 0.0) throw PoleError("hyp2f1_terminating: (c)_k vanishes before termination");
    term *= num / ((c + k) * (k + 1.0)) * x;
    terms.push_back(term);
  }
  return pairwise_sum(terms, 0, terms.size());
}

}  // namespace povmq
