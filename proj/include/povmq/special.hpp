#pragma once

// Special functions shared by the geometries: associated Laguerre
// polynomials, modified Bessel functions of the first kind and terminating
// Gauss hypergeometric series.

#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace povmq {

/// Raised when a denominator Pochhammer factor vanishes before a
/// hypergeometric series terminates.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

namespace detail {
template <typename T>
T laguerre_recurrence(int n, double alpha, T x) {
  T prev(1.0);
  if (n == 0) return prev;
  T curr = T(1.0 + alpha) - x;
  for (int k = 1; k < n; ++k) {
    T next = ((T(2.0 * k + 1.0 + alpha) - x) * curr - T(k + alpha) * prev) / T(k + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}
}  // namespace detail

/// Associated Laguerre polynomial L_n^{(alpha)}(x) by upward three-term
/// recurrence in n. Instantiated for double and std::complex<double>
/// arguments. Validated for n <= 256 and |x| <= 200.
template <typename T>
T laguerre(int n, double alpha, T x) {
  if (n < 0) throw std::domain_error("laguerre: negative degree");
  // Integer alpha <= -1 still defines a polynomial and the reflection rule
  // L_n^{(m-n)} <-> L_m^{(n-m)} needs it, so only non-integer values are rejected.
  if (std::isnan(alpha) || (alpha <= -1.0 && n > 0 && std::floor(alpha) != alpha))
    throw std::domain_error("laguerre: alpha must be > -1");
  assert(n <= 256 && std::abs(x) <= 200.0);
  return detail::laguerre_recurrence(n, alpha, x);
}

/// Result of the overflow-guarded Bessel evaluation. When `scaled` is set the
/// stored value is e^{-x} I_nu(x).
struct BesselValue {
  double value;
  bool scaled;
};

/// Threshold above which bessel_i_ex returns the exponentially scaled value.
inline constexpr double kBesselOverflowArgument = 700.0;

/// e^{-x} I_nu(x) for nu >= 0, x >= 0.
double bessel_i_scaled(double nu, double x);

/// I_nu(x), scaled above kBesselOverflowArgument.
BesselValue bessel_i_ex(double nu, double x);

/// I_nu(x); returns +inf where the unscaled value overflows.
double bessel_i(double nu, double x);

/// Finite sum  sum_{k=0}^{m} (-m)_k (b)_k / (c)_k x^k / k!.
/// The sum also stops early if (b)_k vanishes first.
double hyp2f1_terminating(int m, double b, double c, double x);

/// (a)_k, rising factorial.
double pochhammer(double a, int k);

}  // namespace povmq
