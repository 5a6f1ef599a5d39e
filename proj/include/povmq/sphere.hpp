#pragma once

// Quaternions, SU(2) transport of 2x2 densities and the sphere POVM.

#include <array>

#include "povmq/core.hpp"

namespace povmq::sphere {

using Vec3 = std::array<double, 3>;

struct Quaternion {
  double q0 = 1.0;
  Vec3 qv{0.0, 0.0, 0.0};

  static Quaternion basis(int a);  ///< e_0 .. e_3
};

Quaternion operator*(const Quaternion& a, const Quaternion& b);
Quaternion conjugate(const Quaternion& q);
double norm(const Quaternion& q);
/// Throws std::domain_error for the zero quaternion.
Quaternion inverse(const Quaternion& q);

/// 2x2 image: e_a -> (-1)^{a+1} i sigma_a, e_0 -> I.
OperatorMatrix to_matrix(const Quaternion& q);

double dot(const Vec3& a, const Vec3& b);
Vec3 cross(const Vec3& a, const Vec3& b);
double norm(const Vec3& v);
Vec3 unit_vector(double theta, double phi);

/// Rodrigues form r.n n + cos w n x (r x n) + sin w n x r. Throws
/// std::domain_error if |n| differs from 1 by more than 1e-12.
Vec3 rotate_rodrigues(double omega, const Vec3& n_hat, const Vec3& v);
/// Vector part of xi (0, v) conj(xi), xi = (cos w/2, sin w/2 n).
Vec3 rotate_quaternion(double omega, const Vec3& n_hat, const Vec3& v);

/// (cos theta/2, sin theta/2 u_phi), u_phi = (-sin phi, cos phi, 0); maps the
/// north pole to (theta, phi).
Quaternion xi_north(double theta, double phi);

/// (1/2)(I - i d) with d the matrix image of the pure quaternion (0, d).
OperatorMatrix rho_vector(const Vec3& d);

/// Closed form (1/2)[[1 + r cos t, r sin t e^{i p}], [r sin t e^{-i p}, 1 - r cos t]].
DensityMatrix rho_sphere(double r, double theta, double phi);

/// xi rho_{d} conj(xi) with xi = xi_north(theta, phi).
OperatorMatrix rho_transport(const Vec3& d, double theta, double phi);

/// cos(theta/2)|1/2,1/2> + sin(theta/2) e^{i phi}|1/2,-1/2>.
StateVector spin_coherent_state(double theta, double phi);

/// Family on the sphere with dnu = sin t dt dp / 2pi. Points are (cos theta,
/// phi); Gauss-Legendre in cos theta times trapezoid in phi.
DensityFamily sphere_family(double r, int n_cos = 8, int n_phi = 8);

/// Integral of the transport family of a general d over the sphere.
OperatorMatrix transport_integral(const Vec3& d, int n_cos = 16, int n_phi = 16);

struct SphereFourier {
  Complex mean;  ///< (1/4pi) integral of f dS
  Complex cc;    ///< (1/4pi) integral of f cos t sin t dt dp
  Complex cs;    ///< (1/4pi) integral of f e^{i p} sin^2 t dt dp
  Complex cs_minus;  ///< same with e^{-i p}; conj(cs) for real f
};

/// Coefficients by a Gauss-Legendre(theta) x Gauss-Legendre(phi) rule.
SphereFourier sphere_fourier(const ScalarField& f, int n_theta = 24, int n_phi = 48);

/// [[<f> + r cc, r cs], [r cs_minus, <f> - r cc]].
OperatorMatrix sphere_quantize_fourier(const SphereFourier& c, double r);

/// phi and cos theta as functions of the family's points.
Complex q_function(const Point& x);
Complex p_function(const Point& x);

/// Family with Gauss-Legendre rules in theta on [0, pi] and phi on [0, 2 pi],
/// for functions such as q = phi that jump at phi = 0. The theta rule handles
/// the sin theta factors that a polynomial rule in cos theta cannot.
DensityFamily sphere_family_gl(double r, int n_theta = 24, int n_phi = 48);

OperatorMatrix a_q_closed(double r);  ///< pi I + (pi r / 4) sigma_2
OperatorMatrix a_p_closed(double r);  ///< (r/3) sigma_3
OperatorMatrix commutator_closed(double r);  ///< i (pi r^2 / 6) sigma_1
double lower_q_closed(double r, double theta, double phi);  ///< pi - (pi r^2/4) sin t sin p
double lower_p_closed(double r, double theta);  ///< (r^2/3) cos t

}  // namespace povmq::sphere
