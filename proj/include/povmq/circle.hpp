#pragma once

// Real 2x2 density matrices on the circle: parametrizations, their algebra,
// marginal integrals, the rotation-orbit POVM and its quantization.

#include <array>
#include <string>

#include "povmq/core.hpp"

namespace povmq::circle {

struct CircleDensityParams {
  double r = 0.0;
  double phi = 0.0;    ///< stored mod pi
  double theta = 0.0;  ///< stored mod 2 pi
};

/// Reduces phi mod pi and theta mod 2 pi; r = 0 sets phi = 0. Throws
/// std::domain_error for r outside [0, 1].
CircleDensityParams canonical(CircleDensityParams p);

/// Plane rotation matrix R(angle).
OperatorMatrix rotation(double angle);

/// R(r, Phi) = (I + r R(Phi) sigma_3) / 2.
OperatorMatrix density_r_phi(double r, double big_phi);

/// rho_{r,phi}(theta) = R(theta) rho_{r,phi} R(-theta) = R(r, 2(phi + theta)).
DensityMatrix rho_circle(double r, double phi, double theta);
DensityMatrix rho_circle(const CircleDensityParams& p);

struct AbDecomposition {
  CircleDensityParams params;  ///< theta = 0, phi in [-pi/2, pi/2]
  double lambda = 0.0;         ///< largest eigenvalue
  double delta = 0.0;          ///< determinant a(1-a) - b^2
};

/// M(a, b) = [[a, b], [b, 1-a]] in eigen/polar form. Throws std::domain_error
/// when M(a, b) is not a density.
AbDecomposition from_ab(double a, double b);

/// Inverse of from_ab: (a, b) with a - 1/2 = (r/2) cos 2 phi, b = (r/2) sin 2 phi.
std::array<double, 2> to_ab(double r, double phi);

/// lambda |phi><phi| + (1 - lambda) |phi + pi/2><phi + pi/2|.
OperatorMatrix spectral_reconstruction(double lambda, double phi);

struct AlgebraReport {
  OperatorMatrix product;         ///< rho rho' by matrix multiplication
  OperatorMatrix product_formula; ///< (R + R' + (r r'/2) R(Phi - Phi') - I/2) / 2
  OperatorMatrix commutator;
  OperatorMatrix commutator_formula;  ///< -i (r r'/2) sin(Phi - Phi') sigma_2
  OperatorMatrix commutator_printed;  ///< -i r r' sin(Phi - Phi') sigma_2
  OperatorMatrix anticommutator;
  OperatorMatrix anticommutator_formula;  ///< rho + rho' + ((r r'/2) cos(Phi - Phi') - 1/2) I
  OperatorMatrix anticommutator_printed;  ///< rho + rho' + (cos(Phi - Phi') - 1/2) I
};

/// Phi = 2 (phi + theta) for each argument.
AlgebraReport product_and_algebra(const CircleDensityParams& p1, const CircleDensityParams& p2);

struct MarginalReport {
  std::string name;
  double defect = 0.0;
};

/// The four partial integrals of R(r, theta): over theta, over the rotation
/// angle, over r (at the given theta) and over the unit disk.
std::array<MarginalReport, 4> marginal_integrals(double r, double theta = 0.7);

/// 2 pi-periodic extension of theta -> theta on [0, 2 pi).
double angle_function(double theta);

/// Orbit family rho_{r,phi}(theta) with dnu = dtheta / pi. `kind` is
/// PeriodicTrapezoid for smooth integrands or GaussLegendre for functions with
/// a jump at theta = 0.
DensityFamily circle_family(double r, double phi, int nodes = 8, RuleKind kind = RuleKind::PeriodicTrapezoid);

/// Rotation orbit with Haar measure dtheta on [0, 2 pi).
GroupOrbitSpec circle_orbit(double r, double phi, int nodes = 8);

struct FourierData {
  Complex mean;  ///< (1/2pi) integral of f
  Complex cc;    ///< integral of f(theta) cos 2(theta + phi) dtheta / pi
  Complex cs;    ///< integral of f(theta) sin 2(theta + phi) dtheta / pi
};

/// `rule` realizes dtheta on [0, 2 pi).
FourierData circle_fourier(const ScalarField& f, double phi, const QuadratureRule& rule);

/// [[<f> + (r/2) cc, (r/2) cs], [(r/2) cs, <f> - (r/2) cc]].
OperatorMatrix circle_quantize_fourier(const FourierData& data, double r);

/// The printed angle operator [[pi + (r/2) sin 2phi, -(r/2) cos 2phi], ...].
OperatorMatrix angle_operator_closed(double r, double phi);

/// Gauss-Legendre family suitable for the angle function.
DensityFamily angle_family(double r, double phi, int nodes = 48);

/// tr(rho(theta) A_angle) = pi - (r^2/2) sin 2 theta.
double angle_lower_symbol_closed(double r, double theta);

}  // namespace povmq::circle
