#pragma once

// Affine group quantization of the half-plane: the alpha-Laguerre basis of
// L^2(R+, dx), the unitary action of Aff+, the thermal kernel and the
// truncated resolution of the identity.

#include <functional>

#include "povmq/core.hpp"

namespace povmq::halfplane {

struct AffineParams {
  double alpha = 1.0;  ///< > 0
  double t = 0.25;     ///< Boltzmann factor in [0, 1)
  Index dim = 40;      ///< number of thermal terms kept
  int radial_nodes = 64;

  /// Throws std::invalid_argument on alpha <= 0, t outside [0, 1) or dim < 1.
  void validate() const;
};

/// e_n(x) = sqrt(n!/Gamma(n+alpha+1)) e^{-x/2} x^{alpha/2} L_n^{(alpha)}(x).
/// Throws std::domain_error for x < 0 or alpha <= -1.
double laguerre_basis(int n, double alpha, double x);

/// Rule for plain dx on [0, inf): generalized Gauss-Laguerre nodes with the
/// weight x^alpha e^{-x} divided out.
QuadratureRule radial_rule(double alpha, int nodes);

/// max |<e_n, e_n'> - delta| for n, n' < size under radial_rule.
double gram_defect(const AffineParams& params, int size);

using RadialFunction = std::function<Complex(double)>;

/// (U(q, p) psi)(x) = e^{ipx} psi(x/q) / sqrt(q). Throws std::domain_error
/// for q <= 0.
RadialFunction affine_action(double q, double p, RadialFunction psi);

/// (q, p)(q0, p0) = (q q0, p0/q + p).
Point affine_compose(const Point& g, const Point& g0);
Point affine_inverse(const Point& g);

/// Thermal kernel t^{-alpha/2} e^{-(1+t)(x+y)/(2(1-t))} I_alpha(2 sqrt(txy)/(1-t)),
/// whose eigenvalues are (1-t) t^n. Throws std::domain_error unless 0 < t < 1
/// and x, y >= 0.
double thermal_kernel(double x, double y, const AffineParams& params);
/// The printed form (1-t) t^{-alpha/2} e^{-t(x+y)/(2(1-t))} I_alpha(...).
double thermal_kernel_printed(double x, double y, const AffineParams& params);

/// Integral of K(x, y) g(y) dy by a scaled Gauss-Laguerre rule.
double kernel_apply(double x, const std::function<double(double)>& g, const AffineParams& params,
                    bool printed = false, int nodes = 96);

/// Integral of K(x, x) dx.
double kernel_trace(const AffineParams& params, int nodes = 120);

/// <e_i|U(q, p)|e_n>, exact up to rounding (rotated Gauss-Laguerre).
Complex affine_matrix_element(int i, int n, double q, double p, double alpha);

/// <e_i|U(q, p)|e_n> for i < rows, n < cols.
OperatorMatrix affine_matrix_block(double q, double p, double alpha, Index rows, Index cols);

/// Leading block x block part of U(q, p) rho_T U(q, p)^dagger.
OperatorMatrix thermal_orbit_block(double q, double p, const AffineParams& params, Index block);

struct AffineGridOptions {
  double u_max = 0.0;  ///< 0: automatic
  int u_nodes = 0;     ///< 0: automatic
  int psi_nodes = 0;   ///< 0: automatic
  /// Multiplies the automatic node counts (refinement).
  double refine = 1.0;
};

/// Rule for dq dp on q > 0: q = e^u with Gauss-Legendre in u on [-U, U],
/// p = beta(q) tan psi with Gauss-Legendre in psi, beta(q) = (1 + 1/q)/2.
/// Points are (q, p).
QuadratureRule affine_group_rule(const AffineParams& params, const AffineGridOptions& opts = {});

/// Orbit of the truncated thermal state; the probe is |e_0><e_0|.
GroupOrbitSpec affine_orbit(const AffineParams& params, Index block, const AffineGridOptions& opts = {});

/// 2 pi (1 - t)/alpha as printed.
double c_rho_printed(double alpha, double t);
/// 2 pi (1 - t^dim)/alpha: the probe integral term by term, using
/// integral of e_n(x)^2 dx/x = 1/alpha for every n.
double c_rho_series(const AffineParams& params);

struct AffineResolutionReport {
  double c_rho = 0.0;           ///< by quadrature
  double c_rho_printed = 0.0;
  OperatorMatrix integral;      ///< (1/c_rho) integral of rho_T(q,p) dq dp on the block
  double defect = 0.0;          ///< max |integral - I|
  double defect_printed = 0.0;  ///< same with the printed normalization alpha/(2 pi (1-t))
  double refined_defect = 0.0;  ///< defect at doubled grids
  double refinement_change = 0.0;
  double min_admissibility = 0.0;  ///< min of <e_0|rho_T(g)|e_0> over nodes
};

AffineResolutionReport affine_resolution_check(const AffineParams& params, Index block = 4,
                                               const AffineGridOptions& opts = {});

}  // namespace povmq::halfplane
