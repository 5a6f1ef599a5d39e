#pragma once

// Weyl-Heisenberg quantization of the plane on a truncated Fock space:
// displacement operators, displaced thermal states, kernels, the quantization
// grid, the phase operator and the four covariances.

#include <memory>
#include <vector>

#include "povmq/core.hpp"

namespace povmq::plane {

inline Complex to_z(const Point& x) { return {x[0], x[1]}; }

/// Ladder operators and friends on span{e_0, ..., e_{dim-1}}.
struct FockSpace {
  explicit FockSpace(Index dim);

  Index dim;
  OperatorMatrix a, adag, number, q, p, parity;

  /// U_T(theta) e_n = e^{i (n + nu) theta} e_n.
  OperatorMatrix rotation(double theta, double nu = 0.0) const;
};

struct ThermalParams {
  double t = 0.0;  ///< Boltzmann factor in [0, 1)
  Index dim = 48;

  /// s = -(1 + t) / (1 - t).
  double s() const;
  /// (1 - t) t^n for n < dim.
  std::vector<double> weights() const;
  /// 1 - sum of weights = t^dim.
  double mass_deficit() const;
  /// Throws std::invalid_argument unless 0 <= t < 1 and dim >= 1.
  void validate() const;
};

/// <e_m|D(z)|e_n> from the Laguerre form, with the reflection rule for n > m.
Complex displacement_element(Index m, Index n, Complex z);

/// Exact matrix elements of D(z) on the truncated basis.
OperatorMatrix displacement(Complex z, Index dim);

OperatorMatrix thermal_state(const ThermalParams& params);

/// Leading dim x dim block of D(z) rho_T D(z)^dagger, summing n < dim.
OperatorMatrix displaced_thermal_block(Complex z, const ThermalParams& params);

/// As above, checked: throws std::domain_error when |z|^2 >= dim/4 (the
/// displaced state would leak out of the truncated space).
DensityMatrix displaced_thermal(Complex z, const ThermalParams& params);

/// tr(rho_T(z0) rho_T(z)) from the truncated matrices.
double plane_prob_matrix(Complex z0, Complex z, const ThermalParams& params);

/// Double series in n, n' up to nmax with the n!/n'! factor.
double plane_prob_series(Complex z0, Complex z, double t, int nmax = 60);
/// The same series with the printed n/n' factor.
double plane_prob_series_printed(Complex z0, Complex z, double t, int nmax = 60);

/// sum_{n <= nmax} t^{2n} L_n(u)^2.
double diagonal_partial_sum(double u, double t, int nmax);
/// e^{-2 u t^2/(1-t^2)} I_0(2 t u/(1-t^2)) / (1 - t^2).
double diagonal_sum_closed(double u, double t);
/// Printed variant with exponent -u t^2/(1-t^2).
double diagonal_sum_printed(double u, double t);

/// sqrt(2) sqrt((1-t)/(1+t) - p): HS distance from purity and overlap.
double hs_distance_formula(double purity, double overlap);
/// Printed variant sqrt(2) sqrt(((1-t)/(1+t))^2 - p).
double hs_distance_printed(double t, double overlap);

struct GridOptions {
  Index block = 0;          ///< protected block used for the radius (0: dim/2)
  int radial_nodes = 0;     ///< 0: automatic
  int angular_nodes = 0;    ///< 0: automatic
  RuleKind angular_kind = RuleKind::PeriodicTrapezoid;
  double angular_start = 0.0;  ///< angular rule covers [start, start + 2 pi)
  double radius = 0.0;      ///< 0: from the tail bound
  double tail_tolerance = 1e-15;
};

/// Polar rule: Gauss-Legendre in |z| on [0, R] times an angular rule.
struct PlaneGrid {
  double radius = 0.0;
  std::vector<double> radii, radial_weights;  ///< radial weights include |z| dr / pi
  std::vector<double> angles, angular_weights;  ///< angular weights sum to 2 pi
};

/// Smallest R (on an integer grid in R^2) with max_m rho_T(R)_{mm} (1+R^2)^2
/// below `tol` for m < block.
double plane_radius(const ThermalParams& params, Index block, double tol = 1e-15);

PlaneGrid make_plane_grid(const ThermalParams& params, const GridOptions& opts = {});

/// Family rho_T(z) with dnu = d^2 z / pi. Points are (Re z, Im z). Quantization
/// uses rho_T(r e^{i g})_{mm'} = rho_T(r)_{mm'} e^{i (m - m') g}.
DensityFamily plane_family(const ThermalParams& params, const GridOptions& opts = {});

/// Angle of z in [start, start + 2 pi).
double angle_of(const Point& x, double start = 0.0);

/// Printed coefficient F_{mm'}(t) evaluated with m <= m' (its claimed
/// symmetry); NaN when m or m' is 0.
double phase_coefficient_printed(Index m, Index mp, double t);
/// Coefficient with sqrt(m! m'!) and without the leading (1 - t); this form
/// matches the quadrature route.
double phase_coefficient_reconciled(Index m, Index mp, double t);

/// pi I + i sum_{m != m'} F_{mm'} / (m' - m) |e_m><e_m'| with the printed
/// coefficient (NaN entries where it is undefined).
OperatorMatrix phase_operator_route_a(const ThermalParams& params);
/// Same matrix with the reconciled coefficient.
OperatorMatrix phase_operator_reconciled(const ThermalParams& params);
/// Quantization of the angle function by quadrature, angular rule Gauss-Legendre
/// on [start, start + 2 pi).
OperatorMatrix phase_operator_route_b(const ThermalParams& params, double start = 0.0);

struct CovarianceReport {
  double translation = 0.0;
  double rotation = 0.0;
  double parity = 0.0;
  double conjugation = 0.0;
};

/// Max defect over the test functions (Gaussian bump, cos/sin of arg z, |z|^2)
/// on the protected block.
CovarianceReport covariance_suite(const ThermalParams& params, Complex z0 = {0.5, 0.0}, double theta = 0.7,
                                  Index block = 0);

/// Weyl-Heisenberg orbit of rho_T with dmu = d^2 z / pi on the plane grid.
GroupOrbitSpec plane_orbit(const ThermalParams& params, const GridOptions& opts = {});

}  // namespace povmq::plane
