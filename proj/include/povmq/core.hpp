#pragma once

// Geometry-independent integral quantization: density families over a
// measure space, resolution checks, kernels, the quantization map and its
// lower symbols, coherent states from an orthonormal set, and group orbits.

#include <functional>
#include <string>

#include "povmq/operators.hpp"
#include "povmq/quadrature.hpp"

namespace povmq {

using ScalarField = std::function<Complex(const Point&)>;
using Indicator = std::function<bool(const Point&)>;

struct DensityFamily {
  Index hilbert_dim = 0;
  std::function<OperatorMatrix(const Point&)> evaluate;
  QuadratureRule rule;  ///< realizes dnu
  std::string label;
  double tolerance = 1e-12;
  /// Optional fast path for sum_k w_k f(x_k) rho(x_k). When set it must agree
  /// with the node-by-node sum; families with a rotational structure use it
  /// to avoid building one matrix per node.
  std::function<OperatorMatrix(const ScalarField&)> weighted_sum;
};

struct ResolutionReport {
  double defect = 0.0;  ///< max |(sum w rho - I)_ij| over the checked block
  Index worst_row = 0;
  Index worst_col = 0;
  OperatorMatrix integral;
  bool accepted = false;
};

/// Resolution of the identity on the leading `block` x `block` entries
/// (0 = the full matrix).
ResolutionReport check_resolution(const DensityFamily& fam, Index block = 0);

OperatorMatrix povm_region(const DensityFamily& fam, const Indicator& in_region);

/// tr(rho(x0) rho(x)).
double prob_kernel(const DensityFamily& fam, const Point& x0, const Point& x);

/// Integral of p_{x0}(x) against dnu; equals 1 for a resolving family.
double kernel_row_integral(const DensityFamily& fam, const Point& x0);

/// A_f = sum_k w_k f(x_k) rho(x_k). Throws std::domain_error if f is not
/// finite at a node.
OperatorMatrix quantize(const DensityFamily& fam, const ScalarField& f);

/// tr(rho(x) A).
Complex lower_symbol(const DensityFamily& fam, const OperatorMatrix& a, const Point& x);

/// Integral of f(x') tr(rho(x) rho(x')) dnu(x'); the same number as
/// lower_symbol(quantize(f), x) computed without forming A_f.
Complex berezin_transform(const DensityFamily& fam, const ScalarField& f, const Point& x);

/// tr(rho_m A_f).
Complex measurement_expectation(const OperatorMatrix& rho_m, const DensityFamily& fam, const ScalarField& f);

/// Integral of f(x) tr(rho_m rho(x)) dnu(x).
Complex measurement_expectation_integral(const OperatorMatrix& rho_m, const DensityFamily& fam,
                                         const ScalarField& f);

/// Orthonormal functions phi_0..phi_{size-1} on (X, mu).
struct CsBasis {
  int size = 0;
  std::function<Complex(int, const Point&)> phi;
  QuadratureRule base_rule;  ///< realizes dmu
};

struct CoherentState {
  StateVector vector;
  double kernel_norm = 0.0;  ///< N(x) = sum |phi_n(x)|^2
};

/// max |G - I| for the Gram matrix of the basis under its base rule.
double gram_defect(const CsBasis& basis);

/// |x> = N(x)^{-1/2} sum conj(phi_n(x)) |e_n>. Throws std::domain_error if
/// N(x) vanishes.
CoherentState cs_build(const CsBasis& basis, const Point& x);

/// <x|x'>.
Complex reproducing_kernel(const CsBasis& basis, const Point& x, const Point& xp);

/// Family |x><x| with dnu = N(x) dmu.
DensityFamily cs_family(const CsBasis& basis, std::string label = "coherent-states");

struct GroupOrbitSpec {
  std::function<OperatorMatrix(const Point&)> representation;  ///< g -> U(g)
  OperatorMatrix fiducial;
  QuadratureRule group_rule;  ///< realizes the left Haar measure dmu
  OperatorMatrix probe;
  std::function<Point(const Point&, const Point&)> compose;  ///< (g1, g2) -> g1 g2
  std::function<Point(const Point&)> inverse;
  /// Optional direct evaluation of U(g) rho U(g)^dagger.
  std::function<OperatorMatrix(const Point&)> orbit;
};

OperatorMatrix orbit_density(const GroupOrbitSpec& spec, const Point& g);

/// c_rho = integral of tr(rho_0 rho(g)) dmu(g). Throws std::domain_error when
/// the result is not positive and finite.
double covariant_c_rho(const GroupOrbitSpec& spec);

/// The orbit family with dnu = dmu / c_rho.
DensityFamily orbit_family(const GroupOrbitSpec& spec, double c_rho, std::string label = "orbit");

/// max |U(g0) A_f U(g0)^dagger - A_{f(g0^{-1} .)}| on the leading block,
/// with A computed from `fam` (which must be the orbit family of `spec`).
double covariance_check(const GroupOrbitSpec& spec, const DensityFamily& fam, const ScalarField& f,
                        const Point& g0, Index block = 0);

/// Max-norm of the leading block of a matrix.
double block_max_abs(const OperatorMatrix& m, Index block);

}  // namespace povmq
