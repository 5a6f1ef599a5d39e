#include "povmq/core.hpp"

#include <cmath>
#include <stdexcept>

namespace povmq {

namespace {

Index effective_block(Index block, Index dim) { return (block <= 0 || block > dim) ? dim : block; }

OperatorMatrix node_sum(const DensityFamily& fam, const ScalarField& f) {
  OperatorMatrix acc = OperatorMatrix::Zero(fam.hilbert_dim, fam.hilbert_dim);
  for (std::size_t k = 0; k < fam.rule.size(); ++k) {
    const Complex fk = f(fam.rule.nodes[k]);
    if (fk == Complex(0.0)) continue;
    acc += (fam.rule.weights[k] * fk) * fam.evaluate(fam.rule.nodes[k]);
  }
  return acc;
}

}  // namespace

double block_max_abs(const OperatorMatrix& m, Index block) {
  const Index b = effective_block(block, m.rows());
  return max_abs(m.topLeftCorner(b, b));
}

OperatorMatrix quantize(const DensityFamily& fam, const ScalarField& f) {
  // Validate first so the fast path sees the same contract.
  for (const Point& x : fam.rule.nodes) {
    const Complex v = f(x);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::domain_error("quantize: function is not finite at a quadrature node");
  }
  if (fam.weighted_sum) return fam.weighted_sum(f);
  return node_sum(fam, f);
}

ResolutionReport check_resolution(const DensityFamily& fam, Index block) {
  ResolutionReport rep;
  rep.integral = quantize(fam, [](const Point&) { return Complex(1.0); });
  const Index b = effective_block(block, fam.hilbert_dim);
  const OperatorMatrix diff =
      rep.integral.topLeftCorner(b, b) - OperatorMatrix::Identity(b, b);
  rep.defect = diff.cwiseAbs().maxCoeff(&rep.worst_row, &rep.worst_col);
  rep.accepted = rep.defect < fam.tolerance;
  return rep;
}

OperatorMatrix povm_region(const DensityFamily& fam, const Indicator& in_region) {
  return quantize(fam, [&](const Point& x) { return Complex(in_region(x) ? 1.0 : 0.0); });
}

double prob_kernel(const DensityFamily& fam, const Point& x0, const Point& x) {
  return trace_product(fam.evaluate(x0), fam.evaluate(x)).real();
}

double kernel_row_integral(const DensityFamily& fam, const Point& x0) {
  const OperatorMatrix r0 = fam.evaluate(x0);
  return integrate(fam.rule, [&](const Point& x) { return trace_product(r0, fam.evaluate(x)).real(); });
}

Complex lower_symbol(const DensityFamily& fam, const OperatorMatrix& a, const Point& x) {
  if (a.rows() != fam.hilbert_dim || a.cols() != fam.hilbert_dim)
    throw std::invalid_argument("lower_symbol: dimension mismatch");
  return trace_product(fam.evaluate(x), a);
}

Complex berezin_transform(const DensityFamily& fam, const ScalarField& f, const Point& x) {
  const OperatorMatrix rx = fam.evaluate(x);
  return integrate(fam.rule, [&](const Point& xp) { return f(xp) * trace_product(rx, fam.evaluate(xp)); });
}

Complex measurement_expectation(const OperatorMatrix& rho_m, const DensityFamily& fam, const ScalarField& f) {
  if (rho_m.rows() != fam.hilbert_dim || rho_m.cols() != fam.hilbert_dim)
    throw std::invalid_argument("measurement_expectation: dimension mismatch");
  return trace_product(rho_m, quantize(fam, f));
}

Complex measurement_expectation_integral(const OperatorMatrix& rho_m, const DensityFamily& fam,
                                         const ScalarField& f) {
  if (rho_m.rows() != fam.hilbert_dim || rho_m.cols() != fam.hilbert_dim)
    throw std::invalid_argument("measurement_expectation: dimension mismatch");
  return integrate(fam.rule, [&](const Point& x) { return f(x) * trace_product(rho_m, fam.evaluate(x)); });
}

double gram_defect(const CsBasis& basis) {
  OperatorMatrix gram = OperatorMatrix::Zero(basis.size, basis.size);
  StateVector v(basis.size);
  for (std::size_t k = 0; k < basis.base_rule.size(); ++k) {
    for (int n = 0; n < basis.size; ++n) v(n) = basis.phi(n, basis.base_rule.nodes[k]);
    gram += basis.base_rule.weights[k] * (v.conjugate() * v.transpose());
  }
  return max_abs(gram - OperatorMatrix::Identity(basis.size, basis.size));
}

CoherentState cs_build(const CsBasis& basis, const Point& x) {
  CoherentState cs;
  cs.vector.resize(basis.size);
  for (int n = 0; n < basis.size; ++n) cs.vector(n) = std::conj(basis.phi(n, x));
  cs.kernel_norm = cs.vector.squaredNorm();
  if (!(cs.kernel_norm > 0.0)) throw std::domain_error("cs_build: N(x) vanishes");
  cs.vector /= std::sqrt(cs.kernel_norm);
  return cs;
}

Complex reproducing_kernel(const CsBasis& basis, const Point& x, const Point& xp) {
  return cs_build(basis, x).vector.dot(cs_build(basis, xp).vector);
}

DensityFamily cs_family(const CsBasis& basis, std::string label) {
  DensityFamily fam;
  fam.hilbert_dim = basis.size;
  fam.label = std::move(label);
  fam.rule = basis.base_rule;
  for (std::size_t k = 0; k < fam.rule.size(); ++k)
    fam.rule.weights[k] *= cs_build(basis, fam.rule.nodes[k]).kernel_norm;
  fam.evaluate = [basis](const Point& x) { return projector(cs_build(basis, x).vector); };
  return fam;
}

OperatorMatrix orbit_density(const GroupOrbitSpec& spec, const Point& g) {
  if (spec.orbit) return spec.orbit(g);
  const OperatorMatrix u = spec.representation(g);
  return u * spec.fiducial * u.adjoint();
}

double covariant_c_rho(const GroupOrbitSpec& spec) {
  const double c = integrate(spec.group_rule, [&](const Point& g) {
    return trace_product(spec.probe, orbit_density(spec, g)).real();
  });
  if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("covariant_c_rho: integral is not positive and finite");
  return c;
}

DensityFamily orbit_family(const GroupOrbitSpec& spec, double c_rho, std::string label) {
  DensityFamily fam;
  fam.hilbert_dim = spec.fiducial.rows();
  fam.label = std::move(label);
  fam.rule = spec.group_rule;
  for (double& w : fam.rule.weights) w /= c_rho;
  fam.evaluate = [spec](const Point& g) { return orbit_density(spec, g); };
  return fam;
}

double covariance_check(const GroupOrbitSpec& spec, const DensityFamily& fam, const ScalarField& f,
                        const Point& g0, Index block) {
  const OperatorMatrix u = spec.representation(g0);
  const OperatorMatrix lhs = u * quantize(fam, f) * u.adjoint();
  const Point g0_inv = spec.inverse(g0);
  const OperatorMatrix rhs = quantize(fam, [&](const Point& g) { return f(spec.compose(g0_inv, g)); });
  return block_max_abs(lhs - rhs, block);
}

}  // namespace povmq
