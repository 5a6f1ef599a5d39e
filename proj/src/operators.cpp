#include "povmq/operators.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace povmq {

double max_abs(const OperatorMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const OperatorMatrix& m) { return max_abs(m - m.adjoint()); }

DensityDiagnostics is_density(const OperatorMatrix& m, double tol) {
  DensityDiagnostics d;
  if (m.rows() != m.cols() || m.rows() == 0) return d;
  d.hermiticity_defect = hermiticity_defect(m);
  d.trace_defect = std::abs(m.trace() - 1.0);
  const OperatorMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(h, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues()(0);
  d.valid = d.hermiticity_defect <= tol && d.trace_defect <= tol &&
            d.min_eigenvalue >= -std::max(tol, kPositivitySlack);
  return d;
}

DensityMatrix::DensityMatrix(OperatorMatrix m, double tol) : m_(std::move(m)) {
  const DensityDiagnostics d = is_density(m_, tol);
  if (!d.valid) {
    throw std::invalid_argument("not a density matrix: hermiticity " +
                                std::to_string(d.hermiticity_defect) + ", trace " +
                                std::to_string(d.trace_defect) + ", min eigenvalue " +
                                std::to_string(d.min_eigenvalue));
  }
}

DensityMatrix DensityMatrix::trusted(OperatorMatrix m) { return DensityMatrix(std::move(m), Trusted{}); }

namespace {

EigenDecomposition eig2(const OperatorMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const Complex b = m(0, 1);
  const double mean = 0.5 * (a + d);
  const double half = 0.5 * (a - d);
  const double rad = std::hypot(half, std::abs(b));
  EigenDecomposition out;
  out.values.resize(2);
  out.values << mean - rad, mean + rad;
  out.vectors.resize(2, 2);
  StateVector low(2);
  if (rad == 0.0) {
    low << 1.0, 0.0;
  } else if (half > 0.0) {
    // Null vector of the first row of M - lambda_low: (a - lambda) = half + rad.
    low << -b, Complex(half + rad);
    low.normalize();
  } else {
    // Second row: (d - lambda) = rad - half.
    low << Complex(rad - half), -std::conj(b);
    low.normalize();
  }
  out.vectors.col(0) = low;
  out.vectors(0, 1) = -std::conj(low(1));
  out.vectors(1, 1) = std::conj(low(0));
  return out;
}

}  // namespace

EigenDecomposition eig_hermitian(const OperatorMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("eig_hermitian: matrix not square");
  const double scale = std::max(1.0, max_abs(m));
  if (hermiticity_defect(m) > 1e-10 * scale) throw std::invalid_argument("eig_hermitian: matrix not Hermitian");
  if (m.rows() == 2) return eig2(m);
  Eigen::SelfAdjointEigenSolver<OperatorMatrix> es(0.5 * (m + m.adjoint()));
  return {es.eigenvalues(), es.eigenvectors()};
}

Complex trace_product(const OperatorMatrix& a, const OperatorMatrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols()) throw std::invalid_argument("trace_product: dimension mismatch");
  return (a.array() * b.transpose().array()).sum();
}

double purity(const OperatorMatrix& rho) { return trace_product(rho, rho).real(); }

double hs_distance(const OperatorMatrix& rho1, const OperatorMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
    throw std::invalid_argument("hs_distance: dimension mismatch");
  const OperatorMatrix diff = rho1 - rho2;
  return std::sqrt(std::max(0.0, trace_product(diff, diff).real()));
}

double pseudo_distance(const OperatorMatrix& rho1, const OperatorMatrix& rho2) {
  if (rho1.rows() != rho2.rows() || rho1.cols() != rho2.cols())
    throw std::invalid_argument("pseudo_distance: dimension mismatch");
  const double overlap = trace_product(rho1, rho2).real();
  if (overlap <= 0.0) return std::numeric_limits<double>::infinity();
  const double ratio = overlap / std::sqrt(purity(rho1) * purity(rho2));
  return std::sqrt(std::max(0.0, -std::log(ratio)));
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; }

OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b) { return a * b + b * a; }

OperatorMatrix projector(const StateVector& psi) { return psi * psi.adjoint(); }

DensityMatrix mix(const MixtureSpec& spec) {
  if (spec.weights.size() != spec.states.size() || spec.states.empty())
    throw std::invalid_argument("mix: weights and states must have equal nonzero length");
  double total = 0.0;
  for (double p : spec.weights) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("mix: weight outside [0,1]");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mix: weights do not sum to 1");
  const Index dim = spec.states.front().size();
  OperatorMatrix rho = OperatorMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < spec.states.size(); ++i) {
    const StateVector& psi = spec.states[i];
    if (psi.size() != dim) throw std::invalid_argument("mix: states of different dimension");
    if (std::abs(psi.norm() - 1.0) > 1e-12) throw std::invalid_argument("mix: state not normalized");
    rho += spec.weights[i] * projector(psi);
  }
  return DensityMatrix(std::move(rho));
}

namespace pauli {
OperatorMatrix identity() { return OperatorMatrix::Identity(2, 2); }
OperatorMatrix sigma1() {
  OperatorMatrix s(2, 2);
  s << 0.0, 1.0, 1.0, 0.0;
  return s;
}
OperatorMatrix sigma2() {
  OperatorMatrix s(2, 2);
  s << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  return s;
}
OperatorMatrix sigma3() {
  OperatorMatrix s(2, 2);
  s << 1.0, 0.0, 0.0, -1.0;
  return s;
}
}  // namespace pauli

}  // namespace povmq
