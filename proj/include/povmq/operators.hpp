#pragma once

// Dense complex operator layer: density-matrix validation, Hermitian
// eigendecomposition, the Hilbert-Schmidt distance and the log-overlap
// pseudo-distance.

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace povmq {

using Complex = std::complex<double>;
using OperatorMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Slack allowed on the smallest eigenvalue of a density matrix.
inline constexpr double kPositivitySlack = 1e-10;

struct DensityDiagnostics {
  bool valid = false;
  double hermiticity_defect = 0.0;  ///< max |M - M^dagger|
  double trace_defect = 0.0;        ///< |tr M - 1|
  double min_eigenvalue = 0.0;
};

/// Checks hermiticity and unit trace to `tol` and positivity to
/// max(tol, kPositivitySlack). Never throws for square input.
DensityDiagnostics is_density(const OperatorMatrix& m, double tol = 1e-12);

/// A validated density operator. Construction throws std::invalid_argument
/// if `is_density` fails.
class DensityMatrix {
 public:
  explicit DensityMatrix(OperatorMatrix m, double tol = 1e-12);

  /// Wraps without validation; for matrices that are densities by construction.
  static DensityMatrix trusted(OperatorMatrix m);

  const OperatorMatrix& matrix() const { return m_; }
  operator const OperatorMatrix&() const { return m_; }
  Index dim() const { return m_.rows(); }

 private:
  struct Trusted {};
  DensityMatrix(OperatorMatrix m, Trusted) : m_(std::move(m)) {}
  OperatorMatrix m_;
};

struct EigenDecomposition {
  Eigen::VectorXd values;   ///< ascending
  OperatorMatrix vectors;   ///< orthonormal columns
};

/// Hermitian eigenproblem; closed form for 2x2, Eigen's self-adjoint solver
/// otherwise. Throws std::invalid_argument if M is not Hermitian to 1e-10
/// (relative to its largest entry).
EigenDecomposition eig_hermitian(const OperatorMatrix& m);

double max_abs(const OperatorMatrix& m);
double hermiticity_defect(const OperatorMatrix& m);

/// tr(A B) without forming the product.
Complex trace_product(const OperatorMatrix& a, const OperatorMatrix& b);

double purity(const OperatorMatrix& rho);

/// sqrt(tr (rho1 - rho2)^2).
double hs_distance(const OperatorMatrix& rho1, const OperatorMatrix& rho2);

/// [-ln(tr(rho1 rho2) / sqrt(tr rho1^2 tr rho2^2))]^{1/2}; +infinity when the
/// overlap is not positive.
double pseudo_distance(const OperatorMatrix& rho1, const OperatorMatrix& rho2);

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);
OperatorMatrix anticommutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Projector |psi><psi| (psi is not normalized here).
OperatorMatrix projector(const StateVector& psi);

struct MixtureSpec {
  std::vector<double> weights;
  std::vector<StateVector> states;
};

/// sum_i p_i |psi_i><psi_i|. Throws std::invalid_argument when the weights
/// are not a probability vector or a state is not normalized (1e-12).
DensityMatrix mix(const MixtureSpec& spec);

namespace pauli {
OperatorMatrix identity();
OperatorMatrix sigma1();
OperatorMatrix sigma2();
OperatorMatrix sigma3();
}  // namespace pauli

}  // namespace povmq
