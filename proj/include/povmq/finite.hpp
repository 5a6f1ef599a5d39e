#pragma once

// Density families on a finite measure space: counting constraints,
// feasibility bounds, Parseval frames and the inverse problem of recovering
// the densities from the table p_ij = tr(rho_i rho_j).

#include <cstdint>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "povmq/operators.hpp"

namespace povmq::finite {

class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual(best_residual) {}
  double best_residual;
};

struct FiniteMeasure {
  std::vector<double> weights;  ///< nu_i > 0

  std::size_t size() const { return weights.size(); }
  /// Throws std::invalid_argument unless all weights are positive and sum to n.
  void validate(int n, double tol = 1e-10) const;
  static FiniteMeasure uniform(int n_points, int n);
};

struct ProbTable {
  Eigen::MatrixXd p;  ///< symmetric, entries in [0, 1]

  /// Throws std::invalid_argument unless p is symmetric with entries in
  /// [0, 1] and sum_j nu_j p_ij = 1 for each row.
  void validate(const FiniteMeasure& measure, double tol = 1e-8) const;
};

struct FeasibilityReport {
  int n = 1;
  bool rank_one = false;
  int n_min = 1;  ///< smallest admissible point count
  int n_max = 0;  ///< largest admissible point count
  /// Roots of the counting quadratic that bracket the admissible range.
  double lower_root = 0.0, upper_root = 0.0;
  /// Rank-one case: roots of the printed quadratic N^2 - N(4n-1) + 2n^2 - n.
  double printed_lower_root = 0.0, printed_upper_root = 0.0;
  /// (4n - 1 - sqrt(8n^2 - 8n + 9))/2, printed as both ends of the range.
  double printed_range_end = 0.0;
  bool degenerate = false;  ///< no free parameters exist (n = 1)

  bool admits(int n_points) const { return !degenerate && n_points >= n_min && n_points <= n_max; }
  /// (N-1)(n^2-1) in the full-rank case, 2N(n-1) - (n^2-1) for rank one.
  int free_parameters(int n_points) const;
};

/// Full rank: (N-1)(N - 2n^2 + 2) <= 0, i.e. 1 <= N <= 2n^2 - 2. Rank one:
/// N^2 - N(4n-1) + 2n^2 - 2 <= 0 together with N >= n.
FeasibilityReport feasibility_bounds(int n, bool rank_one);

/// max |sum nu_i |x_i><x_i| - I|. Throws std::invalid_argument for vectors
/// that are not unit to 1e-10.
double parseval_check(const std::vector<StateVector>& vectors, const std::vector<double>& weights);

/// The same defect from the coordinate form sum_i nu_i xi_li conj(xi_l'i).
double parseval_coordinate_defect(const std::vector<StateVector>& vectors, const std::vector<double>& weights);

/// Three unit vectors at 120 degrees in C^2 with weights 2/3.
std::vector<StateVector> mercedes_benz_frame();

/// max |sum nu_i rho_i - I|.
double resolution_defect(const std::vector<DensityMatrix>& family, const FiniteMeasure& measure);

/// p_ij = tr(rho_i rho_j). Throws std::domain_error when the family does not
/// resolve the identity to `tol`.
ProbTable gram_probabilities(const std::vector<DensityMatrix>& family, const FiniteMeasure& measure,
                             double tol = 1e-10);

struct RandomFamily {
  std::vector<DensityMatrix> family;
  FiniteMeasure measure;
};

/// Random sigma_i made to resolve the identity: rho_i is S^{-1/2} sigma_i S^{-1/2}
/// normalized, with nu_i the matching traces.
RandomFamily random_resolving_family(int n, int n_points, bool rank_one, std::uint64_t seed);

struct ReconstructOptions {
  int restarts = 8;
  double penalty = 10.0;       ///< weight on the resolution residual
  double tolerance = 1e-8;     ///< success threshold on residual and resolution defect
  int max_evaluations = 20000; ///< per restart
};

struct ReconstructResult {
  std::vector<DensityMatrix> family;
  double residual = 0.0;            ///< sum_{i<=j} (tr(rho_i rho_j) - p_ij)^2
  double resolution_defect = 0.0;   ///< max |sum nu_i rho_i - I|
  int winning_restart = -1;
  int free_variables = 0;           ///< rank count at the solution
  std::vector<double> restart_residuals;
};

/// Least squares over rho_i = B_i B_i^dagger / tr(B_i B_i^dagger), B_i of size
/// n x n (or n x 1 for rank one). Throws InfeasibleError when
/// feasibility_bounds rejects (N, n) and ConvergenceError when no restart
/// reaches the tolerance.
ReconstructResult reconstruct(const ProbTable& table, const FiniteMeasure& measure, int n, bool rank_one,
                              std::uint64_t seed, const ReconstructOptions& opts = {});

struct TableDocument {
  ProbTable table;
  FiniteMeasure measure;
  int n = 0;
};

/// {"p": row-major array, "nu": weights, "n": dimension}.
nlohmann::json to_json(const TableDocument& doc);
/// Throws std::invalid_argument on malformed input.
TableDocument table_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ReconstructResult& result);

}  // namespace povmq::finite
