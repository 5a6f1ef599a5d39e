#pragma once

// Verification suites: each geometry's closed-form claims recomputed and
// compared, plus the generic quantization properties run on every family.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "povmq/core.hpp"
#include "povmq/report.hpp"

namespace povmq {

struct SuiteConfig {
  std::optional<double> r;
  std::optional<double> t;
  std::optional<double> alpha;
  std::optional<int> dim;
  std::optional<int> grid;  ///< node count override, meaning depends on the geometry
  std::optional<double> tol;  ///< replaces every numeric tolerance
  std::uint64_t seed = 20240601;

  /// Throws std::invalid_argument for values outside the module preconditions.
  void validate() const;
  double tolerance(double fallback) const { return tol.value_or(fallback); }
};

struct PropertyOptions {
  int draws = 50;
  std::uint64_t seed = 1;
  Index block = 0;             ///< 0: full matrix
  int measurement_states = 3;  ///< states rho_m for the two-route identity
  /// Random point of X.
  std::function<Point(std::mt19937_64&)> sample;
};

/// Worst values over all draws.
struct PropertyReport {
  int draws = 0;
  double linearity = 0.0;          ///< |A_{af+bg} - a A_f - b A_g|
  double identity = 0.0;           ///< |A_1 - I|
  double row_normalization = 0.0;  ///< |integral of p_{x0} - 1|
  double contraction_excess = 0.0; ///< max(0, |f_check(x)| - sup|f|)
  double measurement = 0.0;        ///< |tr(rho_m A_f) - integral f tr(rho_m rho)|
};

/// Random f = c0 + sum_k c_k cos(a_k . x + b_k) with complex c_k. For families
/// with a weighted_sum fast path the row integral is tr(rho(x0) A_1).
PropertyReport check_properties(const DensityFamily& fam, const PropertyOptions& opts);

SuiteReport circle_suite(const SuiteConfig& cfg);
SuiteReport sphere_suite(const SuiteConfig& cfg);
SuiteReport plane_suite(const SuiteConfig& cfg);
SuiteReport halfplane_suite(const SuiteConfig& cfg);
SuiteReport core_suite(const SuiteConfig& cfg);
SuiteReport finite_suite(const SuiteConfig& cfg);

std::vector<std::string> suite_names();
/// `name` is a suite name or "all". Throws std::invalid_argument otherwise.
std::vector<SuiteReport> run_suites(const std::string& name, const SuiteConfig& cfg);

}  // namespace povmq
