#pragma once

#include <array>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace povmq {

/// A point of a measure space. One-dimensional spaces use only the first
/// coordinate.
using Point = std::array<double, 2>;

enum class RuleKind {
  PeriodicTrapezoid,
  GaussLegendre,
  GaussLaguerre,
  Product,
  Custom,
};

std::string to_string(RuleKind kind);

/// Nodes and weights realizing a measure dnu on X.
struct QuadratureRule {
  RuleKind kind = RuleKind::Custom;
  int dimension = 1;
  std::vector<Point> nodes;
  std::vector<double> weights;
  /// Largest polynomial (or trigonometric) degree integrated exactly; -1 if
  /// unknown.
  int exact_degree = -1;
  double alpha = 0.0;

  std::size_t size() const { return weights.size(); }
  double total_weight() const;
};

struct RuleParams {
  double lower = 0.0;
  double upper = 2.0 * std::numbers::pi;
  /// Multiplies every weight, e.g. 1/pi for dtheta/pi.
  double weight_scale = 1.0;
  /// Fraction of a cell the trapezoid nodes are shifted by (0.5 = midpoint).
  double offset = 0.0;
  /// Gauss-Laguerre exponent: weight x^alpha e^{-x} on [0, inf).
  double alpha = 0.0;
  /// Reject the rule unless it integrates this degree exactly (-1: no check).
  int required_degree = -1;
};

/// Builds a one-dimensional rule. For PeriodicTrapezoid the rule integrates
/// e^{ik x} exactly for |k| < n over [lower, upper).
QuadratureRule make_rule(RuleKind kind, int n, const RuleParams& params = {});

/// Tensor product: nodes (a_i, b_j), weights a_w * b_w, a-index slowest.
QuadratureRule product_rule(const QuadratureRule& first, const QuadratureRule& second);

/// Integral of f against the rule.
template <typename F>
auto integrate(const QuadratureRule& rule, F&& f) {
  using R = decltype(f(rule.nodes.front()));
  R acc{};
  for (std::size_t k = 0; k < rule.size(); ++k) acc += rule.weights[k] * f(rule.nodes[k]);
  return acc;
}

}  // namespace povmq
