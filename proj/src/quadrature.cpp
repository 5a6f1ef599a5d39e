#include "povmq/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "povmq/special.hpp"

namespace povmq {

namespace {

void check_degree(int exact, const RuleParams& params) {
  if (params.required_degree >= 0 && params.required_degree > exact)
    throw std::invalid_argument("make_rule: too few nodes for the requested exactness");
}

QuadratureRule trapezoid(int n, const RuleParams& p) {
  QuadratureRule rule;
  rule.kind = RuleKind::PeriodicTrapezoid;
  rule.exact_degree = n - 1;
  const double h = (p.upper - p.lower) / n;
  rule.nodes.reserve(n);
  rule.weights.assign(n, h * p.weight_scale);
  for (int k = 0; k < n; ++k) rule.nodes.push_back({p.lower + (k + p.offset) * h, 0.0});
  return rule;
}

// Newton iteration on P_n from the Chebyshev-like initial guess.
QuadratureRule gauss_legendre(int n, const RuleParams& p) {
  QuadratureRule rule;
  rule.kind = RuleKind::GaussLegendre;
  rule.exact_degree = 2 * n - 1;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double mid = 0.5 * (p.upper + p.lower);
  const double half = 0.5 * (p.upper - p.lower);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root for the weight.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = n * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp) * half * p.weight_scale;
    rule.nodes[i] = {mid - half * z, 0.0};
    rule.nodes[n - 1 - i] = {mid + half * z, 0.0};
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

// Golub-Welsch for the initial nodes, Newton polish on L_n^{(alpha)}, then
// weights from w_i = Gamma(n+alpha+1) x_i / (n! (n+1)^2 L_{n+1}(x_i)^2), which
// keeps full relative accuracy in the small tail weights.
QuadratureRule gauss_laguerre(int n, const RuleParams& p) {
  if (!(p.alpha > -1.0)) throw std::domain_error("gauss-laguerre: alpha must be > -1");
  if (n > 150) throw std::invalid_argument("gauss-laguerre: at most 150 nodes supported");
  const double a = p.alpha;
  Eigen::VectorXd diag(n), sub(std::max(n - 1, 1));
  for (int i = 0; i < n; ++i) diag(i) = 2.0 * i + 1.0 + a;
  for (int i = 0; i + 1 < n; ++i) sub(i) = std::sqrt((i + 1.0) * (i + 1.0 + a));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub.head(std::max(n - 1, 0)), Eigen::EigenvaluesOnly);
  QuadratureRule rule;
  rule.kind = RuleKind::GaussLaguerre;
  rule.alpha = a;
  rule.exact_degree = 2 * n - 1;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double log_norm = std::lgamma(n + a + 1.0) - std::lgamma(n + 1.0);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);
    for (int iter = 0; iter < 20; ++iter) {
      const double ln = detail::laguerre_recurrence(n, a, x);
      const double ln1 = detail::laguerre_recurrence(n - 1, a, x);
      // x L_n' = n L_n - (n + a) L_{n-1}
      const double deriv = (n * ln - (n + a) * ln1) / x;
      const double dx = ln / deriv;
      x -= dx;
      if (std::abs(dx) < 1e-15 * x) break;
    }
    const double lnp1 = detail::laguerre_recurrence(n + 1, a, x);
    const double log_w = log_norm + std::log(x) - 2.0 * std::log(n + 1.0) - 2.0 * std::log(std::abs(lnp1));
    rule.nodes[i] = {x, 0.0};
    rule.weights[i] = std::exp(log_w) * p.weight_scale;
  }
  return rule;
}

}  // namespace

std::string to_string(RuleKind kind) {
  switch (kind) {
    case RuleKind::PeriodicTrapezoid: return "periodic-trapezoid";
    case RuleKind::GaussLegendre: return "gauss-legendre";
    case RuleKind::GaussLaguerre: return "gauss-laguerre";
    case RuleKind::Product: return "product";
    case RuleKind::Custom: return "custom";
  }
  return "unknown";
}

double QuadratureRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureRule make_rule(RuleKind kind, int n, const RuleParams& params) {
  if (n < 1) throw std::invalid_argument("make_rule: need at least one node");
  QuadratureRule rule;
  switch (kind) {
    case RuleKind::PeriodicTrapezoid: rule = trapezoid(n, params); break;
    case RuleKind::GaussLegendre: rule = gauss_legendre(n, params); break;
    case RuleKind::GaussLaguerre: rule = gauss_laguerre(n, params); break;
    default: throw std::invalid_argument("make_rule: unsupported kind " + to_string(kind));
  }
  check_degree(rule.exact_degree, params);
  return rule;
}

QuadratureRule product_rule(const QuadratureRule& first, const QuadratureRule& second) {
  QuadratureRule rule;
  rule.kind = RuleKind::Product;
  rule.dimension = 2;
  rule.exact_degree = std::min(first.exact_degree, second.exact_degree);
  rule.nodes.reserve(first.size() * second.size());
  rule.weights.reserve(first.size() * second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    for (std::size_t j = 0; j < second.size(); ++j) {
      rule.nodes.push_back({first.nodes[i][0], second.nodes[j][0]});
      rule.weights.push_back(first.weights[i] * second.weights[j]);
    }
  }
  return rule;
}

}  // namespace povmq
