#include "povmq/halfplane.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>

#include "povmq/special.hpp"

namespace povmq::halfplane {

namespace {

constexpr double kPi = std::numbers::pi;

double log_norm(int n, double alpha) { return 0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + alpha + 1.0)); }

void check_kernel_args(double x, double y, const AffineParams& params) {
  if (!(params.t > 0.0 && params.t < 1.0)) throw std::domain_error("thermal_kernel: t must lie in (0, 1)");
  if (x < 0.0 || y < 0.0) throw std::domain_error("thermal_kernel: negative argument");
}

// t^{-alpha/2} e^{b - e} e^{-b} I_alpha(b)
double kernel_form(double x, double y, const AffineParams& params, double prefactor, double decay) {
  check_kernel_args(x, y, params);
  const double t = params.t;
  const double b = 2.0 * std::sqrt(t * x * y) / (1.0 - t);
  const double e = decay * (x + y) / (2.0 * (1.0 - t));
  return prefactor * std::pow(t, -0.5 * params.alpha) * std::exp(b - e) * bessel_i_scaled(params.alpha, b);
}

// Integral of F over [0, inf) with F(cs) ~ s^alpha e^{-s} times a slowly varying factor.
double scaled_laguerre(const std::function<double(double)>& f, double alpha, double c, int nodes) {
  RuleParams rp;
  rp.alpha = alpha;
  const QuadratureRule rule = make_rule(RuleKind::GaussLaguerre, nodes, rp);
  double acc = 0.0;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double s = rule.nodes[k][0];
    acc += rule.weights[k] * std::exp(s - alpha * std::log(s)) * f(c * s);
  }
  return c * acc;
}

}  // namespace

void AffineParams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("halfplane: alpha must be > 0");
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("halfplane: t must lie in [0, 1)");
  if (dim < 1) throw std::invalid_argument("halfplane: dim must be >= 1");
  if (radial_nodes < 1) throw std::invalid_argument("halfplane: radial_nodes must be >= 1");
}

double laguerre_basis(int n, double alpha, double x) {
  if (x < 0.0) throw std::domain_error("laguerre_basis: x must be >= 0");
  if (!(alpha > -1.0)) throw std::domain_error("laguerre_basis: alpha must be > -1");
  if (n < 0) throw std::domain_error("laguerre_basis: negative degree");
  const double lag = detail::laguerre_recurrence(n, alpha, x);
  if (x == 0.0) return alpha == 0.0 ? std::exp(log_norm(n, alpha)) * lag : 0.0;
  return std::exp(log_norm(n, alpha) - 0.5 * x + 0.5 * alpha * std::log(x)) * lag;
}

QuadratureRule radial_rule(double alpha, int nodes) {
  RuleParams rp;
  rp.alpha = alpha;
  QuadratureRule rule = make_rule(RuleKind::GaussLaguerre, nodes, rp);
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const double x = rule.nodes[k][0];
    rule.weights[k] *= std::exp(x - alpha * std::log(x));
  }
  rule.kind = RuleKind::Custom;
  return rule;
}

double gram_defect(const AffineParams& params, int size) {
  params.validate();
  const QuadratureRule rule = radial_rule(params.alpha, params.radial_nodes);
  double worst = 0.0;
  for (int n = 0; n < size; ++n) {
    for (int m = n; m < size; ++m) {
      const double g = integrate(rule, [&](const Point& x) {
        return laguerre_basis(n, params.alpha, x[0]) * laguerre_basis(m, params.alpha, x[0]);
      });
      worst = std::max(worst, std::abs(g - (n == m ? 1.0 : 0.0)));
    }
  }
  return worst;
}

RadialFunction affine_action(double q, double p, RadialFunction psi) {
  if (!(q > 0.0)) throw std::domain_error("affine_action: q must be > 0");
  return [q, p, psi = std::move(psi)](double x) { return std::polar(1.0 / std::sqrt(q), p * x) * psi(x / q); };
}

Point affine_compose(const Point& g, const Point& g0) { return {g[0] * g0[0], g0[1] / g[0] + g[1]}; }

Point affine_inverse(const Point& g) { return {1.0 / g[0], -g[1] * g[0]}; }

double thermal_kernel(double x, double y, const AffineParams& params) {
  return kernel_form(x, y, params, 1.0, 1.0 + params.t);
}

double thermal_kernel_printed(double x, double y, const AffineParams& params) {
  return kernel_form(x, y, params, 1.0 - params.t, params.t);
}

double kernel_apply(double x, const std::function<double(double)>& g, const AffineParams& params, bool printed,
                    int nodes) {
  const auto k = printed ? thermal_kernel_printed : thermal_kernel;
  // In y the integrand behaves like y^alpha e^{-y/(1-t)}.
  return scaled_laguerre([&](double y) { return k(x, y, params) * g(y); }, params.alpha, 1.0 - params.t, nodes);
}

double kernel_trace(const AffineParams& params, int nodes) {
  const double st = std::sqrt(params.t);
  const double rate = (1.0 - st) / (1.0 + st);
  return scaled_laguerre([&](double x) { return thermal_kernel(x, x, params); }, params.alpha, 1.0 / rate, nodes);
}

namespace {

QuadratureRule element_rule(double alpha, Index rows, Index cols) {
  RuleParams rp;
  rp.alpha = alpha;
  return make_rule(RuleKind::GaussLaguerre, static_cast<int>((rows + cols) / 2 + 1), rp);
}

OperatorMatrix block_with_rule(double q, double p, double alpha, Index rows, Index cols, const QuadratureRule& rule) {
  if (!(q > 0.0)) throw std::domain_error("affine_matrix_element: q must be > 0");
  // e_i(x) e_n(x/q) = N_i N_n q^{-alpha/2} x^alpha e^{-x(1+1/q)/2} L_i(x) L_n(x/q); with
  // z = (1+1/q)/2 - ip the substitution y = z x rotates the contour back onto R+, so
  // a generalized Gauss-Laguerre rule in y is exact for the polynomial part.
  const int nodes = static_cast<int>(rule.size());
  const Complex z(0.5 * (1.0 + 1.0 / q), -p);
  const Complex inv_z = 1.0 / z;

  Eigen::MatrixXcd left(rows, nodes), right(nodes, cols);
  for (int k = 0; k < nodes; ++k) {
    const double y = rule.nodes[k][0];
    const Complex a = y * inv_z, b = a / q;
    Complex prev(1.0), curr = Complex(1.0 + alpha) - a;
    for (Index i = 0; i < rows; ++i) {
      if (i == 0) left(0, k) = prev;
      else if (i == 1) left(1, k) = curr;
      else {
        const Complex next = ((Complex(2.0 * (i - 1) + 1.0 + alpha) - a) * curr - (i - 1.0 + alpha) * prev) / double(i);
        prev = curr;
        curr = next;
        left(i, k) = curr;
      }
    }
    prev = Complex(1.0);
    curr = Complex(1.0 + alpha) - b;
    for (Index n = 0; n < cols; ++n) {
      if (n == 0) right(k, 0) = rule.weights[k] * prev;
      else if (n == 1) right(k, 1) = rule.weights[k] * curr;
      else {
        const Complex next = ((Complex(2.0 * (n - 1) + 1.0 + alpha) - b) * curr - (n - 1.0 + alpha) * prev) / double(n);
        prev = curr;
        curr = next;
        right(k, n) = rule.weights[k] * curr;
      }
    }
  }
  OperatorMatrix m = left * right;
  const Complex common = std::pow(q, -0.5 * (alpha + 1.0)) * std::pow(z, -(alpha + 1.0));
  for (Index i = 0; i < rows; ++i)
    for (Index n = 0; n < cols; ++n)
      m(i, n) *= common * std::exp(log_norm(static_cast<int>(i), alpha) + log_norm(static_cast<int>(n), alpha));
  return m;
}

OperatorMatrix thermal_with_rule(double q, double p, const AffineParams& params, Index block, const QuadratureRule& rule) {
  const Index terms = params.t == 0.0 ? 1 : params.dim;
  OperatorMatrix m = block_with_rule(q, p, params.alpha, block, terms, rule);
  double w = 1.0 - params.t;
  for (Index n = 0; n < terms; ++n, w *= params.t) m.col(n) *= std::sqrt(w);
  return m * m.adjoint();
}

}  // namespace

OperatorMatrix affine_matrix_block(double q, double p, double alpha, Index rows, Index cols) {
  return block_with_rule(q, p, alpha, rows, cols, element_rule(alpha, rows, cols));
}

Complex affine_matrix_element(int i, int n, double q, double p, double alpha) {
  if (i < 0 || n < 0) throw std::domain_error("affine_matrix_element: negative index");
  return affine_matrix_block(q, p, alpha, i + 1, n + 1)(i, n);
}

OperatorMatrix thermal_orbit_block(double q, double p, const AffineParams& params, Index block) {
  params.validate();
  return thermal_with_rule(q, p, params, block, element_rule(params.alpha, block, params.t == 0.0 ? 1 : params.dim));
}

QuadratureRule affine_group_rule(const AffineParams& params, const AffineGridOptions& opts) {
  params.validate();
  // The probe integrand falls off like e^{-alpha |u|} for large |u|.
  const double decay = std::min(params.alpha, 1.0);
  const double u_max = opts.u_max > 0.0 ? opts.u_max : 30.0 / decay;
  const int u_nodes = opts.u_nodes > 0 ? opts.u_nodes : static_cast<int>(std::ceil(opts.refine * (40.0 + 6.0 * u_max)));
  const int psi_nodes = opts.psi_nodes > 0 ? opts.psi_nodes : static_cast<int>(std::ceil(opts.refine * 96.0));

  RuleParams up;
  up.lower = -u_max;
  up.upper = u_max;
  RuleParams pp;
  pp.lower = -0.5 * kPi;
  pp.upper = 0.5 * kPi;
  const QuadratureRule ru = make_rule(RuleKind::GaussLegendre, u_nodes, up);
  const QuadratureRule rp = make_rule(RuleKind::GaussLegendre, psi_nodes, pp);

  QuadratureRule rule;
  rule.kind = RuleKind::Custom;
  rule.dimension = 2;
  rule.nodes.reserve(ru.size() * rp.size());
  rule.weights.reserve(ru.size() * rp.size());
  for (std::size_t a = 0; a < ru.size(); ++a) {
    const double q = std::exp(ru.nodes[a][0]);
    const double beta = 0.5 * (1.0 + 1.0 / q);
    for (std::size_t b = 0; b < rp.size(); ++b) {
      const double psi = rp.nodes[b][0];
      const double c = std::cos(psi);
      rule.nodes.push_back({q, beta * std::tan(psi)});
      rule.weights.push_back(ru.weights[a] * rp.weights[b] * q * beta / (c * c));
    }
  }
  return rule;
}

GroupOrbitSpec affine_orbit(const AffineParams& params, Index block, const AffineGridOptions& opts) {
  params.validate();
  if (block < 1) throw std::invalid_argument("affine_orbit: block must be >= 1");
  GroupOrbitSpec spec;
  spec.group_rule = affine_group_rule(params, opts);
  spec.fiducial = OperatorMatrix::Zero(block, block);
  double w = 1.0 - params.t;
  for (Index n = 0; n < block; ++n, w *= params.t) spec.fiducial(n, n) = w;
  spec.probe = OperatorMatrix::Zero(block, block);
  spec.probe(0, 0) = 1.0;
  const double alpha = params.alpha;
  auto square = std::make_shared<const QuadratureRule>(element_rule(alpha, block, block));
  auto thermal = std::make_shared<const QuadratureRule>(element_rule(alpha, block, params.t == 0.0 ? 1 : params.dim));
  spec.representation = [alpha, block, square](const Point& g) {
    return block_with_rule(g[0], g[1], alpha, block, block, *square);
  };
  spec.orbit = [params, block, thermal](const Point& g) { return thermal_with_rule(g[0], g[1], params, block, *thermal); };
  spec.compose = affine_compose;
  spec.inverse = affine_inverse;
  return spec;
}

double c_rho_printed(double alpha, double t) { return 2.0 * kPi * (1.0 - t) / alpha; }

double c_rho_series(const AffineParams& params) {
  params.validate();
  const double deficit = params.t == 0.0 ? 0.0 : std::pow(params.t, static_cast<double>(params.dim));
  return 2.0 * kPi * (1.0 - deficit) / params.alpha;
}

namespace {

struct ResolutionPass {
  double c_rho = 0.0;
  OperatorMatrix sum;
  double min_probe = 0.0;
};

ResolutionPass resolution_pass(const AffineParams& params, Index block, const AffineGridOptions& opts) {
  const GroupOrbitSpec spec = affine_orbit(params, block, opts);
  ResolutionPass r;
  r.sum = OperatorMatrix::Zero(block, block);
  r.min_probe = INFINITY;
  const QuadratureRule& rule = spec.group_rule;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    const OperatorMatrix rho = spec.orbit(rule.nodes[k]);
    r.sum += rule.weights[k] * rho;
    r.min_probe = std::min(r.min_probe, rho(0, 0).real());
  }
  // tr(|e_0><e_0| rho(g)) is the (0, 0) entry, so c_rho comes out of the same sum.
  r.c_rho = r.sum(0, 0).real();
  if (!(r.c_rho > 0.0) || !std::isfinite(r.c_rho))
    throw std::domain_error("affine_resolution_check: c_rho is not positive and finite");
  return r;
}

}  // namespace

AffineResolutionReport affine_resolution_check(const AffineParams& params, Index block,
                                               const AffineGridOptions& opts) {
  params.validate();
  if (block < 1 || block > 6) throw std::invalid_argument("affine_resolution_check: block must be 1..6");
  const ResolutionPass base = resolution_pass(params, block, opts);
  AffineGridOptions fine = opts;
  fine.refine = 2.0 * opts.refine;
  if (fine.u_nodes > 0) fine.u_nodes *= 2;
  if (fine.psi_nodes > 0) fine.psi_nodes *= 2;
  const ResolutionPass refined = resolution_pass(params, block, fine);

  const OperatorMatrix eye = OperatorMatrix::Identity(block, block);
  AffineResolutionReport rep;
  rep.c_rho = base.c_rho;
  rep.c_rho_printed = c_rho_printed(params.alpha, params.t);
  rep.integral = base.sum / base.c_rho;
  rep.defect = max_abs(rep.integral - eye);
  rep.defect_printed = max_abs(base.sum / rep.c_rho_printed - eye);
  rep.refined_defect = max_abs(OperatorMatrix(refined.sum / refined.c_rho - eye));
  rep.refinement_change = max_abs(OperatorMatrix(refined.sum / refined.c_rho - rep.integral));
  rep.min_admissibility = std::min(base.min_probe, refined.min_probe);
  return rep;
}

}  // namespace povmq::halfplane
