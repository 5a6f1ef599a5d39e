#include "povmq/circle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace povmq::circle {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap(double x, double period) {
  double y = std::fmod(x, period);
  if (y < 0.0) y += period;
  return y;
}

void require_radius(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("circle: r must lie in [0, 1]");
}

OperatorMatrix real2(double a, double b, double c, double d) {
  OperatorMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}  // namespace

CircleDensityParams canonical(CircleDensityParams p) {
  require_radius(p.r);
  p.phi = p.r == 0.0 ? 0.0 : wrap(p.phi, kPi);
  p.theta = wrap(p.theta, 2.0 * kPi);
  return p;
}

OperatorMatrix rotation(double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return real2(c, -s, s, c);
}

OperatorMatrix density_r_phi(double r, double big_phi) {
  const double c = 0.5 * r * std::cos(big_phi), s = 0.5 * r * std::sin(big_phi);
  return real2(0.5 + c, s, s, 0.5 - c);
}

DensityMatrix rho_circle(double r, double phi, double theta) {
  require_radius(r);
  return DensityMatrix::trusted(density_r_phi(r, 2.0 * (phi + theta)));
}

DensityMatrix rho_circle(const CircleDensityParams& p) { return rho_circle(p.r, p.phi, p.theta); }

AbDecomposition from_ab(double a, double b) {
  const double delta = a * (1.0 - a) - b * b;
  if (!(a >= 0.0 && a <= 1.0) || delta < -1e-15) throw std::domain_error("from_ab: M(a, b) is not a density");
  AbDecomposition out;
  out.delta = delta;
  out.lambda = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - 4.0 * delta)));
  out.params.r = 2.0 * out.lambda - 1.0;
  out.params.phi = out.params.r == 0.0 ? 0.0 : 0.5 * std::atan2(b, a - 0.5);
  return out;
}

std::array<double, 2> to_ab(double r, double phi) {
  return {0.5 + 0.5 * r * std::cos(2.0 * phi), 0.5 * r * std::sin(2.0 * phi)};
}

OperatorMatrix spectral_reconstruction(double lambda, double phi) {
  StateVector u(2), v(2);
  u << std::cos(phi), std::sin(phi);
  v << -std::sin(phi), std::cos(phi);
  return lambda * projector(u) + (1.0 - lambda) * projector(v);
}

AlgebraReport product_and_algebra(const CircleDensityParams& p1, const CircleDensityParams& p2) {
  const double big1 = 2.0 * (p1.phi + p1.theta);
  const double big2 = 2.0 * (p2.phi + p2.theta);
  const double rr = p1.r * p2.r;
  const double diff = big1 - big2;
  const OperatorMatrix a = density_r_phi(p1.r, big1);
  const OperatorMatrix b = density_r_phi(p2.r, big2);
  const OperatorMatrix id = OperatorMatrix::Identity(2, 2);
  const Complex minus_i(0.0, -1.0);

  AlgebraReport rep;
  rep.product = a * b;
  rep.product_formula = 0.5 * (a + b + 0.5 * rr * rotation(diff) - 0.5 * id);
  rep.commutator = commutator(a, b);
  rep.commutator_formula = minus_i * (0.5 * rr * std::sin(diff)) * pauli::sigma2();
  rep.commutator_printed = minus_i * (rr * std::sin(diff)) * pauli::sigma2();
  rep.anticommutator = anticommutator(a, b);
  rep.anticommutator_formula = a + b + (0.5 * rr * std::cos(diff) - 0.5) * id;
  rep.anticommutator_printed = a + b + (std::cos(diff) - 0.5) * id;
  return rep;
}

std::array<MarginalReport, 4> marginal_integrals(double r, double theta) {
  require_radius(r);
  const OperatorMatrix id = OperatorMatrix::Identity(2, 2);
  std::array<MarginalReport, 4> out;

  const QuadratureRule circ = make_rule(RuleKind::PeriodicTrapezoid, 8, {.weight_scale = 1.0 / kPi});
  OperatorMatrix m = OperatorMatrix::Zero(2, 2);
  for (std::size_t k = 0; k < circ.size(); ++k) m += circ.weights[k] * density_r_phi(r, circ.nodes[k][0]);
  out[0] = {"theta-marginal", max_abs(m - id)};

  // The rotation angle enters as Phi = theta + 2 omega.
  m.setZero();
  for (std::size_t k = 0; k < circ.size(); ++k) m += circ.weights[k] * density_r_phi(r, theta + 2.0 * circ.nodes[k][0]);
  out[1] = {"rotation-marginal", max_abs(m - id)};

  const QuadratureRule radial = make_rule(RuleKind::GaussLegendre, 8, {.lower = 0.0, .upper = 1.0});
  m.setZero();
  for (std::size_t k = 0; k < radial.size(); ++k) {
    const double rk = radial.nodes[k][0];
    m += radial.weights[k] * rk * density_r_phi(rk, theta);
  }
  out[2] = {"radial-marginal", max_abs(m - (density_r_phi(1.0, theta) / 3.0 + id / 12.0))};

  const QuadratureRule disk = product_rule(radial, make_rule(RuleKind::PeriodicTrapezoid, 16));
  m.setZero();
  for (std::size_t k = 0; k < disk.size(); ++k) {
    const double rk = disk.nodes[k][0];
    m += disk.weights[k] * rk * density_r_phi(rk, disk.nodes[k][1]);
  }
  out[3] = {"disk-integral", max_abs((2.0 / kPi) * m - id)};
  return out;
}

double angle_function(double theta) { return wrap(theta, 2.0 * kPi); }

DensityFamily circle_family(double r, double phi, int nodes, RuleKind kind) {
  require_radius(r);
  DensityFamily fam;
  fam.hilbert_dim = 2;
  fam.label = "circle";
  RuleParams params;
  params.weight_scale = 1.0 / kPi;
  fam.rule = make_rule(kind, nodes, params);
  fam.evaluate = [r, phi](const Point& x) { return density_r_phi(r, 2.0 * (phi + x[0])); };
  fam.tolerance = 1e-12;
  return fam;
}

GroupOrbitSpec circle_orbit(double r, double phi, int nodes) {
  require_radius(r);
  GroupOrbitSpec spec;
  spec.representation = [](const Point& g) { return rotation(g[0]); };
  spec.fiducial = density_r_phi(r, 2.0 * phi);
  spec.probe = spec.fiducial;
  spec.group_rule = make_rule(RuleKind::PeriodicTrapezoid, nodes);
  spec.compose = [](const Point& a, const Point& b) { return Point{wrap(a[0] + b[0], 2.0 * kPi), 0.0}; };
  spec.inverse = [](const Point& g) { return Point{wrap(-g[0], 2.0 * kPi), 0.0}; };
  spec.orbit = [r, phi](const Point& g) { return density_r_phi(r, 2.0 * (phi + g[0])); };
  return spec;
}

FourierData circle_fourier(const ScalarField& f, double phi, const QuadratureRule& rule) {
  FourierData d;
  d.mean = integrate(rule, [&](const Point& x) { return f(x); }) * (1.0 / (2.0 * kPi));
  d.cc = integrate(rule, [&](const Point& x) { return f(x) * std::cos(2.0 * (x[0] + phi)); }) / kPi;
  d.cs = integrate(rule, [&](const Point& x) { return f(x) * std::sin(2.0 * (x[0] + phi)); }) / kPi;
  return d;
}

OperatorMatrix circle_quantize_fourier(const FourierData& data, double r) {
  OperatorMatrix m(2, 2);
  const Complex half_r(0.5 * r, 0.0);
  m << data.mean + half_r * data.cc, half_r * data.cs, half_r * data.cs, data.mean - half_r * data.cc;
  return m;
}

OperatorMatrix angle_operator_closed(double r, double phi) {
  const double s = 0.5 * r * std::sin(2.0 * phi), c = 0.5 * r * std::cos(2.0 * phi);
  return real2(kPi + s, -c, -c, kPi - s);
}

DensityFamily angle_family(double r, double phi, int nodes) {
  return circle_family(r, phi, nodes, RuleKind::GaussLegendre);
}

double angle_lower_symbol_closed(double r, double theta) { return kPi - 0.5 * r * r * std::sin(2.0 * theta); }

}  // namespace povmq::circle
