#include "povmq/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace povmq::sphere {

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 scale(const Vec3& v, double s) { return {s * v[0], s * v[1], s * v[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

QuadratureRule cos_phi_rule(int n_cos, int n_phi, RuleKind phi_kind) {
  RuleParams cos_params;
  cos_params.lower = -1.0;
  cos_params.upper = 1.0;
  RuleParams phi_params;
  phi_params.weight_scale = 1.0 / (2.0 * kPi);
  return product_rule(make_rule(RuleKind::GaussLegendre, n_cos, cos_params), make_rule(phi_kind, n_phi, phi_params));
}

// Gauss-Legendre in theta on [0, pi] with the sin theta factor in the weights,
// for integrands carrying odd powers of sin theta.
QuadratureRule theta_phi_rule(int n_theta, int n_phi, RuleKind phi_kind) {
  RuleParams theta_params;
  theta_params.lower = 0.0;
  theta_params.upper = kPi;
  QuadratureRule theta = make_rule(RuleKind::GaussLegendre, n_theta, theta_params);
  for (std::size_t k = 0; k < theta.size(); ++k) {
    theta.weights[k] *= std::sin(theta.nodes[k][0]);
    theta.nodes[k][0] = std::cos(theta.nodes[k][0]);
  }
  theta.kind = RuleKind::Custom;
  theta.exact_degree = -1;
  RuleParams phi_params;
  phi_params.weight_scale = 1.0 / (2.0 * kPi);
  return product_rule(theta, make_rule(phi_kind, n_phi, phi_params));
}

DensityFamily make_family(double r, QuadratureRule rule) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("sphere: r must lie in [0, 1]");
  DensityFamily fam;
  fam.hilbert_dim = 2;
  fam.label = "sphere";
  fam.rule = std::move(rule);
  fam.tolerance = 1e-12;
  fam.evaluate = [r](const Point& x) { return rho_sphere(r, std::acos(std::clamp(x[0], -1.0, 1.0)), x[1]).matrix(); };
  return fam;
}

}  // namespace

Quaternion Quaternion::basis(int a) {
  if (a < 0 || a > 3) throw std::invalid_argument("Quaternion::basis: index must be 0..3");
  Quaternion q{0.0, {0.0, 0.0, 0.0}};
  if (a == 0) q.q0 = 1.0;
  else q.qv[a - 1] = 1.0;
  return q;
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

Vec3 unit_vector(double theta, double phi) {
  return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  Quaternion c;
  c.q0 = a.q0 * b.q0 - dot(a.qv, b.qv);
  c.qv = add(add(scale(a.qv, b.q0), scale(b.qv, a.q0)), cross(a.qv, b.qv));
  return c;
}

Quaternion conjugate(const Quaternion& q) { return {q.q0, scale(q.qv, -1.0)}; }

double norm(const Quaternion& q) { return std::sqrt(q.q0 * q.q0 + dot(q.qv, q.qv)); }

Quaternion inverse(const Quaternion& q) {
  const double n2 = q.q0 * q.q0 + dot(q.qv, q.qv);
  if (n2 == 0.0) throw std::domain_error("quaternion inverse of zero");
  const Quaternion c = conjugate(q);
  return {c.q0 / n2, scale(c.qv, 1.0 / n2)};
}

OperatorMatrix to_matrix(const Quaternion& q) {
  const Complex i(0.0, 1.0);
  OperatorMatrix m(2, 2);
  m << q.q0 + i * q.qv[2], -q.qv[1] + i * q.qv[0], q.qv[1] + i * q.qv[0], q.q0 - i * q.qv[2];
  return m;
}

Vec3 rotate_rodrigues(double omega, const Vec3& n, const Vec3& v) {
  if (std::abs(norm(n) - 1.0) > 1e-12) throw std::domain_error("rotate: axis is not a unit vector");
  return add(add(scale(n, dot(v, n)), scale(cross(n, cross(v, n)), std::cos(omega))),
             scale(cross(n, v), std::sin(omega)));
}

Vec3 rotate_quaternion(double omega, const Vec3& n, const Vec3& v) {
  if (std::abs(norm(n) - 1.0) > 1e-12) throw std::domain_error("rotate: axis is not a unit vector");
  const Quaternion xi{std::cos(0.5 * omega), scale(n, std::sin(0.5 * omega))};
  return (xi * Quaternion{0.0, v} * conjugate(xi)).qv;
}

Quaternion xi_north(double theta, double phi) {
  const double s = std::sin(0.5 * theta);
  return {std::cos(0.5 * theta), {-s * std::sin(phi), s * std::cos(phi), 0.0}};
}

OperatorMatrix rho_vector(const Vec3& d) {
  return 0.5 * (OperatorMatrix::Identity(2, 2) - Complex(0.0, 1.0) * to_matrix(Quaternion{0.0, d}));
}

DensityMatrix rho_sphere(double r, double theta, double phi) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("sphere: r must lie in [0, 1]");
  const Complex off = 0.5 * r * std::sin(theta) * std::polar(1.0, phi);
  OperatorMatrix m(2, 2);
  m << 0.5 * (1.0 + r * std::cos(theta)), off, std::conj(off), 0.5 * (1.0 - r * std::cos(theta));
  return DensityMatrix::trusted(std::move(m));
}

OperatorMatrix rho_transport(const Vec3& d, double theta, double phi) {
  const OperatorMatrix xi = to_matrix(xi_north(theta, phi));
  return xi * rho_vector(d) * xi.adjoint();
}

StateVector spin_coherent_state(double theta, double phi) {
  StateVector v(2);
  v << std::cos(0.5 * theta), std::sin(0.5 * theta) * std::polar(1.0, phi);
  return v;
}

DensityFamily sphere_family(double r, int n_cos, int n_phi) {
  return make_family(r, cos_phi_rule(n_cos, n_phi, RuleKind::PeriodicTrapezoid));
}

DensityFamily sphere_family_gl(double r, int n_theta, int n_phi) {
  return make_family(r, theta_phi_rule(n_theta, n_phi, RuleKind::GaussLegendre));
}

OperatorMatrix transport_integral(const Vec3& d, int n_cos, int n_phi) {
  const QuadratureRule rule = cos_phi_rule(n_cos, n_phi, RuleKind::PeriodicTrapezoid);
  OperatorMatrix acc = OperatorMatrix::Zero(2, 2);
  for (std::size_t k = 0; k < rule.size(); ++k)
    acc += rule.weights[k] * rho_transport(d, std::acos(rule.nodes[k][0]), rule.nodes[k][1]);
  return acc;
}

SphereFourier sphere_fourier(const ScalarField& f, int n_theta, int n_phi) {
  const QuadratureRule rule = theta_phi_rule(n_theta, n_phi, RuleKind::GaussLegendre);
  const double to_quarter = 2.0 * kPi / (4.0 * kPi);
  SphereFourier c;
  c.mean = to_quarter * integrate(rule, [&](const Point& x) { return f(x); });
  c.cc = to_quarter * integrate(rule, [&](const Point& x) { return f(x) * x[0]; });
  c.cs = to_quarter * integrate(rule, [&](const Point& x) {
           return f(x) * std::polar(std::sqrt(1.0 - x[0] * x[0]), x[1]);
         });
  c.cs_minus = to_quarter * integrate(rule, [&](const Point& x) {
                 return f(x) * std::polar(std::sqrt(1.0 - x[0] * x[0]), -x[1]);
               });
  return c;
}

OperatorMatrix sphere_quantize_fourier(const SphereFourier& c, double r) {
  OperatorMatrix m(2, 2);
  m << c.mean + r * c.cc, r * c.cs, r * c.cs_minus, c.mean - r * c.cc;
  return m;
}

Complex q_function(const Point& x) { return x[1]; }
Complex p_function(const Point& x) { return x[0]; }

OperatorMatrix a_q_closed(double r) { return kPi * OperatorMatrix::Identity(2, 2) + (kPi * r / 4.0) * pauli::sigma2(); }

OperatorMatrix a_p_closed(double r) { return (r / 3.0) * pauli::sigma3(); }

OperatorMatrix commutator_closed(double r) { return Complex(0.0, kPi * r * r / 6.0) * pauli::sigma1(); }

double lower_q_closed(double r, double theta, double phi) {
  return kPi - kPi * r * r / 4.0 * std::sin(theta) * std::sin(phi);
}

double lower_p_closed(double r, double theta) { return r * r / 3.0 * std::cos(theta); }

}  // namespace povmq::sphere
