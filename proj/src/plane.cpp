#include "povmq/plane.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "povmq/special.hpp"

namespace povmq::plane {

namespace {

constexpr double kPi = std::numbers::pi;

double log_factorial(Index n) { return std::lgamma(static_cast<double>(n) + 1.0); }

Index default_block(const ThermalParams& params, Index block) {
  return block > 0 ? std::min(block, params.dim) : std::max<Index>(1, params.dim / 2);
}

// Radial densities rho_T(r) for real r, plus the phase table e^{i j g_l}.
struct PlaneCache {
  Index dim = 0;
  PlaneGrid grid;
  std::vector<OperatorMatrix> radial;
  std::vector<std::vector<Complex>> phases;  // [l][j + dim - 1]
};

std::shared_ptr<PlaneCache> build_cache(const ThermalParams& params, PlaneGrid grid) {
  auto cache = std::make_shared<PlaneCache>();
  cache->dim = params.dim;
  cache->radial.reserve(grid.radii.size());
  for (double r : grid.radii) cache->radial.push_back(displaced_thermal_block(Complex(r, 0.0), params));
  const Index width = 2 * params.dim - 1;
  cache->phases.resize(grid.angles.size());
  for (std::size_t l = 0; l < grid.angles.size(); ++l) {
    cache->phases[l].resize(width);
    for (Index j = 0; j < width; ++j)
      cache->phases[l][j] = std::polar(1.0, static_cast<double>(j - (params.dim - 1)) * grid.angles[l]);
  }
  cache->grid = std::move(grid);
  return cache;
}

OperatorMatrix cached_sum(const PlaneCache& c, const ScalarField& f) {
  const Index dim = c.dim;
  const Index width = 2 * dim - 1;
  OperatorMatrix acc = OperatorMatrix::Zero(dim, dim);
  std::vector<Complex> coeff(width);
  for (std::size_t k = 0; k < c.grid.radii.size(); ++k) {
    const double r = c.grid.radii[k];
    std::fill(coeff.begin(), coeff.end(), Complex(0.0));
    for (std::size_t l = 0; l < c.grid.angles.size(); ++l) {
      const double g = c.grid.angles[l];
      const Complex fw = c.grid.angular_weights[l] * f(Point{r * std::cos(g), r * std::sin(g)});
      if (fw == Complex(0.0)) continue;
      const std::vector<Complex>& ph = c.phases[l];
      for (Index j = 0; j < width; ++j) coeff[j] += fw * ph[j];
    }
    const OperatorMatrix& rho = c.radial[k];
    const double wr = c.grid.radial_weights[k];
    for (Index mp = 0; mp < dim; ++mp)
      for (Index m = 0; m < dim; ++m) acc(m, mp) += wr * rho(m, mp) * coeff[m - mp + dim - 1];
  }
  return acc;
}

QuadratureRule rule_from_grid(const PlaneGrid& g) {
  QuadratureRule rule;
  rule.kind = RuleKind::Product;
  rule.dimension = 2;
  for (std::size_t k = 0; k < g.radii.size(); ++k) {
    for (std::size_t l = 0; l < g.angles.size(); ++l) {
      rule.nodes.push_back({g.radii[k] * std::cos(g.angles[l]), g.radii[k] * std::sin(g.angles[l])});
      rule.weights.push_back(g.radial_weights[k] * g.angular_weights[l]);
    }
  }
  return rule;
}

double max_block_diff(const OperatorMatrix& a, const OperatorMatrix& b, Index block) {
  return max_abs(a.topLeftCorner(block, block) - b.topLeftCorner(block, block));
}

}  // namespace

FockSpace::FockSpace(Index d) : dim(d) {
  if (d < 1) throw std::invalid_argument("FockSpace: dim must be positive");
  a = OperatorMatrix::Zero(d, d);
  for (Index n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  adag = a.adjoint();
  number = adag * a;
  q = (a + adag) / std::sqrt(2.0);
  p = (a - adag) / Complex(0.0, std::sqrt(2.0));
  parity = OperatorMatrix::Zero(d, d);
  for (Index n = 0; n < d; ++n) parity(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
}

OperatorMatrix FockSpace::rotation(double theta, double nu) const {
  OperatorMatrix u = OperatorMatrix::Zero(dim, dim);
  for (Index n = 0; n < dim; ++n) u(n, n) = std::polar(1.0, (static_cast<double>(n) + nu) * theta);
  return u;
}

double ThermalParams::s() const { return -(1.0 + t) / (1.0 - t); }

std::vector<double> ThermalParams::weights() const {
  std::vector<double> w(dim);
  double tn = 1.0;
  for (Index n = 0; n < dim; ++n) {
    w[n] = (1.0 - t) * tn;
    tn *= t;
  }
  return w;
}

double ThermalParams::mass_deficit() const { return std::pow(t, static_cast<double>(dim)); }

void ThermalParams::validate() const {
  if (!(t >= 0.0 && t < 1.0)) throw std::invalid_argument("thermal: t must lie in [0, 1)");
  if (dim < 1) throw std::invalid_argument("thermal: dim must be positive");
}

Complex displacement_element(Index m, Index n, Complex z) {
  const double u = std::norm(z);
  const Index lo = std::min(m, n), hi = std::max(m, n);
  const Index k = hi - lo;
  if (u == 0.0) return m == n ? Complex(1.0) : Complex(0.0);
  const double lag = detail::laguerre_recurrence(static_cast<int>(lo), static_cast<double>(k), u);
  const double log_mag = 0.5 * (log_factorial(lo) - log_factorial(hi)) - 0.5 * u + 0.5 * k * std::log(u);
  // z^{m-n} for m >= n, (-conj z)^{n-m} otherwise.
  const double arg = m >= n ? std::arg(z) * k : std::arg(-std::conj(z)) * k;
  return std::polar(std::exp(log_mag), arg) * lag;
}

OperatorMatrix displacement(Complex z, Index dim) {
  OperatorMatrix d(dim, dim);
  for (Index n = 0; n < dim; ++n)
    for (Index m = 0; m < dim; ++m) d(m, n) = displacement_element(m, n, z);
  return d;
}

OperatorMatrix thermal_state(const ThermalParams& params) {
  params.validate();
  const std::vector<double> w = params.weights();
  OperatorMatrix rho = OperatorMatrix::Zero(params.dim, params.dim);
  for (Index n = 0; n < params.dim; ++n) rho(n, n) = w[n];
  return rho;
}

OperatorMatrix displaced_thermal_block(Complex z, const ThermalParams& params) {
  params.validate();
  OperatorMatrix b = displacement(z, params.dim);
  const std::vector<double> w = params.weights();
  for (Index n = 0; n < params.dim; ++n) b.col(n) *= std::sqrt(w[n]);
  return b * b.adjoint();
}

DensityMatrix displaced_thermal(Complex z, const ThermalParams& params) {
  if (std::norm(z) >= static_cast<double>(params.dim) / 4.0)
    throw std::domain_error("displaced_thermal: |z|^2 must stay below dim/4");
  return DensityMatrix::trusted(displaced_thermal_block(z, params));
}

double plane_prob_matrix(Complex z0, Complex z, const ThermalParams& params) {
  return trace_product(displaced_thermal_block(z0, params), displaced_thermal_block(z, params)).real();
}

namespace {

double prob_series(Complex z0, Complex z, double t, int nmax, bool printed) {
  const double u = std::norm(z - z0);
  double diag = 0.0, off = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const double l0 = detail::laguerre_recurrence(n, 0.0, u);
    diag += std::pow(t, 2 * n) * l0 * l0;
    for (int np = n + 1; np <= nmax; ++np) {
      if (t == 0.0 || u == 0.0 || (printed && n == 0)) continue;
      const double l = detail::laguerre_recurrence(n, static_cast<double>(np - n), u);
      const double log_ratio =
          printed ? std::log(static_cast<double>(n) / np) : std::lgamma(n + 1.0) - std::lgamma(np + 1.0);
      off += std::exp((n + np) * std::log(t) + log_ratio + (np - n) * std::log(u)) * l * l;
    }
  }
  return (1.0 - t) * (1.0 - t) * std::exp(-u) * (diag + 2.0 * off);
}

}  // namespace

double plane_prob_series(Complex z0, Complex z, double t, int nmax) { return prob_series(z0, z, t, nmax, false); }

double plane_prob_series_printed(Complex z0, Complex z, double t, int nmax) {
  return prob_series(z0, z, t, nmax, true);
}

double diagonal_partial_sum(double u, double t, int nmax) {
  double s = 0.0;
  for (int n = 0; n <= nmax; ++n) {
    const double l = detail::laguerre_recurrence(n, 0.0, u);
    s += std::pow(t, 2 * n) * l * l;
  }
  return s;
}

double diagonal_sum_closed(double u, double t) {
  const double d = 1.0 - t * t;
  const double x = 2.0 * t * u / d;
  // e^{-2ut^2/d} I_0(x) = e^{x - 2ut^2/d} * (e^{-x} I_0(x)); the exponent is
  // 2tu(1-t)/d >= 0.
  return std::exp(x - 2.0 * u * t * t / d) * bessel_i_scaled(0.0, x) / d;
}

double diagonal_sum_printed(double u, double t) {
  const double d = 1.0 - t * t;
  const double x = 2.0 * t * u / d;
  return std::exp(x - u * t * t / d) * bessel_i_scaled(0.0, x) / d;
}

double hs_distance_formula(double purity, double overlap) {
  return std::sqrt(2.0) * std::sqrt(std::max(0.0, purity - overlap));
}

double hs_distance_printed(double t, double overlap) {
  const double pur = (1.0 - t) / (1.0 + t);
  return std::sqrt(2.0) * std::sqrt(std::max(0.0, pur * pur - overlap));
}

double plane_radius(const ThermalParams& params, Index block, double tol) {
  params.validate();
  const Index b = default_block(params, block);
  int below = 0;
  for (int u = 1; u <= 196; ++u) {
    const OperatorMatrix rho = displaced_thermal_block(Complex(std::sqrt(static_cast<double>(u)), 0.0), params);
    double worst = 0.0;
    for (Index m = 0; m < b; ++m) worst = std::max(worst, rho(m, m).real());
    if (worst * (1.0 + u) * (1.0 + u) < tol) {
      if (++below == 3) return std::sqrt(static_cast<double>(u));
    } else {
      below = 0;
    }
  }
  return 14.0;
}

PlaneGrid make_plane_grid(const ThermalParams& params, const GridOptions& opts) {
  params.validate();
  PlaneGrid g;
  const Index block = default_block(params, opts.block);
  g.radius = opts.radius > 0.0 ? opts.radius : plane_radius(params, block, opts.tail_tolerance);
  const int nr = opts.radial_nodes > 0 ? opts.radial_nodes : static_cast<int>(params.dim) + 72;
  const bool gl = opts.angular_kind == RuleKind::GaussLegendre;
  const int na = opts.angular_nodes > 0 ? opts.angular_nodes
                                        : static_cast<int>(gl ? 4 * params.dim + 48 : 2 * params.dim + 48);
  RuleParams rp;
  rp.lower = 0.0;
  rp.upper = g.radius;
  const QuadratureRule radial = make_rule(RuleKind::GaussLegendre, nr, rp);
  for (std::size_t k = 0; k < radial.size(); ++k) {
    const double r = radial.nodes[k][0];
    g.radii.push_back(r);
    g.radial_weights.push_back(radial.weights[k] * r / kPi);
  }
  RuleParams ap;
  ap.lower = opts.angular_start;
  ap.upper = opts.angular_start + 2.0 * kPi;
  const QuadratureRule angular = make_rule(gl ? RuleKind::GaussLegendre : RuleKind::PeriodicTrapezoid, na, ap);
  for (std::size_t l = 0; l < angular.size(); ++l) {
    g.angles.push_back(angular.nodes[l][0]);
    g.angular_weights.push_back(angular.weights[l]);
  }
  return g;
}

DensityFamily plane_family(const ThermalParams& params, const GridOptions& opts) {
  PlaneGrid grid = make_plane_grid(params, opts);
  DensityFamily fam;
  fam.hilbert_dim = params.dim;
  fam.label = "plane";
  fam.tolerance = 1e-6;
  fam.rule = rule_from_grid(grid);
  auto cache = build_cache(params, std::move(grid));
  fam.weighted_sum = [cache](const ScalarField& f) { return cached_sum(*cache, f); };
  fam.evaluate = [params](const Point& x) { return displaced_thermal_block(to_z(x), params); };
  return fam;
}

double angle_of(const Point& x, double start) {
  double g = std::atan2(x[1], x[0]) - start;
  g = std::fmod(g, 2.0 * kPi);
  if (g < 0.0) g += 2.0 * kPi;
  return start + g;
}

double phase_coefficient_printed(Index m, Index mp, double t) {
  if (m > mp) std::swap(m, mp);
  if (m == 0) return std::numeric_limits<double>::quiet_NaN();
  const double half_sum = 0.5 * static_cast<double>(m + mp);
  const double log_pref = std::lgamma(half_sum + 1.0) - 0.5 * std::log(static_cast<double>(m) * mp);
  const double f = hyp2f1_terminating(static_cast<int>(m), 0.5 * static_cast<double>(mp - m), -half_sum, t);
  return (1.0 - t) * std::exp(log_pref) * std::pow(1.0 - t, 0.5 * static_cast<double>(mp - m)) * f;
}

double phase_coefficient_reconciled(Index m, Index mp, double t) {
  if (m > mp) std::swap(m, mp);
  const double half_sum = 0.5 * static_cast<double>(m + mp);
  const double log_pref = std::lgamma(half_sum + 1.0) - 0.5 * (log_factorial(m) + log_factorial(mp));
  const double f = hyp2f1_terminating(static_cast<int>(m), 0.5 * static_cast<double>(mp - m), -half_sum, t);
  return std::exp(log_pref) * std::pow(1.0 - t, 0.5 * static_cast<double>(mp - m)) * f;
}

namespace {

OperatorMatrix phase_from_coefficients(const ThermalParams& params, double (*coef)(Index, Index, double)) {
  params.validate();
  OperatorMatrix a = kPi * OperatorMatrix::Identity(params.dim, params.dim);
  for (Index m = 0; m < params.dim; ++m)
    for (Index mp = 0; mp < params.dim; ++mp)
      if (m != mp) a(m, mp) = Complex(0.0, coef(m, mp, params.t) / static_cast<double>(mp - m));
  return a;
}

}  // namespace

OperatorMatrix phase_operator_route_a(const ThermalParams& params) {
  return phase_from_coefficients(params, phase_coefficient_printed);
}

OperatorMatrix phase_operator_reconciled(const ThermalParams& params) {
  return phase_from_coefficients(params, phase_coefficient_reconciled);
}

OperatorMatrix phase_operator_route_b(const ThermalParams& params, double start) {
  GridOptions opts;
  opts.angular_kind = RuleKind::GaussLegendre;
  opts.angular_start = start;
  opts.block = params.dim;
  const DensityFamily fam = plane_family(params, opts);
  return quantize(fam, [start](const Point& x) { return Complex(angle_of(x, start) - start); });
}

GroupOrbitSpec plane_orbit(const ThermalParams& params, const GridOptions& opts) {
  GroupOrbitSpec spec;
  const Index dim = params.dim;
  spec.representation = [dim](const Point& g) { return displacement(to_z(g), dim); };
  spec.fiducial = thermal_state(params);
  spec.probe = spec.fiducial;
  spec.group_rule = rule_from_grid(make_plane_grid(params, opts));
  spec.compose = [](const Point& a, const Point& b) { return Point{a[0] + b[0], a[1] + b[1]}; };
  spec.inverse = [](const Point& g) { return Point{-g[0], -g[1]}; };
  spec.orbit = [params](const Point& g) { return displaced_thermal_block(to_z(g), params); };
  return spec;
}

CovarianceReport covariance_suite(const ThermalParams& params, Complex z0, double theta, Index block) {
  const Index b = default_block(params, block);
  GridOptions opts;
  opts.block = b;
  const DensityFamily fam = plane_family(params, opts);
  const FockSpace fock(params.dim);
  const Complex bump_center(0.3, 0.2);

  const std::vector<ScalarField> tests = {
      [bump_center](const Point& x) { return Complex(std::exp(-std::norm(to_z(x) - bump_center))); },
      [](const Point& x) {
        const double r = std::hypot(x[0], x[1]);
        return Complex(r == 0.0 ? 0.0 : x[0] / r);
      },
      [](const Point& x) {
        const double r = std::hypot(x[0], x[1]);
        return Complex(r == 0.0 ? 0.0 : x[1] / r);
      },
      [](const Point& x) { return Complex(x[0] * x[0] + x[1] * x[1]); },
      [bump_center](const Point& x) { return to_z(x) * std::exp(-0.25 * std::norm(to_z(x) - bump_center)); },
  };

  // A_{f(z - z0)} is integrated as f(w) rho_T(w + z0) on a polar grid centred
  // at w = 0, which resolves test functions that are singular at the origin.
  GridOptions shifted = opts;
  shifted.radius = make_plane_grid(params, opts).radius + std::abs(z0);
  const PlaneGrid sg = make_plane_grid(params, shifted);
  std::vector<OperatorMatrix> translated(tests.size(), OperatorMatrix::Zero(params.dim, params.dim));
  for (std::size_t k = 0; k < sg.radii.size(); ++k) {
    for (std::size_t l = 0; l < sg.angles.size(); ++l) {
      const Complex w = std::polar(sg.radii[k], sg.angles[l]);
      const double weight = sg.radial_weights[k] * sg.angular_weights[l];
      const OperatorMatrix rho = displaced_thermal_block(w + z0, params);
      for (std::size_t i = 0; i < tests.size(); ++i) translated[i] += (weight * tests[i](Point{w.real(), w.imag()})) * rho;
    }
  }
  const OperatorMatrix d = displacement(z0, params.dim);

  CovarianceReport rep;
  const OperatorMatrix u = fock.rotation(theta);
  const Complex rot = std::polar(1.0, -theta);
  for (std::size_t i = 0; i < tests.size(); ++i) {
    const ScalarField& f = tests[i];
    const OperatorMatrix af = quantize(fam, f);
    rep.translation = std::max(rep.translation, max_block_diff(d * af * d.adjoint(), translated[i], b));
    const OperatorMatrix rotated = quantize(fam, [&](const Point& x) {
      const Complex w = rot * to_z(x);
      return f(Point{w.real(), w.imag()});
    });
    rep.rotation = std::max(rep.rotation, max_block_diff(u * af * u.adjoint(), rotated, b));
    const OperatorMatrix reflected = quantize(fam, [&](const Point& x) { return f(Point{-x[0], -x[1]}); });
    rep.parity = std::max(rep.parity, max_block_diff(fock.parity * af * fock.parity, reflected, b));
    const OperatorMatrix conj = quantize(fam, [&](const Point& x) { return std::conj(f(x)); });
    rep.conjugation = std::max(rep.conjugation, max_block_diff(conj, af.adjoint(), b));
  }
  return rep;
}

}  // namespace povmq::plane
