#include "povmq/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "povmq/circle.hpp"
#include "povmq/finite.hpp"
#include "povmq/halfplane.hpp"
#include "povmq/plane.hpp"
#include "povmq/sphere.hpp"

namespace povmq {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kI{0.0, 1.0};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double relative_error(double computed, double expected) {
  if (expected == 0.0) return std::abs(computed);
  return std::abs(computed - expected) / std::abs(expected);
}

struct RandomField {
  Complex c0;
  std::array<Complex, 3> c;
  std::array<Point, 3> a;
  std::array<double, 3> b;

  Complex operator()(const Point& x) const {
    Complex v = c0;
    for (int k = 0; k < 3; ++k) v += c[k] * std::cos(a[k][0] * x[0] + a[k][1] * x[1] + b[k]);
    return v;
  }
  double sup_bound() const {
    double s = std::abs(c0);
    for (const auto& ck : c) s += std::abs(ck);
    return s;
  }
};

Complex random_complex(std::mt19937_64& rng) { return {uniform(rng, -1.0, 1.0), uniform(rng, -1.0, 1.0)}; }

RandomField random_field(std::mt19937_64& rng) {
  RandomField f;
  f.c0 = random_complex(rng);
  for (int k = 0; k < 3; ++k) {
    f.c[k] = random_complex(rng);
    f.a[k] = {uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0)};
    f.b[k] = uniform(rng, 0.0, 2.0 * kPi);
  }
  return f;
}

// Random density supported on the leading `support` basis vectors.
OperatorMatrix random_density(Index dim, Index support, std::mt19937_64& rng) {
  OperatorMatrix g = OperatorMatrix::Zero(dim, support);
  for (Index i = 0; i < support; ++i)
    for (Index j = 0; j < support; ++j) g(i, j) = random_complex(rng);
  OperatorMatrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

// Density family over the finite set {0, ..., N-1} with weights nu_i.
DensityFamily finite_family(const finite::RandomFamily& rf) {
  DensityFamily fam;
  fam.hilbert_dim = rf.family.front().dim();
  auto mats = std::make_shared<std::vector<OperatorMatrix>>();
  for (const auto& r : rf.family) mats->push_back(r.matrix());
  fam.evaluate = [mats](const Point& x) { return (*mats)[static_cast<std::size_t>(std::lround(x[0]))]; };
  fam.rule.kind = RuleKind::Custom;
  for (std::size_t i = 0; i < rf.family.size(); ++i) {
    fam.rule.nodes.push_back({static_cast<double>(i), 0.0});
    fam.rule.weights.push_back(rf.measure.weights[i]);
  }
  fam.label = "finite";
  fam.tolerance = 1e-10;
  return fam;
}

// Normalized Legendre polynomials on [-1, 1] with dx.
CsBasis legendre_basis(int size) {
  CsBasis basis;
  basis.size = size;
  basis.phi = [](int n, const Point& x) {
    double p0 = 1.0, p1 = x[0];
    double p = n == 0 ? p0 : p1;
    for (int k = 1; k < n; ++k) {
      p = ((2.0 * k + 1.0) * x[0] * p1 - k * p0) / (k + 1.0);
      p0 = p1;
      p1 = p;
    }
    return Complex(std::sqrt((2.0 * n + 1.0) / 2.0) * p, 0.0);
  };
  basis.base_rule = make_rule(RuleKind::GaussLegendre, 2 * size + 4, {.lower = -1.0, .upper = 1.0});
  return basis;
}

void add_properties(SuiteReport& rep, const SuiteConfig& cfg, const std::string& name, const DensityFamily& fam,
                    PropertyOptions opts, double identity_tol) {
  std::uint64_t salt = 0;
  for (char ch : name) salt = salt * 131 + static_cast<unsigned char>(ch);
  opts.seed = cfg.seed ^ salt;
  const PropertyReport p = check_properties(fam, opts);
  const std::string prefix = "properties." + name + ".";
  const std::string anchor = "Eq. (measexpect)";
  rep.defect(prefix + "linearity", "Eq. (povmquantf)", p.linearity, cfg.tolerance(1e-10));
  rep.defect(prefix + "identity", "Eq. (residrho)", p.identity, cfg.tolerance(identity_tol));
  rep.defect(prefix + "row_normalization", "Eq. (probdist)", p.row_normalization, cfg.tolerance(identity_tol));
  rep.defect(prefix + "contraction_excess", "Eq. (lowsymbpovm)", p.contraction_excess, cfg.tolerance(1e-10));
  rep.defect(prefix + "measurement", anchor, p.measurement, cfg.tolerance(1e-10));
  rep.scalar(prefix + "draws", "Eq. (measexpect)", p.draws, opts.draws, 0.0);
}

}  // namespace

void SuiteConfig::validate() const {
  if (r && !(*r >= 0.0 && *r <= 1.0)) throw std::invalid_argument("--r must lie in [0, 1]");
  if (t && !(*t >= 0.0 && *t < 1.0)) throw std::invalid_argument("--t must lie in [0, 1)");
  if (alpha && !(*alpha > 0.0 && std::isfinite(*alpha))) throw std::invalid_argument("--alpha must be positive");
  if (dim && (*dim < 8 || *dim > 256)) throw std::invalid_argument("--dim must lie in [8, 256]");
  if (grid && (*grid < 1 || *grid > 4096)) throw std::invalid_argument("--grid must lie in [1, 4096]");
  if (tol && !(*tol > 0.0 && std::isfinite(*tol))) throw std::invalid_argument("--tol must be positive");
}

PropertyReport check_properties(const DensityFamily& fam, const PropertyOptions& opts) {
  if (!opts.sample) throw std::invalid_argument("check_properties: no sampler");
  if (opts.draws < 1) throw std::invalid_argument("check_properties: draws must be positive");
  std::mt19937_64 rng(opts.seed);
  const Index dim = fam.hilbert_dim;
  const Index block = opts.block > 0 ? std::min(opts.block, dim) : dim;

  PropertyReport rep;
  rep.draws = opts.draws;
  const OperatorMatrix a1 = quantize(fam, [](const Point&) { return Complex(1.0); });
  rep.identity = block_max_abs(a1 - OperatorMatrix::Identity(dim, dim), block);

  // Per-node overlaps tr(rho_m rho(x_k)) for the integral route.
  std::vector<OperatorMatrix> states;
  std::vector<std::vector<Complex>> overlaps(opts.measurement_states);
  for (int m = 0; m < opts.measurement_states; ++m) states.push_back(random_density(dim, block, rng));
  for (std::size_t k = 0; k < fam.rule.size(); ++k) {
    const OperatorMatrix rho = fam.evaluate(fam.rule.nodes[k]);
    for (int m = 0; m < opts.measurement_states; ++m) overlaps[m].push_back(trace_product(states[m], rho));
  }

  for (int d = 0; d < opts.draws; ++d) {
    const RandomField f = random_field(rng), g = random_field(rng);
    const Complex a = random_complex(rng), b = random_complex(rng);
    const OperatorMatrix af = quantize(fam, f);
    const OperatorMatrix ag = quantize(fam, g);
    const OperatorMatrix afg = quantize(fam, [&](const Point& x) { return a * f(x) + b * g(x); });
    rep.linearity = std::max(rep.linearity, max_abs(afg - a * af - b * ag));

    const Point x0 = opts.sample(rng);
    const double row = fam.weighted_sum ? trace_product(fam.evaluate(x0), a1).real() : kernel_row_integral(fam, x0);
    rep.row_normalization = std::max(rep.row_normalization, std::abs(row - 1.0));

    const Point x = opts.sample(rng);
    const double lower = std::abs(lower_symbol(fam, af, x));
    rep.contraction_excess = std::max(rep.contraction_excess, std::max(0.0, lower - f.sup_bound()));

    const int m = d % std::max(1, opts.measurement_states);
    if (opts.measurement_states > 0) {
      Complex integral = 0.0;
      for (std::size_t k = 0; k < fam.rule.size(); ++k)
        integral += fam.rule.weights[k] * f(fam.rule.nodes[k]) * overlaps[m][k];
      rep.measurement = std::max(rep.measurement, std::abs(trace_product(states[m], af) - integral));
    }
  }
  return rep;
}

SuiteReport circle_suite(const SuiteConfig& cfg) {
  const double r = cfg.r.value_or(0.7);
  const double phi = 0.3;
  const int nodes = cfg.grid.value_or(8);
  SuiteReport rep;
  rep.suite = "circle";
  rep.params = {{"r", r}, {"phi", phi}, {"nodes", nodes}, {"seed", cfg.seed}};

  for (double rr : {0.0, 0.3, 0.7, 1.0}) {
    const auto res = check_resolution(circle::circle_family(rr, phi, nodes));
    rep.defect("resolution.r=" + std::to_string(rr).substr(0, 3), "Eq. (margomegamain)", res.defect,
               cfg.tolerance(1e-13));
  }
  rep.defect("resolution", "Eq. (margomegamain)", check_resolution(circle::circle_family(r, phi, nodes)).defect,
             cfg.tolerance(1e-13));

  // Angle operator.
  const auto afam = circle::angle_family(r, phi);
  const OperatorMatrix angle = quantize(afam, [](const Point& x) { return Complex(circle::angle_function(x[0])); });
  const auto eig = eig_hermitian(angle);
  rep.vector("angle.eigenvalues", "§10 eigenvalues pi +- r/2", {eig.values(0), eig.values(1)},
             {kPi - r / 2.0, kPi + r / 2.0}, cfg.tolerance(1e-10));
  if (r > 0.0) {
    StateVector plus(2), minus(2);
    plus << std::cos(phi + kPi / 4.0), std::sin(phi + kPi / 4.0);
    minus << std::cos(phi - kPi / 4.0), std::sin(phi - kPi / 4.0);
    rep.vector("angle.eigenvector_overlaps", "§10 eigenvectors |phi -+ pi/4>",
               {std::abs(plus.dot(eig.vectors.col(0))), std::abs(minus.dot(eig.vectors.col(1)))}, {1.0, 1.0},
               cfg.tolerance(1e-10));
  }
  rep.defect("angle.closed_form", "§10 angle operator", max_abs(angle - circle::angle_operator_closed(r, phi)),
             cfg.tolerance(1e-10));
  const double th = 1.1;
  const double lower = lower_symbol(afam, angle, {th, 0.0}).real();
  rep.scalar("angle.lower_symbol", "Eq. (lowsagluc) corrected", lower, kPi - r * r / 2.0 * std::sin(2.0 * th),
             cfg.tolerance(1e-10));
  rep.scalar("angle.lower_symbol_printed", "Eq. (lowsagluc)", lower, kPi - r * r * std::sin(th), cfg.tolerance(1e-10));

  // Fourier route for a smooth function.
  const ScalarField smooth = [](const Point& x) { return Complex(std::exp(std::cos(x[0])), std::sin(2.0 * x[0])); };
  const auto fd = circle::circle_fourier(smooth, phi, make_rule(RuleKind::PeriodicTrapezoid, 64));
  rep.defect("quantize.fourier_route", "§10 quantization of f(theta)",
             max_abs(circle::circle_quantize_fourier(fd, r) - quantize(circle::circle_family(r, phi, 64), smooth)),
             cfg.tolerance(1e-12));

  // Algebra of real densities over random draws.
  std::mt19937_64 rng(cfg.seed);
  double prod = 0, comm = 0, comm_printed = 0, anti = 0, anti_printed = 0;
  for (int d = 0; d < 100; ++d) {
    const circle::CircleDensityParams p1{uniform(rng, 0, 1), uniform(rng, 0, kPi), uniform(rng, 0, 2 * kPi)};
    const circle::CircleDensityParams p2{uniform(rng, 0, 1), uniform(rng, 0, kPi), uniform(rng, 0, 2 * kPi)};
    const auto alg = circle::product_and_algebra(p1, p2);
    prod = std::max(prod, max_abs(alg.product - alg.product_formula));
    comm = std::max(comm, max_abs(alg.commutator - alg.commutator_formula));
    comm_printed = std::max(comm_printed, max_abs(alg.commutator - alg.commutator_printed));
    anti = std::max(anti, max_abs(alg.anticommutator - alg.anticommutator_formula));
    anti_printed = std::max(anti_printed, max_abs(alg.anticommutator - alg.anticommutator_printed));
  }
  rep.defect("algebra.product", "Eq. (multrho)", prod, cfg.tolerance(1e-13));
  rep.defect("algebra.commutator_printed", "Eq. (algrho)", comm_printed, cfg.tolerance(1e-13));
  rep.defect("algebra.commutator_corrected", "Eq. (algrho) corrected", comm, cfg.tolerance(1e-13));
  rep.defect("algebra.anticommutator_printed", "Eq. (algrho)", anti_printed, cfg.tolerance(1e-13));
  rep.defect("algebra.anticommutator_corrected", "Eq. (algrho) corrected", anti, cfg.tolerance(1e-13));

  const char* marginal_anchor[4] = {"Eq. (margtheta)", "Eq. (margomega)", "Eq. (margr)", "Eq. (rtheta)"};
  const auto margs = circle::marginal_integrals(r);
  for (int k = 0; k < 4; ++k)
    rep.defect("marginal." + margs[k].name, marginal_anchor[k], margs[k].defect, cfg.tolerance(1e-12));

  // Kernels and distances.
  const auto fam = circle::circle_family(r, phi, nodes);
  double pk = 0, hs = 0, ps = 0;
  for (int d = 0; d < 10; ++d) {
    const double t0 = uniform(rng, 0, 2 * kPi), t1 = uniform(rng, 0, 2 * kPi);
    const double delta = t1 - t0;
    pk = std::max(pk, std::abs(prob_kernel(fam, {t0, 0}, {t1, 0}) - 0.5 * (1.0 + r * r * std::cos(2.0 * delta))));
    const auto r0 = circle::rho_circle(r, phi, t0), r1 = circle::rho_circle(r, phi, t1);
    hs = std::max(hs, std::abs(hs_distance(r0, r1) - std::sqrt(2.0) * r * std::abs(std::sin(delta))));
    const double ratio = (1.0 + r * r * std::cos(2.0 * delta)) / (1.0 + r * r);
    if (ratio > 1e-6) ps = std::max(ps, std::abs(pseudo_distance(r0, r1) - std::sqrt(std::max(0.0, -std::log(ratio)))));
  }
  rep.defect("kernel.probability", "Eq. (probdistcirc)", pk, cfg.tolerance(1e-12));
  rep.defect("distance.hilbert_schmidt", "Eq. (distHSS1)", hs, cfg.tolerance(1e-12));
  rep.defect("distance.pseudo", "Eq. (psdistS1)", ps, cfg.tolerance(1e-12));

  const double sep = 1e-3;
  const double small = pseudo_distance(circle::rho_circle(r, phi, 0.4), circle::rho_circle(r, phi, 0.4 + sep)) / sep;
  rep.scalar("distance.small_separation_printed", "Eq. (psdistSsm)",
             relative_error(small, 2.0 * r / std::sqrt(1.0 + r * r)), 0.0, cfg.tolerance(0.01));
  rep.scalar("distance.small_separation_corrected", "Eq. (psdistSsm) corrected",
             relative_error(small, std::sqrt(2.0) * r / std::sqrt(1.0 + r * r)), 0.0, cfg.tolerance(0.01));

  // (a, b) parametrization round trip.
  const auto ab = circle::to_ab(r, phi);
  const auto dec = circle::from_ab(ab[0], ab[1]);
  rep.vector("parametrization.ab_round_trip", "Eq. (spedec2)", {dec.params.r, dec.params.phi}, {r, r > 0 ? phi : 0.0},
             cfg.tolerance(1e-12));
  return rep;
}

SuiteReport sphere_suite(const SuiteConfig& cfg) {
  using namespace sphere;
  const double r = cfg.r.value_or(0.7);
  const int grid = cfg.grid.value_or(8);
  SuiteReport rep;
  rep.suite = "sphere";
  rep.params = {{"r", r}, {"n_cos", grid}, {"n_phi", grid}, {"seed", cfg.seed}};

  for (double rr : {0.0, 0.5, 1.0}) {
    const auto res = check_resolution(sphere_family(rr, grid, grid));
    rep.defect("resolution.r=" + std::to_string(rr).substr(0, 3), "Eq. (S2resun)", res.defect, cfg.tolerance(1e-12));
  }
  rep.defect("resolution", "Eq. (S2resun)", check_resolution(sphere_family(r, grid, grid)).defect, cfg.tolerance(1e-12));

  const OperatorMatrix aq = quantize(sphere_family_gl(r), q_function);
  const OperatorMatrix ap = quantize(sphere_family(r), p_function);
  rep.defect("quantize.q", "Eq. (qtfrhorS2 matrix)", max_abs(aq - a_q_closed(r)), cfg.tolerance(1e-10));
  rep.defect("quantize.p", "Eq. (ptfrhorS2)", max_abs(ap - a_p_closed(r)), cfg.tolerance(1e-10));
  rep.defect("quantize.commutator", "Eq. (crqpS2)", max_abs(commutator(aq, ap) - commutator_closed(r)),
             cfg.tolerance(1e-10));
  const auto fq = sphere_fourier(q_function);
  rep.defect("quantize.q_fourier_route", "Eq. (qtfrhorS2 matrix)", max_abs(sphere_quantize_fourier(fq, r) - a_q_closed(r)),
             cfg.tolerance(1e-10));

  const double th = 1.0, ph = 2.0;
  const auto fam = sphere_family(r, grid, grid);
  const double lq = lower_symbol(fam, aq, {std::cos(th), ph}).real();
  const double lp = lower_symbol(fam, ap, {std::cos(th), ph}).real();
  rep.scalar("lower_symbol.q", "Eq. (lowsqS2)", lq, lower_q_closed(r, th, ph), cfg.tolerance(1e-10));
  rep.scalar("lower_symbol.p_printed", "Eq. (lowspS2)", lp, kPi * r * r / 3.0 * std::cos(th), cfg.tolerance(1e-10));
  rep.scalar("lower_symbol.p_corrected", "Eq. (lowspS2) corrected", lp, lower_p_closed(r, th), cfg.tolerance(1e-10));

  std::mt19937_64 rng(cfg.seed);
  double pk = 0, hs = 0, ps = 0, cs = 0;
  const auto fam1 = sphere_family(1.0, grid, grid);
  for (int d = 0; d < 10; ++d) {
    const double t0 = uniform(rng, 0, kPi), p0 = uniform(rng, 0, 2 * kPi);
    const double t1 = uniform(rng, 0, kPi), p1 = uniform(rng, 0, 2 * kPi);
    const double dotp = dot(unit_vector(t0, p0), unit_vector(t1, p1));
    pk = std::max(pk, std::abs(prob_kernel(fam, {std::cos(t0), p0}, {std::cos(t1), p1}) - 0.5 * (1.0 + r * r * dotp)));
    const auto r0 = rho_sphere(r, t0, p0), r1 = rho_sphere(r, t1, p1);
    const double chord = std::sqrt(std::max(0.0, 2.0 - 2.0 * dotp));
    hs = std::max(hs, std::abs(hs_distance(r0, r1) - r / std::sqrt(2.0) * chord));
    const double ratio = (1.0 + r * r * dotp) / (1.0 + r * r);
    if (ratio > 1e-6) ps = std::max(ps, std::abs(pseudo_distance(r0, r1) - std::sqrt(std::max(0.0, -std::log(ratio)))));
    const Complex ov = spin_coherent_state(t0, p0).dot(spin_coherent_state(t1, p1));
    cs = std::max(cs, std::abs(prob_kernel(fam1, {std::cos(t0), p0}, {std::cos(t1), p1}) - std::norm(ov)));
  }
  rep.defect("kernel.probability", "Eq. (probdisph)", pk, cfg.tolerance(1e-12));
  rep.defect("kernel.coherent_state_overlap", "Eq. (spinstate)", cs, cfg.tolerance(1e-12));
  rep.defect("distance.hilbert_schmidt", "Eq. (distHSS2)", hs, cfg.tolerance(1e-12));
  rep.defect("distance.pseudo", "Eq. (psdistS2)", ps, cfg.tolerance(1e-12));

  const double sep = 1e-3;
  const double t0 = 1.2, p0 = 0.5, dt = 0.6 * sep, dp = 0.8 * sep;
  const double arc = std::sqrt(dt * dt + dp * dp * std::pow(std::sin(t0 + dt / 2.0), 2));
  const double small = pseudo_distance(rho_sphere(r, t0, p0), rho_sphere(r, t0 + dt, p0 + dp)) / arc;
  rep.scalar("distance.small_separation_printed", "Eq. (psdistS2sm)", relative_error(small, r / std::sqrt(1.0 + r * r)),
             0.0, cfg.tolerance(0.01));
  rep.scalar("distance.small_separation_corrected", "Eq. (psdistS2sm) corrected",
             relative_error(small, r / std::sqrt(2.0 * (1.0 + r * r))), 0.0, cfg.tolerance(0.01));

  // Quaternion rotations and transport of the north-pole density.
  double rot = 0, hom = 0, tr = 0;
  for (int d = 0; d < 20; ++d) {
    const Vec3 n = unit_vector(uniform(rng, 0, kPi), uniform(rng, 0, 2 * kPi));
    const Vec3 v{uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)};
    const double w = uniform(rng, 0, 2 * kPi);
    const Vec3 a = rotate_rodrigues(w, n, v), b = rotate_quaternion(w, n, v);
    for (int k = 0; k < 3; ++k) rot = std::max(rot, std::abs(a[k] - b[k]));
    const Quaternion q1{uniform(rng, -1, 1), {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)}};
    const Quaternion q2{uniform(rng, -1, 1), {uniform(rng, -1, 1), uniform(rng, -1, 1), uniform(rng, -1, 1)}};
    hom = std::max(hom, max_abs(to_matrix(q1 * q2) - to_matrix(q1) * to_matrix(q2)));
    const double th1 = uniform(rng, 0, kPi), ph1 = uniform(rng, 0, 2 * kPi);
    tr = std::max(tr, max_abs(rho_transport({0, 0, r}, th1, ph1) - rho_sphere(r, th1, ph1).matrix()));
  }
  rep.defect("quaternion.rotation_two_routes", "Eq. (rotnot1)", rot, cfg.tolerance(1e-13));
  rep.defect("quaternion.matrix_homomorphism", "Appendix B quaternion field", hom, cfg.tolerance(1e-13));
  rep.defect("transport.north_pole", "Eq. (rotspecmain)", tr, cfg.tolerance(1e-13));

  const Vec3 d{0.3, 0.4, 0.2};
  const OperatorMatrix ti = transport_integral(d);
  const Complex off = ti(0, 1);
  rep.vector("transport.general_d_offdiagonal", "Eq. (resmatS2)", {off.real(), off.imag()}, {0.0, 0.0},
             cfg.tolerance(1e-10));
  rep.vector("transport.general_d_offdiagonal_spec", "Eq. (resmatS2) general d", {off.real(), off.imag()},
             {d[0], d[1]}, cfg.tolerance(1e-10));
  rep.vector("transport.general_d_offdiagonal_corrected", "Eq. (resmatS2) corrected", {off.real(), off.imag()},
             {d[0] / 2.0, d[1] / 2.0}, cfg.tolerance(1e-10));
  rep.scalar("transport.general_d_diagonal", "Eq. (resmatS2)", ti(0, 0).real(), ti(1, 1).real(), cfg.tolerance(1e-10));
  return rep;
}

SuiteReport plane_suite(const SuiteConfig& cfg) {
  using namespace plane;
  const ThermalParams tp{cfg.t.value_or(0.3), cfg.dim.value_or(48)};
  tp.validate();
  GridOptions gopts;
  if (cfg.grid) gopts.radial_nodes = *cfg.grid;
  const Index b = tp.dim / 2;
  SuiteReport rep;
  rep.suite = "plane";
  rep.params = {{"t", tp.t}, {"dim", tp.dim}, {"block", b}, {"radial_nodes", gopts.radial_nodes}, {"phase_dim", 32}};

  const auto fam = plane_family(tp, gopts);
  rep.defect("resolution", "Eq. (residrhoTz)", check_resolution(fam, b).defect, cfg.tolerance(1e-10));

  const Complex z0{0.2, 0.1}, z{0.9, -0.5};
  const auto rz = displaced_thermal(Complex(0.4, -0.3), tp);
  rep.scalar("purity", "Eq. (pz0z0)", purity(rz), (1.0 - tp.t) / (1.0 + tp.t), cfg.tolerance(1e-9));
  {
    const auto eig = eig_hermitian(rz.matrix());
    std::vector<double> top, expect;
    for (int n = 0; n < 4; ++n) {
      top.push_back(eig.values(tp.dim - 1 - n));
      expect.push_back((1.0 - tp.t) * std::pow(tp.t, n));
    }
    rep.vector("thermal.spectrum", "Eq. (plboltrho)", top, expect, cfg.tolerance(1e-10));
  }

  const double pm = plane_prob_matrix(z0, z, tp);
  rep.scalar("kernel.series", "Eq. (pz0z)", plane_prob_series(z0, z, tp.t), pm, cfg.tolerance(1e-9));
  rep.scalar("kernel.series_printed", "Eq. (pz0z)", plane_prob_series_printed(z0, z, tp.t), pm, cfg.tolerance(1e-9));
  rep.scalar("kernel.zero_temperature", "Eq. (pz0z) at t = 0", plane_prob_matrix(z0, z, {0.0, tp.dim}),
             std::exp(-std::norm(z - z0)), cfg.tolerance(1e-10));

  const double u = std::norm(z - z0);
  const double partial = diagonal_partial_sum(u, tp.t, 400);
  rep.scalar("bessel_sum.closed", "Eq. (1termsum) corrected", partial, diagonal_sum_closed(u, tp.t), cfg.tolerance(1e-10));
  rep.scalar("bessel_sum.printed", "Eq. (1termsum)", partial, diagonal_sum_printed(u, tp.t), cfg.tolerance(1e-10));

  const double hs = hs_distance(displaced_thermal(z0, tp), displaced_thermal(z, tp));
  rep.scalar("distance.hilbert_schmidt", "Eq. (dhsplane) corrected", hs,
             hs_distance_formula((1.0 - tp.t) / (1.0 + tp.t), pm), cfg.tolerance(1e-8));
  rep.scalar("distance.hilbert_schmidt_printed", "Eq. (dhsplane)", hs, hs_distance_printed(tp.t, pm),
             cfg.tolerance(1e-8));
  {
    const ThermalParams t0p{0.0, tp.dim};
    rep.scalar("distance.pseudo_zero_temperature", "Eq. (psdist1)",
               pseudo_distance(displaced_thermal(z0, t0p), displaced_thermal(z, t0p)), std::abs(z - z0),
               cfg.tolerance(1e-8));
  }

  // Quantization of q, p and the quadratic functions.
  const FockSpace fs(tp.dim);
  const OperatorMatrix id = OperatorMatrix::Identity(tp.dim, tp.dim);
  const double s = tp.s();
  const OperatorMatrix aq = quantize(fam, [](const Point& x) { return Complex(std::sqrt(2.0) * x[0]); });
  const OperatorMatrix ap = quantize(fam, [](const Point& x) { return Complex(std::sqrt(2.0) * x[1]); });
  const OperatorMatrix aq2 = quantize(fam, [](const Point& x) { return Complex(2.0 * x[0] * x[0]); });
  const OperatorMatrix ap2 = quantize(fam, [](const Point& x) { return Complex(2.0 * x[1] * x[1]); });
  const OperatorMatrix az2 = quantize(fam, [](const Point& x) { return Complex(x[0] * x[0] + x[1] * x[1]); });
  rep.defect("quantize.q", "Eq. (AqAp)", block_max_abs(aq - fs.q, b), cfg.tolerance(1e-8));
  rep.defect("quantize.p", "Eq. (AqAp)", block_max_abs(ap - fs.p, b), cfg.tolerance(1e-8));
  rep.defect("quantize.ccr", "Eq. (comqp)", block_max_abs(aq * ap - ap * aq - kI * id, b - 1), cfg.tolerance(1e-8));
  rep.defect("quantize.q_squared", "Eq. (quadraq)", block_max_abs(aq2 - fs.q * fs.q + 0.5 * s * id, b - 2),
             cfg.tolerance(1e-5));
  rep.defect("quantize.p_squared", "Eq. (quadraq)", block_max_abs(ap2 - fs.p * fs.p + 0.5 * s * id, b - 2),
             cfg.tolerance(1e-5));
  rep.defect("quantize.energy", "Eq. (quantosc2)", block_max_abs(az2 - fs.number - 0.5 * (1.0 - s) * id, b - 2),
             cfg.tolerance(1e-5));
  {
    const Complex e0 = az2(0, 0);
    const Complex em = 0.5 * ((aq2 - fs.q * fs.q)(0, 0) + (ap2 - fs.p * fs.p)(0, 0));
    rep.scalar("energy.shift_quadrature", "§12 E0 - Em = 1/2", (e0 - em).real(), 0.5, cfg.tolerance(1e-5));
    std::vector<double> shifts, halves;
    for (double tt : {0.0, 0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double ss = -(1.0 + tt) / (1.0 - tt);
      shifts.push_back((1.0 - ss) / 2.0 - (-ss / 2.0));
      halves.push_back(0.5);
    }
    rep.vector("energy.shift_closed_form", "§12 E0 - Em = 1/2", shifts, halves, cfg.tolerance(1e-15));
  }

  const auto cov = covariance_suite(tp);
  rep.defect("covariance.translation", "Eq. (covtrans)", cov.translation, cfg.tolerance(1e-5));
  rep.defect("covariance.rotation", "Eq. (rotcovAf)", cov.rotation, cfg.tolerance(1e-5));
  rep.defect("covariance.parity", "Eq. (parcov)", cov.parity, cfg.tolerance(1e-5));
  rep.defect("covariance.conjugation", "Eq. (conjcov)", cov.conjugation, cfg.tolerance(1e-5));

  // Phase operator at dim 32: quadrature route B against the printed route A.
  const ThermalParams pp{tp.t, 32};
  const Index pb = 16;
  const OperatorMatrix rb = phase_operator_route_b(pp);
  const OperatorMatrix rb_shift = phase_operator_route_b(pp, 0.7);
  const OperatorMatrix ra = phase_operator_route_a(pp);
  const OperatorMatrix rc = phase_operator_reconciled(pp);
  const OperatorMatrix ut = FockSpace(32).rotation(0.7);
  double diag = 0.0;
  for (Index i = 0; i < pb; ++i) diag = std::max(diag, std::abs(rb(i, i) - kPi));
  rep.defect("phase.route_b_hermitian", "Eq. (aaquanta)", block_max_abs(rb - rb.adjoint(), pb), cfg.tolerance(1e-6));
  rep.defect("phase.route_b_diagonal", "Eq. (aaquanta)", diag, cfg.tolerance(1e-6));
  rep.defect("phase.route_b_covariance", "Eq. (covquantaa)", block_max_abs(ut * rb * ut.adjoint() - rb_shift, pb),
             cfg.tolerance(1e-6));
  rep.defect("phase.reconciled_vs_route_b", "Eq. (Fmm') corrected", block_max_abs(rc - rb, pb), cfg.tolerance(1e-6));
  std::vector<double> a_vals, b_vals;
  const std::array<std::pair<Index, Index>, 5> entries{{{0, 1}, {1, 2}, {0, 2}, {2, 3}, {1, 3}}};
  for (const auto& [m, mp] : entries) {
    a_vals.push_back(ra(m, mp).imag());
    b_vals.push_back(rb(m, mp).imag());
  }
  rep.vector("phase.route_a_vs_route_b", "Eq. (Fmm')", a_vals, b_vals, cfg.tolerance(1e-6));
  return rep;
}

SuiteReport halfplane_suite(const SuiteConfig& cfg) {
  using namespace halfplane;
  AffineParams params;
  params.alpha = cfg.alpha.value_or(1.0);
  params.t = cfg.t.value_or(0.25);
  if (cfg.dim) params.dim = *cfg.dim;
  params.validate();
  AffineGridOptions gopts;
  if (cfg.grid) gopts.u_nodes = *cfg.grid;
  const double a = params.alpha, t = params.t;
  SuiteReport rep;
  rep.suite = "halfplane";
  rep.params = {{"alpha", a}, {"t", t}, {"dim", params.dim}, {"radial_nodes", params.radial_nodes},
                {"u_nodes", gopts.u_nodes}, {"block", 4}};

  rep.defect("basis.gram", "Eq. (LagOB)", gram_defect(params, 8), cfg.tolerance(1e-10));
  {
    const auto rule = make_rule(RuleKind::GaussLaguerre, 16, {.alpha = a - 1.0});
    const double inv = integrate(rule, [&](const Point& x) {
      const double e0 = laguerre_basis(0, a, x[0]);
      return e0 * e0 * std::exp(x[0]) * std::pow(x[0], 1.0 - a);
    });
    rep.scalar("basis.inverse_moment", "Eq. (croexpl) inner integral", inv, 1.0 / a, cfg.tolerance(1e-12));
  }

  // Unitarity and the group law on e_0, by direct integration in x.
  {
    const RadialFunction e0 = [a](double x) { return Complex(laguerre_basis(0, a, x)); };
    const auto u = affine_action(2.0, 0.7, e0);
    const double c = 1.7;
    const auto rule = make_rule(RuleKind::GaussLaguerre, 100, {.alpha = a});
    const double norm2 = c * integrate(rule, [&](const Point& y) {
      const double x = c * y[0];
      return std::norm(u(x)) / (std::pow(y[0], a) * std::exp(-y[0]));
    });
    rep.scalar("action.unitarity", "Eq. (affrep+)", std::sqrt(norm2), 1.0, cfg.tolerance(1e-10));
    const Point g{2.0, 1.0}, g0{0.5, -1.0};
    const Point gg = affine_compose(g, g0);
    const auto lhs = affine_action(g[0], g[1], affine_action(g0[0], g0[1], e0));
    const auto rhs = affine_action(gg[0], gg[1], e0);
    double law = 0.0;
    for (double x : {0.1, 0.5, 1.0, 2.0, 4.0, 7.5}) law = std::max(law, std::abs(lhs(x) - rhs(x)));
    rep.defect("action.group_law", "§13 group law", law, cfg.tolerance(1e-12));
  }

  if (t > 0.0) {
    std::vector<double> ratio, ratio_printed, expect;
    const double x = 0.7;
    for (int n = 0; n <= 4; ++n) {
      const auto en = [&](double y) { return laguerre_basis(n, a, y); };
      ratio.push_back(kernel_apply(x, en, params) / en(x));
      ratio_printed.push_back(kernel_apply(x, en, params, true) / en(x));
      expect.push_back((1.0 - t) * std::pow(t, n));
    }
    rep.vector("kernel.eigen_relation", "Eq. (intkerLag) corrected", ratio, expect, cfg.tolerance(1e-8));
    rep.vector("kernel.eigen_relation_printed", "Eq. (intkerLag)", ratio_printed, expect, cfg.tolerance(1e-8));
    rep.defect("kernel.symmetry", "Eq. (intkerLag)",
               std::abs(thermal_kernel(0.3, 1.9, params) - thermal_kernel(1.9, 0.3, params)), cfg.tolerance(0.0));
    rep.scalar("kernel.trace", "Eq. (intransf)", kernel_trace(params), 1.0, cfg.tolerance(1e-9));
  }

  const auto res = affine_resolution_check(params, 4, gopts);
  rep.scalar("c_rho.printed", "Eq. (croexpl)", res.c_rho, c_rho_printed(a, t), cfg.tolerance(1e-8));
  rep.scalar("c_rho.corrected", "Eq. (croexpl) corrected", res.c_rho, 2.0 * kPi / a, cfg.tolerance(1e-8));
  rep.scalar("c_rho.thermal_series", "Eq. (croexpl) thermal sum", res.c_rho, c_rho_series(params), cfg.tolerance(1e-8));
  rep.defect("resolution.defect", "Eq. (residrhoTqpF)", res.defect, cfg.tolerance(1e-3));
  rep.scalar("resolution.diagonal_00", "Eq. (residrhoTqpF)", res.integral(0, 0).real(), 1.0, cfg.tolerance(1e-3));
  rep.scalar("resolution.offdiagonal_01", "Eq. (residrhoTqpF)", std::abs(res.integral(0, 1)), 0.0, cfg.tolerance(1e-3));
  rep.defect("resolution.printed_normalization", "Eq. (residrhoTqpF) as printed", res.defect_printed,
             cfg.tolerance(1e-3));
  rep.defect("resolution.refined_defect", "Eq. (residrhoTqpF)", res.refined_defect, cfg.tolerance(1e-3));
  rep.defect("resolution.refinement_change", "Eq. (residrhoTqpF)", res.refinement_change, cfg.tolerance(1e-3));
  rep.property("admissibility.positivity", "Eq. (croexpl)", res.min_admissibility, ">= 0",
               res.min_admissibility >= 0.0);

  // c_rho alpha / (1 - t) = 2 pi over a small grid.
  std::vector<double> scaled, two_pi;
  for (double aa : {0.5, 2.0})
    for (double tt : {0.0, 0.5}) {
      AffineParams pp = params;
      pp.alpha = aa;
      pp.t = tt;
      scaled.push_back(covariant_c_rho(affine_orbit(pp, 1, gopts)) * aa / (1.0 - tt));
      two_pi.push_back(2.0 * kPi);
    }
  rep.vector("c_rho.scaling_law", "Eq. (croexpl)", scaled, two_pi, cfg.tolerance(1e-8));
  return rep;
}

SuiteReport core_suite(const SuiteConfig& cfg) {
  const double r = cfg.r.value_or(0.7);
  const double t = cfg.t.value_or(0.3);
  const int draws = std::max(50, cfg.grid.value_or(50));
  SuiteReport rep;
  rep.suite = "core";
  rep.params = {{"r", r}, {"t", t}, {"plane_dim", cfg.dim.value_or(48)}, {"draws", draws}, {"seed", cfg.seed}};

  PropertyOptions opts;
  opts.draws = draws;

  opts.sample = [](std::mt19937_64& g) { return Point{uniform(g, 0, 2 * kPi), 0.0}; };
  add_properties(rep, cfg, "circle", circle::circle_family(r, 0.3), opts, 1e-13);

  opts.sample = [](std::mt19937_64& g) { return Point{uniform(g, -1, 1), uniform(g, 0, 2 * kPi)}; };
  add_properties(rep, cfg, "sphere", sphere::sphere_family(r), opts, 1e-12);

  const plane::ThermalParams tp{t, cfg.dim.value_or(48)};
  tp.validate();
  auto pfam = plane::plane_family(tp);
  opts.block = tp.dim / 2;
  opts.measurement_states = 1;
  opts.sample = [](std::mt19937_64& g) {
    const double rr = std::sqrt(uniform(g, 0, 1)), a = uniform(g, 0, 2 * kPi);
    return Point{rr * std::cos(a), rr * std::sin(a)};
  };
  add_properties(rep, cfg, "plane", pfam, opts, 1e-8);
  opts.block = 0;
  opts.measurement_states = 3;

  const auto rf = finite::random_resolving_family(3, 12, false, cfg.seed);
  opts.sample = [](std::mt19937_64& g) { return Point{static_cast<double>(g() % 12), 0.0}; };
  add_properties(rep, cfg, "finite", finite_family(rf), opts, 1e-10);

  const CsBasis leg = legendre_basis(5);
  const auto csf = cs_family(leg, "legendre-coherent-states");
  opts.sample = [](std::mt19937_64& g) { return Point{uniform(g, -1, 1), 0.0}; };
  add_properties(rep, cfg, "coherent_states", csf, opts, 1e-12);

  // Coherent states from an orthonormal set.
  rep.defect("coherent_states.gram", "Eq. (kercondCS)", gram_defect(leg), cfg.tolerance(1e-13));
  {
    const Point x{0.3, 0.0}, xp{-0.55, 0.0};
    rep.scalar("coherent_states.reproducing_kernel", "Eq. (defcs)", std::norm(reproducing_kernel(leg, x, xp)),
               prob_kernel(csf, x, xp), cfg.tolerance(1e-13));
    rep.scalar("coherent_states.unit_norm", "Eq. (defcs)", cs_build(leg, x).vector.norm(), 1.0, cfg.tolerance(1e-13));
  }

  // Berezin transform and POVM complementarity on the circle.
  const auto cfam = circle::circle_family(r, 0.3, 16);
  const ScalarField f = [](const Point& x) { return Complex(std::exp(std::sin(x[0]))); };
  rep.scalar("berezin.two_routes", "Eq. (lowsymbpovm)", berezin_transform(cfam, f, {0.8, 0}).real(),
             lower_symbol(cfam, quantize(cfam, f), {0.8, 0}).real(), cfg.tolerance(1e-13));
  {
    const Indicator upper = [](const Point& x) { return x[0] < kPi; };
    const Indicator lower = [](const Point& x) { return x[0] >= kPi; };
    rep.defect("povm.complementarity", "Eq. (povmap)",
               max_abs(povm_region(cfam, upper) + povm_region(cfam, lower) - OperatorMatrix::Identity(2, 2)),
               cfg.tolerance(1e-13));
  }

  // Group orbit of the circle: c_rho and covariance.
  const auto orbit = circle::circle_orbit(r, 0.3, 16);
  const double c = covariant_c_rho(orbit);
  const double c_expected = kPi;
  rep.scalar("orbit.c_rho_circle", "Eq. (crho)", c, c_expected, cfg.tolerance(1e-12));
  rep.defect("orbit.covariance_circle", "Eq. (Gcovprop)", covariance_check(orbit, orbit_family(orbit, c), f, {0.9, 0}),
             cfg.tolerance(1e-12));
  return rep;
}

SuiteReport finite_suite(const SuiteConfig& cfg) {
  using namespace finite;
  SuiteReport rep;
  rep.suite = "finite";
  rep.params = {{"seed", cfg.seed}};

  std::vector<double> nmax, bound;
  for (int n = 1; n <= 5; ++n) {
    nmax.push_back(feasibility_bounds(n, false).n_max);
    bound.push_back(2.0 * n * n - 2.0);
  }
  rep.vector("feasibility.full_rank_bound", "Eq. (allowr)", nmax, bound, 0.0);
  {
    const auto f = feasibility_bounds(3, true);
    rep.vector("feasibility.rank_one_printed_quadratic", "Eq. (condNncs)", {f.printed_lower_root, f.printed_upper_root},
               {f.lower_root, f.upper_root}, cfg.tolerance(1e-12));
    rep.scalar("feasibility.rank_one_printed_range", "Eq. (allrangeNCS)", f.printed_range_end, f.upper_root,
               cfg.tolerance(1e-12));
    rep.vector("feasibility.rank_one_bounds_n3", "Eq. (condNncs) corrected", {double(f.n_min), double(f.n_max)},
               {3.0, 9.0}, 0.0);
  }
  rep.property("feasibility.degenerate_n1", "§5 n = 1", feasibility_bounds(1, false).degenerate, true,
               feasibility_bounds(1, false).degenerate);

  const auto mb = mercedes_benz_frame();
  rep.defect("frame.mercedes_benz", "Eq. (finresNn1)", parseval_check(mb, {2.0 / 3, 2.0 / 3, 2.0 / 3}),
             cfg.tolerance(1e-14));
  rep.defect("frame.mercedes_benz_coordinates", "Eq. (finresNn1) coordinates",
             parseval_coordinate_defect(mb, {2.0 / 3, 2.0 / 3, 2.0 / 3}), cfg.tolerance(1e-14));

  std::uint64_t seed = cfg.seed;
  for (const auto& [n_points, rank_one] : std::vector<std::pair<int, bool>>{{3, false}, {4, false}, {3, true}}) {
    const std::string tag = "n=2,N=" + std::to_string(n_points) + (rank_one ? ",rank_one" : "");
    const auto rf = random_resolving_family(2, n_points, rank_one, seed++);
    const auto table = gram_probabilities(rf.family, rf.measure);
    const auto sol = reconstruct(table, rf.measure, 2, rank_one, seed++);
    const auto back = gram_probabilities(sol.family, rf.measure, 1e-6);
    rep.defect("reconstruct.residual[" + tag + "]", "Eq. (relprho)", sol.residual, cfg.tolerance(1e-6));
    rep.defect("reconstruct.table[" + tag + "]", "Eq. (relprho)", (back.p - table.p).cwiseAbs().maxCoeff(),
               cfg.tolerance(1e-6));
    rep.scalar("reconstruct.free_variables[" + tag + "]", "Eq. (count)", sol.free_variables,
               feasibility_bounds(2, rank_one).free_parameters(n_points), 0.0);
  }
  {
    const auto rf = random_resolving_family(2, 2, false, seed++);
    const auto sol = reconstruct(gram_probabilities(rf.family, rf.measure), rf.measure, 2, false, seed++);
    rep.defect("reconstruct.commuting_N=n=2", "§5 simultaneous diagonalization",
               max_abs(commutator(sol.family[0], sol.family[1])), cfg.tolerance(1e-8));
  }
  {
    bool rejected = false;
    try {
      const auto rf = random_resolving_family(2, 7, false, seed);
      (void)reconstruct(gram_probabilities(rf.family, rf.measure), rf.measure, 2, false, seed);
    } catch (const InfeasibleError&) {
      rejected = true;
    }
    rep.property("feasibility.rejects_N=7_n=2", "Eq. (allowr)", rejected, true, rejected);
  }
  return rep;
}

std::vector<std::string> suite_names() { return {"circle", "sphere", "plane", "halfplane", "core", "finite"}; }

std::vector<SuiteReport> run_suites(const std::string& name, const SuiteConfig& cfg) {
  cfg.validate();
  using Fn = SuiteReport (*)(const SuiteConfig&);
  const std::vector<std::pair<std::string, Fn>> table{{"circle", circle_suite}, {"sphere", sphere_suite},
                                                      {"plane", plane_suite},   {"halfplane", halfplane_suite},
                                                      {"core", core_suite},     {"finite", finite_suite}};
  std::vector<SuiteReport> out;
  for (const auto& [n, fn] : table)
    if (name == "all" || name == n) out.push_back(fn(cfg));
  if (out.empty()) throw std::invalid_argument("unknown suite: " + name);
  return out;
}

}  // namespace povmq
