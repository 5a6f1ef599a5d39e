// Acceptance criteria, one per invocation: `acceptance --criterion N` prints a
// single PASS/FAIL line with the measured values and exits 0 on PASS.
// `acceptance` without arguments runs all of them.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "povmq/circle.hpp"
#include "povmq/finite.hpp"
#include "povmq/halfplane.hpp"
#include "povmq/plane.hpp"
#include "povmq/sphere.hpp"
#include "povmq/suites.hpp"

using namespace povmq;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records "name value (tol)" and folds the comparison into pass.
  void le(const char* name, double value, double tol) {
    const bool ok = std::isfinite(value) && value <= tol;
    pass = pass && ok;
    note("%s %.3g%s%.0e", name, value, ok ? " <= " : " > ", tol);
  }
  void note(const char* fmt, ...) {
    char buf[512];
    va_list args;
    va_start(args, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, args);
    va_end(args);
    if (!detail.empty()) detail += "; ";
    detail += buf;
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double check_value(const SuiteReport& rep, const std::string& id) {
  for (const auto& c : rep.checks)
    if (c.id == id) return c.computed.is_number() ? c.computed.get<double>() : NAN;
  throw std::logic_error("missing check " + id);
}

Outcome circle_resolution() {
  Outcome o;
  double worst = 0.0, slowest = 0.0;
  for (double r : {0.0, 0.3, 0.7, 1.0}) {
    const auto fam = circle::circle_family(r, 0.4);
    double best_time = 1e9;
    for (int rep = 0; rep < 5; ++rep) {
      const auto t0 = Clock::now();
      worst = std::max(worst, check_resolution(fam).defect);
      best_time = std::min(best_time, seconds_since(t0));
    }
    slowest = std::max(slowest, best_time);
  }
  o.le("max defect over r in {0,.3,.7,1}", worst, 1e-13);
  o.le("runtime [s]", slowest, 1e-3);
  return o;
}

Outcome circle_angle() {
  Outcome o;
  double eig = 0.0, vec = 0.0;
  for (int k = 1; k <= 10; ++k) {
    const double r = 0.1 * k, phi = 0.37;
    const auto a = quantize(circle::angle_family(r, phi),
                            [](const Point& x) { return Complex(circle::angle_function(x[0])); });
    const auto e = eig_hermitian(a);
    eig = std::max({eig, std::abs(e.values(0) - (kPi - r / 2)), std::abs(e.values(1) - (kPi + r / 2))});
    StateVector plus(2), minus(2);
    plus << std::cos(phi + kPi / 4), std::sin(phi + kPi / 4);
    minus << std::cos(phi - kPi / 4), std::sin(phi - kPi / 4);
    vec = std::max({vec, 1.0 - std::abs(plus.dot(e.vectors.col(0))), 1.0 - std::abs(minus.dot(e.vectors.col(1)))});
  }
  o.le("eigenvalue error over r = 0.1..1", eig, 1e-10);
  o.le("eigenvector 1 - |overlap|", vec, 1e-10);
  return o;
}

Outcome circle_algebra() {
  Outcome o;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double prod = 0, comm = 0, comm_derived = 0;
  for (int k = 0; k < 100; ++k) {
    const auto alg = circle::product_and_algebra({u(rng), kPi * u(rng), 2 * kPi * u(rng)},
                                                 {u(rng), kPi * u(rng), 2 * kPi * u(rng)});
    prod = std::max(prod, max_abs(alg.product - alg.product_formula));
    comm = std::max(comm, max_abs(alg.commutator - alg.commutator_printed));
    comm_derived = std::max(comm_derived, max_abs(alg.commutator - alg.commutator_formula));
  }
  o.le("product formula", prod, 1e-13);
  o.le("commutator as printed", comm, 1e-13);
  o.note("commutator with rr'/2 %.3g", comm_derived);
  double marg = 0.0;
  for (double r : {0.0, 0.4, 0.8, 1.0})
    for (const auto& m : circle::marginal_integrals(r)) marg = std::max(marg, m.defect);
  o.le("four marginals", marg, 1e-12);
  return o;
}

Outcome sphere_closed_forms() {
  using namespace sphere;
  Outcome o;
  double q = 0, p = 0, c = 0, lq = 0, res = 0;
  for (double r : {0.0, 0.3, 0.7, 1.0}) {
    const OperatorMatrix aq = quantize(sphere_family_gl(r), q_function);
    const OperatorMatrix ap = quantize(sphere_family(r), p_function);
    q = std::max(q, max_abs(aq - (kPi * pauli::identity() + kPi * r / 4 * pauli::sigma2())));
    p = std::max(p, max_abs(ap - r / 3 * pauli::sigma3()));
    c = std::max(c, max_abs(commutator(aq, ap) - Complex(0, kPi * r * r / 6) * pauli::sigma1()));
    for (double th : {0.4, 1.3, 2.8})
      for (double ph : {0.2, 2.0, 4.5})
        lq = std::max(lq, std::abs(lower_symbol(sphere_family(r), aq, {std::cos(th), ph}).real() -
                                   (kPi - kPi * r * r / 4 * std::sin(th) * std::sin(ph))));
    res = std::max(res, check_resolution(sphere_family(r)).defect);
  }
  o.le("A_q", q, 1e-10);
  o.le("A_p", p, 1e-10);
  o.le("[A_q,A_p]", c, 1e-10);
  o.le("lower symbol of A_q", lq, 1e-10);
  o.le("resolution", res, 1e-12);
  return o;
}

Outcome kernels_and_distances() {
  Outcome o;
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double ck = 0, chs = 0, cps = 0, sk = 0, shs = 0, sps = 0;
  for (double r : {0.2, 0.6, 0.9}) {
    const auto cfam = circle::circle_family(r, 0.3);
    const auto sfam = sphere::sphere_family(r);
    for (int k = 0; k < 20; ++k) {
      const double t0 = 2 * kPi * u(rng), t1 = 2 * kPi * u(rng), d = t1 - t0;
      ck = std::max(ck, std::abs(prob_kernel(cfam, {t0, 0}, {t1, 0}) - 0.5 * (1 + r * r * std::cos(2 * d))));
      const auto a = circle::rho_circle(r, 0.3, t0), b = circle::rho_circle(r, 0.3, t1);
      chs = std::max(chs, std::abs(hs_distance(a, b) - std::sqrt(2.0) * r * std::abs(std::sin(d))));
      cps = std::max(cps, std::abs(pseudo_distance(a, b) -
                                   std::sqrt(-std::log((1 + r * r * std::cos(2 * d)) / (1 + r * r)))));

      const double th0 = kPi * u(rng), ph0 = 2 * kPi * u(rng), th1 = kPi * u(rng), ph1 = 2 * kPi * u(rng);
      const double cg = std::cos(th0) * std::cos(th1) + std::sin(th0) * std::sin(th1) * std::cos(ph0 - ph1);
      sk = std::max(sk, std::abs(prob_kernel(sfam, {std::cos(th0), ph0}, {std::cos(th1), ph1}) - 0.5 * (1 + r * r * cg)));
      const auto sa = sphere::rho_sphere(r, th0, ph0), sb = sphere::rho_sphere(r, th1, ph1);
      shs = std::max(shs, std::abs(hs_distance(sa, sb) - r / std::sqrt(2.0) * std::sqrt(2 - 2 * cg)));
      sps = std::max(sps, std::abs(pseudo_distance(sa, sb) - std::sqrt(-std::log((1 + r * r * cg) / (1 + r * r)))));
    }
  }
  o.le("circle kernel", ck, 1e-12);
  o.le("circle HS", chs, 1e-12);
  o.le("circle pseudo", cps, 1e-12);
  o.le("sphere kernel", sk, 1e-12);
  o.le("sphere HS", shs, 1e-12);
  o.le("sphere pseudo", sps, 1e-12);

  // Small-separation laws at separation 1e-3, relative error against the printed slopes.
  const double r = 0.7, sep = 1e-3;
  const double circ = pseudo_distance(circle::rho_circle(r, 0.3, 1.0), circle::rho_circle(r, 0.3, 1.0 + sep)) / sep;
  const double th = 1.2, dth = 0.6 * sep, dph = 0.8 * sep;
  const double arc = std::hypot(dth, dph * std::sin(th + dth / 2));
  const double sph = pseudo_distance(sphere::rho_sphere(r, th, 0.5), sphere::rho_sphere(r, th + dth, 0.5 + dph)) / arc;
  o.le("circle small-separation slope vs 2r/sqrt(1+r^2), rel", std::abs(circ / (2 * r / std::sqrt(1 + r * r)) - 1), 0.01);
  o.le("sphere small-separation slope vs r/sqrt(1+r^2), rel", std::abs(sph / (r / std::sqrt(1 + r * r)) - 1), 0.01);
  o.note("measured slopes are sqrt(2) r/sqrt(1+r^2) (rel %.2g) and r/sqrt(2(1+r^2)) (rel %.2g)",
         std::abs(circ / (std::sqrt(2.0) * r / std::sqrt(1 + r * r)) - 1),
         std::abs(sph / (r / std::sqrt(2 * (1 + r * r))) - 1));
  return o;
}

Outcome plane_identities() {
  Outcome o;
  double pur = 0.0;
  for (double t : {0.0, 0.1, 0.3, 0.5}) {
    const plane::ThermalParams p{t, 64};
    for (Complex z : {Complex(0.4, -0.3), Complex(-1.0, 0.8)})
      pur = std::max(pur, std::abs(purity(plane::displaced_thermal(z, p)) - (1 - t) / (1 + t)));
  }
  o.le("purity at dim 64, t <= 0.5", pur, 1e-9);

  double bessel = 0.0, bessel_derived = 0.0;
  for (double t : {0.1, 0.3, 0.5})
    for (double u : {0.5, 1.4}) {
      const double partial = plane::diagonal_partial_sum(u, t, 400);
      bessel = std::max(bessel, std::abs(partial - plane::diagonal_sum_printed(u, t)));
      bessel_derived = std::max(bessel_derived, std::abs(partial - plane::diagonal_sum_closed(u, t)));
    }
  o.le("Laguerre-square series vs printed closed form", bessel, 1e-10);
  o.note("vs closed form with exponent -2u t^2/(1-t^2) %.3g", bessel_derived);

  SuiteConfig cfg;
  cfg.t = 0.3;
  cfg.dim = 48;
  const auto t0 = Clock::now();
  const auto rep = plane_suite(cfg);
  const double elapsed = seconds_since(t0);
  o.le("CCR", check_value(rep, "quantize.ccr"), 1e-8);
  o.le("A_{q^2} - Q^2 + s/2", check_value(rep, "quantize.q_squared"), 1e-5);
  o.le("A_{p^2} - P^2 + s/2", check_value(rep, "quantize.p_squared"), 1e-5);
  o.le("E0 - Em - 1/2 by quadrature", std::abs(check_value(rep, "energy.shift_quadrature") - 0.5), 1e-5);
  double closed = 0.0;
  for (double t = 0.0; t < 0.95; t += 0.05) {
    const double s = -(1 + t) / (1 - t);
    closed = std::max(closed, std::abs((1 - s) / 2 - (-s / 2) - 0.5));
  }
  o.le("E0 - Em - 1/2 closed form, all t", closed, 1e-15);
  o.le("plane suite runtime at dim 48 [s]", elapsed, 60.0);
  return o;
}

Outcome plane_covariances() {
  Outcome o;
  const auto c48 = plane::covariance_suite({0.3, 48});
  const auto c64 = plane::covariance_suite({0.3, 64});
  const double floor = 1e-11;
  const char* names[4] = {"translation", "rotation", "parity", "conjugation"};
  const double d48[4] = {c48.translation, c48.rotation, c48.parity, c48.conjugation};
  const double d64[4] = {c64.translation, c64.rotation, c64.parity, c64.conjugation};
  for (int k = 0; k < 4; ++k) {
    o.le(names[k], d48[k], 1e-5);
    // Below the roundoff floor the sequence cannot decrease further; that counts as converged.
    const bool decreasing = d64[k] < d48[k] || (d48[k] <= floor && d64[k] <= floor);
    o.pass = o.pass && decreasing;
    o.note("%s at 64: %.3g (%s)", names[k], d64[k], decreasing ? "converged" : "NOT decreasing");
  }
  return o;
}

Outcome phase_operator() {
  Outcome o;
  const plane::ThermalParams p{0.3, 32};
  const Index b = 16;
  const OperatorMatrix rb = plane::phase_operator_route_b(p);
  const OperatorMatrix rb_shift = plane::phase_operator_route_b(p, 0.7);
  const OperatorMatrix ra = plane::phase_operator_route_a(p);
  const OperatorMatrix rc = plane::phase_operator_reconciled(p);
  const OperatorMatrix ut = plane::FockSpace(32).rotation(0.7);
  double diag = 0.0;
  for (Index i = 0; i < b; ++i) diag = std::max(diag, std::abs(rb(i, i) - kPi));
  o.le("route B hermiticity", block_max_abs(rb - rb.adjoint(), b), 1e-6);
  o.le("route B diagonal - pi", diag, 1e-6);
  o.le("route B angular covariance", block_max_abs(ut * rb * ut.adjoint() - rb_shift, b), 1e-6);

  std::printf("  phase operator comparison at t = 0.3, dim 32 (imaginary parts)\n");
  std::printf("  %3s %3s %14s %14s %14s\n", "m", "m'", "route A", "route B", "reconciled");
  int nan_entries = 0;
  double worst = 0.0;
  for (Index m = 0; m < b; ++m)
    for (Index mp = m + 1; mp < b; ++mp) {
      const double a = ra(m, mp).imag();
      if (std::isnan(a)) ++nan_entries;
      else worst = std::max(worst, std::abs(ra(m, mp) - rb(m, mp)));
      if (mp <= 3) std::printf("  %3ld %3ld %14.8f %14.8f %14.8f\n", (long)m, (long)mp, a, rb(m, mp).imag(), rc(m, mp).imag());
    }
  o.note("route A vs B: %d undefined entries, max difference %.3g elsewhere (documented discrepancy)", nan_entries, worst);
  o.note("reconciled coefficient vs B %.3g", block_max_abs(rc - rb, b));
  return o;
}

Outcome halfplane_checks() {
  using namespace halfplane;
  Outcome o;
  const auto t0 = Clock::now();
  const AffineParams p{2.0, 0.25, 40, 64};
  const auto res = affine_resolution_check(p, 4);
  o.le("c_rho - 2pi(1-t)/alpha at (2, 0.25)", std::abs(res.c_rho - c_rho_printed(p.alpha, p.t)), 1e-8);
  o.note("c_rho %.12f, 2pi/alpha %.12f", res.c_rho, 2 * kPi / p.alpha);

  const AffineParams k{1.0, 0.3, 40, 64};
  double eig = 0.0, eig_derived = 0.0;
  for (int n = 0; n <= 4; ++n)
    for (double x : {0.35, 1.6, 3.0}) {
      const auto en = [n](double y) { return laguerre_basis(n, 1.0, y); };
      const double expect = 0.7 * std::pow(0.3, n);
      eig = std::max(eig, std::abs(kernel_apply(x, en, k, true) / en(x) - expect));
      eig_derived = std::max(eig_derived, std::abs(kernel_apply(x, en, k) / en(x) - expect));
    }
  o.le("printed kernel eigen-relation n <= 4", eig, 1e-8);
  o.note("kernel with exponent -(1+t)(x+y)/(2(1-t)) and no (1-t) prefactor: %.3g", eig_derived);

  o.le("resolution diagonal (0,0) - 1", std::abs(res.integral(0, 0) - 1.0), 1e-3);
  o.le("resolution defect", res.defect, 1e-3);
  o.le("refined defect", res.refined_defect, 1e-3);
  o.le("change under refinement", res.refinement_change, 1e-3);
  o.le("runtime [s]", seconds_since(t0), 120.0);
  return o;
}

Outcome finite_inverse() {
  using namespace finite;
  Outcome o;
  bool bounds = true;
  for (int n = 2; n <= 6; ++n) {
    const auto f = feasibility_bounds(n, false);
    bounds = bounds && f.n_max == 2 * n * n - 2 && f.admits(2 * n * n - 2) && !f.admits(2 * n * n - 1);
  }
  o.pass = o.pass && bounds;
  o.note("N <= 2n^2-2 for n = 2..6: %s", bounds ? "yes" : "NO");
  double worst = 0.0;
  int restarts = 0;
  for (int N : {3, 4})
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto rf = random_resolving_family(2, N, false, 1000 * N + seed);
      const auto sol = reconstruct(gram_probabilities(rf.family, rf.measure), rf.measure, 2, false, seed);
      worst = std::max(worst, sol.residual);
      restarts = std::max(restarts, sol.winning_restart + 1);
    }
  o.le("round-trip residual, n=2, N in {3,4}", worst, 1e-6);
  o.pass = o.pass && restarts <= 8;
  o.note("restarts used <= %d", restarts);
  double comm = 0.0;
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    const auto rf = random_resolving_family(2, 2, false, seed);
    const auto sol = reconstruct(gram_probabilities(rf.family, rf.measure), rf.measure, 2, false, seed);
    comm = std::max(comm, max_abs(commutator(sol.family[0], sol.family[1])));
  }
  o.le("N=n=2 commutator", comm, 1e-8);
  return o;
}

Outcome core_properties() {
  Outcome o;
  SuiteConfig cfg;
  const auto rep = core_suite(cfg);
  int props = 0, failed = 0, draws = 1 << 30;
  std::string failures;
  for (const auto& c : rep.checks) {
    if (c.id.rfind("properties.", 0) != 0) continue;
    if (c.id.size() > 6 && c.id.substr(c.id.size() - 6) == ".draws") {
      draws = std::min(draws, static_cast<int>(c.computed.get<double>()));
      continue;
    }
    ++props;
    if (!c.pass) {
      ++failed;
      failures += " " + c.id;
    }
  }
  o.pass = failed == 0 && draws >= 50 && props == 25;
  o.note("%d property checks over circle, sphere, plane, finite and Legendre coherent states, %d failed%s", props,
         failed, failures.c_str());
  o.note("draws per geometry %d (>= 50)", draws);
  return o;
}

struct Criterion {
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  int which = 0;
  app.add_option("--criterion", which, "Criterion number 1..11 (0: all)")->check(CLI::Range(0, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> criteria{
      {"circle resolution", circle_resolution},
      {"circle angle operator", circle_angle},
      {"real 2x2 density algebra and marginals", circle_algebra},
      {"sphere closed forms", sphere_closed_forms},
      {"probability kernels and distances", kernels_and_distances},
      {"plane identities", plane_identities},
      {"plane covariances", plane_covariances},
      {"phase operator", phase_operator},
      {"half-plane", halfplane_checks},
      {"finite inverse problem", finite_inverse},
      {"core properties", core_properties},
  };

  bool all = true;
  for (int k = 1; k <= 11; ++k) {
    if (which != 0 && which != k) continue;
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = criteria[k - 1].run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.note("exception: %s", e.what());
    }
    std::printf("criterion %2d %s  %s: %s [%.2f s]\n", k, o.pass ? "PASS" : "FAIL", criteria[k - 1].title,
                o.detail.c_str(), seconds_since(t0));
    std::fflush(stdout);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
