#include "povmq/finite.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace povmq::finite {

namespace {

// Real coordinates of the upper triangle of a Hermitian matrix: diagonal,
// then real and imaginary parts above it.
int hermitian_coords(int n) { return n * n; }

void push_coords(const OperatorMatrix& m, Eigen::VectorXd& out, Index& pos, double scale) {
  const Index n = m.rows();
  for (Index a = 0; a < n; ++a) out(pos++) = scale * m(a, a).real();
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      out(pos++) = scale * m(a, b).real();
      out(pos++) = scale * m(a, b).imag();
    }
}

OperatorMatrix unpack_density(const Eigen::VectorXd& x, Index offset, int n, int k) {
  OperatorMatrix b(n, k);
  for (int c = 0; c < k; ++c)
    for (int r = 0; r < n; ++r) {
      const Index at = offset + 2 * (c * n + r);
      b(r, c) = Complex(x(at), x(at + 1));
    }
  const OperatorMatrix bb = b * b.adjoint();
  const double tr = bb.trace().real();
  if (!(tr > 0.0)) return OperatorMatrix::Identity(n, n) / double(n);
  return bb / tr;
}

struct Problem {
  const ProbTable* table;
  const FiniteMeasure* measure;
  int n;
  int k;
  double penalty;

  int points() const { return static_cast<int>(measure->size()); }
  int per_point() const { return 2 * n * k; }
  int params() const { return points() * per_point(); }
  int table_terms() const { return points() * (points() + 1) / 2; }

  std::vector<OperatorMatrix> densities(const Eigen::VectorXd& x) const {
    std::vector<OperatorMatrix> rho;
    rho.reserve(points());
    for (int i = 0; i < points(); ++i) rho.push_back(unpack_density(x, Index(i) * per_point(), n, k));
    return rho;
  }

  OperatorMatrix resolution(const std::vector<OperatorMatrix>& rho) const {
    OperatorMatrix s = -OperatorMatrix::Identity(n, n);
    for (int i = 0; i < points(); ++i) s += measure->weights[i] * rho[i];
    return s;
  }

  // Table residuals followed by the weighted resolution residuals.
  void residuals(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
    const auto rho = densities(x);
    Index pos = 0;
    for (int i = 0; i < points(); ++i)
      for (int j = i; j < points(); ++j) out(pos++) = trace_product(rho[i], rho[j]).real() - table->p(i, j);
    push_coords(resolution(rho), out, pos, std::sqrt(penalty));
    while (pos < out.size()) out(pos++) = 0.0;
  }
};

// Eigen's LM wraps MINPACK, which needs at least as many residuals as
// unknowns; the vector is padded with zeros.
struct Functor {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const Problem* problem;
  int inputs() const { return problem->params(); }
  int values() const {
    return std::max(problem->params(), problem->table_terms() + hermitian_coords(problem->n));
  }
  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const {
    problem->residuals(x, f);
    return 0;
  }
};

using Solver = Eigen::LevenbergMarquardt<Eigen::NumericalDiff<Functor, Eigen::Central>>;

// Numerical rank of a Jacobian of f at x by central differences.
template <typename F>
int jacobian_rank(const F& f, const Eigen::VectorXd& x, Index rows) {
  const double h = 1e-6;
  Eigen::MatrixXd jac(rows, x.size());
  Eigen::VectorXd xp = x, fp(rows), fm(rows);
  for (Index c = 0; c < x.size(); ++c) {
    xp(c) = x(c) + h;
    f(xp, fp);
    xp(c) = x(c) - h;
    f(xp, fm);
    xp(c) = x(c);
    jac.col(c) = (fp - fm) / (2.0 * h);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int rank = 0;
  for (Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-6 * sv(0)) ++rank;
  return rank;
}

int free_variables_at(const Problem& prob, const Eigen::VectorXd& x) {
  const int pts = prob.points();
  const int n = prob.n;
  auto rho_map = [&](const Eigen::VectorXd& y, Eigen::VectorXd& out) {
    Index pos = 0;
    for (const auto& r : prob.densities(y)) push_coords(r, out, pos, 1.0);
  };
  auto res_map = [&](const Eigen::VectorXd& y, Eigen::VectorXd& out) {
    Index pos = 0;
    push_coords(prob.resolution(prob.densities(y)), out, pos, 1.0);
  };
  return jacobian_rank(rho_map, x, Index(pts) * hermitian_coords(n)) - jacobian_rank(res_map, x, hermitian_coords(n));
}

double sum_of_table_squares(const Problem& prob, const std::vector<OperatorMatrix>& rho) {
  double s = 0.0;
  for (int i = 0; i < prob.points(); ++i)
    for (int j = i; j < prob.points(); ++j) {
      const double d = trace_product(rho[i], rho[j]).real() - prob.table->p(i, j);
      s += d * d;
    }
  return s;
}

OperatorMatrix inverse_sqrt(const OperatorMatrix& s) {
  const EigenDecomposition e = eig_hermitian(s);
  if (!(e.values(0) > 0.0)) throw std::domain_error("random_resolving_family: singular frame operator");
  return e.vectors * e.values.cwiseSqrt().cwiseInverse().cast<Complex>().asDiagonal() * e.vectors.adjoint();
}

}  // namespace

void FiniteMeasure::validate(int n, double tol) const {
  if (weights.empty()) throw std::invalid_argument("FiniteMeasure: no points");
  double s = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::invalid_argument("FiniteMeasure: weights must be positive");
    s += w;
  }
  if (std::abs(s - n) > tol) throw std::invalid_argument("FiniteMeasure: weights must sum to the Hilbert dimension");
}

FiniteMeasure FiniteMeasure::uniform(int n_points, int n) {
  if (n_points < 1 || n < 1) throw std::invalid_argument("FiniteMeasure::uniform: sizes must be positive");
  return {std::vector<double>(n_points, double(n) / n_points)};
}

void ProbTable::validate(const FiniteMeasure& measure, double tol) const {
  const Index n_points = static_cast<Index>(measure.size());
  if (p.rows() != n_points || p.cols() != n_points) throw std::invalid_argument("ProbTable: size does not match the measure");
  for (Index i = 0; i < n_points; ++i) {
    double row = 0.0;
    for (Index j = 0; j < n_points; ++j) {
      if (!(p(i, j) >= -tol && p(i, j) <= 1.0 + tol)) throw std::invalid_argument("ProbTable: entries must lie in [0, 1]");
      if (std::abs(p(i, j) - p(j, i)) > tol) throw std::invalid_argument("ProbTable: table must be symmetric");
      row += measure.weights[j] * p(i, j);
    }
    if (std::abs(row - 1.0) > tol) throw std::invalid_argument("ProbTable: weighted row sums must equal 1");
  }
}

int FeasibilityReport::free_parameters(int n_points) const {
  if (rank_one) return 2 * n_points * (n - 1) - (n * n - 1);
  return (n_points - 1) * (n * n - 1);
}

FeasibilityReport feasibility_bounds(int n, bool rank_one) {
  if (n < 1) throw std::invalid_argument("feasibility_bounds: n must be >= 1");
  FeasibilityReport r;
  r.n = n;
  r.rank_one = rank_one;
  const double nd = n;
  const double root = std::sqrt(8.0 * nd * nd - 8.0 * nd + 9.0);
  r.printed_range_end = 0.5 * (4.0 * nd - 1.0 - root);
  if (rank_one) {
    r.lower_root = 0.5 * (4.0 * nd - 1.0 - root);
    r.upper_root = 0.5 * (4.0 * nd - 1.0 + root);
    const double printed_disc = std::sqrt(8.0 * nd * nd - 4.0 * nd + 1.0);
    r.printed_lower_root = 0.5 * (4.0 * nd - 1.0 - printed_disc);
    r.printed_upper_root = 0.5 * (4.0 * nd - 1.0 + printed_disc);
    r.n_min = std::max(n, static_cast<int>(std::ceil(r.lower_root - 1e-12)));
    r.n_max = static_cast<int>(std::floor(r.upper_root + 1e-12));
  } else {
    r.lower_root = 1.0;
    r.upper_root = 2.0 * nd * nd - 2.0;
    r.printed_lower_root = r.lower_root;
    r.printed_upper_root = r.upper_root;
    r.n_min = 1;
    r.n_max = 2 * n * n - 2;
  }
  r.degenerate = n == 1;
  return r;
}

double parseval_check(const std::vector<StateVector>& vectors, const std::vector<double>& weights) {
  if (vectors.empty() || vectors.size() != weights.size()) throw std::invalid_argument("parseval_check: size mismatch");
  const Index n = vectors.front().size();
  OperatorMatrix s = -OperatorMatrix::Identity(n, n);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != n) throw std::invalid_argument("parseval_check: mixed dimensions");
    if (std::abs(vectors[i].norm() - 1.0) > 1e-10) throw std::invalid_argument("parseval_check: vectors must be unit");
    if (!(weights[i] > 0.0)) throw std::invalid_argument("parseval_check: weights must be positive");
    s += weights[i] * vectors[i] * vectors[i].adjoint();
  }
  return max_abs(s);
}

double parseval_coordinate_defect(const std::vector<StateVector>& vectors, const std::vector<double>& weights) {
  if (vectors.empty() || vectors.size() != weights.size()) throw std::invalid_argument("parseval_check: size mismatch");
  const Index n = vectors.front().size();
  double worst = 0.0;
  for (Index l = 0; l < n; ++l)
    for (Index lp = 0; lp < n; ++lp) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < vectors.size(); ++i) s += weights[i] * vectors[i](l) * std::conj(vectors[i](lp));
      worst = std::max(worst, std::abs(s - (l == lp ? 1.0 : 0.0)));
    }
  return worst;
}

std::vector<StateVector> mercedes_benz_frame() {
  std::vector<StateVector> frame;
  for (int k = 0; k < 3; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 3.0;
    StateVector v(2);
    v << std::cos(a), std::sin(a);
    frame.push_back(v);
  }
  return frame;
}

double resolution_defect(const std::vector<DensityMatrix>& family, const FiniteMeasure& measure) {
  if (family.empty() || family.size() != measure.size()) throw std::invalid_argument("resolution_defect: size mismatch");
  const Index n = family.front().dim();
  OperatorMatrix s = -OperatorMatrix::Identity(n, n);
  for (std::size_t i = 0; i < family.size(); ++i) s += measure.weights[i] * family[i].matrix();
  return max_abs(s);
}

ProbTable gram_probabilities(const std::vector<DensityMatrix>& family, const FiniteMeasure& measure, double tol) {
  if (resolution_defect(family, measure) > tol)
    throw std::domain_error("gram_probabilities: family does not resolve the identity");
  const Index n_points = static_cast<Index>(family.size());
  ProbTable t;
  t.p.resize(n_points, n_points);
  for (Index i = 0; i < n_points; ++i)
    for (Index j = i; j < n_points; ++j) t.p(i, j) = t.p(j, i) = trace_product(family[i], family[j]).real();
  return t;
}

RandomFamily random_resolving_family(int n, int n_points, bool rank_one, std::uint64_t seed) {
  if (n < 1 || n_points < 1) throw std::invalid_argument("random_resolving_family: sizes must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  const int k = rank_one ? 1 : n;
  std::vector<OperatorMatrix> sigma;
  OperatorMatrix s = OperatorMatrix::Zero(n, n);
  for (int i = 0; i < n_points; ++i) {
    OperatorMatrix b(n, k);
    for (Index c = 0; c < b.size(); ++c) b(c) = Complex(gauss(rng), gauss(rng));
    sigma.push_back(b * b.adjoint());
    s += sigma.back();
  }
  const OperatorMatrix w = inverse_sqrt(s);
  RandomFamily out;
  for (const auto& sg : sigma) {
    OperatorMatrix r = w * sg * w;
    r = 0.5 * (r + r.adjoint()).eval();
    const double tr = r.trace().real();
    out.measure.weights.push_back(tr);
    out.family.push_back(DensityMatrix(r / tr, 1e-10));
  }
  return out;
}

ReconstructResult reconstruct(const ProbTable& table, const FiniteMeasure& measure, int n, bool rank_one,
                              std::uint64_t seed, const ReconstructOptions& opts) {
  const int n_points = static_cast<int>(measure.size());
  const FeasibilityReport feas = feasibility_bounds(n, rank_one);
  if (!feas.admits(n_points)) throw InfeasibleError("reconstruct: (N, n) lies outside the feasible range");
  measure.validate(n);
  table.validate(measure);
  if (opts.restarts < 1) throw std::invalid_argument("reconstruct: need at least one restart");

  Problem prob{&table, &measure, n, rank_one ? 1 : n, opts.penalty};
  Functor functor{&prob};
  std::mt19937_64 master(seed);
  std::vector<std::uint64_t> sub_seeds(opts.restarts);
  for (auto& s : sub_seeds) s = master();

  ReconstructResult best;
  Eigen::VectorXd best_x;
  double best_res = INFINITY, best_def = INFINITY;
  for (int r = 0; r < opts.restarts; ++r) {
    std::mt19937_64 rng(sub_seeds[r]);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd x(prob.params());
    for (Index c = 0; c < x.size(); ++c) x(c) = gauss(rng);

    Eigen::NumericalDiff<Functor, Eigen::Central> diff(functor);
    Solver lm(diff);
    lm.parameters.maxfev = opts.max_evaluations;
    lm.parameters.ftol = 1e-15;
    lm.parameters.xtol = 1e-15;
    lm.minimize(x);

    const auto rho = prob.densities(x);
    const double res = sum_of_table_squares(prob, rho);
    const double def = max_abs(prob.resolution(rho));
    best.restart_residuals.push_back(res);
    if (res < best_res || (res == best_res && def < best_def)) {
      best_res = res;
      best_def = def;
      best_x = x;
      best.winning_restart = r;
    }
  }
  if (!(best_res < opts.tolerance && best_def < opts.tolerance))
    throw ConvergenceError("reconstruct: no restart reached the tolerance", best_res);

  for (auto& m : prob.densities(best_x)) {
    OperatorMatrix h = 0.5 * (m + m.adjoint());
    best.family.push_back(DensityMatrix(std::move(h), 1e-10));
  }
  best.residual = best_res;
  best.resolution_defect = best_def;
  best.free_variables = free_variables_at(prob, best_x);
  return best;
}

nlohmann::json to_json(const TableDocument& doc) {
  nlohmann::json j;
  std::vector<double> flat;
  for (Index i = 0; i < doc.table.p.rows(); ++i)
    for (Index k = 0; k < doc.table.p.cols(); ++k) flat.push_back(doc.table.p(i, k));
  j["p"] = flat;
  j["nu"] = doc.measure.weights;
  j["n"] = doc.n;
  return j;
}

TableDocument table_from_json(const nlohmann::json& j) {
  TableDocument doc;
  if (!j.is_object()) throw std::invalid_argument("table JSON: expected an object");
  for (const auto& item : j.items())
    if (item.key() != "p" && item.key() != "nu" && item.key() != "n")
      throw std::invalid_argument("table JSON: unknown key \"" + item.key() + "\"");
  try {
    const auto flat = j.at("p").get<std::vector<double>>();
    doc.measure.weights = j.at("nu").get<std::vector<double>>();
    doc.n = j.at("n").get<int>();
    const Index n_points = static_cast<Index>(doc.measure.weights.size());
    if (static_cast<Index>(flat.size()) != n_points * n_points)
      throw std::invalid_argument("table JSON: \"p\" must have N*N entries");
    doc.table.p.resize(n_points, n_points);
    for (Index i = 0; i < n_points; ++i)
      for (Index k = 0; k < n_points; ++k) doc.table.p(i, k) = flat[i * n_points + k];
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("table JSON: ") + e.what());
  }
  return doc;
}

nlohmann::json to_json(const ReconstructResult& result) {
  nlohmann::json j;
  j["residual"] = result.residual;
  j["resolution_defect"] = result.resolution_defect;
  j["winning_restart"] = result.winning_restart;
  j["free_variables"] = result.free_variables;
  j["restart_residuals"] = result.restart_residuals;
  nlohmann::json fam = nlohmann::json::array();
  for (const auto& rho : result.family) {
    nlohmann::json m = nlohmann::json::array();
    for (Index a = 0; a < rho.dim(); ++a) {
      nlohmann::json row = nlohmann::json::array();
      for (Index b = 0; b < rho.dim(); ++b) row.push_back({rho.matrix()(a, b).real(), rho.matrix()(a, b).imag()});
      m.push_back(row);
    }
    fam.push_back(m);
  }
  j["family"] = fam;
  return j;
}

}  // namespace povmq::finite
