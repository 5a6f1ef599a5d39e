// Batch front end: `verify <suite>` runs a verification suite and writes its
// report, `reconstruct <table.json>` solves the finite inverse problem.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "povmq/finite.hpp"
#include "povmq/suites.hpp"

namespace {

enum Exit { kPass = 0, kFail = 1, kConfig = 2, kInfeasible = 3, kNoConvergence = 4 };

int emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return kPass;
  }
  std::ofstream f(out);
  if (!f) {
    std::cerr << "error: cannot write " << out << '\n';
    return kConfig;
  }
  f << text;
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral quantization with density matrices: verification suites and finite reconstruction"};
  app.require_subcommand(1);

  std::string out, format = "json";
  std::uint64_t seed = 20240601;

  povmq::SuiteConfig cfg;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "circle|sphere|plane|halfplane|core|finite|all")
      ->required()
      ->check(CLI::IsMember({"circle", "sphere", "plane", "halfplane", "core", "finite", "all"}));
  verify->add_option("--r", cfg.r, "Radius parameter r in [0, 1]");
  verify->add_option("--t", cfg.t, "Boltzmann factor t in [0, 1)");
  verify->add_option("--alpha", cfg.alpha, "Laguerre parameter alpha > 0");
  verify->add_option("--dim", cfg.dim, "Fock truncation");
  verify->add_option("--grid", cfg.grid, "Node count override");
  verify->add_option("--tol", cfg.tol, "Tolerance override for every numeric check");
  verify->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--out", out, "Output path (default: stdout)");
  verify->add_option("--seed", seed, "Master seed");

  std::string table_path;
  std::optional<int> n_override;
  bool rank_one = false;
  int restarts = 8;
  auto* recon = app.add_subcommand("reconstruct", "Recover densities from a probability table");
  recon->add_option("table", table_path, "Table JSON {\"p\", \"nu\", \"n\"}")->required();
  recon->add_option("--n", n_override, "Hilbert space dimension (overrides the table)");
  recon->add_flag("--rank-one", rank_one, "Restrict to rank-one densities");
  recon->add_option("--restarts", restarts, "Number of random restarts")->check(CLI::PositiveNumber);
  recon->add_option("--out", out, "Output path (default: stdout)");
  recon->add_option("--seed", seed, "Master seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kConfig;
  }

  if (*verify) {
    cfg.seed = seed;
    std::vector<povmq::SuiteReport> reports;
    try {
      reports = povmq::run_suites(suite, cfg);
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kConfig;
    }
    const std::string text = format == "csv" ? povmq::to_csv(reports) : povmq::to_json(reports).dump(2) + "\n";
    if (const int code = emit(text, out); code != kPass) return code;
    int failures = 0;
    for (const auto& r : reports) failures += r.failures();
    if (failures > 0) std::cerr << failures << " check(s) failed\n";
    return failures == 0 ? kPass : kFail;
  }

  using namespace povmq::finite;
  TableDocument doc;
  try {
    std::ifstream in(table_path);
    if (!in) throw std::invalid_argument("cannot read " + table_path);
    doc = table_from_json(nlohmann::json::parse(in));
    if (n_override) doc.n = *n_override;
    doc.measure.validate(doc.n);
    doc.table.validate(doc.measure);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  }

  const auto bounds = feasibility_bounds(doc.n, rank_one);
  nlohmann::json report;
  report["n"] = doc.n;
  report["N"] = doc.measure.size();
  report["rank_one"] = rank_one;
  report["feasible"] = bounds.admits(static_cast<int>(doc.measure.size()));
  report["admissible_range"] = {bounds.n_min, bounds.n_max};
  try {
    ReconstructOptions opts;
    opts.restarts = restarts;
    const auto result = reconstruct(doc.table, doc.measure, doc.n, rank_one, seed, opts);
    report["solution"] = to_json(result);
  } catch (const InfeasibleError& e) {
    report["error"] = e.what();
    emit(report.dump(2) + "\n", out);
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const ConvergenceError& e) {
    report["error"] = e.what();
    report["best_residual"] = e.best_residual;
    emit(report.dump(2) + "\n", out);
    std::cerr << "no convergence: " << e.what() << " (best residual " << e.best_residual << ")\n";
    return kNoConvergence;
  }
  return emit(report.dump(2) + "\n", out);
}
