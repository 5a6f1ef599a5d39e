#pragma once

// Verification reports: one row per check with the computed and expected
// values, the tolerance and the verdict. Serialized to JSON or CSV.

#include <string>
#include <vector>

#include <json.hpp>

namespace povmq {

struct Check {
  std::string id;
  std::string paper_anchor;
  nlohmann::json computed;
  nlohmann::json expected;
  double tol = 0.0;
  bool pass = false;
};

struct SuiteReport {
  std::string suite;
  nlohmann::json params = nlohmann::json::object();
  std::vector<Check> checks;

  /// Passes iff |computed - expected| <= tol (false for NaN).
  void scalar(const std::string& id, const std::string& anchor, double computed, double expected, double tol);
  /// Entrywise version of scalar.
  void vector(const std::string& id, const std::string& anchor, const std::vector<double>& computed,
              const std::vector<double>& expected, double tol);
  /// A defect that must not exceed tol.
  void defect(const std::string& id, const std::string& anchor, double value, double tol);
  /// A boolean property with a free-form record of what was computed.
  void property(const std::string& id, const std::string& anchor, nlohmann::json computed, nlohmann::json expected,
                bool pass, double tol = 0.0);

  bool all_pass() const;
  int failures() const;
};

nlohmann::json to_json(const SuiteReport& report);
nlohmann::json to_json(const std::vector<SuiteReport>& reports);

/// Header suite,id,paper_anchor,computed,expected,tol,pass; arrays are joined with ';'.
std::string to_csv(const std::vector<SuiteReport>& reports);

}  // namespace povmq
