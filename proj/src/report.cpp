#include "povmq/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace povmq {

namespace {

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

std::string format_value(const nlohmann::json& j) {
  if (j.is_null()) return "nan";
  if (j.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", j.get<double>());
    return buf;
  }
  if (j.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ';';
      out += format_value(j[i]);
    }
    return out;
  }
  if (j.is_string()) return j.get<std::string>();
  return j.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

}  // namespace

void SuiteReport::scalar(const std::string& id, const std::string& anchor, double computed, double expected,
                         double tol) {
  const bool ok = std::isfinite(computed) && std::isfinite(expected) && std::abs(computed - expected) <= tol;
  checks.push_back({id, anchor, number(computed), number(expected), tol, ok});
}

void SuiteReport::vector(const std::string& id, const std::string& anchor, const std::vector<double>& computed,
                         const std::vector<double>& expected, double tol) {
  bool ok = computed.size() == expected.size();
  nlohmann::json c = nlohmann::json::array(), e = nlohmann::json::array();
  for (std::size_t i = 0; i < computed.size(); ++i) c.push_back(number(computed[i]));
  for (std::size_t i = 0; i < expected.size(); ++i) e.push_back(number(expected[i]));
  for (std::size_t i = 0; ok && i < computed.size(); ++i)
    ok = std::isfinite(computed[i]) && std::isfinite(expected[i]) && std::abs(computed[i] - expected[i]) <= tol;
  checks.push_back({id, anchor, c, e, tol, ok});
}

void SuiteReport::defect(const std::string& id, const std::string& anchor, double value, double tol) {
  scalar(id, anchor, value, 0.0, tol);
}

void SuiteReport::property(const std::string& id, const std::string& anchor, nlohmann::json computed,
                           nlohmann::json expected, bool pass, double tol) {
  checks.push_back({id, anchor, std::move(computed), std::move(expected), tol, pass});
}

bool SuiteReport::all_pass() const { return failures() == 0; }

int SuiteReport::failures() const {
  int n = 0;
  for (const auto& c : checks) n += c.pass ? 0 : 1;
  return n;
}

nlohmann::json to_json(const SuiteReport& report) {
  nlohmann::json j;
  j["suite"] = report.suite;
  j["params"] = report.params;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : report.checks) {
    nlohmann::json row;
    row["id"] = c.id;
    row["paper_anchor"] = c.paper_anchor;
    row["computed"] = c.computed;
    row["expected"] = c.expected;
    row["tol"] = c.tol;
    row["pass"] = c.pass;
    rows.push_back(std::move(row));
  }
  j["checks"] = std::move(rows);
  return j;
}

nlohmann::json to_json(const std::vector<SuiteReport>& reports) {
  if (reports.size() == 1) return to_json(reports.front());
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  return arr;
}

std::string to_csv(const std::vector<SuiteReport>& reports) {
  std::ostringstream out;
  out << "suite,id,paper_anchor,computed,expected,tol,pass\n";
  for (const auto& r : reports) {
    for (const auto& c : r.checks) {
      char tol[32];
      std::snprintf(tol, sizeof tol, "%.3g", c.tol);
      out << csv_field(r.suite) << ',' << csv_field(c.id) << ',' << csv_field(c.paper_anchor) << ','
          << csv_field(format_value(c.computed)) << ',' << csv_field(format_value(c.expected)) << ',' << tol << ','
          << (c.pass ? "true" : "false") << '\n';
    }
  }
  return out.str();
}

}  // namespace povmq
