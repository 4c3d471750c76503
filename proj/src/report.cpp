#include "gobs/report.hpp"

#include <json.hpp>

#include <sstream>

namespace gobs {

int CheckReport::passed() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status != "fail") ++n;
  return n;
}

int CheckReport::failed() const {
  int n = 0;
  for (const auto& c : checks)
    if (c.status == "fail") ++n;
  return n;
}

std::string report_to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["version"] = kReportVersion;
  j["conventions"] = kConventionsId;
  j["model"] = r.model;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json jc;
    jc["name"] = c.name;
    jc["status"] = c.status;
    jc["residual"] = c.residual;
    jc["ms"] = c.ms;
    j["checks"].push_back(jc);
  }
  j["warnings"] = r.warnings;
  j["summary"] = {{"total", r.checks.size()},
                  {"passed", r.passed()},
                  {"failed", r.failed()},
                  {"warnings", r.warnings.size()}};
  return j.dump(2) + "\n";
}

std::string report_to_text(const CheckReport& r) {
  std::ostringstream os;
  os << "model: " << r.model << "  (conventions " << kConventionsId << ")\n";
  for (const auto& c : r.checks) {
    os << "  [" << c.status << "] " << c.name;
    if (c.status != "pass" && !c.residual.empty() && c.residual != "0")
      os << "\n         residual: " << c.residual;
    os << "\n";
  }
  for (const auto& w : r.warnings) os << "  note: " << w << "\n";
  os << "summary: " << r.passed() << "/" << r.checks.size() << " passed, " << r.failed()
     << " failed\n";
  return os.str();
}

CheckReport report_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  CheckReport r;
  r.model = j.value("model", "");
  for (const auto& jc : j.at("checks")) {
    CheckResult c;
    c.name = jc.value("name", "");
    c.status = jc.value("status", "");
    c.residual = jc.value("residual", "");
    c.ms = jc.value("ms", 0.0);
    r.checks.push_back(std::move(c));
  }
  if (j.contains("warnings"))
    for (const auto& w : j.at("warnings")) r.warnings.push_back(w.get<std::string>());
  return r;
}

}  // namespace gobs
