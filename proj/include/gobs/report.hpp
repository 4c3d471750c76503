#pragma once

#include <string>
#include <vector>

namespace gobs {

/// Identifier of the sign-convention set every checker references; bumped
/// whenever docs/CONVENTIONS.md changes incompatibly.
inline constexpr const char* kConventionsId = "gobs-conventions-v1";
inline constexpr const char* kReportVersion = "1";

struct CheckResult {
  std::string name;
  std::string status;    // "pass" | "fail" | "warning"
  std::string residual;  // canonical rendering, "0" on pass
  double ms = 0.0;       // excluded from the comparable section
};

struct CheckReport {
  std::string model;
  std::vector<CheckResult> checks;
  std::vector<std::string> warnings;

  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0; }
};

/// JSON schema: {version, conventions, model, checks:[{name,status,residual,ms}],
/// summary:{total,passed,failed,warnings}}. Key order and check order are
/// deterministic; only the ms values vary between runs.
std::string report_to_json(const CheckReport& r);
std::string report_to_text(const CheckReport& r);
CheckReport report_from_json(const std::string& json_text);

}  // namespace gobs
