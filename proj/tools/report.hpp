// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "levygauss/suites.hpp"

namespace levygauss::cli {

/// 17 significant digits: doubles round-trip losslessly through the reports.
inline std::string format_double(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

/// Deterministic JSON: fixed key order, fixed float format, no timestamps.
/// Identical seed and flags must give byte-identical files.
inline std::string report_to_json(const std::vector<SuiteReport>& reports,
                                  const SuiteConfig& config) {
  std::string out;
  out += "{\n";
  out += "  \"seed\": " + std::to_string(config.seed) + ",\n";
  out += "  \"samples\": " + std::to_string(config.samples) + ",\n";
  out += "  \"tolerance_scale\": " + format_double(config.tolerance_scale) + ",\n";
  out += "  \"suites\": [\n";
  for (size_t r = 0; r < reports.size(); ++r) {
    const SuiteReport& report = reports[r];
    out += "    {\n";
    out += "      \"name\": \"" + report.name + "\",\n";
    out += "      \"passed\": " + std::string(report.all_passed() ? "true" : "false") + ",\n";
    out += "      \"checks\": [\n";
    for (size_t c = 0; c < report.checks.size(); ++c) {
      const CheckResult& check = report.checks[c];
      out += "        {\"id\": \"" + check.id + "\", \"status\": \"" +
             (check.pass ? "pass" : "fail") + "\", \"value\": " + format_double(check.value) +
             ", \"tolerance\": " + format_double(check.tolerance) +
             ", \"seed\": " + std::to_string(check.seed) + "}";
      out += (c + 1 < report.checks.size()) ? ",\n" : "\n";
    }
    out += "      ]\n";
    out += (r + 1 < reports.size()) ? "    },\n" : "    }\n";
  }
  out += "  ]\n";
  out += "}\n";
  return out;
}

}  // namespace levygauss::cli
