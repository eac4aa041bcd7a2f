// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "../tools/report.hpp"
#include "levygauss/suites.hpp"

using namespace levygauss;

TEST_CASE("exact suites pass with default configuration") {
  SuiteConfig config;
  config.samples = 2000;  // keep the statistical checks out of scope here
  const SuiteReport identities = run_identities_suite(config);
  for (const auto& check : identities.checks) {
    INFO(check.id << " value=" << check.value << " tolerance=" << check.tolerance);
    CHECK(check.pass);
  }
}

TEST_CASE("suite lookup") {
  SuiteConfig config;
  config.samples = 500;
  CHECK_THROWS_AS(run_suite("nope", config), std::invalid_argument);
  const auto all = run_suites("all", config);
  CHECK(all.size() == suite_names().size());
}

TEST_CASE("report serialization is deterministic and lossless") {
  SuiteConfig config;
  config.seed = 7;
  config.samples = 1000;
  const std::vector<SuiteReport> first = run_suites("nonfock", config);
  const std::vector<SuiteReport> second = run_suites("nonfock", config);
  const std::string json1 = cli::report_to_json(first, config);
  const std::string json2 = cli::report_to_json(second, config);
  CHECK(json1 == json2);
  CHECK(json1.find("\"name\": \"nonfock\"") != std::string::npos);
  CHECK(json1.find("\"seed\": 7") != std::string::npos);
}

TEST_CASE("17-digit float formatting round-trips") {
  for (const double v : {1.0 / 3.0, 6.02e23, -1.2345678901234567e-8, 0.0}) {
    const std::string s = cli::format_double(v);
    CHECK(std::stod(s) == v);
  }
}

TEST_CASE("tolerance scale loosens checks") {
  SuiteConfig strict;
  strict.samples = 1000;
  SuiteConfig loose = strict;
  loose.tolerance_scale = 1e6;
  const SuiteReport a = run_identities_suite(strict);
  const SuiteReport b = run_identities_suite(loose);
  REQUIRE(a.checks.size() == b.checks.size());
  for (size_t i = 0; i < a.checks.size(); ++i)
    CHECK(b.checks[i].tolerance >= a.checks[i].tolerance);
}
