// Copyright 2026 The Transplantc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TRANSPLANT_POSTOP_HPP
#define TRANSPLANT_POSTOP_HPP

#include <map>
#include <string>
#include <vector>

#include "transplant/platform.hpp"

namespace transplant {

enum class SuiteKind { Regression, RegressionPlusPlus, Acceptance, Icebox };

std::string suite_kind_name(SuiteKind kind);
SuiteKind suite_kind_from_name(const std::string& name);

struct TestSuite {
  SuiteKind kind = SuiteKind::Regression;
  std::vector<IceboxTest> tests;
  std::string coverageNote;  // optional recorded coverage percentage
};

struct TestLogEntry {
  std::string name;
  bool passed = false;
  int exitCode = 0;
  std::string output;
  double seconds = 0.0;
};

struct SuiteResult {
  SuiteKind kind = SuiteKind::Regression;
  int passed = 0;
  int total = 0;
  bool ran = false;          // false when short-circuited away
  bool buildFailed = false;  // 0/N via build failure
  double seconds = 0.0;
  std::vector<TestLogEntry> log;  // sorted by test name
};

struct ValidationReport {
  std::vector<SuiteResult> suites;  // regression, regression++, acceptance
  std::string verdict;              // "ok" | "broken"
};

struct RunOptions {
  int jobs = 1;
  int testTimeoutSecs = 5;
};

// Builds the project once, then runs each test in its own scratch directory.
// A build failure yields 0/N with buildFailed set; a pass needs a matching
// exit code and — when an expectation is present — matching stdout after
// trailing-newline normalization.
SuiteResult run_suite(const std::map<std::string, std::string>& files,
                      const TestSuite& suite, const std::string& buildCommand,
                      const RunOptions& options = {});

// Runs regression, regression++ and acceptance in that order,
// short-circuiting to a broken verdict when regression fails. Exactly one
// suite of each kind must be supplied (MissingSuite otherwise).
ValidationReport validate(const std::map<std::string, std::string>& files,
                          const std::vector<TestSuite>& suites,
                          const std::string& buildCommand,
                          const RunOptions& options = {});

// The promoted regression suite: old regression ∪ regression++ ∪ acceptance,
// deduplicated by test name (duplicates produce a warning). Requires an ok
// verdict; throws PromotionBeforeValidation otherwise.
TestSuite promote_tests(const TestSuite& hostRegression,
                        const std::vector<TestSuite>& newSuites,
                        const ValidationReport& report,
                        std::vector<std::string>* warnings = nullptr);

// validation-report.json payload (stable key order; timings included).
std::string validation_report_json(const ValidationReport& report);

// suite.json round trip.
std::string suite_to_json(const TestSuite& suite);
TestSuite suite_from_json(const std::string& text);

}  // namespace transplant

#endif  // TRANSPLANT_POSTOP_HPP
