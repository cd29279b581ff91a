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

#include "transplant/postop.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <set>
#include <thread>

#include "json.hpp"
#include "transplant/errors.hpp"
#include "transplant/sandbox.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace transplant {

namespace {

std::string stripTrailingNewlines(std::string s) {
  while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
  return s;
}

double secondsSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

std::string suite_kind_name(SuiteKind kind) {
  switch (kind) {
    case SuiteKind::Regression:
      return "regression";
    case SuiteKind::RegressionPlusPlus:
      return "regression++";
    case SuiteKind::Acceptance:
      return "acceptance";
    case SuiteKind::Icebox:
      return "icebox";
  }
  return "regression";
}

SuiteKind suite_kind_from_name(const std::string& name) {
  if (name == "regression") return SuiteKind::Regression;
  if (name == "regression++") return SuiteKind::RegressionPlusPlus;
  if (name == "acceptance") return SuiteKind::Acceptance;
  if (name == "icebox") return SuiteKind::Icebox;
  throw InvalidArgument("unknown suite kind: " + name);
}

SuiteResult run_suite(const std::map<std::string, std::string>& files,
                      const TestSuite& suite, const std::string& buildCommand,
                      const RunOptions& options) {
  SuiteResult result;
  result.kind = suite.kind;
  result.total = (int)suite.tests.size();
  result.ran = true;
  auto started = std::chrono::steady_clock::now();

  ensure_build_tool(buildCommand);
  Sandbox buildDir;
  buildDir.writeFiles(files);
  std::vector<std::string> sources;
  for (const auto& [path, _] : files)
    if (path.size() > 2 && path.substr(path.size() - 2) == ".c")
      sources.push_back(path);
  std::sort(sources.begin(), sources.end());
  RunResult br = run_command(
      expand_build_command(buildCommand, "app", sources), buildDir.dir(), 120);
  if (br.exitCode != 0) {
    // Broken products report 0/N; the build failure dominates the verdict.
    result.buildFailed = true;
    for (const auto& t : suite.tests) {
      TestLogEntry e;
      e.name = t.name;
      e.output = "build failed";
      result.log.push_back(std::move(e));
    }
    result.seconds = secondsSince(started);
    return result;
  }

  // Tests run the shared binary by absolute path from per-test scratch
  // directories. Copying it per test would race: a concurrent popen fork
  // can inherit the copy's write descriptor and make exec fail (ETXTBSY).
  std::string binary = (fs::path(buildDir.dir()) / "app").string();
  result.log.resize(suite.tests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < suite.tests.size();) {
      const IceboxTest& t = suite.tests[i];
      Sandbox scratch;
      std::string cmd = t.command.empty() ? binary : t.command;
      for (std::size_t p = 0; (p = cmd.find("{app}", p)) != std::string::npos;)
        cmd.replace(p, 5, binary);
      auto t0 = std::chrono::steady_clock::now();
      RunResult r = run_command(cmd, scratch.dir(), options.testTimeoutSecs);
      TestLogEntry e;
      e.name = t.name;
      e.exitCode = r.exitCode;
      e.output = r.output;
      e.seconds = secondsSince(t0);
      e.passed = !r.timedOut && r.exitCode == t.expectedExit &&
                 (!t.checkStdout ||
                  stripTrailingNewlines(r.output) ==
                      stripTrailingNewlines(t.expectedStdout));
      result.log[i] = std::move(e);
    }
  };
  int jobs = std::max(1, options.jobs);
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Merge deterministically by test name regardless of completion order.
  std::stable_sort(result.log.begin(), result.log.end(),
                   [](const TestLogEntry& a, const TestLogEntry& b) {
                     return a.name < b.name;
                   });
  for (const auto& e : result.log)
    if (e.passed) ++result.passed;
  result.seconds = secondsSince(started);
  return result;
}

ValidationReport validate(const std::map<std::string, std::string>& files,
                          const std::vector<TestSuite>& suites,
                          const std::string& buildCommand,
                          const RunOptions& options) {
  const SuiteKind order[] = {SuiteKind::Regression,
                             SuiteKind::RegressionPlusPlus,
                             SuiteKind::Acceptance};
  std::vector<const TestSuite*> picked;
  for (SuiteKind kind : order) {
    const TestSuite* found = nullptr;
    for (const auto& s : suites) {
      if (s.kind != kind) continue;
      if (found) throw InvalidArgument("duplicate suite kind: " +
                                       suite_kind_name(kind));
      found = &s;
    }
    if (!found) throw MissingSuite(suite_kind_name(kind));
    picked.push_back(found);
  }

  ValidationReport report;
  // Only a regression failure stops the pipeline; regression++ and
  // acceptance failures break the verdict but later suites still report.
  bool skipRest = false;
  for (const TestSuite* suite : picked) {
    if (skipRest) {
      SuiteResult skipped;
      skipped.kind = suite->kind;
      skipped.total = (int)suite->tests.size();
      report.suites.push_back(std::move(skipped));
      continue;
    }
    SuiteResult r = run_suite(files, *suite, buildCommand, options);
    if (suite->kind == SuiteKind::Regression && r.passed != r.total)
      skipRest = true;
    report.suites.push_back(std::move(r));
  }
  bool allPass = true;
  for (const auto& r : report.suites)
    if (!r.ran || r.passed != r.total) allPass = false;
  report.verdict = allPass ? "ok" : "broken";
  return report;
}

TestSuite promote_tests(const TestSuite& hostRegression,
                        const std::vector<TestSuite>& newSuites,
                        const ValidationReport& report,
                        std::vector<std::string>* warnings) {
  if (report.verdict != "ok") throw PromotionBeforeValidation();
  TestSuite promoted;
  promoted.kind = SuiteKind::Regression;
  promoted.coverageNote = hostRegression.coverageNote;
  std::set<std::string> seen;
  auto addAll = [&](const std::vector<IceboxTest>& tests) {
    for (const auto& t : tests) {
      if (!seen.insert(t.name).second) {
        if (warnings)
          warnings->push_back("duplicate test name dropped: " + t.name);
        continue;
      }
      promoted.tests.push_back(t);
    }
  };
  addAll(hostRegression.tests);
  for (SuiteKind kind :
       {SuiteKind::RegressionPlusPlus, SuiteKind::Acceptance})
    for (const auto& s : newSuites)
      if (s.kind == kind) addAll(s.tests);
  return promoted;
}

std::string validation_report_json(const ValidationReport& report) {
  json suites = json::array();
  for (const auto& r : report.suites) {
    json tests = json::array();
    for (const auto& e : r.log)
      tests.push_back({{"name", e.name},
                       {"passed", e.passed},
                       {"exitCode", e.exitCode},
                       {"seconds", e.seconds}});
    suites.push_back({{"kind", suite_kind_name(r.kind)},
                      {"passed", r.passed},
                      {"total", r.total},
                      {"ran", r.ran},
                      {"buildFailed", r.buildFailed},
                      {"seconds", r.seconds},
                      {"tests", tests}});
  }
  json j;
  j["verdict"] = report.verdict;
  j["suites"] = suites;
  return j.dump(2) + "\n";
}

std::string suite_to_json(const TestSuite& suite) {
  json tests = json::array();
  for (const auto& t : suite.tests) {
    json jt;
    jt["name"] = t.name;
    jt["command"] = t.command;
    jt["expected_exit"] = t.expectedExit;
    if (t.checkStdout) jt["expected_stdout"] = t.expectedStdout;
    if (!t.driverSource.empty()) jt["driver_source"] = t.driverSource;
    tests.push_back(std::move(jt));
  }
  json j;
  j["kind"] = suite_kind_name(suite.kind);
  j["tests"] = tests;
  if (!suite.coverageNote.empty()) j["coverage_note"] = suite.coverageNote;
  return j.dump(2) + "\n";
}

TestSuite suite_from_json(const std::string& text) {
  json j = json::parse(text);
  TestSuite suite;
  suite.kind = suite_kind_from_name(j.at("kind").get<std::string>());
  suite.coverageNote = j.value("coverage_note", "");
  for (const auto& jt : j.at("tests")) {
    IceboxTest t;
    t.name = jt.at("name").get<std::string>();
    t.command = jt.value("command", "");
    t.expectedExit = jt.value("expected_exit", 0);
    if (jt.contains("expected_stdout")) {
      t.checkStdout = true;
      t.expectedStdout = jt.at("expected_stdout").get<std::string>();
    }
    t.driverSource = jt.value("driver_source", "");
    suite.tests.push_back(std::move(t));
  }
  return suite;
}

}  // namespace transplant
