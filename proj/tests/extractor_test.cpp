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

#include <algorithm>

#include "doctest.h"
#include "test_util.hpp"
#include "transplant/errors.hpp"
#include "transplant/organ.hpp"
#include "transplant/parser.hpp"
#include "transplant/sdg.hpp"

using namespace transplant;

namespace {

ProjectModel donorD1() {
  return parse_project(
      "/mem",
      {{"main.c",
        "#include <stdio.h>\n"
        "#include \"util.h\"\n"
        "\n"
        "int feat_sum(int n) {\n"
        "    int total = 0;\n"
        "    int i = 1;\n"
        "    while (i <= n) {\n"
        "        total = add(total, i);\n"
        "        i = i + 1;\n"
        "    }\n"
        "    printf(\"sum=%d\\n\", total);\n"
        "    return total;\n"
        "}\n"
        "\n"
        "int main(void) {\n"
        "    int n = 3;\n"
        "    int r = feat_sum(n);\n"
        "    printf(\"done %d\\n\", r);\n"
        "    return 0;\n"
        "}\n"},
       {"util.c",
        "#include \"util.h\"\n"
        "\n"
        "int add(int a, int b) {\n"
        "    return a + b;\n"
        "}\n"
        "\n"
        "int twice(int x) {\n"
        "    return add(x, x);\n"
        "}\n"},
       {"util.h",
        "int add(int a, int b);\n"
        "int twice(int x);\n"}});
}

OverOrgan extractD1() {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto organ = extract_over_organ(pm, sdg, "feat_sum", "feat-sum");
  return build_statement_array(std::move(organ), pm, sdg, nullptr);
}

std::vector<std::pair<std::string, std::string>> elementIndex(
    const OverOrgan& organ) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& e : organ.organElements) out.emplace_back(e.file, e.name);
  return out;
}

}  // namespace

TEST_CASE("D1 organ spans both donor files with placement preserved") {
  auto organ = extractD1();
  CHECK(elementIndex(organ) ==
        std::vector<std::pair<std::string, std::string>>{
            {"main.c", "feat_sum"}, {"util.c", "add"}});
  CHECK(organ.fileMap == std::vector<std::string>{"main.c", "util.c"});
  CHECK(organ.entryReturnType == "int");
  REQUIRE(organ.entryParams.size() == 1);
  CHECK(organ.entryParams[0].type == "int");
  CHECK(organ.entryParams[0].name == "n");
  CHECK(organ.boundarySymbols == std::vector<std::string>{"printf"});
}

TEST_CASE("organ element text is byte-identical to the donor") {
  auto organ = extractD1();
  CHECK(organ.organElements[0].text.rfind("int feat_sum(int n) {", 0) == 0);
  CHECK(organ.organElements[0].text.find("    printf(\"sum=%d\\n\", total);") !=
        std::string::npos);
  CHECK(organ.organElements[1].text ==
        "int add(int a, int b) {\n    return a + b;\n}");
}

TEST_CASE("per-file includes are carried") {
  auto organ = extractD1();
  CHECK(organ.fileIncludes.at("main.c") ==
        std::vector<std::string>{"#include <stdio.h>", "#include \"util.h\""});
}

TEST_CASE("vein statements keep provenance and raw text") {
  auto organ = extractD1();
  REQUIRE(organ.veinStatements.size() == 2);
  CHECK(organ.veinStatements[0].file == "main.c");
  CHECK(organ.veinStatements[0].element == "main");
  CHECK(organ.veinStatements[0].index == 0);
  CHECK(organ.veinStatements[0].text == "int n = 3;");
  CHECK(organ.veinStatements[1].text == "int r = feat_sum(n);");
}

TEST_CASE("D1 statement array: organ elements, vein, entry call") {
  auto organ = extractD1();
  REQUIRE(organ.statementArray.size() == 3);
  CHECK(organ.statementArray[0].kind == StatementEntry::Kind::OrganElement);
  CHECK(organ.statementArray[0].element == "add");
  CHECK(organ.statementArray[1].kind == StatementEntry::Kind::VeinStatement);
  CHECK(organ.statementArray[1].text == "int n = 3;");
  CHECK(organ.statementArray[2].kind == StatementEntry::Kind::EntryCall);
  CHECK(organ.statementArray[2].text == "feat_sum(n);");
  CHECK(organ.entryCallArgs == std::vector<std::string>{"n"});
  CHECK(organ.freeVeinVars.empty());
}

TEST_CASE("statement array never lists the entry point element") {
  auto organ = extractD1();
  for (const auto& e : organ.statementArray)
    CHECK_FALSE((e.kind == StatementEntry::Kind::OrganElement &&
                 e.element == "feat_sum"));
}

TEST_CASE("multi-hop vein is inlined with capture-free renaming") {
  auto pm = parse_project(
      "/mem",
      {{"a.c",
        "int feat(int k) {\n"
        "    return k * 2;\n"
        "}\n"
        "int mid(int a) {\n"
        "    int b = a + 1;\n"
        "    int r = feat(b);\n"
        "    return r;\n"
        "}\n"
        "int main(void) {\n"
        "    int x = 5;\n"
        "    int r = mid(x);\n"
        "    return r;\n"
        "}\n"}});
  Sdg sdg = build_sdg(pm);
  VeinInlineRecord record;
  auto organ = build_statement_array(
      extract_over_organ(pm, sdg, "feat", "f"), pm, sdg, &record);
  std::vector<std::string> texts;
  for (const auto& e : organ.statementArray) texts.push_back(e.text);
  CHECK(texts == std::vector<std::string>{
                     "int x = 5;", "int __v1_a = x;",
                     "int __v1_b = __v1_a + 1;", "feat(__v1_b);"});
  CHECK(record.functionStack == std::vector<std::string>{"mid"});
  CHECK(organ.entryCallArgs == std::vector<std::string>{"__v1_b"});
}

TEST_CASE("entry == main: the array is just the synthesized call") {
  auto pm = parse_project("/mem", {{"m.c", "int main(void) {\n    return 0;\n}\n"}});
  Sdg sdg = build_sdg(pm);
  auto organ = build_statement_array(
      extract_over_organ(pm, sdg, "main", "whole"), pm, sdg, nullptr);
  REQUIRE(organ.statementArray.size() == 1);
  CHECK(organ.statementArray[0].kind == StatementEntry::Kind::EntryCall);
  CHECK(organ.statementArray[0].text == "main();");
}

TEST_CASE("leaf entry organ is a single element") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto organ = extract_over_organ(pm, sdg, "add", "just-add");
  CHECK(elementIndex(organ) ==
        std::vector<std::pair<std::string, std::string>>{{"util.c", "add"}});
  CHECK(organ.fileMap == std::vector<std::string>{"util.c"});
}

TEST_CASE("whole-statement setup calls are inlined into the vein") {
  auto pm = parse_project(
      "/mem",
      {{"a.c",
        "int g = 0;\n"
        "void setup(int n) {\n"
        "    g = n;\n"
        "}\n"
        "int feat(int k) {\n"
        "    return g + k;\n"
        "}\n"
        "int main(void) {\n"
        "    int x = 2;\n"
        "    setup(x);\n"
        "    int r = feat(x);\n"
        "    return r;\n"
        "}\n"}});
  Sdg sdg = build_sdg(pm);
  VeinInlineRecord record;
  auto organ = build_statement_array(
      extract_over_organ(pm, sdg, "feat", "f"), pm, sdg, &record);
  std::vector<std::string> texts;
  for (const auto& e : organ.statementArray)
    if (e.kind == StatementEntry::Kind::VeinStatement) texts.push_back(e.text);
  CHECK(texts == std::vector<std::string>{"int x = 2;", "int __v1_n = x;",
                                          "g = __v1_n;"});
  CHECK(record.functionStack == std::vector<std::string>{"setup"});
}

TEST_CASE("recursive vein calls terminate via the function stack") {
  auto pm = parse_project(
      "/mem",
      {{"a.c",
        "void ping(int n);\n"
        "void pong(int n) {\n"
        "    ping(n);\n"
        "}\n"
        "void ping(int n) {\n"
        "    pong(n);\n"
        "}\n"
        "int feat(int k) {\n"
        "    return k;\n"
        "}\n"
        "int main(void) {\n"
        "    int x = 1;\n"
        "    ping(x);\n"
        "    int r = feat(x);\n"
        "    return r;\n"
        "}\n"}});
  Sdg sdg = build_sdg(pm);
  VeinInlineRecord record;
  auto organ = build_statement_array(
      extract_over_organ(pm, sdg, "feat", "f"), pm, sdg, &record);
  CHECK(record.functionStack == std::vector<std::string>{"ping", "pong"});
  CHECK(record.recursiveCalls == std::vector<std::string>{"ping"});
  bool keptCall = false;
  for (const auto& e : organ.statementArray)
    if (e.text == "ping(__v2_n);") keptCall = true;
  CHECK(keptCall);
  // The cut-out callee ships standalone so the organ stays self-contained.
  bool hasPing = false;
  for (const auto& oe : organ.organElements)
    if (oe.name == "ping" && oe.kind == ElementKind::FunctionDefinition)
      hasPing = true;
  CHECK(hasPing);
}

TEST_CASE("mutually recursive closure referenced from the vein terminates") {
  auto pm = parse_project(
      "/mem",
      {{"a.c",
        "int is_odd(int n);\n"
        "int is_even(int n) {\n"
        "    if (n == 0) { return 1; }\n"
        "    return is_odd(n - 1);\n"
        "}\n"
        "int is_odd(int n) {\n"
        "    if (n == 0) { return 0; }\n"
        "    return is_even(n - 1);\n"
        "}\n"
        "int seed(void) {\n"
        "    return is_even(4) + 3;\n"
        "}\n"
        "int feat(int k) {\n"
        "    return k;\n"
        "}\n"
        "int main(void) {\n"
        "    int n = seed();\n"
        "    int r = feat(n);\n"
        "    return r;\n"
        "}\n"}});
  Sdg sdg = build_sdg(pm);
  auto organ = build_statement_array(
      extract_over_organ(pm, sdg, "feat", "f"), pm, sdg, nullptr);
  std::set<std::string> names;
  for (const auto& oe : organ.organElements) names.insert(oe.name);
  CHECK(names == std::set<std::string>{"is_even", "is_odd", "seed", "feat"});
  bool keptSeedCall = false;
  for (const auto& e : organ.statementArray)
    if (e.text == "int n = seed();") keptSeedCall = true;
  CHECK(keptSeedCall);
}

TEST_CASE("free vein variables are detected and typed") {
  auto pm = parse_project(
      "/mem",
      {{"a.c",
        "int feat(int k) {\n"
        "    return k;\n"
        "}\n"
        "int main(int argc, char **argv) {\n"
        "    int r = feat(argc);\n"
        "    return r;\n"
        "}\n"}});
  Sdg sdg = build_sdg(pm);
  auto organ = build_statement_array(
      extract_over_organ(pm, sdg, "feat", "f"), pm, sdg, nullptr);
  REQUIRE(organ.freeVeinVars.size() == 1);
  CHECK(organ.freeVeinVars[0].name == "argc");
  CHECK(organ.freeVeinVars[0].type == "int");
  CHECK(organ.entryCallArgs == std::vector<std::string>{"argc"});
}

TEST_CASE("rendered organ files synthesize cross-file declarations") {
  auto organ = extractD1();
  auto files = render_organ_files(organ);
  REQUIRE(files.size() == 2);
  const std::string& mainC = files.at("main.c");
  CHECK(mainC.find("#include <stdio.h>") != std::string::npos);
  // util.h is not carried, so its quoted include must not survive.
  CHECK(mainC.find("util.h") == std::string::npos);
  CHECK(mainC.find("int add(int a, int b);") != std::string::npos);
  CHECK(mainC.find("int feat_sum(int n);") != std::string::npos);
  CHECK(files.at("util.c").find("int add(int a, int b) {") != std::string::npos);
}

TEST_CASE("rendered organ compiles and reproduces donor behavior") {
  auto organ = extractD1();
  auto files = render_organ_files(organ);
  testutil::TempDir dir;
  const std::string d = dir.path().string();
  for (const auto& [path, content] : files)
    testutil::writeFile(d + "/" + path, content);
  std::string driver;
  for (const auto& e : organ.statementArray) {
    if (e.kind == StatementEntry::Kind::OrganElement) continue;
    driver += "    " + e.text + "\n";
  }
  testutil::writeFile(d + "/driver.c",
                      "int feat_sum(int n);\nint main(void) {\n" + driver +
                          "    return 0;\n}\n");
  auto cc = testutil::runCmd("cc -o " + d + "/organ " + d + "/main.c " + d +
                             "/util.c " + d + "/driver.c");
  REQUIRE_MESSAGE(cc.exitCode == 0, cc.output);
  auto run = testutil::runCmd(d + "/organ");
  CHECK(run.exitCode == 0);
  CHECK(run.output == "sum=6\n");
}

TEST_CASE("extraction is deterministic") {
  auto a = render_organ_files(extractD1());
  auto b = render_organ_files(extractD1());
  CHECK(a == b);
}
