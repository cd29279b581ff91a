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
#include "fixture_gen.hpp"
#include "transplant/errors.hpp"
#include "transplant/parser.hpp"
#include "transplant/sdg.hpp"

using namespace transplant;

namespace {

// The two-file donor used across the suite: util.c defines add/twice,
// main.c defines feat_sum (calls add) and main (calls feat_sum).
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

std::set<std::pair<std::string, std::string>> callEdges(const Sdg& sdg) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& e : sdg.edges)
    if (e.kind == SdgEdgeKind::Call)
      out.insert({sdg.nodes[e.from].name, sdg.nodes[e.to].name});
  return out;
}

std::set<std::string> sliceNames(const Sdg& sdg, const std::set<int>& slice) {
  std::set<std::string> out;
  for (int id : slice)
    if (!sdg.nodes[id].name.empty() &&
        sdg.nodes[id].kind != ElementKind::IncludeDirective)
      out.insert(sdg.nodes[id].name);
  return out;
}

}  // namespace

TEST_CASE("D1 call edges") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto edges = callEdges(sdg);
  CHECK(edges == std::set<std::pair<std::string, std::string>>{
                     {"twice", "add"}, {"feat_sum", "add"}, {"main", "feat_sum"}});
  CHECK(sdg.boundarySymbols.count("printf") == 1);
}

TEST_CASE("empty main yields one node and no edges") {
  auto pm = parse_project("/mem", {{"main.c", "int main(){return 0;}"}});
  Sdg sdg = build_sdg(pm);
  REQUIRE(sdg.nodes.size() == 2);  // element node + its statement node
  CHECK(sdg.nodes[0].name == "main");
  int nonControl = 0;
  for (const auto& e : sdg.edges)
    if (e.kind != SdgEdgeKind::Control) ++nonControl;
  CHECK(nonControl == 0);
}

TEST_CASE("global read creates data edges from both readers") {
  auto pm = parse_project("/mem", {{"a.c",
                                    "int g;\n"
                                    "int r1(void) { return g; }\n"
                                    "int r2(void) { return g + 1; }\n"
                                    "int main(void) { return r1() + r2(); }\n"}});
  Sdg sdg = build_sdg(pm);
  int dataEdges = 0;
  for (const auto& e : sdg.edges)
    if (e.kind == SdgEdgeKind::Data) {
      CHECK(sdg.nodes[e.to].name == "g");
      ++dataEdges;
    }
  CHECK(dataEdges == 2);
}

TEST_CASE("unresolved call site raises") {
  auto pm = parse_project("/mem", {{"a.c", "int main(void) { return mystery(); }\n"}});
  CHECK_THROWS_AS(build_sdg(pm), UnresolvedSymbol);
}

TEST_CASE("forward slice of feat_sum") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto slice = forward_slice(sdg, "feat_sum");
  CHECK(sliceNames(sdg, slice) == std::set<std::string>{"feat_sum", "add"});
}

TEST_CASE("forward slice of a leaf is itself") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto slice = forward_slice(sdg, "add");
  CHECK(sliceNames(sdg, slice) == std::set<std::string>{"add"});
}

TEST_CASE("forward slice of main reaches the whole reachable program") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto slice = forward_slice(sdg, "main");
  CHECK(sliceNames(sdg, slice) ==
        std::set<std::string>{"main", "feat_sum", "add"});
}

TEST_CASE("unknown entry point") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  CHECK_THROWS_AS(forward_slice(sdg, "nope"), UnknownEntryPoint);
}

TEST_CASE("monotonicity: callee slice is contained in caller slice") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto caller = forward_slice(sdg, "feat_sum");
  auto callee = forward_slice(sdg, "add");
  CHECK(std::includes(caller.begin(), caller.end(), callee.begin(), callee.end()));
}

TEST_CASE("determinism: rebuilt graphs have identical ids and slices") {
  auto pm1 = donorD1();
  auto pm2 = donorD1();
  Sdg a = build_sdg(pm1);
  Sdg b = build_sdg(pm2);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].name == b.nodes[i].name);
    CHECK(a.nodes[i].file == b.nodes[i].file);
  }
  CHECK(forward_slice(a, "feat_sum") == forward_slice(b, "feat_sum"));
}

TEST_CASE("vein for feat_sum is main's relevant prefix") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  auto vein = backward_slice(sdg, pm, "feat_sum");
  REQUIRE(vein.size() == 2);
  CHECK(vein[0].function == "main");
  CHECK(vein[0].statementIndex == 0);  // int n = 3;
  CHECK(vein[1].statementIndex == 1);  // int r = feat_sum(n);
  CHECK(vein[1].calleeOnPath == "feat_sum");
}

TEST_CASE("vein of main is empty") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  CHECK(backward_slice(sdg, pm, "main").empty());
}

TEST_CASE("vein of unreachable entry raises") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  CHECK_THROWS_AS(backward_slice(sdg, pm, "twice"), NoPathFromMain);
}

TEST_CASE("dot output lists nodes and labeled edges") {
  auto pm = donorD1();
  Sdg sdg = build_sdg(pm);
  std::string dot = to_dot(sdg);
  CHECK(dot.find("digraph sdg") != std::string::npos);
  CHECK(dot.find("feat_sum") != std::string::npos);
  CHECK(dot.find("label=\"call\"") != std::string::npos);
}

TEST_CASE("slice oracle equivalence on generated projects") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    auto gp = testutil::generateProject(seed);
    auto pm = parse_project("/mem", gp.files);
    Sdg sdg = build_sdg(pm);
    for (const auto& entry : gp.functions) {
      auto expected = testutil::oracleForwardClosure(gp, entry);
      auto got = sliceNames(sdg, forward_slice(sdg, entry));
      CHECK(got == expected);
    }
  }
}
