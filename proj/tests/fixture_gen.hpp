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

#ifndef TRANSPLANT_TESTS_FIXTURE_GEN_HPP
#define TRANSPLANT_TESTS_FIXTURE_GEN_HPP

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace testutil {

// A randomly generated C-subset project with ground-truth dependency facts
// recorded at generation time. The facts are the slicing oracle: they are
// produced by construction, independent of any parsing or graph code.
struct GenProject {
  std::vector<std::pair<std::string, std::string>> files;
  std::set<std::string> functions;
  std::set<std::string> globals;
  std::map<std::string, std::set<std::string>> calls;        // fn -> fns
  std::map<std::string, std::set<std::string>> readsGlobal;  // fn -> globals
};

inline GenProject generateProject(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  GenProject gp;

  auto pick = [&](int lo, int hi) {
    return (int)(lo + rng() % (std::uint64_t)(hi - lo + 1));
  };

  const int nFuncs = pick(3, 11);  // excluding main
  const int nGlobals = pick(0, 4);
  const int nFiles = pick(1, 4);

  for (int g = 0; g < nGlobals; ++g) gp.globals.insert("g" + std::to_string(g));
  for (int f = 0; f < nFuncs; ++f) gp.functions.insert("f" + std::to_string(f));
  gp.functions.insert("main");

  // Call edges: mostly forward (fi -> fj with j > i) to keep call chains,
  // plus an occasional mutually recursive pair.
  for (int i = 0; i < nFuncs; ++i) {
    std::string fi = "f" + std::to_string(i);
    int fanout = pick(0, 2);
    for (int k = 0; k < fanout && i + 1 < nFuncs; ++k) {
      int j = pick(i + 1, nFuncs - 1);
      gp.calls[fi].insert("f" + std::to_string(j));
    }
    int reads = pick(0, nGlobals > 0 ? 2 : 0);
    for (int k = 0; k < reads; ++k)
      gp.readsGlobal[fi].insert("g" + std::to_string(pick(0, nGlobals - 1)));
  }
  if (nFuncs >= 2 && pick(0, 2) == 0) {
    // Mutual recursion between two adjacent functions.
    int i = pick(0, nFuncs - 2);
    gp.calls["f" + std::to_string(i)].insert("f" + std::to_string(i + 1));
    gp.calls["f" + std::to_string(i + 1)].insert("f" + std::to_string(i));
  }
  // main calls a nonempty subset of the roots.
  int mainCalls = pick(1, std::min(3, nFuncs));
  for (int k = 0; k < mainCalls; ++k)
    gp.calls["main"].insert("f" + std::to_string(pick(0, nFuncs - 1)));

  // Render source text, round-robin across files.
  std::vector<std::string> texts(nFiles);
  for (int g = 0; g < nGlobals; ++g)
    texts[g % nFiles] += "int g" + std::to_string(g) + " = " +
                         std::to_string(pick(0, 9)) + ";\n";
  auto renderBody = [&](const std::string& fn) {
    std::string body = "    int acc = x;\n";
    for (const auto& callee : gp.calls[fn])
      body += "    acc = acc + " + callee + "(x);\n";
    for (const auto& g : gp.readsGlobal[fn]) body += "    acc = acc + " + g + ";\n";
    if (gp.calls[fn].count(fn) == 0 && pick(0, 1) == 0)
      body += "    if (acc > 100) { acc = 100; }\n";
    body += "    return acc;\n";
    return body;
  };
  std::vector<std::string> order(gp.functions.begin(), gp.functions.end());
  int idx = 0;
  for (const auto& fn : order) {
    if (fn == "main") continue;
    texts[idx++ % nFiles] +=
        "int " + fn + "(int x) {\n" + renderBody(fn) + "}\n";
  }
  std::string mainBody = "    int r = 0;\n";
  for (const auto& callee : gp.calls["main"])
    mainBody += "    r = r + " + callee + "(1);\n";
  mainBody += "    return r;\n";
  texts[0] += "int main(void) {\n" + mainBody + "}\n";

  // Forward declarations so each file is self-describing.
  for (int f = 0; f < nFiles; ++f) {
    std::string decls;
    for (const auto& fn : gp.functions)
      if (fn != "main") decls += "int " + fn + "(int x);\n";
    for (const auto& g : gp.globals)
      if (texts[f].find("int " + g + " =") == std::string::npos)
        decls += "extern int " + g + ";\n";
    gp.files.emplace_back("file" + std::to_string(f) + ".c", decls + texts[f]);
  }
  return gp;
}

// Brute-force reachability closure over the generation-time facts.
inline std::set<std::string> oracleForwardClosure(const GenProject& gp,
                                                  const std::string& entry) {
  std::set<std::string> seen{entry};
  std::vector<std::string> work{entry};
  while (!work.empty()) {
    std::string fn = work.back();
    work.pop_back();
    auto c = gp.calls.find(fn);
    if (c != gp.calls.end())
      for (const auto& callee : c->second)
        if (seen.insert(callee).second) work.push_back(callee);
    auto r = gp.readsGlobal.find(fn);
    if (r != gp.readsGlobal.end())
      for (const auto& g : r->second) seen.insert(g);
  }
  return seen;
}

}  // namespace testutil

#endif  // TRANSPLANT_TESTS_FIXTURE_GEN_HPP
