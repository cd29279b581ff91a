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
#include <deque>

#include "transplant/errors.hpp"
#include "transplant/sdg.hpp"

namespace transplant {

namespace {

bool followedInSlice(const SdgEdge& e) {
  return e.kind == SdgEdgeKind::Call || e.kind == SdgEdgeKind::Data ||
         e.kind == SdgEdgeKind::Declares;
}

void stmtDefs(const Stmt& s, std::set<std::string>* out) {
  if (s.kind == StmtKind::Declaration)
    for (const auto& n : s.declNames) out->insert(n);
  // Assignment at the head of an expression statement (or a for-init).
  if (!s.tokens.empty() && s.tokens[0].isIdent() && s.tokens.size() > 1) {
    const std::string& op = s.tokens[1].text;
    if (op == "=" || op == "+=" || op == "-=" || op == "*=" || op == "/=" ||
        op == "%=")
      out->insert(s.tokens[0].text);
  }
  for (const auto& c : s.children) stmtDefs(c, out);
  for (const auto& c : s.elseChildren) stmtDefs(c, out);
}

void stmtUses(const Stmt& s, std::set<std::string>* out) {
  for (const auto& t : s.tokens)
    if (t.isIdent() && !isKeyword(t.text)) out->insert(t.text);
  for (const auto& c : s.children) stmtUses(c, out);
  for (const auto& c : s.elseChildren) stmtUses(c, out);
}

bool stmtCallsFunction(const Stmt& s, const std::string& name) {
  for (std::size_t i = 0; i + 1 < s.tokens.size(); ++i)
    if (s.tokens[i].isIdent() && s.tokens[i].text == name &&
        s.tokens[i + 1].is("("))
      return true;
  for (const auto& c : s.children)
    if (stmtCallsFunction(c, name)) return true;
  for (const auto& c : s.elseChildren)
    if (stmtCallsFunction(c, name)) return true;
  return false;
}

}  // namespace

std::set<int> forward_slice(const Sdg& sdg, const std::string& entry) {
  auto it = sdg.nameIndex.find(entry);
  if (it == sdg.nameIndex.end()) throw UnknownEntryPoint(entry);
  std::set<int> slice;
  std::deque<int> work{it->second};
  slice.insert(it->second);
  while (!work.empty()) {
    int id = work.front();
    work.pop_front();
    for (const auto& e : sdg.edges) {
      if (e.from != id || !followedInSlice(e)) continue;
      if (slice.insert(e.to).second) work.push_back(e.to);
    }
  }
  return slice;
}

std::vector<VeinStmt> backward_slice(const Sdg& sdg,
                                     const ProjectModel& project,
                                     const std::string& entry) {
  auto entryIt = sdg.nameIndex.find(entry);
  if (entryIt == sdg.nameIndex.end()) throw UnknownEntryPoint(entry);
  auto mainIt = sdg.nameIndex.find("main");
  if (mainIt == sdg.nameIndex.end()) throw NoPathFromMain(entry);
  if (entry == "main") return {};

  // Shortest call path main -> entry.
  std::map<int, int> parent;
  std::deque<int> work{mainIt->second};
  parent[mainIt->second] = mainIt->second;
  while (!work.empty() && !parent.count(entryIt->second)) {
    int id = work.front();
    work.pop_front();
    for (const auto& e : sdg.edges) {
      if (e.from != id || e.kind != SdgEdgeKind::Call) continue;
      if (parent.count(e.to)) continue;
      parent[e.to] = id;
      work.push_back(e.to);
    }
  }
  if (!parent.count(entryIt->second)) throw NoPathFromMain(entry);

  std::vector<int> path;  // main ... entry (node ids)
  for (int id = entryIt->second; ; id = parent[id]) {
    path.push_back(id);
    if (id == mainIt->second) break;
  }
  std::reverse(path.begin(), path.end());

  std::vector<VeinStmt> vein;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const SdgNode& fn = sdg.nodes[path[i]];
    const Element& fe = *sdg.elementOf.at(path[i]);
    const std::string callee = sdg.nodes[path[i + 1]].name;

    int callIdx = -1;
    for (std::size_t k = 0; k < fe.body.size(); ++k) {
      if (stmtCallsFunction(fe.body[k], callee)) {
        callIdx = (int)k;
        break;
      }
    }
    if (callIdx < 0) throw NoPathFromMain(entry);  // stale graph

    // Backward value flow: keep statements defining values the call needs.
    std::set<std::string> needed;
    stmtUses(fe.body[callIdx], &needed);
    needed.erase(callee);
    std::vector<int> keep{callIdx};
    for (int k = callIdx - 1; k >= 0; --k) {
      const Stmt& s = fe.body[k];
      std::set<std::string> defs;
      stmtDefs(s, &defs);
      bool relevant = false;
      for (const auto& d : defs)
        if (needed.count(d)) relevant = true;
      // Whole-statement calls to project functions stay: they may set up
      // state the entry point reads. Over-approximation is fine here; the
      // reduction pass prunes what turns out to be unneeded.
      if (!relevant && s.kind == StmtKind::Expression && s.tokens.size() > 1 &&
          s.tokens[0].isIdent() && s.tokens[1].is("(")) {
        auto fnIt = sdg.nameIndex.find(s.tokens[0].text);
        if (fnIt != sdg.nameIndex.end() &&
            sdg.elementOf.at(fnIt->second)->kind ==
                ElementKind::FunctionDefinition)
          relevant = true;
      }
      if (!relevant) continue;
      keep.push_back(k);
      stmtUses(s, &needed);
    }
    std::sort(keep.begin(), keep.end());

    for (int k : keep) {
      VeinStmt vs;
      vs.file = fn.file;
      vs.function = fn.name;
      vs.statementIndex = k;
      vs.stmt = &fe.body[k];
      if (k == callIdx) vs.calleeOnPath = callee;
      vein.push_back(vs);
    }
  }
  return vein;
}

}  // namespace transplant
