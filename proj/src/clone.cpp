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

#include "transplant/clone.hpp"

#include <functional>

#include "json.hpp"
#include "transplant/errors.hpp"
#include "transplant/parser.hpp"
#include "transplant/printer.hpp"

using nlohmann::json;

namespace transplant {

namespace {

struct HostEntry {
  std::string file;
  const Element* element;
};

bool comparableKind(ElementKind k) {
  return k == ElementKind::FunctionDefinition ||
         k == ElementKind::GlobalVariable ||
         k == ElementKind::TypeDefinition ||
         k == ElementKind::ConstantDefinition;
}

std::string signatureOf(const Element& e) {
  if (e.kind == ElementKind::FunctionDefinition ||
      e.kind == ElementKind::FunctionDeclaration) {
    std::string sig = e.returnType + "(";
    for (std::size_t i = 0; i < e.params.size(); ++i) {
      if (i) sig += ",";
      sig += e.params[i].type;
    }
    return sig + ")";
  }
  if (e.kind == ElementKind::GlobalVariable) return e.varType;
  return "";
}

bool stmtEqual(const Stmt& a, const Stmt& b);

bool stmtListEqual(const std::vector<Stmt>& a, const std::vector<Stmt>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!stmtEqual(a[i], b[i])) return false;
  return true;
}

// Structural equality modulo trivia: statement kinds and non-comment token
// spellings, recursively.
bool stmtEqual(const Stmt& a, const Stmt& b) {
  if (a.kind != b.kind) return false;
  if (normalize_tokens(a.tokens) != normalize_tokens(b.tokens)) return false;
  return stmtListEqual(a.children, b.children) &&
         stmtListEqual(a.elseChildren, b.elseChildren);
}

bool astEqual(const Element& a, const Element& b) {
  if (a.kind != b.kind) return false;
  if (signatureOf(a) != signatureOf(b)) return false;
  if (a.kind == ElementKind::FunctionDefinition)
    return stmtListEqual(a.body, b.body);
  return normalize_tokens(a.tokens) == normalize_tokens(b.tokens);
}

// First statement-level divergence, for the merge record.
std::string firstDiff(const Element& a, const Element& b) {
  std::size_t n = std::min(a.body.size(), b.body.size());
  for (std::size_t i = 0; i < n; ++i)
    if (!stmtEqual(a.body[i], b.body[i]))
      return "statement " + std::to_string(i) + " differs";
  return "body lengths differ (" + std::to_string(a.body.size()) + " vs " +
         std::to_string(b.body.size()) + ")";
}

}  // namespace

CloneReport detect_clones(const OverOrgan& organ, const ProjectModel& host) {
  // Host element list, one entry per named comparable element.
  std::vector<HostEntry> hostElements;
  forEachElement(host, [&](const std::string& file, const Element& e) {
    if (comparableKind(e.kind) && !e.name.empty())
      hostElements.push_back(HostEntry{file, &e});
  });

  CloneReport report;
  for (const auto& oe : organ.organElements) {
    if (!comparableKind(oe.kind)) continue;
    Ast organAst = parse_file(oe.file, oe.text);
    if (organAst.elements.empty()) continue;
    const Element& organEl = organAst.elements.front();

    CloneDecision d;
    d.organElement = oe.name;
    d.organFile = oe.file;

    const HostEntry* sameName = nullptr;
    const HostEntry* lineMatch = nullptr;
    std::string organNorm = normalize(organEl);
    for (const auto& he : hostElements) {
      if (!lineMatch && normalize(*he.element) == organNorm) lineMatch = &he;
      if (!sameName && he.element->name == oe.name) sameName = &he;
    }

    if (lineMatch) {
      // Phase 1: identical after normalization.
      d.hostElement = lineMatch->element->name;
      d.hostFile = lineMatch->file;
      d.verdict = CloneVerdict::Discard;
      d.phase = ClonePhase::Line;
    } else if (sameName) {
      // Phase 2: structural comparison of the same-named pair.
      const Element& hostEl = *sameName->element;
      d.hostElement = hostEl.name;
      d.hostFile = sameName->file;
      d.phase = ClonePhase::Ast;
      if (signatureOf(organEl) != signatureOf(hostEl) ||
          organEl.kind != hostEl.kind)
        throw SignatureConflict(oe.name);
      if (astEqual(organEl, hostEl)) {
        d.verdict = CloneVerdict::Discard;
      } else {
        d.verdict = CloneVerdict::Merge;
        d.diffNote = oe.kind == ElementKind::FunctionDefinition
                         ? firstDiff(organEl, hostEl)
                         : "initializer differs";
      }
    } else {
      d.verdict = CloneVerdict::Graft;
      d.phase = ClonePhase::Line;
    }
    if (d.verdict != CloneVerdict::Graft)
      report.connectionPoints.push_back(oe.name);
    report.decisions.push_back(std::move(d));
  }
  return report;
}

std::string clone_report_json(const CloneReport& report) {
  json decisions = json::array();
  for (const auto& d : report.decisions) {
    const char* verdict = d.verdict == CloneVerdict::Graft     ? "graft"
                          : d.verdict == CloneVerdict::Discard ? "discard"
                                                               : "merge";
    decisions.push_back(
        {{"organElement", d.organElement},
         {"organFile", d.organFile},
         {"hostElement", d.hostElement},
         {"hostFile", d.hostFile},
         {"verdict", verdict},
         {"phase", d.phase == ClonePhase::Line ? "line" : "ast"},
         {"diffNote", d.diffNote}});
  }
  json j;
  j["decisions"] = decisions;
  j["connectionPoints"] = report.connectionPoints;
  return j.dump(2) + "\n";
}

}  // namespace transplant
