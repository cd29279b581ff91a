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

#include "transplant/reconfig.hpp"

#include <fstream>
#include <optional>

#include "transplant/errors.hpp"
#include "transplant/parser.hpp"
#include "transplant/printer.hpp"

namespace transplant {

namespace {

// Resolution of one guard: keep the then-branch, keep the else-branch, or
// leave the guard in place (recursing into both branches).
enum class Verdict { KeepThen, KeepElse, Untouched };

using Decider = std::function<Verdict(const std::string& ident, bool negated)>;

// Deletes [begin, end) plus exactly one trailing newline.
void deleteRegion(const std::string& text, std::size_t begin, std::size_t end,
                  std::vector<TextEdit>* edits) {
  if (end < text.size() && text[end] == '\n') ++end;
  edits->push_back(TextEdit{begin, end, ""});
}

void resolveStmts(const std::string& text, const std::vector<Stmt>& stmts,
                  const Decider& decide, std::vector<TextEdit>* edits);

void resolveCondStmt(const std::string& text, const Stmt& s,
                     const Decider& decide, std::vector<TextEdit>* edits) {
  Verdict v = decide(s.condIdent, s.condNegated);
  if (v == Verdict::Untouched) {
    resolveStmts(text, s.children, decide, edits);
    resolveStmts(text, s.elseChildren, decide, edits);
    return;
  }
  bool hasElse = s.guardElse.end > s.guardElse.begin;
  if (v == Verdict::KeepThen) {
    deleteRegion(text, s.guardTop.begin, s.guardTop.end, edits);
    if (hasElse)
      deleteRegion(text, s.guardElse.begin, s.guardEnd.end, edits);
    else
      deleteRegion(text, s.guardEnd.begin, s.guardEnd.end, edits);
    resolveStmts(text, s.children, decide, edits);
  } else {
    if (hasElse) {
      deleteRegion(text, s.guardTop.begin, s.guardElse.end, edits);
      deleteRegion(text, s.guardEnd.begin, s.guardEnd.end, edits);
      resolveStmts(text, s.elseChildren, decide, edits);
    } else {
      deleteRegion(text, s.span.begin, s.span.end, edits);
    }
  }
}

void resolveStmts(const std::string& text, const std::vector<Stmt>& stmts,
                  const Decider& decide, std::vector<TextEdit>* edits) {
  for (const auto& s : stmts) {
    if (s.kind == StmtKind::CondBlock) {
      resolveCondStmt(text, s, decide, edits);
    } else {
      resolveStmts(text, s.children, decide, edits);
      resolveStmts(text, s.elseChildren, decide, edits);
    }
  }
}

void resolveElements(const std::string& text, const std::vector<Element>& els,
                     const Decider& decide, std::vector<TextEdit>* edits) {
  for (const auto& e : els) {
    if (e.kind == ElementKind::ConditionalBlock) {
      Verdict v = decide(e.condIdent, e.condNegated);
      if (v == Verdict::Untouched) {
        resolveElements(text, e.thenElements, decide, edits);
        resolveElements(text, e.elseElements, decide, edits);
        continue;
      }
      bool hasElse = e.guardElse.end > e.guardElse.begin;
      if (v == Verdict::KeepThen) {
        deleteRegion(text, e.guardTop.begin, e.guardTop.end, edits);
        if (hasElse)
          deleteRegion(text, e.guardElse.begin, e.guardEnd.end, edits);
        else
          deleteRegion(text, e.guardEnd.begin, e.guardEnd.end, edits);
        resolveElements(text, e.thenElements, decide, edits);
      } else {
        if (hasElse) {
          deleteRegion(text, e.guardTop.begin, e.guardElse.end, edits);
          deleteRegion(text, e.guardEnd.begin, e.guardEnd.end, edits);
          resolveElements(text, e.elseElements, decide, edits);
        } else {
          deleteRegion(text, e.span.begin, e.span.end, edits);
        }
      }
    } else if (e.kind == ElementKind::FunctionDefinition) {
      resolveStmts(text, e.body, decide, edits);
    }
  }
}

ProjectModel resolveProject(const ProjectModel& project, const Decider& decide) {
  std::vector<std::pair<std::string, std::string>> files;
  for (const auto& ast : project.asts) {
    std::vector<TextEdit> edits;
    resolveElements(ast.text, ast.elements, decide, &edits);
    files.emplace_back(ast.file, apply_edits(ast.text, std::move(edits)));
  }
  return parse_project(project.root, files);
}

void collectGuardIdents(const ProjectModel& project,
                        std::set<std::string>* out) {
  forEachElement(project, [&](const std::string&, const Element& e) {
    if (e.kind == ElementKind::ConditionalBlock) out->insert(e.condIdent);
    if (e.kind == ElementKind::FunctionDefinition) {
      forEachStmt(e.body, [&](const Stmt& s) {
        if (s.kind == StmtKind::CondBlock) out->insert(s.condIdent);
      });
    }
  });
}

}  // namespace

FeatureDirectiveList load_feature_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read feature list: " + path);
  FeatureDirectiveList list;
  std::set<std::string> seen;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    std::string ident = line.substr(b, e - b + 1);
    if (seen.insert(ident).second) list.removals.push_back(ident);
  }
  return list;
}

ReconfigResult remove_features(const ProjectModel& project,
                               const FeatureDirectiveList& list) {
  std::set<std::string> listed(list.removals.begin(), list.removals.end());
  std::set<std::string> present;
  collectGuardIdents(project, &present);

  ReconfigResult result;
  for (const auto& id : list.removals)
    if (!present.count(id)) result.unknownFeatures.push_back(id);

  // Listed features are treated as undefined (delete-guarded-code) or as
  // defined (keep-code-strip-guards); unlisted guards stay in place.
  bool defined = list.mode == RemovalMode::KeepCodeStripGuards;
  Decider decide = [&](const std::string& ident, bool negated) {
    if (!listed.count(ident)) return Verdict::Untouched;
    return (defined != negated) ? Verdict::KeepThen : Verdict::KeepElse;
  };
  result.project = resolveProject(project, decide);
  return result;
}

ProjectModel strip_dead_directives(const ProjectModel& project,
                                   const std::set<std::string>& enabled) {
  Decider decide = [&](const std::string& ident, bool negated) {
    bool defined = enabled.count(ident) > 0;
    return (defined != negated) ? Verdict::KeepThen : Verdict::KeepElse;
  };
  return resolveProject(project, decide);
}

}  // namespace transplant
