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

#include "transplant/ast.hpp"

namespace transplant {

const Ast* ProjectModel::findAst(const std::string& path) const {
  for (const auto& a : asts)
    if (a.file == path) return &a;
  return nullptr;
}

const SourceUnit* ProjectModel::findUnit(const std::string& path) const {
  for (const auto& u : units)
    if (u.path == path) return &u;
  return nullptr;
}

namespace {

void walkElements(const std::string& file, const std::vector<Element>& els,
                  const std::function<void(const std::string&,
                                           const Element&)>& fn) {
  for (const auto& e : els) {
    fn(file, e);
    if (e.kind == ElementKind::ConditionalBlock) {
      walkElements(file, e.thenElements, fn);
      walkElements(file, e.elseElements, fn);
    }
  }
}

}  // namespace

void forEachElement(const ProjectModel& project,
                    const std::function<void(const std::string&,
                                             const Element&)>& fn) {
  for (const auto& ast : project.asts) walkElements(ast.file, ast.elements, fn);
}

void forEachStmt(const std::vector<Stmt>& body,
                 const std::function<void(const Stmt&)>& fn) {
  for (const auto& s : body) {
    fn(s);
    forEachStmt(s.children, fn);
    forEachStmt(s.elseChildren, fn);
  }
}

}  // namespace transplant
