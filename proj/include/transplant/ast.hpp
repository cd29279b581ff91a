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

#ifndef TRANSPLANT_AST_HPP
#define TRANSPLANT_AST_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "transplant/lexer.hpp"

namespace transplant {

struct Span {
  std::size_t begin = 0;  // byte offset, inclusive
  std::size_t end = 0;    // byte offset, exclusive
  int startLine = 0;
  int endLine = 0;
};

enum class StmtKind {
  Compound,
  If,
  While,
  For,
  Switch,
  Case,
  Default,
  Return,
  Break,
  Continue,
  Expression,
  Declaration,
  CondBlock,  // #ifdef/#ifndef inside a function body
};

struct Stmt {
  StmtKind kind = StmtKind::Expression;
  Span span;
  // Header tokens: the condition for if/while/switch, the whole `(...)`
  // content for for, the full token list for expression/return/declaration
  // statements (terminating ';' excluded).
  std::vector<Token> tokens;
  std::vector<Stmt> children;     // body statements (then-branch for If)
  std::vector<Stmt> elseChildren; // else-branch for If, #else for CondBlock
  // Declaration details (kind == Declaration).
  std::vector<std::string> declNames;
  std::string declType;  // canonical type text, e.g. "int" or "char *"
  // CondBlock details.
  std::string condIdent;
  bool condNegated = false;
  Span guardTop;
  Span guardElse;  // begin==end when absent
  Span guardEnd;
};

enum class ElementKind {
  FunctionDefinition,
  FunctionDeclaration,
  GlobalVariable,
  TypeDefinition,
  ConstantDefinition,
  IncludeDirective,
  ConditionalBlock,
};

struct Param {
  std::string type;
  std::string name;
};

struct Element {
  ElementKind kind = ElementKind::GlobalVariable;
  std::string name;  // empty for directives
  Span span;
  std::vector<Token> tokens;  // all tokens of the element, comments included

  // Function details.
  std::string returnType;
  std::vector<Param> params;
  std::vector<Stmt> body;  // FunctionDefinition only

  // Global variable details.
  std::string varType;

  // Include details.
  std::string includeTarget;
  bool systemInclude = false;

  // ConditionalBlock details.
  std::string condIdent;
  bool condNegated = false;
  std::vector<Element> thenElements;
  std::vector<Element> elseElements;
  Span guardTop;    // the #ifdef/#ifndef line
  Span guardElse;   // the #else line, begin==end when absent
  Span guardEnd;    // the #endif line
};

struct Ast {
  std::string file;  // relative path
  std::string text;  // normalized (LF) source text the spans refer to
  std::vector<Element> elements;
};

enum class UnitKind { Header, Implementation };

struct SourceUnit {
  std::string path;  // relative, forward slashes
  std::string text;  // LF-normalized UTF-8
  UnitKind kind = UnitKind::Implementation;
};

struct ProjectModel {
  std::string root;
  std::vector<SourceUnit> units;
  std::vector<Ast> asts;  // parallel to units

  const Ast* findAst(const std::string& path) const;
  const SourceUnit* findUnit(const std::string& path) const;
};

// Walks every active element (recursing through conditional blocks) in file
// order. The visitor receives the file path and a reference to the element.
void forEachElement(const ProjectModel& project,
                    const std::function<void(const std::string&,
                                             const Element&)>& fn);

// Flattened list of nested statements in pre-order, including children.
void forEachStmt(const std::vector<Stmt>& body,
                 const std::function<void(const Stmt&)>& fn);

}  // namespace transplant

#endif  // TRANSPLANT_AST_HPP
