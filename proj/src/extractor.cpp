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

#include "transplant/errors.hpp"
#include "transplant/organ.hpp"
#include "transplant/parser.hpp"
#include "transplant/printer.hpp"

namespace transplant {

namespace {

void collectStmtTokens(const Stmt& s, std::vector<Token>* out) {
  for (const auto& t : s.tokens) out->push_back(t);
  for (const auto& c : s.children) collectStmtTokens(c, out);
  for (const auto& c : s.elseChildren) collectStmtTokens(c, out);
}

std::set<std::string> identsIn(const std::string& code) {
  std::set<std::string> out;
  for (const auto& t : lex("<mem>", code))
    if (t.kind == TokKind::Ident && !isKeyword(t.text)) out.insert(t.text);
  return out;
}

// Splits the argument list of the first call to `callee` in the token
// stream into top-level argument texts.
std::vector<std::string> extractCallArgs(const std::vector<Token>& toks,
                                         const std::string& callee) {
  std::vector<std::string> args;
  std::size_t i = 0;
  for (; i + 1 < toks.size(); ++i)
    if (toks[i].isIdent() && toks[i].text == callee && toks[i + 1].is("("))
      break;
  if (i + 1 >= toks.size()) return args;
  i += 2;
  int depth = 1;
  std::vector<Token> cur;
  for (; i < toks.size(); ++i) {
    const Token& t = toks[i];
    if (t.is("(") || t.is("[")) ++depth;
    if (t.is(")") || t.is("]")) {
      --depth;
      if (depth == 0) break;
    }
    if (t.is(",") && depth == 1) {
      if (!cur.empty()) args.push_back(join_tokens(cur));
      cur.clear();
      continue;
    }
    cur.push_back(t);
  }
  if (!cur.empty()) args.push_back(join_tokens(cur));
  return args;
}

std::map<std::string, std::string> localRenames(const Element& fn, int depth) {
  std::map<std::string, std::string> renames;
  std::string prefix = "__v" + std::to_string(depth) + "_";
  for (const auto& p : fn.params) renames[p.name] = prefix + p.name;
  forEachStmt(fn.body, [&](const Stmt& s) {
    for (const auto& n : s.declNames) renames[n] = prefix + n;
  });
  return renames;
}

struct InlineContext {
  const ProjectModel& project;
  const Sdg& sdg;
  OverOrgan* organ;
  VeinInlineRecord* record;
  std::vector<std::string> stack;
  int depth = 0;

  const Element* functionDef(const std::string& name) const {
    auto it = sdg.nameIndex.find(name);
    if (it == sdg.nameIndex.end()) return nullptr;
    const Element* e = sdg.elementOf.at(it->second);
    return e->kind == ElementKind::FunctionDefinition ? e : nullptr;
  }

  const Ast* astOf(const std::string& name) const {
    auto it = sdg.nameIndex.find(name);
    if (it == sdg.nameIndex.end()) return nullptr;
    return project.findAst(sdg.nodes[it->second].file);
  }

  bool onStack(const std::string& name) const {
    return std::find(stack.begin(), stack.end(), name) != stack.end();
  }

  // Makes sure a function cut out of the inlining (recursion) still ships
  // with the organ, together with everything it needs.
  void addStandaloneClosure(const std::string& name) {
    auto slice = forward_slice(sdg, name);
    for (int id : slice) {
      if (sdg.nodes[id].statementIndex >= 0) continue;
      const Element* e = sdg.elementOf.at(id);
      if (e->kind == ElementKind::IncludeDirective ||
          e->kind == ElementKind::FunctionDeclaration)
        continue;
      const std::string& file = sdg.nodes[id].file;
      bool present = false;
      for (const auto& oe : organ->organElements)
        if (oe.name == e->name && oe.file == file) present = true;
      if (present) continue;
      const Ast* ast = project.findAst(file);
      organ->organElements.push_back(OrganElement{
          file, e->name, e->kind, span_text(ast->text, e->span)});
      if (std::find(organ->fileMap.begin(), organ->fileMap.end(), file) ==
          organ->fileMap.end())
        organ->fileMap.push_back(file);
    }
  }

  void emitText(const std::string& file, const std::string& element, int index,
                const std::string& text) {
    StatementEntry e;
    e.kind = StatementEntry::Kind::VeinStatement;
    e.file = file;
    e.element = element;
    e.index = index;
    e.text = text;
    organ->statementArray.push_back(std::move(e));
  }

  // Emits one vein statement, inlining whole-statement calls to project
  // functions. `renames` maps callee locals to capture-free names.
  void emitStmt(const std::string& file, const std::string& function, int index,
                const Stmt& stmt, const std::string& rawText,
                const std::map<std::string, std::string>& renames) {
    std::vector<Token> toks;
    collectStmtTokens(stmt, &toks);

    // Whole-statement call `callee(...);` to a project function?
    std::string callee;
    if (stmt.kind == StmtKind::Expression && toks.size() >= 3 &&
        toks[0].isIdent() && toks[1].is("(") && functionDef(toks[0].text))
      callee = toks[0].text;

    if (callee.empty()) {
      // Embedded calls keep their call sites; ship the callees standalone.
      for (std::size_t i = 0; i + 1 < toks.size(); ++i)
        if (toks[i].isIdent() && !isKeyword(toks[i].text) &&
            toks[i + 1].is("(") && functionDef(toks[i].text))
          addStandaloneClosure(toks[i].text);
      emitText(file, function, index, rename_identifiers(rawText, renames));
      return;
    }

    if (onStack(callee)) {
      record->recursiveCalls.push_back(callee);
      addStandaloneClosure(callee);
      emitText(file, function, index, rename_identifiers(rawText, renames));
      return;
    }
    inlineCall(callee, extractCallArgs(toks, callee), renames);
  }

  // Inlines `callee(args)` as parameter bindings plus its body statements.
  void inlineCall(const std::string& callee, std::vector<std::string> args,
                  const std::map<std::string, std::string>& renames) {
    const Element* fn = functionDef(callee);
    const Ast* ast = astOf(callee);
    stack.push_back(callee);
    record->functionStack.push_back(callee);
    ++depth;
    auto inner = localRenames(*fn, depth);
    for (std::size_t i = 0; i < fn->params.size() && i < args.size(); ++i) {
      std::string bound = rename_identifiers(args[i], renames);
      emitText(ast->file, callee, -1,
               fn->params[i].type + " " + inner.at(fn->params[i].name) + " = " +
                   bound + ";");
    }
    for (std::size_t k = 0; k < fn->body.size(); ++k) {
      const Stmt& s = fn->body[k];
      std::string raw = span_text(ast->text, s.span);
      if (s.kind == StmtKind::Return) {
        if (!s.tokens.empty())
          emitText(ast->file, callee, (int)k,
                   rename_identifiers(join_tokens(s.tokens), inner) + ";");
        continue;
      }
      emitStmt(ast->file, callee, (int)k, s, raw, inner);
    }
    --depth;
    stack.pop_back();
  }
};

}  // namespace

OverOrgan extract_over_organ(const ProjectModel& project, const Sdg& sdg,
                             const std::string& entry,
                             const std::string& featureId) {
  auto slice = forward_slice(sdg, entry);
  auto vein = backward_slice(sdg, project, entry);

  OverOrgan organ;
  organ.featureId = featureId;
  organ.entryPoint = entry;

  // Elements the vein needs beyond the organ closure. Functions on the
  // call path itself are excluded: their statements are inlined, not
  // carried as elements.
  std::set<std::string> pathFns{"main"};
  for (const auto& vs : vein) {
    pathFns.insert(vs.function);
    if (!vs.calleeOnPath.empty()) pathFns.insert(vs.calleeOnPath);
  }
  std::set<std::string> veinNames;
  for (const auto& vs : vein) {
    std::set<std::string> uses;
    if (vs.stmt) {
      std::vector<Token> toks;
      collectStmtTokens(*vs.stmt, &toks);
      for (const auto& t : toks)
        if (t.isIdent() && !isKeyword(t.text)) uses.insert(t.text);
    }
    for (const auto& u : uses) veinNames.insert(u);
  }
  for (const auto& name : veinNames) {
    if (name == entry || pathFns.count(name)) continue;
    auto it = sdg.nameIndex.find(name);
    if (it == sdg.nameIndex.end()) continue;
    if (slice.count(it->second)) continue;
    auto extra = forward_slice(sdg, name);
    slice.insert(extra.begin(), extra.end());
  }

  std::set<const Element*> sliced;
  for (int id : slice) {
    if (sdg.nodes[id].statementIndex >= 0) continue;
    sliced.insert(sdg.elementOf.at(id));
  }

  for (const auto& ast : project.asts) {
    bool fileUsed = false;
    std::function<void(const std::vector<Element>&)> walk =
        [&](const std::vector<Element>& els) {
          for (const auto& e : els) {
            if (e.kind == ElementKind::ConditionalBlock) {
              walk(e.thenElements);
              walk(e.elseElements);
              continue;
            }
            if (!sliced.count(&e)) continue;
            if (e.kind == ElementKind::IncludeDirective ||
                e.kind == ElementKind::FunctionDeclaration)
              continue;
            organ.organElements.push_back(OrganElement{
                ast.file, e.name, e.kind, span_text(ast.text, e.span)});
            fileUsed = true;
          }
        };
    walk(ast.elements);
    if (fileUsed) {
      organ.fileMap.push_back(ast.file);
      for (const auto& e : ast.elements)
        if (e.kind == ElementKind::IncludeDirective)
          organ.fileIncludes[ast.file].push_back(
              span_text(ast.text, e.span));
    }
  }

  // Entry signature.
  auto entryIt = sdg.nameIndex.find(entry);
  const Element* entryEl = sdg.elementOf.at(entryIt->second);
  organ.entryReturnType = entryEl->returnType;
  organ.entryParams = entryEl->params;

  // Vein statements with provenance and raw text.
  for (const auto& vs : vein) {
    const Ast* ast = project.findAst(vs.file);
    StatementEntry e;
    e.kind = StatementEntry::Kind::VeinStatement;
    e.file = vs.file;
    e.element = vs.function;
    e.index = vs.statementIndex;
    e.text = span_text(ast->text, vs.stmt->span);
    organ.veinStatements.push_back(std::move(e));
  }

  // Boundary symbols referenced by organ or vein.
  std::set<std::string> used;
  for (const auto& oe : organ.organElements)
    for (const auto& id : identsIn(oe.text)) used.insert(id);
  for (const auto& vs : organ.veinStatements)
    for (const auto& id : identsIn(vs.text)) used.insert(id);
  for (const auto& b : sdg.boundarySymbols)
    if (used.count(b)) organ.boundarySymbols.push_back(b);

  return organ;
}

OverOrgan build_statement_array(OverOrgan organ, const ProjectModel& project,
                                const Sdg& sdg, VeinInlineRecord* record) {
  VeinInlineRecord localRecord;
  if (!record) record = &localRecord;
  organ.statementArray.clear();

  // Every organ element other than the entry point is selectable at
  // element granularity.
  for (const auto& oe : organ.organElements) {
    if (oe.name == organ.entryPoint &&
        oe.kind == ElementKind::FunctionDefinition)
      continue;
    StatementEntry e;
    e.kind = StatementEntry::Kind::OrganElement;
    e.file = oe.file;
    e.element = oe.name;
    e.index = -1;
    organ.statementArray.push_back(std::move(e));
  }

  // Vein: path-function statements with descending calls expanded.
  auto vein = backward_slice(sdg, project, organ.entryPoint);
  InlineContext ctx{project, sdg, &organ, record};

  // The vein list descends the call path; a stmt whose calleeOnPath names
  // the next function hands off to that function's statements.
  std::function<void(std::size_t, int, std::map<std::string, std::string>)>
      emitFrom = [&](std::size_t i, int depth,
                     std::map<std::string, std::string> renames) {
        for (; i < vein.size(); ++i) {
          const auto& vs = vein[i];
          const Ast* ast = project.findAst(vs.file);
          std::string raw = span_text(ast->text, vs.stmt->span);
          if (!vs.calleeOnPath.empty()) {
            std::vector<Token> toks;
            collectStmtTokens(*vs.stmt, &toks);
            auto args = extractCallArgs(toks, vs.calleeOnPath);
            for (auto& a : args) a = rename_identifiers(a, renames);
            if (vs.calleeOnPath == organ.entryPoint) {
              organ.entryCallArgs = args;
              StatementEntry call;
              call.kind = StatementEntry::Kind::EntryCall;
              call.file = vs.file;
              call.element = organ.entryPoint;
              call.index = -1;
              std::string argList;
              for (std::size_t k = 0; k < args.size(); ++k) {
                if (k) argList += ", ";
                argList += args[k];
              }
              call.text = organ.entryPoint + "(" + argList + ");";
              organ.statementArray.push_back(std::move(call));
              continue;
            }
            // Descend into the next path function.
            const Element* fn = ctx.functionDef(vs.calleeOnPath);
            ctx.stack.push_back(vs.calleeOnPath);
            record->functionStack.push_back(vs.calleeOnPath);
            auto inner = localRenames(*fn, depth + 1);
            const Ast* fnAst = ctx.astOf(vs.calleeOnPath);
            for (std::size_t k = 0; k < fn->params.size() && k < args.size(); ++k)
              ctx.emitText(fnAst->file, vs.calleeOnPath, -1,
                           fn->params[k].type + " " +
                               inner.at(fn->params[k].name) + " = " + args[k] +
                               ";");
            emitFrom(i + 1, depth + 1, inner);
            ctx.stack.pop_back();
            return;
          }
          ctx.depth = depth;
          ctx.emitStmt(vs.file, vs.function, vs.statementIndex, *vs.stmt, raw,
                       renames);
        }
      };
  emitFrom(0, 0, {});

  // Entry with no vein (entry == main): the call is still synthesized.
  if (vein.empty()) {
    StatementEntry call;
    call.kind = StatementEntry::Kind::EntryCall;
    call.element = organ.entryPoint;
    call.index = -1;
    std::string argList;
    call.text = organ.entryPoint + "();";
    organ.statementArray.push_back(std::move(call));
  }

  // Free vein variables: used but never defined by the array, the donor's
  // globals, functions, or constants.
  std::set<std::string> defined;
  std::set<std::string> usedNames;
  for (const auto& e : organ.statementArray) {
    if (e.text.empty()) continue;
    for (const auto& t : lex("<mem>", e.text)) {
      if (t.kind != TokKind::Ident || isKeyword(t.text)) continue;
      usedNames.insert(t.text);
    }
    Ast mini;
    // Declared names inside the array define variables.
    try {
      mini = parse_file("<stmt>", "void __w(void){" + e.text + "}");
      if (!mini.elements.empty())
        forEachStmt(mini.elements[0].body, [&](const Stmt& s) {
          for (const auto& n : s.declNames) defined.insert(n);
        });
    } catch (const Error&) {
      // Fragment does not parse standalone (e.g. bare expression); fine.
    }
  }
  for (const auto& [name, id] : sdg.nameIndex) defined.insert(name);
  for (const auto& b : organ.boundarySymbols) defined.insert(b);
  for (const auto& u : usedNames) {
    if (defined.count(u)) continue;
    // Type it from the vein path functions' locals when possible.
    std::string type = "int";
    for (const auto& vs : vein) {
      auto it = sdg.nameIndex.find(vs.function);
      if (it == sdg.nameIndex.end()) continue;
      const Element* fn = sdg.elementOf.at(it->second);
      for (const auto& p : fn->params)
        if (p.name == u) type = p.type;
      forEachStmt(fn->body, [&](const Stmt& s) {
        for (const auto& n : s.declNames)
          if (n == u && !s.declType.empty()) type = s.declType;
      });
    }
    organ.freeVeinVars.push_back(Param{type, u});
  }
  return organ;
}

std::string organ_forward_decls(const OverOrgan& organ,
                                const std::string& forFile) {
  std::string decls;
  for (const auto& oe : organ.organElements) {
    if (oe.kind == ElementKind::FunctionDefinition) {
      Ast ast = parse_file("<decl>", oe.text);
      const Element& fn = ast.elements.at(0);
      std::string d = fn.returnType + " " + fn.name + "(";
      for (std::size_t i = 0; i < fn.params.size(); ++i) {
        if (i) d += ", ";
        d += fn.params[i].type;
        if (!fn.params[i].name.empty()) d += " " + fn.params[i].name;
      }
      if (fn.params.empty()) d += "void";
      decls += d + ");\n";
    } else if (oe.kind == ElementKind::GlobalVariable && oe.file != forFile) {
      Ast ast = parse_file("<decl>", oe.text);
      const Element& g = ast.elements.at(0);
      decls += "extern " + g.varType + " " + g.name + ";\n";
    }
  }
  return decls;
}

std::map<std::string, std::string> render_organ_files(const OverOrgan& organ) {
  std::map<std::string, std::string> files;
  for (const auto& file : organ.fileMap) {
    std::string out;
    auto inc = organ.fileIncludes.find(file);
    if (inc != organ.fileIncludes.end()) {
      for (const auto& line : inc->second) {
        // Quoted includes of files the organ does not carry are dropped;
        // synthesized declarations below replace them.
        auto q = line.find('"');
        if (q != std::string::npos) {
          auto q2 = line.find('"', q + 1);
          std::string target = line.substr(q + 1, q2 - q - 1);
          if (std::find(organ.fileMap.begin(), organ.fileMap.end(), target) ==
              organ.fileMap.end())
            continue;
        }
        out += line + "\n";
      }
    }

    // Cross-file references resolve through synthesized declarations.
    std::string decls = organ_forward_decls(organ, file);
    if (!out.empty() && !decls.empty()) out += "\n";
    out += decls;

    for (const auto& oe : organ.organElements) {
      if (oe.file != file) continue;
      if (!out.empty()) out += "\n";
      out += oe.text;
      if (out.back() != '\n') out += "\n";
    }
    files[file] = out;
  }
  return files;
}

}  // namespace transplant
