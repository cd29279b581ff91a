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

#include "transplant/wrapper.hpp"

#include <algorithm>
#include <functional>

#include "transplant/errors.hpp"
#include "transplant/parser.hpp"
#include "transplant/printer.hpp"

namespace transplant {

namespace {

std::string defaultMarker(const std::string& featureId) {
  return "/*@transplant:" + featureId + "*/";
}

void walkElements(const std::vector<Element>& els,
                  const std::function<void(const Element&)>& fn) {
  for (const auto& e : els) {
    if (e.kind == ElementKind::ConditionalBlock) {
      walkElements(e.thenElements, fn);
      walkElements(e.elseElements, fn);
      continue;
    }
    fn(e);
  }
}

}  // namespace

std::map<std::string, std::string> collect_typedefs(
    const std::map<std::string, std::string>& files) {
  std::map<std::string, std::string> out;
  for (const auto& [path, content] : files) {
    if (path.size() < 2 || content.empty()) continue;
    Ast ast;
    try {
      ast = parse_file(path, content);
    } catch (const Error&) {
      continue;  // non-subset file: no typedefs harvested
    }
    walkElements(ast.elements, [&](const Element& e) {
      if (e.kind != ElementKind::TypeDefinition) return;
      // "typedef <underlying...> <name>;" — peel keyword, name, semicolon.
      auto toks = lex(path, span_text(ast.text, e.span));
      std::vector<Token> underlying;
      for (const auto& t : toks)
        if (t.kind != TokKind::Comment && t.kind != TokKind::Eof)
          underlying.push_back(t);
      if (underlying.size() < 4) return;
      underlying.erase(underlying.begin());      // typedef
      underlying.pop_back();                     // ;
      underlying.pop_back();                     // name
      out[e.name] = join_tokens(underlying);
    });
  }
  return out;
}

std::string canonical_type(const std::string& type,
                           const std::map<std::string, std::string>& typedefs) {
  std::string cur = type;
  for (int round = 0; round < 10; ++round) {
    auto toks = lex("<type>", cur);
    std::vector<Token> kept;
    bool changed = false;
    std::string next;
    for (const auto& t : toks) {
      if (t.kind == TokKind::Comment || t.kind == TokKind::Eof) continue;
      if (t.isIdent() && typedefs.count(t.text)) {
        // Splice the underlying spelling in textually and re-lex.
        changed = true;
        Token sub = t;
        sub.text = typedefs.at(t.text);
        kept.push_back(sub);
      } else {
        kept.push_back(t);
      }
    }
    next = join_tokens(kept);
    if (!changed) return next;
    cur = next;
  }
  return cur;
}

HostContext resolve_host_context(const ProductBase& base,
                                 const std::string& featureId) {
  HostContext host;
  host.productBaseId = base.id;
  host.buildCommand = base.buildCommand;
  auto ip = base.insertionPoints.find(featureId);
  host.marker = ip != base.insertionPoints.end() ? ip->second
                                                 : defaultMarker(featureId);

  // The marker must occur exactly once across the whole product base.
  int occurrences = 0;
  std::size_t off = 0;
  for (const auto& [path, content] : base.files) {
    for (std::size_t pos = content.find(host.marker);
         pos != std::string::npos; pos = content.find(host.marker, pos + 1)) {
      ++occurrences;
      host.file = path;
      off = pos;
    }
  }
  if (occurrences == 0) throw MarkerNotFound(featureId);
  if (occurrences > 1) throw MarkerAmbiguous(featureId);

  std::vector<std::pair<std::string, std::string>> files(base.files.begin(),
                                                         base.files.end());
  ProjectModel pm = parse_project("/host", files);
  auto typedefs = collect_typedefs(base.files);

  // Scope at the marker: globals, then the enclosing function's parameters,
  // then local declarations of enclosing blocks before the marker. Later
  // entries shadow earlier ones by name.
  std::vector<Param> scope;
  auto add = [&](const std::string& type, const std::string& name) {
    if (name.empty() || type.empty()) return;
    Param p{canonical_type(type, typedefs), name};
    for (auto& existing : scope)
      if (existing.name == name) {
        existing = p;
        return;
      }
    scope.push_back(p);
  };

  for (const auto& ast : pm.asts)
    walkElements(ast.elements, [&](const Element& e) {
      if (e.kind == ElementKind::GlobalVariable) add(e.varType, e.name);
    });

  const Ast* ast = pm.findAst(host.file);
  const Element* enclosing = nullptr;
  walkElements(ast->elements, [&](const Element& e) {
    if (e.kind == ElementKind::FunctionDefinition && e.span.begin <= off &&
        off < e.span.end)
      enclosing = &e;
  });
  if (enclosing) {
    host.enclosingFunction = enclosing->name;
    for (const auto& p : enclosing->params) add(p.type, p.name);
    std::function<void(const std::vector<Stmt>&)> visit =
        [&](const std::vector<Stmt>& list) {
          for (const auto& s : list) {
            if (s.kind == StmtKind::Declaration && s.span.end <= off &&
                !s.declType.empty())
              for (const auto& n : s.declNames) add(s.declType, n);
            if (s.span.begin <= off && off < s.span.end) {
              // Descend only into the branch holding the marker.
              std::size_t thenEnd = 0;
              for (const auto& c : s.children)
                thenEnd = std::max(thenEnd, c.span.end);
              if (off < thenEnd || s.elseChildren.empty())
                visit(s.children);
              else
                visit(s.elseChildren);
            }
          }
        };
    visit(enclosing->body);
  }
  host.visibleVariables = std::move(scope);
  return host;
}

Wrapper synthesize_wrapper(const OverOrgan& organ, const HostContext& host) {
  Wrapper w;
  auto organTypedefs = collect_typedefs(render_organ_files(organ));

  auto makeSlot = [&](const std::string& symbol, const std::string& type,
                      bool isEntryParam, const std::string& originalExpr) {
    WrapperSlot slot;
    slot.organSymbol = symbol;
    slot.type = canonical_type(type, organTypedefs);
    slot.isEntryParam = isEntryParam;
    if (!originalExpr.empty()) slot.candidates.push_back(originalExpr);
    for (const auto& v : host.visibleVariables) {
      if (v.type != slot.type) continue;
      if (std::find(slot.candidates.begin(), slot.candidates.end(), v.name) ==
          slot.candidates.end())
        slot.candidates.push_back(v.name);
    }
    w.parameterSlots.push_back(std::move(slot));
  };

  for (std::size_t i = 0; i < organ.entryParams.size(); ++i)
    makeSlot(organ.entryParams[i].name, organ.entryParams[i].type, true,
             i < organ.entryCallArgs.size() ? organ.entryCallArgs[i] : "");
  for (const auto& fv : organ.freeVeinVars)
    makeSlot(fv.name, fv.type, false, "");

  w.setupStatements = organ.veinStatements;

  std::string args;
  for (std::size_t i = 0; i < organ.entryParams.size(); ++i) {
    if (i) args += ", ";
    args += i < organ.entryCallArgs.size() ? organ.entryCallArgs[i]
                                           : organ.entryParams[i].name;
  }
  w.callStatement = organ.entryPoint + "(" + args + ");";
  return w;
}

}  // namespace transplant
