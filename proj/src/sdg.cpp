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

#include "transplant/sdg.hpp"

#include <sstream>

#include "transplant/errors.hpp"

namespace transplant {

namespace {

// Names assumed declared by system headers; calls to these become boundary
// symbols instead of resolution errors.
const std::set<std::string> kLibcNames = {
    "printf",  "fprintf", "sprintf", "snprintf", "puts",    "putchar",
    "getchar", "fgets",   "fputs",   "fopen",    "fclose",  "fread",
    "fwrite",  "scanf",   "sscanf",  "malloc",   "calloc",  "realloc",
    "free",    "exit",    "abort",   "atoi",     "atol",    "atof",
    "strtol",  "rand",    "srand",   "strlen",   "strcmp",  "strncmp",
    "strcpy",  "strncpy", "strcat",  "strncat",  "strchr",  "strstr",
    "memcpy",  "memmove", "memset",  "memcmp",   "isalpha", "isdigit",
    "isspace", "toupper", "tolower", "abs",      "labs",    "qsort",
    "time",    "clock",   "perror"};

struct ElementRef {
  std::string file;
  const Element* element;
};

void collectCallSites(const Stmt& s,
                      std::vector<std::pair<std::string, int>>* out) {
  for (std::size_t i = 0; i + 1 < s.tokens.size(); ++i) {
    if (s.tokens[i].isIdent() && !isKeyword(s.tokens[i].text) &&
        s.tokens[i + 1].is("("))
      out->push_back({s.tokens[i].text, s.tokens[i].line});
  }
  for (const auto& c : s.children) collectCallSites(c, out);
  for (const auto& c : s.elseChildren) collectCallSites(c, out);
}

void collectIdentUses(const Stmt& s, std::set<std::string>* out) {
  for (const auto& t : s.tokens)
    if (t.isIdent() && !isKeyword(t.text)) out->insert(t.text);
  for (const auto& c : s.children) collectIdentUses(c, out);
  for (const auto& c : s.elseChildren) collectIdentUses(c, out);
}

void collectLocals(const std::vector<Stmt>& body, std::set<std::string>* out) {
  forEachStmt(body, [&](const Stmt& s) {
    for (const auto& n : s.declNames) out->insert(n);
  });
}

// Enum member names from a TypeDefinition's token stream.
std::vector<std::string> enumMembers(const Element& e) {
  std::vector<std::string> out;
  bool isEnum = false;
  for (const auto& t : e.tokens)
    if (t.is("enum")) isEnum = true;
  if (!isEnum) return out;
  int depth = 0;
  bool expectName = false;
  for (const auto& t : e.tokens) {
    if (t.is("{")) {
      ++depth;
      expectName = true;
      continue;
    }
    if (t.is("}")) {
      --depth;
      continue;
    }
    if (depth != 1) continue;
    if (t.is(",")) {
      expectName = true;
      continue;
    }
    if (expectName && t.isIdent()) {
      out.push_back(t.text);
      expectName = false;
    }
  }
  return out;
}

}  // namespace

const char* to_string(SdgEdgeKind k) {
  switch (k) {
    case SdgEdgeKind::Call: return "call";
    case SdgEdgeKind::Data: return "data";
    case SdgEdgeKind::Control: return "control";
    case SdgEdgeKind::Declares: return "declares";
    case SdgEdgeKind::Includes: return "includes";
  }
  return "?";
}

Sdg build_sdg(const ProjectModel& project) {
  Sdg sdg;

  // Node ids follow (file, span) order: units are path-sorted and elements
  // appear in file order, so a single traversal is deterministic.
  std::vector<ElementRef> refs;
  forEachElement(project, [&](const std::string& file, const Element& e) {
    if (e.kind == ElementKind::ConditionalBlock) return;
    refs.push_back({file, &e});
  });

  std::map<std::string, std::vector<int>> functionDefs;  // name -> node ids
  std::map<std::string, int> functionDecls;
  std::map<std::string, std::vector<int>> globalDefs;
  std::map<std::string, int> typeDefs;
  std::map<std::string, int> constDefs;
  std::map<std::string, int> enumMemberOf;  // member -> type node
  std::map<std::string, std::vector<int>> includesByFile;

  for (const auto& ref : refs) {
    SdgNode n;
    n.id = (int)sdg.nodes.size();
    n.file = ref.file;
    n.name = ref.element->name;
    n.kind = ref.element->kind;
    sdg.elementOf[n.id] = ref.element;
    if (!n.name.empty() && !sdg.nameIndex.count(n.name))
      sdg.nameIndex[n.name] = n.id;
    switch (ref.element->kind) {
      case ElementKind::FunctionDefinition:
        functionDefs[n.name].push_back(n.id);
        sdg.nameIndex[n.name] = functionDefs[n.name].front();
        break;
      case ElementKind::FunctionDeclaration:
        if (!functionDecls.count(n.name)) functionDecls[n.name] = n.id;
        break;
      case ElementKind::GlobalVariable:
        globalDefs[n.name].push_back(n.id);
        break;
      case ElementKind::TypeDefinition: {
        typeDefs[n.name] = n.id;
        for (const auto& m : enumMembers(*ref.element)) enumMemberOf[m] = n.id;
        break;
      }
      case ElementKind::ConstantDefinition:
        constDefs[n.name] = n.id;
        break;
      case ElementKind::IncludeDirective:
        includesByFile[n.file].push_back(n.id);
        break;
      default:
        break;
    }
    sdg.nodes.push_back(n);
  }

  // Prefer function definitions over declarations in the name index.
  for (const auto& [name, ids] : functionDefs) sdg.nameIndex[name] = ids.front();

  std::set<std::tuple<int, int, int>> seen;
  auto addEdge = [&](int from, int to, SdgEdgeKind kind) {
    if (from == to) return;
    if (!seen.insert({from, to, (int)kind}).second) return;
    sdg.edges.push_back(SdgEdge{from, to, kind});
    sdg.out[from].push_back(to);
  };

  auto typeNodeFor = [&](const std::string& typeText) -> int {
    std::istringstream ss(typeText);
    std::string word;
    while (ss >> word) {
      if (word == "*" || isTypeKeyword(word)) {
        if (word == "struct" || word == "enum") continue;
        // after struct/enum the tag follows; fall through on next word
        if (isTypeKeyword(word)) continue;
      }
      auto it = typeDefs.find(word);
      if (it != typeDefs.end()) return it->second;
    }
    return -1;
  };

  // Edges per element.
  for (std::size_t i = 0; i < sdg.nodes.size(); ++i) {
    const SdgNode& n = sdg.nodes[i];
    const Element& e = *sdg.elementOf.at(n.id);

    for (int inc : includesByFile[n.file])
      if (e.kind == ElementKind::FunctionDefinition ||
          e.kind == ElementKind::GlobalVariable)
        addEdge(n.id, inc, SdgEdgeKind::Includes);

    if (e.kind == ElementKind::GlobalVariable) {
      int tn = typeNodeFor(e.varType);
      if (tn >= 0) addEdge(n.id, tn, SdgEdgeKind::Declares);
      // Initializer references.
      bool afterName = false;
      for (const auto& t : e.tokens) {
        if (t.isIdent() && t.text == e.name) afterName = true;
        if (!afterName || !t.isIdent() || isKeyword(t.text)) continue;
        if (t.text == e.name) continue;
        if (constDefs.count(t.text)) addEdge(n.id, constDefs[t.text], SdgEdgeKind::Declares);
        else if (enumMemberOf.count(t.text)) addEdge(n.id, enumMemberOf[t.text], SdgEdgeKind::Declares);
        else if (globalDefs.count(t.text))
          for (int g : globalDefs[t.text]) addEdge(n.id, g, SdgEdgeKind::Data);
      }
      continue;
    }

    if (e.kind != ElementKind::FunctionDefinition) continue;

    // Locals shadow globals.
    std::set<std::string> locals;
    for (const auto& p : e.params) locals.insert(p.name);
    collectLocals(e.body, &locals);

    int tn = typeNodeFor(e.returnType);
    if (tn >= 0) addEdge(n.id, tn, SdgEdgeKind::Declares);
    for (const auto& p : e.params) {
      int pt = typeNodeFor(p.type);
      if (pt >= 0) addEdge(n.id, pt, SdgEdgeKind::Declares);
    }

    std::vector<std::pair<std::string, int>> calls;
    std::set<std::string> uses;
    for (const auto& s : e.body) {
      collectCallSites(s, &calls);
      collectIdentUses(s, &uses);
    }
    std::set<std::string> callNames;
    for (const auto& [callee, line] : calls) {
      callNames.insert(callee);
      auto it = functionDefs.find(callee);
      if (it != functionDefs.end()) {
        addEdge(n.id, it->second.front(), SdgEdgeKind::Call);
        continue;
      }
      if (functionDecls.count(callee) || kLibcNames.count(callee)) {
        sdg.boundarySymbols.insert(callee);
        continue;
      }
      throw UnresolvedSymbol(callee, n.file, line);
    }
    for (const auto& u : uses) {
      if (locals.count(u) || callNames.count(u)) continue;
      if (globalDefs.count(u)) {
        // Conservative: a read links to every definition of that global.
        for (int g : globalDefs[u]) addEdge(n.id, g, SdgEdgeKind::Data);
      } else if (typeDefs.count(u)) {
        addEdge(n.id, typeDefs[u], SdgEdgeKind::Declares);
      } else if (constDefs.count(u)) {
        addEdge(n.id, constDefs[u], SdgEdgeKind::Declares);
      } else if (enumMemberOf.count(u)) {
        addEdge(n.id, enumMemberOf[u], SdgEdgeKind::Declares);
      }
    }
    // Local declaration types.
    forEachStmt(e.body, [&](const Stmt& s) {
      if (s.kind != StmtKind::Declaration) return;
      int dt = typeNodeFor(s.declType);
      if (dt >= 0) addEdge(n.id, dt, SdgEdgeKind::Declares);
    });
  }

  // Statement nodes, linked by control edges from their function.
  std::size_t elementCount = sdg.nodes.size();
  for (std::size_t i = 0; i < elementCount; ++i) {
    const SdgNode n = sdg.nodes[i];
    const Element& e = *sdg.elementOf.at(n.id);
    if (e.kind != ElementKind::FunctionDefinition) continue;
    for (std::size_t k = 0; k < e.body.size(); ++k) {
      SdgNode sn;
      sn.id = (int)sdg.nodes.size();
      sn.file = n.file;
      sn.name = n.name + "#" + std::to_string(k);
      sn.kind = ElementKind::FunctionDefinition;
      sn.statementIndex = (int)k;
      sdg.elementOf[sn.id] = &e;
      sdg.nodes.push_back(sn);
      addEdge(n.id, sn.id, SdgEdgeKind::Control);
    }
  }

  return sdg;
}

std::string to_dot(const Sdg& sdg) {
  std::ostringstream out;
  out << "digraph sdg {\n";
  for (const auto& n : sdg.nodes) {
    if (n.statementIndex >= 0) continue;  // keep the rendering readable
    out << "  n" << n.id << " [label=\"" << n.name << "\"];\n";
  }
  for (const auto& e : sdg.edges) {
    if (sdg.nodes[e.from].statementIndex >= 0 ||
        sdg.nodes[e.to].statementIndex >= 0)
      continue;
    out << "  n" << e.from << " -> n" << e.to << " [label=\""
        << to_string(e.kind) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace transplant
