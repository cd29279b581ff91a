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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "transplant/errors.hpp"
#include "transplant/parser.hpp"
#include "transplant/printer.hpp"

using namespace transplant;

namespace {

std::string readFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("single function definition") {
  Ast ast = parse_file("a.c", "int add(int a,int b){return a+b;}");
  REQUIRE(ast.elements.size() == 1);
  const Element& e = ast.elements[0];
  CHECK(e.kind == ElementKind::FunctionDefinition);
  CHECK(e.name == "add");
  CHECK(e.span.startLine == 1);
  CHECK(e.span.endLine == 1);
  CHECK(e.returnType == "int");
  REQUIRE(e.params.size() == 2);
  CHECK(e.params[0].name == "a");
  CHECK(e.params[1].type == "int");
  REQUIRE(e.body.size() == 1);
  CHECK(e.body[0].kind == StmtKind::Return);
}

TEST_CASE("empty file parses to zero elements") {
  Ast ast = parse_file("a.c", "");
  CHECK(ast.elements.empty());
}

TEST_CASE("function pointer parameter is rejected") {
  CHECK_THROWS_AS(parse_file("a.c", "void f(void (*cb)(int));"),
                  UnsupportedConstruct);
}

TEST_CASE("function pointer local is rejected") {
  CHECK_THROWS_AS(parse_file("a.c", "int g;\nint (*fp)(int);"),
                  UnsupportedConstruct);
}

TEST_CASE("macro with arguments is rejected") {
  CHECK_THROWS_AS(parse_file("a.c", "#define SQ(x) ((x)*(x))\n"),
                  UnsupportedConstruct);
}

TEST_CASE("top level element inventory") {
  const char* src =
      "#include <stdio.h>\n"
      "#include \"util.h\"\n"
      "#define LIMIT 10\n"
      "typedef int myint;\n"
      "struct point { int x; int y; };\n"
      "enum color { RED, GREEN };\n"
      "int counter = 0;\n"
      "int helper(int v);\n"
      "int helper(int v) { return v + counter; }\n";
  Ast ast = parse_file("a.c", src);
  REQUIRE(ast.elements.size() == 9);
  CHECK(ast.elements[0].kind == ElementKind::IncludeDirective);
  CHECK(ast.elements[0].systemInclude);
  CHECK(ast.elements[1].includeTarget == "util.h");
  CHECK_FALSE(ast.elements[1].systemInclude);
  CHECK(ast.elements[2].kind == ElementKind::ConstantDefinition);
  CHECK(ast.elements[2].name == "LIMIT");
  CHECK(ast.elements[3].kind == ElementKind::TypeDefinition);
  CHECK(ast.elements[3].name == "myint");
  CHECK(ast.elements[4].name == "point");
  CHECK(ast.elements[5].name == "color");
  CHECK(ast.elements[6].kind == ElementKind::GlobalVariable);
  CHECK(ast.elements[6].name == "counter");
  CHECK(ast.elements[7].kind == ElementKind::FunctionDeclaration);
  CHECK(ast.elements[8].kind == ElementKind::FunctionDefinition);
}

TEST_CASE("conditional block element") {
  const char* src =
      "#ifdef FEAT_A\n"
      "int a;\n"
      "#else\n"
      "int c;\n"
      "#endif\n"
      "int b;\n";
  Ast ast = parse_file("a.c", src);
  REQUIRE(ast.elements.size() == 2);
  const Element& cond = ast.elements[0];
  CHECK(cond.kind == ElementKind::ConditionalBlock);
  CHECK(cond.condIdent == "FEAT_A");
  CHECK_FALSE(cond.condNegated);
  REQUIRE(cond.thenElements.size() == 1);
  CHECK(cond.thenElements[0].name == "a");
  REQUIRE(cond.elseElements.size() == 1);
  CHECK(cond.elseElements[0].name == "c");
  CHECK(ast.elements[1].name == "b");
}

TEST_CASE("unbalanced directive") {
  CHECK_THROWS_AS(parse_file("a.c", "#ifdef X\nint a;\n"), UnbalancedDirective);
  CHECK_THROWS_AS(parse_file("a.c", "int a;\n#endif\n"), UnbalancedDirective);
}

TEST_CASE("statement kinds in a body") {
  const char* src =
      "int f(int n) {\n"
      "    int total = 0;\n"
      "    int i;\n"
      "    for (i = 0; i < n; i++) {\n"
      "        total = total + i;\n"
      "    }\n"
      "    while (total > 100) { total = total - 1; }\n"
      "    if (total == 0) { return 0; } else { total++; }\n"
      "    switch (n) {\n"
      "    case 1: total = 1; break;\n"
      "    default: break;\n"
      "    }\n"
      "    return total;\n"
      "}\n";
  Ast ast = parse_file("a.c", src);
  REQUIRE(ast.elements.size() == 1);
  const auto& body = ast.elements[0].body;
  REQUIRE(body.size() == 7);
  CHECK(body[0].kind == StmtKind::Declaration);
  CHECK(body[0].declNames == std::vector<std::string>{"total"});
  CHECK(body[0].declType == "int");
  CHECK(body[1].kind == StmtKind::Declaration);
  CHECK(body[2].kind == StmtKind::For);
  CHECK(body[3].kind == StmtKind::While);
  CHECK(body[4].kind == StmtKind::If);
  REQUIRE(body[4].elseChildren.size() == 1);
  CHECK(body[5].kind == StmtKind::Switch);
  CHECK(body[6].kind == StmtKind::Return);
}

TEST_CASE("round trip is byte exact") {
  const char* src =
      "#include <stdio.h>\n"
      "\n"
      "/* a comment */\n"
      "int   g  =  1 ;\n"
      "\n"
      "int main(void) {\n"
      "\tprintf(\"%d\\n\", g);  // trailing\n"
      "    return 0;\n"
      "}\n";
  Ast ast = parse_file("a.c", src);
  CHECK(print(ast) == src);
}

TEST_CASE("round trip over fixture corpus") {
  namespace fs = std::filesystem;
  int checked = 0;
  for (const auto& entry :
       fs::recursive_directory_iterator(std::string(FIXTURES_DIR))) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext != ".c" && ext != ".h") continue;
    std::string text = readFile(entry.path());
    Ast ast = parse_file(entry.path().filename().string(), text);
    CHECK(print(ast) == text);
    ++checked;
  }
  CHECK(checked > 0);
}

TEST_CASE("span soundness: element spans re-parse to the same element") {
  const char* src =
      "#include <stdio.h>\n"
      "int g = 1;\n"
      "int f(int x) {\n"
      "    return x + g;\n"
      "}\n"
      "int h(void) { return f(2); }\n";
  Ast ast = parse_file("a.c", src);
  for (const auto& e : ast.elements) {
    std::string cut = span_text(ast.text, e.span);
    Ast sub = parse_file("cut.c", cut);
    REQUIRE(sub.elements.size() == 1);
    CHECK(sub.elements[0].kind == e.kind);
    CHECK(sub.elements[0].name == e.name);
  }
}

TEST_CASE("delete element splices span and trailing blank line") {
  const char* src =
      "int a;\n"
      "\n"
      "int b;\n";
  Ast ast = parse_file("a.c", src);
  CHECK(delete_element(ast, 0) == "int b;\n");
  CHECK(delete_element(ast, 1) == "int a;\n\n");
}

TEST_CASE("insert element at end appends after a blank line") {
  Ast ast = parse_file("a.c", "int a;\n");
  CHECK(insert_element_at_end(ast, "int b;\n") == "int a;\n\nint b;\n");
}

TEST_CASE("normalize is whitespace invariant") {
  Ast a = parse_file("a.c", "int  x=1 ;");
  Ast b = parse_file("b.c", "int x = 1;");
  CHECK(normalize(a.elements[0]) == normalize(b.elements[0]));
  CHECK(normalize(b.elements[0]) == "int x = 1;\n");
}

TEST_CASE("normalize strips comments") {
  Ast a = parse_file("a.c", "int x=1; /*c*/");
  CHECK(normalize(a.elements[0]) == "int x = 1;\n");
}

TEST_CASE("normalize is indentation invariant across function pair") {
  const char* f1 =
      "int f(int x) {\n"
      "  if (x > 0) {\n"
      "      return 1;\n"
      "  }\n"
      "  return 0;\n"
      "}\n";
  const char* f2 =
      "int f(int x) {\n"
      "    if (x > 0) {\n"
      "        return 1;\n"
      "    }\n"
      "    return 0;\n"
      "}\n";
  Ast a = parse_file("a.c", f1);
  Ast b = parse_file("b.c", f2);
  CHECK(normalize(a.elements[0]) == normalize(b.elements[0]));
}

TEST_CASE("normalize is idempotent through reparse") {
  const char* src = "int f(int a, int b) { int  c = a+b ; return c; }\n";
  Ast ast = parse_file("a.c", src);
  std::string n1 = normalize(ast.elements[0]);
  Ast re = parse_file("n.c", n1);
  REQUIRE(re.elements.size() == 1);
  CHECK(normalize(re.elements[0]) == n1);
}

TEST_CASE("crlf input is normalized to lf") {
  Ast ast = parse_file("a.c", "int a;\r\nint b;\r\n");
  CHECK(ast.text == "int a;\nint b;\n");
  REQUIRE(ast.elements.size() == 2);
}
