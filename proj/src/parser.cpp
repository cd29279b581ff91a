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

#include "transplant/parser.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "transplant/errors.hpp"

namespace fs = std::filesystem;

namespace transplant {

namespace {

std::string normalizeNewlines(const std::string& in) {
  std::string out;
  out.reserve(in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] == '\r' && i + 1 < in.size() && in[i + 1] == '\n') continue;
    out.push_back(in[i] == '\r' ? '\n' : in[i]);
  }
  return out;
}

struct DirectiveLine {
  std::string keyword;  // include, define, ifdef, ifndef, else, endif, ...
  std::string rest;     // text after the keyword, trimmed
};

DirectiveLine splitDirective(const std::string& text) {
  std::size_t i = 0;
  while (i < text.size() && (text[i] == '#' || std::isspace((unsigned char)text[i]))) ++i;
  std::size_t b = i;
  while (i < text.size() && (std::isalpha((unsigned char)text[i]))) ++i;
  DirectiveLine d;
  d.keyword = text.substr(b, i - b);
  while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
  std::size_t e = text.size();
  while (e > i && std::isspace((unsigned char)text[e - 1])) --e;
  d.rest = text.substr(i, e - i);
  return d;
}

class Parser {
 public:
  Parser(std::string file, const std::string& text)
      : file_(std::move(file)), text_(text), toks_(lex(file_, text)) {}

  Ast run() {
    Ast ast;
    ast.file = file_;
    ast.text = text_;
    ast.elements = parseElements(/*insideConditional=*/false);
    if (!atEof()) {
      const Token& t = peekRaw();
      throw UnbalancedDirective(file_, t.line);
    }
    return ast;
  }

 private:
  std::string file_;
  const std::string& text_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;

  bool atEof() { return peek().kind == TokKind::Eof; }

  const Token& peekRaw() { return toks_[pos_]; }

  // Skips comments.
  const Token& peek(std::size_t ahead = 0) {
    std::size_t p = pos_;
    std::size_t skipped = 0;
    while (p < toks_.size()) {
      if (toks_[p].kind == TokKind::Comment) {
        ++p;
        continue;
      }
      if (skipped == ahead) return toks_[p];
      ++skipped;
      ++p;
    }
    return toks_.back();
  }

  Token next() {
    while (toks_[pos_].kind == TokKind::Comment) ++pos_;
    Token t = toks_[pos_];
    if (t.kind != TokKind::Eof) ++pos_;
    return t;
  }

  Token expect(const char* s) {
    Token t = next();
    if (!t.is(s)) throw SyntaxError(file_, t.line, std::string("'") + s + "'");
    return t;
  }

  Span spanFrom(const Token& first, const Token& last) {
    Span s;
    s.begin = first.begin;
    s.end = last.end;
    s.startLine = first.line;
    s.endLine = last.line;
    return s;
  }

  // --- top level -----------------------------------------------------------

  std::vector<Element> parseElements(bool insideConditional) {
    std::vector<Element> out;
    for (;;) {
      const Token& t = peek();
      if (t.kind == TokKind::Eof) return out;
      if (t.kind == TokKind::Directive) {
        DirectiveLine d = splitDirective(t.text);
        if (d.keyword == "else" || d.keyword == "endif") {
          if (!insideConditional) throw UnbalancedDirective(file_, t.line);
          return out;
        }
        out.push_back(parseDirectiveElement());
        continue;
      }
      if (t.is(";")) {  // stray semicolon
        next();
        continue;
      }
      out.push_back(parseDeclarationElement());
    }
  }

  Element parseDirectiveElement() {
    Token t = next();
    DirectiveLine d = splitDirective(t.text);
    Element e;
    e.span = spanFrom(t, t);
    e.tokens.push_back(t);
    if (d.keyword == "include") {
      e.kind = ElementKind::IncludeDirective;
      if (!d.rest.empty() && d.rest.front() == '<') {
        e.systemInclude = true;
        e.includeTarget = d.rest.substr(1, d.rest.find('>') - 1);
      } else if (!d.rest.empty() && d.rest.front() == '"') {
        e.systemInclude = false;
        std::size_t close = d.rest.find('"', 1);
        e.includeTarget = d.rest.substr(1, close - 1);
      } else {
        throw SyntaxError(file_, t.line, "include target");
      }
      e.name = e.includeTarget;
      return e;
    }
    if (d.keyword == "define") {
      std::size_t i = 0;
      while (i < d.rest.size() &&
             (std::isalnum((unsigned char)d.rest[i]) || d.rest[i] == '_'))
        ++i;
      std::string name = d.rest.substr(0, i);
      if (name.empty()) throw SyntaxError(file_, t.line, "macro name");
      if (i < d.rest.size() && d.rest[i] == '(')
        throw UnsupportedConstruct(file_, t.line, "macro with arguments");
      e.kind = ElementKind::ConstantDefinition;
      e.name = name;
      return e;
    }
    if (d.keyword == "ifdef" || d.keyword == "ifndef") {
      e.kind = ElementKind::ConditionalBlock;
      e.condNegated = (d.keyword == "ifndef");
      e.condIdent = d.rest;
      if (e.condIdent.empty()) throw SyntaxError(file_, t.line, "identifier");
      e.name = e.condIdent;
      e.guardTop = spanFrom(t, t);
      e.thenElements = parseElements(/*insideConditional=*/true);
      const Token& mid = peek();
      if (mid.kind != TokKind::Directive) throw UnbalancedDirective(file_, t.line);
      DirectiveLine md = splitDirective(mid.text);
      if (md.keyword == "else") {
        Token elseTok = next();
        e.guardElse = spanFrom(elseTok, elseTok);
        e.elseElements = parseElements(/*insideConditional=*/true);
      }
      const Token& endt = peek();
      if (endt.kind != TokKind::Directive ||
          splitDirective(endt.text).keyword != "endif")
        throw UnbalancedDirective(file_, t.line);
      Token endTok = next();
      e.guardEnd = spanFrom(endTok, endTok);
      e.span = spanFrom(t, endTok);
      return e;
    }
    if (d.keyword == "if" || d.keyword == "elif")
      throw UnsupportedConstruct(file_, t.line, "#if expression");
    throw UnsupportedConstruct(file_, t.line, "#" + d.keyword);
  }

  // Reads type specifier tokens at the cursor; returns canonical type text.
  // Accepts `struct X` / `enum X` / typedef-name heuristically.
  std::string parseTypeSpecifiers(std::vector<Token>* collected) {
    std::vector<std::string> parts;
    for (;;) {
      const Token& t = peek();
      if (t.isIdent() && isTypeKeyword(t.text)) {
        if ((t.is("struct") || t.is("enum"))) {
          Token kw = next();
          parts.push_back(kw.text);
          if (collected) collected->push_back(kw);
          Token tag = next();
          if (!tag.isIdent()) throw SyntaxError(file_, tag.line, "tag name");
          parts.push_back(tag.text);
          if (collected) collected->push_back(tag);
          continue;
        }
        Token kw = next();
        parts.push_back(kw.text);
        if (collected) collected->push_back(kw);
        continue;
      }
      // Typedef-name heuristic: identifier followed by another identifier
      // or by '*' then identifier, and nothing collected yet.
      if (parts.empty() && t.isIdent() && !isKeyword(t.text)) {
        const Token& n1 = peek(1);
        if (n1.isIdent() || (n1.is("*") && peek(2).isIdent())) {
          Token tn = next();
          parts.push_back(tn.text);
          if (collected) collected->push_back(tn);
          continue;
        }
      }
      break;
    }
    while (peek().is("*")) {
      Token star = next();
      parts.push_back("*");
      if (collected) collected->push_back(star);
    }
    std::string out;
    for (const auto& p : parts) {
      if (!out.empty()) out += ' ';
      out += p;
    }
    return out;
  }

  Element parseDeclarationElement() {
    const Token& first = peek();
    if (first.is("typedef")) return parseTypedef();
    if ((first.is("struct") || first.is("enum")) && peek(1).isIdent() &&
        peek(2).is("{"))
      return parseTagDefinition();

    Token start = peek();
    std::vector<Token> toks;
    std::string type = parseTypeSpecifiers(&toks);
    if (type.empty())
      throw SyntaxError(file_, start.line, "declaration");

    if (peek().is("(") && peek(1).is("*"))
      throw UnsupportedConstruct(file_, peek().line, "function pointer");

    Token nameTok = next();
    if (!nameTok.isIdent() || isKeyword(nameTok.text))
      throw SyntaxError(file_, nameTok.line, "identifier");
    toks.push_back(nameTok);

    if (peek().is("(")) return parseFunction(start, type, nameTok, toks);
    return parseGlobal(start, type, nameTok, toks);
  }

  Element parseTypedef() {
    Token start = next();  // typedef
    Element e;
    e.kind = ElementKind::TypeDefinition;
    e.tokens.push_back(start);
    int depth = 0;
    Token last = start;
    std::string lastIdent;
    for (;;) {
      Token t = next();
      if (t.kind == TokKind::Eof) throw SyntaxError(file_, last.line, "';'");
      e.tokens.push_back(t);
      if (t.is("{")) ++depth;
      if (t.is("}")) --depth;
      if (t.is("(")) throw UnsupportedConstruct(file_, t.line, "function pointer");
      if (depth == 0 && t.isIdent()) lastIdent = t.text;
      if (depth == 0 && t.is(";")) {
        last = t;
        break;
      }
      last = t;
    }
    e.name = lastIdent;
    e.span = spanFrom(start, e.tokens.back());
    return e;
  }

  Element parseTagDefinition() {
    Token start = next();  // struct | enum
    Element e;
    e.kind = ElementKind::TypeDefinition;
    e.tokens.push_back(start);
    Token tag = next();
    e.tokens.push_back(tag);
    e.name = tag.text;
    int depth = 0;
    for (;;) {
      Token t = next();
      if (t.kind == TokKind::Eof) throw SyntaxError(file_, tag.line, "';'");
      e.tokens.push_back(t);
      if (t.is("{")) ++depth;
      if (t.is("}")) --depth;
      if (depth == 0 && t.is(";")) break;
    }
    e.span = spanFrom(start, e.tokens.back());
    return e;
  }

  Element parseFunction(const Token& start, const std::string& type,
                        const Token& nameTok, std::vector<Token> toks) {
    Element e;
    e.name = nameTok.text;
    e.returnType = type;
    Token open = expect("(");
    toks.push_back(open);
    e.params = parseParams(&toks);
    Token close = expect(")");
    toks.push_back(close);
    const Token& after = peek();
    if (after.is(";")) {
      Token semi = next();
      toks.push_back(semi);
      e.kind = ElementKind::FunctionDeclaration;
      e.tokens = std::move(toks);
      e.span = spanFrom(start, semi);
      return e;
    }
    Token braceOpen = expect("{");
    toks.push_back(braceOpen);
    e.kind = ElementKind::FunctionDefinition;
    e.body = parseStatements(&toks);
    Token braceClose = expect("}");
    toks.push_back(braceClose);
    e.tokens = std::move(toks);
    e.span = spanFrom(start, braceClose);
    return e;
  }

  std::vector<Param> parseParams(std::vector<Token>* toks) {
    std::vector<Param> params;
    if (peek().is(")")) return params;
    if (peek().is("void") && peek(1).is(")")) {
      toks->push_back(next());
      return params;
    }
    for (;;) {
      std::string type = parseTypeSpecifiersInto(toks);
      if (type.empty())
        throw SyntaxError(file_, peek().line, "parameter type");
      if (peek().is("(") )
        throw UnsupportedConstruct(file_, peek().line, "function pointer");
      Param p;
      p.type = type;
      if (peek().isIdent() && !isKeyword(peek().text)) {
        Token n = next();
        toks->push_back(n);
        p.name = n.text;
      }
      while (peek().is("[")) {
        // Array parameter: fold into the type.
        while (!peek().is("]")) toks->push_back(next());
        toks->push_back(next());
        p.type += " []";
      }
      params.push_back(std::move(p));
      if (peek().is(",")) {
        toks->push_back(next());
        continue;
      }
      return params;
    }
  }

  std::string parseTypeSpecifiersInto(std::vector<Token>* toks) {
    return parseTypeSpecifiers(toks);
  }

  Element parseGlobal(const Token& start, const std::string& type,
                      const Token& nameTok, std::vector<Token> toks) {
    Element e;
    e.kind = ElementKind::GlobalVariable;
    e.name = nameTok.text;
    e.varType = type;
    int depth = 0;
    for (;;) {
      Token t = next();
      if (t.kind == TokKind::Eof)
        throw SyntaxError(file_, nameTok.line, "';'");
      toks.push_back(t);
      if (t.is("{") || t.is("(") || t.is("[")) ++depth;
      if (t.is("}") || t.is(")") || t.is("]")) --depth;
      if (depth == 0 && t.is(";")) break;
    }
    e.tokens = std::move(toks);
    e.span = spanFrom(start, e.tokens.back());
    return e;
  }

  // --- statements ----------------------------------------------------------

  std::vector<Stmt> parseStatements(std::vector<Token>* toks) {
    std::vector<Stmt> out;
    for (;;) {
      const Token& t = peek();
      if (t.is("}") || t.kind == TokKind::Eof) return out;
      if (t.kind == TokKind::Directive) {
        DirectiveLine d = splitDirective(t.text);
        if (d.keyword == "else" || d.keyword == "endif") return out;
        out.push_back(parseCondBlockStmt(toks));
        continue;
      }
      out.push_back(parseStmt(toks));
    }
  }

  Stmt parseCondBlockStmt(std::vector<Token>* toks) {
    Token t = next();
    toks->push_back(t);
    DirectiveLine d = splitDirective(t.text);
    if (d.keyword != "ifdef" && d.keyword != "ifndef")
      throw UnsupportedConstruct(file_, t.line, "#" + d.keyword + " inside function body");
    Stmt s;
    s.kind = StmtKind::CondBlock;
    s.condNegated = (d.keyword == "ifndef");
    s.condIdent = d.rest;
    s.guardTop = spanFrom(t, t);
    s.children = parseStatements(toks);
    const Token& mid = peek();
    if (mid.kind != TokKind::Directive) throw UnbalancedDirective(file_, t.line);
    if (splitDirective(mid.text).keyword == "else") {
      Token elseTok = next();
      toks->push_back(elseTok);
      s.guardElse = spanFrom(elseTok, elseTok);
      s.elseChildren = parseStatements(toks);
    }
    const Token& endt = peek();
    if (endt.kind != TokKind::Directive ||
        splitDirective(endt.text).keyword != "endif")
      throw UnbalancedDirective(file_, t.line);
    Token endTok = next();
    toks->push_back(endTok);
    s.guardEnd = spanFrom(endTok, endTok);
    s.span = spanFrom(t, endTok);
    return s;
  }

  // Consumes a balanced parenthesized group; the '(' must be at the cursor.
  // Inner tokens (parens excluded) are appended to header.
  void parseParenGroup(std::vector<Token>* toks, std::vector<Token>* header) {
    Token open = expect("(");
    toks->push_back(open);
    int depth = 1;
    for (;;) {
      Token t = next();
      if (t.kind == TokKind::Eof) throw SyntaxError(file_, open.line, "')'");
      if (t.is("(")) ++depth;
      if (t.is(")")) {
        --depth;
        if (depth == 0) {
          toks->push_back(t);
          return;
        }
      }
      toks->push_back(t);
      header->push_back(t);
    }
  }

  Stmt parseStmt(std::vector<Token>* toks) {
    const Token& t = peek();
    if (t.is("{")) {
      Stmt s;
      s.kind = StmtKind::Compound;
      Token open = next();
      toks->push_back(open);
      s.children = parseStatements(toks);
      Token close = expect("}");
      toks->push_back(close);
      s.span = spanFrom(open, close);
      return s;
    }
    if (t.is("if")) {
      Stmt s;
      s.kind = StmtKind::If;
      Token kw = next();
      toks->push_back(kw);
      parseParenGroup(toks, &s.tokens);
      s.children.push_back(parseStmt(toks));
      Token last = lastToken();
      if (peek().is("else")) {
        toks->push_back(next());
        s.elseChildren.push_back(parseStmt(toks));
        last = lastToken();
      }
      s.span = spanFrom(kw, last);
      return s;
    }
    if (t.is("while")) {
      Stmt s;
      s.kind = StmtKind::While;
      Token kw = next();
      toks->push_back(kw);
      parseParenGroup(toks, &s.tokens);
      s.children.push_back(parseStmt(toks));
      s.span = spanFrom(kw, lastToken());
      return s;
    }
    if (t.is("for")) {
      Stmt s;
      s.kind = StmtKind::For;
      Token kw = next();
      toks->push_back(kw);
      parseParenGroup(toks, &s.tokens);
      s.children.push_back(parseStmt(toks));
      s.span = spanFrom(kw, lastToken());
      return s;
    }
    if (t.is("switch")) {
      Stmt s;
      s.kind = StmtKind::Switch;
      Token kw = next();
      toks->push_back(kw);
      parseParenGroup(toks, &s.tokens);
      s.children.push_back(parseStmt(toks));
      s.span = spanFrom(kw, lastToken());
      return s;
    }
    if (t.is("case") || t.is("default")) {
      Stmt s;
      s.kind = t.is("case") ? StmtKind::Case : StmtKind::Default;
      Token kw = next();
      toks->push_back(kw);
      for (;;) {
        Token x = next();
        toks->push_back(x);
        if (x.is(":")) {
          s.span = spanFrom(kw, x);
          return s;
        }
        if (x.kind == TokKind::Eof) throw SyntaxError(file_, kw.line, "':'");
        s.tokens.push_back(x);
      }
    }
    if (t.is("return")) {
      Stmt s;
      s.kind = StmtKind::Return;
      Token kw = next();
      toks->push_back(kw);
      readUntilSemi(toks, &s.tokens);
      s.span = spanFrom(kw, lastToken());
      return s;
    }
    if (t.is("break") || t.is("continue")) {
      Stmt s;
      s.kind = t.is("break") ? StmtKind::Break : StmtKind::Continue;
      Token kw = next();
      toks->push_back(kw);
      Token semi = expect(";");
      toks->push_back(semi);
      s.span = spanFrom(kw, semi);
      return s;
    }
    if (t.is(";")) {
      Stmt s;
      s.kind = StmtKind::Expression;
      Token semi = next();
      toks->push_back(semi);
      s.span = spanFrom(semi, semi);
      return s;
    }
    if (isDeclarationStart()) return parseLocalDecl(toks);
    // Expression statement.
    Stmt s;
    s.kind = StmtKind::Expression;
    Token start = peek();
    readUntilSemi(toks, &s.tokens);
    s.span = spanFrom(start, lastToken());
    return s;
  }

  bool isDeclarationStart() {
    const Token& t = peek();
    if (!t.isIdent()) return false;
    if (isTypeKeyword(t.text)) return true;
    if (isKeyword(t.text)) return false;
    const Token& n1 = peek(1);
    if (n1.isIdent() && !isKeyword(n1.text)) return true;
    if (n1.is("*") && peek(2).isIdent() && !isKeyword(peek(2).text) &&
        (peek(3).is("=") || peek(3).is(";") || peek(3).is(",")))
      return true;
    return false;
  }

  Stmt parseLocalDecl(std::vector<Token>* toks) {
    Stmt s;
    s.kind = StmtKind::Declaration;
    Token start = peek();
    s.declType = parseTypeSpecifiers(toks);
    // Re-collect the type tokens into the statement's own list as well.
    // parseTypeSpecifiers appended them to *toks already; rebuild from text.
    // Declarators: name [arrays] [= init] {, ...}.
    for (;;) {
      if (peek().is("(") && peek(1).is("*"))
        throw UnsupportedConstruct(file_, peek().line, "function pointer");
      Token nameTok = next();
      if (!nameTok.isIdent() || isKeyword(nameTok.text))
        throw SyntaxError(file_, nameTok.line, "identifier");
      toks->push_back(nameTok);
      s.tokens.push_back(nameTok);
      s.declNames.push_back(nameTok.text);
      int depth = 0;
      for (;;) {
        const Token& x = peek();
        if (x.kind == TokKind::Eof) throw SyntaxError(file_, nameTok.line, "';'");
        if (depth == 0 && (x.is(";") || x.is(","))) break;
        Token got = next();
        toks->push_back(got);
        s.tokens.push_back(got);
        if (got.is("(") || got.is("[") || got.is("{")) ++depth;
        if (got.is(")") || got.is("]") || got.is("}")) --depth;
      }
      Token sep = next();
      toks->push_back(sep);
      if (sep.is(";")) {
        s.span = spanFrom(start, sep);
        return s;
      }
      s.tokens.push_back(sep);
    }
  }

  void readUntilSemi(std::vector<Token>* toks, std::vector<Token>* header) {
    int depth = 0;
    for (;;) {
      Token t = next();
      if (t.kind == TokKind::Eof)
        throw SyntaxError(file_, lastToken().line, "';'");
      toks->push_back(t);
      if (t.is("(") || t.is("[")) ++depth;
      if (t.is(")") || t.is("]")) --depth;
      if (depth == 0 && t.is(";")) return;
      header->push_back(t);
    }
  }

  Token lastToken() {
    std::size_t p = pos_;
    while (p > 0) {
      --p;
      if (toks_[p].kind != TokKind::Comment) return toks_[p];
    }
    return toks_.front();
  }
};

}  // namespace

Ast parse_file(const std::string& path, const std::string& text) {
  std::string normalized = normalizeNewlines(text);
  Parser p(path, normalized);
  return p.run();
}

ProjectModel parse_project(
    const std::string& root,
    const std::vector<std::pair<std::string, std::string>>& files) {
  ProjectModel pm;
  pm.root = root;
  for (const auto& [path, text] : files) {
    SourceUnit u;
    u.path = path;
    u.text = text;
    for (auto& ch : u.path)
      if (ch == '\\') ch = '/';
    u.kind = path.size() > 2 && path.substr(path.size() - 2) == ".h"
                 ? UnitKind::Header
                 : UnitKind::Implementation;
    Ast ast = parse_file(u.path, u.text);
    u.text = ast.text;  // LF-normalized
    pm.units.push_back(std::move(u));
    pm.asts.push_back(std::move(ast));
  }
  return pm;
}

ProjectModel load_project(const std::string& root) {
  std::vector<std::pair<std::string, std::string>> files;
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    if (ext == ".c" || ext == ".h") paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    files.emplace_back(fs::relative(p, root).generic_string(), ss.str());
  }
  return parse_project(root, files);
}

}  // namespace transplant
