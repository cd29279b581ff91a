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

#include "transplant/lexer.hpp"

#include <cctype>
#include <set>

#include "transplant/errors.hpp"

namespace transplant {

namespace {

const std::set<std::string> kTypeKeywords = {
    "void",  "char",   "short",  "int",      "long",   "float",
    "double", "signed", "unsigned", "struct", "enum",   "const",
    "static", "extern", "typedef", "unsigned"};

const std::set<std::string> kKeywords = {
    "if",     "else",   "while",  "for",    "switch", "case",   "default",
    "return", "break",  "continue", "do",   "sizeof", "void",   "char",
    "short",  "int",    "long",   "float",  "double", "signed", "unsigned",
    "struct", "enum",   "const",  "static", "extern", "typedef"};

bool isIdentStart(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool isIdentChar(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

}  // namespace

bool isTypeKeyword(const std::string& s) { return kTypeKeywords.count(s) > 0; }
bool isKeyword(const std::string& s) { return kKeywords.count(s) > 0; }

std::vector<Token> lex(const std::string& file, const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  bool atLineStart = true;
  const std::size_t n = text.size();

  auto push = [&](TokKind k, std::size_t b, std::size_t e) {
    out.push_back(Token{k, text.substr(b, e - b), line, b, e});
  };

  while (i < n) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
      atLineStart = true;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '#' && atLineStart) {
      // Whole directive line as one token.
      std::size_t b = i;
      while (i < n && text[i] != '\n') ++i;
      push(TokKind::Directive, b, i);
      continue;
    }
    atLineStart = false;
    if (c == '/' && i + 1 < n && text[i + 1] == '/') {
      std::size_t b = i;
      while (i < n && text[i] != '\n') ++i;
      push(TokKind::Comment, b, i);
      continue;
    }
    if (c == '/' && i + 1 < n && text[i + 1] == '*') {
      std::size_t b = i;
      int startLine = line;
      i += 2;
      while (i + 1 < n && !(text[i] == '*' && text[i + 1] == '/')) {
        if (text[i] == '\n') ++line;
        ++i;
      }
      if (i + 1 >= n) throw SyntaxError(file, startLine, "*/");
      i += 2;
      int saved = line;
      line = startLine;
      push(TokKind::Comment, b, i);
      line = saved;
      continue;
    }
    if (isIdentStart(c)) {
      std::size_t b = i;
      while (i < n && isIdentChar(text[i])) ++i;
      push(TokKind::Ident, b, i);
      continue;
    }
    if (std::isdigit((unsigned char)c) ||
        (c == '.' && i + 1 < n && std::isdigit((unsigned char)text[i + 1]))) {
      std::size_t b = i;
      while (i < n && (isIdentChar(text[i]) || text[i] == '.')) ++i;
      push(TokKind::Number, b, i);
      continue;
    }
    if (c == '\'') {
      std::size_t b = i++;
      while (i < n && text[i] != '\'') {
        if (text[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) throw SyntaxError(file, line, "'");
      ++i;
      push(TokKind::CharLit, b, i);
      continue;
    }
    if (c == '"') {
      std::size_t b = i++;
      while (i < n && text[i] != '"') {
        if (text[i] == '\\') ++i;
        ++i;
      }
      if (i >= n) throw SyntaxError(file, line, "\"");
      ++i;
      push(TokKind::StringLit, b, i);
      continue;
    }
    // Punctuators, longest first.
    static const char* kThree[] = {"<<=", ">>=", "..."};
    static const char* kTwo[] = {"->", "++", "--", "<<", ">>", "<=", ">=",
                                 "==", "!=", "&&", "||", "+=", "-=", "*=",
                                 "/=", "%=", "&=", "^=", "|="};
    bool matched = false;
    for (const char* p : kThree) {
      if (text.compare(i, 3, p) == 0) {
        push(TokKind::Punct, i, i + 3);
        i += 3;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    for (const char* p : kTwo) {
      if (text.compare(i, 2, p) == 0) {
        push(TokKind::Punct, i, i + 2);
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::ispunct((unsigned char)c)) {
      push(TokKind::Punct, i, i + 1);
      ++i;
      continue;
    }
    throw SyntaxError(file, line, "valid token");
  }
  out.push_back(Token{TokKind::Eof, "", line, n, n});
  return out;
}

}  // namespace transplant
