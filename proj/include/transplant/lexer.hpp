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

#ifndef TRANSPLANT_LEXER_HPP
#define TRANSPLANT_LEXER_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace transplant {

enum class TokKind {
  Ident,
  Number,
  CharLit,
  StringLit,
  Punct,
  Directive,  // a whole preprocessor line, text excludes the newline
  Comment,
  Eof,
};

struct Token {
  TokKind kind = TokKind::Eof;
  std::string text;
  int line = 0;        // 1-based
  std::size_t begin = 0;  // byte offset into the unit text
  std::size_t end = 0;    // exclusive

  bool is(const char* s) const { return text == s; }
  bool isIdent() const { return kind == TokKind::Ident; }
};

// Tokenizes a source unit. Comments are emitted as tokens so callers can
// either keep them (layout preservation) or drop them (normalization).
// Whitespace is not tokenized; it lives in the gaps between token spans.
std::vector<Token> lex(const std::string& file, const std::string& text);

bool isTypeKeyword(const std::string& s);
bool isKeyword(const std::string& s);

}  // namespace transplant

#endif  // TRANSPLANT_LEXER_HPP
