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

#ifndef TRANSPLANT_PRINTER_HPP
#define TRANSPLANT_PRINTER_HPP

#include <map>
#include <string>
#include <vector>

#include "transplant/ast.hpp"

namespace transplant {

// Lossless printing: an unmodified Ast prints back to its exact input bytes.
std::string print(const Ast& ast);

// Returns the file text with the element at `index` (top-level order)
// removed, together with its line terminator and one trailing blank line.
std::string delete_element(const Ast& ast, std::size_t index);

// Returns the file text with `elementText` appended after one blank line.
std::string insert_element_at_end(const Ast& ast,
                                  const std::string& elementText);

// Canonical form for clone comparison: one statement per line, single
// spaces, comments stripped, no blank lines.
std::string normalize(const Element& element);
std::string normalize_tokens(const std::vector<Token>& tokens);

// Joins tokens on a single line using normalize's spacing rules.
std::string join_tokens(const std::vector<Token>& tokens);

// Re-lexes `code` and substitutes identifier tokens per `renames`.
std::string rename_identifiers(const std::string& code,
                               const std::map<std::string, std::string>& renames);

// Simple span-edit machinery over a file's text. Edits must not overlap.
struct TextEdit {
  std::size_t begin = 0;
  std::size_t end = 0;       // [begin, end) replaced
  std::string replacement;
};

std::string apply_edits(const std::string& text, std::vector<TextEdit> edits);

// Raw source text of an element or statement span.
std::string span_text(const std::string& fileText, const Span& span);

}  // namespace transplant

#endif  // TRANSPLANT_PRINTER_HPP
