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

#ifndef TRANSPLANT_PARSER_HPP
#define TRANSPLANT_PARSER_HPP

#include <string>

#include "transplant/ast.hpp"

namespace transplant {

// Parses one source unit of the C subset. CRLF is normalized to LF first;
// the returned Ast's text field holds the normalized bytes the spans index.
Ast parse_file(const std::string& path, const std::string& text);

// Loads and parses every .c/.h file under root (recursively), sorted by
// relative path for deterministic ordering.
ProjectModel load_project(const std::string& root);

// Builds a ProjectModel from in-memory (path, text) pairs. Used by tests
// and by transformation passes that re-parse edited text.
ProjectModel parse_project(
    const std::string& root,
    const std::vector<std::pair<std::string, std::string>>& files);

}  // namespace transplant

#endif  // TRANSPLANT_PARSER_HPP
