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

#ifndef TRANSPLANT_WRAPPER_HPP
#define TRANSPLANT_WRAPPER_HPP

#include <string>
#include <vector>

#include "transplant/organ.hpp"
#include "transplant/platform.hpp"

namespace transplant {

// Where and under which names the organ is reachable inside the host.
struct HostContext {
  std::string productBaseId;
  std::string file;               // host file containing the marker
  std::string marker;             // exact marker text, occurs exactly once
  std::string enclosingFunction;
  std::vector<Param> visibleVariables;  // in scope at the marker, host AST
  std::string buildCommand;
};

// Resolves the feature's insertion marker and derives scope information
// from the host AST. The marker is the product base's recorded insertion
// point for the feature, or `/*@transplant:<featureId>*/` by default.
HostContext resolve_host_context(const ProductBase& base,
                                 const std::string& featureId);

struct WrapperSlot {
  std::string organSymbol;  // entry parameter or free vein variable name
  std::string type;         // canonical organ-side type
  bool isEntryParam = false;
  // Expressions the slot may bind to: the donor's original argument first
  // (entry parameters only), then type-compatible host variables.
  std::vector<std::string> candidates;
  std::string bound;  // empty = unbound
};

struct Wrapper {
  std::vector<WrapperSlot> parameterSlots;
  std::vector<StatementEntry> setupStatements;  // initialized to full vein
  std::string callStatement;
};

// One slot per entry-point parameter and per free vein variable; slots
// unbound; candidates filtered by exact type-name match after typedef
// resolution against the host scope.
Wrapper synthesize_wrapper(const OverOrgan& organ, const HostContext& host);

// Canonical type spelling: typedefs from the given project files resolved,
// whitespace collapsed. Used for the binding type filter.
std::string canonical_type(const std::string& type,
                           const std::map<std::string, std::string>& typedefs);

// typedef name -> underlying type text, collected from source files.
std::map<std::string, std::string> collect_typedefs(
    const std::map<std::string, std::string>& files);

}  // namespace transplant

#endif  // TRANSPLANT_WRAPPER_HPP
