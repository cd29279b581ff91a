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

#ifndef TRANSPLANT_ORGAN_HPP
#define TRANSPLANT_ORGAN_HPP

#include <map>
#include <string>
#include <vector>

#include "transplant/ast.hpp"
#include "transplant/sdg.hpp"

namespace transplant {

// A whole top-level element carried by the over-organ, with its donor
// placement preserved.
struct OrganElement {
  std::string file;  // donor-relative path
  std::string name;
  ElementKind kind = ElementKind::FunctionDefinition;
  std::string text;  // exact donor bytes
};

// One GP-selectable entry of the over-organ statement array.
struct StatementEntry {
  enum class Kind { OrganElement, VeinStatement, EntryCall };
  Kind kind = Kind::VeinStatement;
  // Provenance: (file, element, index). index is -1 for whole elements and
  // for the synthesized entry call.
  std::string file;
  std::string element;
  int index = -1;
  std::string text;  // printable form; renamed when inlined from a callee
};

struct OverOrgan {
  std::string featureId;
  std::string donorId;
  std::string entryPoint;
  std::string entryReturnType;
  std::vector<Param> entryParams;
  // Original argument expressions at the donor's call of the entry point,
  // one per parameter; empty until the statement array is built.
  std::vector<std::string> entryCallArgs;
  std::vector<OrganElement> organElements;  // grouped by file, donor order
  std::vector<StatementEntry> veinStatements;
  std::vector<StatementEntry> statementArray;
  std::vector<std::string> fileMap;  // distinct donor files, donor order
  std::vector<std::string> boundarySymbols;
  // Include directive lines per donor file, for self-contained emission.
  std::map<std::string, std::vector<std::string>> fileIncludes;
  // Free vein variables (used by vein statements but defined by neither
  // the vein nor the donor's globals); wrapper slots are made for these.
  std::vector<Param> freeVeinVars;
};

struct VeinInlineRecord {
  std::vector<std::string> functionStack;  // innermost last (final state)
  std::vector<std::string> recursiveCalls; // call sites left as calls
};

OverOrgan extract_over_organ(const ProjectModel& project, const Sdg& sdg,
                             const std::string& entry,
                             const std::string& featureId);

// Populates statementArray (and entryCallArgs/freeVeinVars) by inlining the
// vein, guarding against recursion with a function stack. Total on all
// inputs, including mutually recursive call graphs.
OverOrgan build_statement_array(OverOrgan organ, const ProjectModel& project,
                                const Sdg& sdg, VeinInlineRecord* record);

// Renders the organ's source files: file path -> content. Used by storage,
// evaluation sandboxes and implantation.
std::map<std::string, std::string> render_organ_files(const OverOrgan& organ);

// Forward declarations for the organ's functions plus extern declarations
// for its globals (omitting globals defined in `forFile`). One per line.
std::string organ_forward_decls(const OverOrgan& organ,
                                const std::string& forFile = "");

// Writes the over-organ into <platformRoot>/over-organs/<featureId>/
// atomically; returns the manifest path.
std::string store_slices(const OverOrgan& organ, const std::string& platformRoot,
                         bool force = false);

}  // namespace transplant

#endif  // TRANSPLANT_ORGAN_HPP
