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

#ifndef TRANSPLANT_SDG_HPP
#define TRANSPLANT_SDG_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "transplant/ast.hpp"

namespace transplant {

enum class SdgEdgeKind { Call, Data, Control, Declares, Includes };

const char* to_string(SdgEdgeKind k);

struct SdgNode {
  int id = 0;
  std::string file;
  std::string name;        // element name; "func#3" for statement nodes
  ElementKind kind = ElementKind::GlobalVariable;
  int statementIndex = -1;  // -1 for whole-element nodes
};

struct SdgEdge {
  int from = 0;
  int to = 0;
  SdgEdgeKind kind = SdgEdgeKind::Call;
};

// Cross-file system dependency graph. Nodes reference elements of the
// ProjectModel the graph was built from; that model must outlive the Sdg.
struct Sdg {
  std::vector<SdgNode> nodes;
  std::vector<SdgEdge> edges;
  std::map<std::string, int> nameIndex;  // element name -> node id (first def)
  std::set<std::string> boundarySymbols; // externals satisfied by libc/host

  std::map<int, const Element*> elementOf;   // node id -> element
  std::map<int, std::vector<int>> out;       // adjacency (all kinds)

  bool hasNode(const std::string& name) const {
    return nameIndex.count(name) > 0;
  }
};

Sdg build_sdg(const ProjectModel& project);

// Organ closure: every node reachable from entry via call/data/declares
// edges, entry included.
std::set<int> forward_slice(const Sdg& sdg, const std::string& entry);

// A vein statement with its provenance inside the donor.
struct VeinStmt {
  std::string file;
  std::string function;     // enclosing function
  int statementIndex = -1;  // top-level index within the function body
  const Stmt* stmt = nullptr;
  std::string calleeOnPath; // non-empty when this is the call descending the
                            // vein path (or the final call to the entry)
};

// The vein: initialization statements from main down to the call of entry,
// in execution order. Throws NoPathFromMain when entry is unreachable.
std::vector<VeinStmt> backward_slice(const Sdg& sdg, const ProjectModel& project,
                                     const std::string& entry);

// DOT rendering for --emit-sdg.
std::string to_dot(const Sdg& sdg);

}  // namespace transplant

#endif  // TRANSPLANT_SDG_HPP
