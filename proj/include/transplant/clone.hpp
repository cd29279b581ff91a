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

#ifndef TRANSPLANT_CLONE_HPP
#define TRANSPLANT_CLONE_HPP

#include <string>
#include <vector>

#include "transplant/organ.hpp"

namespace transplant {

enum class CloneVerdict { Graft, Discard, Merge };
enum class ClonePhase { Line, Ast };

struct CloneDecision {
  std::string organElement;  // element name
  std::string organFile;
  std::string hostElement;   // empty for graft
  std::string hostFile;
  CloneVerdict verdict = CloneVerdict::Graft;
  ClonePhase phase = ClonePhase::Line;
  std::string diffNote;  // sub-tree diff summary for merge decisions
};

struct CloneReport {
  std::vector<CloneDecision> decisions;  // one per organ element
  // Elements shared with the host or previously implanted organs.
  std::vector<std::string> connectionPoints;
};

// Two-phase comparison of organ elements against host elements: phase 1 is
// normalized-text equality (whitespace and comments ignored), phase 2 is a
// structural AST comparison for same-named elements, classifying each organ
// element as graft, discard or merge. Same-named elements with incompatible
// signatures abort with SignatureConflict.
CloneReport detect_clones(const OverOrgan& organ, const ProjectModel& host);

std::string clone_report_json(const CloneReport& report);

}  // namespace transplant

#endif  // TRANSPLANT_CLONE_HPP
