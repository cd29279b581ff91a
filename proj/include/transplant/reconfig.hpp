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

#ifndef TRANSPLANT_RECONFIG_HPP
#define TRANSPLANT_RECONFIG_HPP

#include <set>
#include <string>
#include <vector>

#include "transplant/ast.hpp"

namespace transplant {

enum class RemovalMode { DeleteGuardedCode, KeepCodeStripGuards };

struct FeatureDirectiveList {
  std::vector<std::string> removals;  // duplicate-free
  RemovalMode mode = RemovalMode::DeleteGuardedCode;
};

// Parses the plain-text list format: one identifier per line, '#' comments.
FeatureDirectiveList load_feature_list(const std::string& path);

struct ReconfigResult {
  ProjectModel project;
  std::vector<std::string> unknownFeatures;  // warnings, not failures
};

// Removes (or unguards) every #ifdef/#ifndef region named in `list`.
// Untouched bytes are preserved; output re-parses.
ReconfigResult remove_features(const ProjectModel& project,
                               const FeatureDirectiveList& list);

// Resolves every conditional block: guards named in `enabled` keep their
// code and lose the guard lines; all others are removed entirely. The
// result contains zero conditional blocks.
ProjectModel strip_dead_directives(const ProjectModel& project,
                                   const std::set<std::string>& enabled);

}  // namespace transplant

#endif  // TRANSPLANT_RECONFIG_HPP
