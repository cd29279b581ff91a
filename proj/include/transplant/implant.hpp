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

#ifndef TRANSPLANT_IMPLANT_HPP
#define TRANSPLANT_IMPLANT_HPP

#include <map>
#include <string>
#include <vector>

#include "transplant/clone.hpp"
#include "transplant/wrapper.hpp"

namespace transplant {

struct ImplantRecord {
  std::string featureId;
  CloneReport report;
  std::string flag;  // empty when unflagged
};

struct PostoperativeProject {
  std::map<std::string, std::string> files;
  std::vector<ImplantRecord> implantLog;
};

// Wrapper block derived from the organ's statement array alone (vein
// statements plus the synthesized entry call), used when implanting
// without a preceding adaptation run.
std::string default_wrapper_block(const OverOrgan& organ);

// Splices the organ into the product base: grafted elements append to the
// host file matching the organ's fileMap path (created if absent), the
// insertion marker becomes the wrapper block, discarded elements are
// dropped, merged elements coexist under a feature guard. With `flag`
// given, grafted code and the wrapper are wrapped in
// `#ifdef FEATURE_<FLAG> ... #endif` and the result must compile in both
// flag states. Throws BuildFailedAfterImplant without touching the input
// (the returned tree is the only output).
PostoperativeProject implant(const OverOrgan& organ, const ProductBase& base,
                             const HostContext& host,
                             const std::string& wrapperBlock,
                             const std::string& flag);

// The `#ifdef` macro guarding a flagged implant: FEATURE_<flag uppercased>.
std::string feature_macro(const std::string& flag);

}  // namespace transplant

#endif  // TRANSPLANT_IMPLANT_HPP
