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

#ifndef TRANSPLANT_SANDBOX_HPP
#define TRANSPLANT_SANDBOX_HPP

#include <map>
#include <string>
#include <vector>

namespace transplant {

struct RunResult {
  int exitCode = -1;
  std::string output;  // stdout + stderr interleaved
  bool timedOut = false;
};

// Isolated scratch directory, removed on destruction.
class Sandbox {
 public:
  Sandbox();
  ~Sandbox();
  Sandbox(const Sandbox&) = delete;
  Sandbox& operator=(const Sandbox&) = delete;

  const std::string& dir() const { return dir_; }
  void writeFiles(const std::map<std::string, std::string>& files) const;

 private:
  std::string dir_;
};

// Runs `cmd` with `cwd` as working directory, killed after `timeoutSecs`.
RunResult run_command(const std::string& cmd, const std::string& cwd,
                      int timeoutSecs);

// Expands a build command template: {out} -> output path, {sources} -> the
// space-joined source list.
std::string expand_build_command(const std::string& tmpl,
                                 const std::string& out,
                                 const std::vector<std::string>& sources);

// Throws BuildToolMissing if the first word of the build command is not on
// PATH.
void ensure_build_tool(const std::string& buildCommand);

}  // namespace transplant

#endif  // TRANSPLANT_SANDBOX_HPP
