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

#include "transplant/sandbox.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "transplant/errors.hpp"

namespace fs = std::filesystem;

namespace transplant {

Sandbox::Sandbox() {
  std::string tmpl =
      (fs::temp_directory_path() / "transplantc-sbx-XXXXXX").string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data()))
    throw SandboxIoError("mkdtemp failed for " + tmpl);
  dir_ = buf.data();
}

Sandbox::~Sandbox() {
  std::error_code ec;
  fs::remove_all(dir_, ec);
}

void Sandbox::writeFiles(
    const std::map<std::string, std::string>& files) const {
  for (const auto& [path, content] : files) {
    fs::path p = fs::path(dir_) / path;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw SandboxIoError("cannot write " + p.string());
    out << content;
  }
}

RunResult run_command(const std::string& cmd, const std::string& cwd,
                      int timeoutSecs) {
  RunResult r;
  std::string full = "cd '" + cwd + "' && timeout " +
                     std::to_string(timeoutSecs) + "s sh -c '" + cmd +
                     "' 2>&1";
  FILE* pipe = popen(full.c_str(), "r");
  if (!pipe) throw SandboxIoError("popen failed: " + cmd);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exitCode = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.timedOut = r.exitCode == 124;  // timeout(1) convention
  return r;
}

std::string expand_build_command(const std::string& tmpl,
                                 const std::string& out,
                                 const std::vector<std::string>& sources) {
  std::string joined;
  for (const auto& s : sources) {
    if (!joined.empty()) joined += " ";
    joined += s;
  }
  std::string cmd = tmpl;
  auto replaceAll = [&](const std::string& key, const std::string& value) {
    for (std::size_t pos = 0; (pos = cmd.find(key, pos)) != std::string::npos;
         pos += value.size())
      cmd.replace(pos, key.size(), value);
  };
  replaceAll("{out}", out);
  replaceAll("{sources}", joined);
  return cmd;
}

void ensure_build_tool(const std::string& buildCommand) {
  std::string tool = buildCommand.substr(0, buildCommand.find(' '));
  RunResult r = run_command("command -v " + tool + " >/dev/null", "/", 10);
  if (r.exitCode != 0) throw BuildToolMissing(tool);
}

}  // namespace transplant
