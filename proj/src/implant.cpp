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

#include "transplant/implant.hpp"

#include <algorithm>
#include <cctype>

#include "transplant/errors.hpp"
#include "transplant/parser.hpp"
#include "transplant/printer.hpp"
#include "transplant/sandbox.hpp"

namespace transplant {

namespace {

bool quotedIncludeOfMissing(const std::string& line,
                            const std::vector<std::string>& carried) {
  auto q = line.find('"');
  if (q == std::string::npos) return false;
  auto q2 = line.find('"', q + 1);
  std::string target = line.substr(q + 1, q2 - q - 1);
  return std::find(carried.begin(), carried.end(), target) == carried.end();
}

// Builds the project and throws BuildFailedAfterImplant on any failure.
void compileCheck(const std::map<std::string, std::string>& files,
                  const std::string& buildCommand,
                  const std::string& extraFlags) {
  ensure_build_tool(buildCommand);
  Sandbox sbx;
  sbx.writeFiles(files);
  std::vector<std::string> sources;
  for (const auto& [path, _] : files)
    if (path.size() > 2 && path.substr(path.size() - 2) == ".c")
      sources.push_back(path);
  std::sort(sources.begin(), sources.end());
  std::string cmd = expand_build_command(buildCommand, "app", sources);
  if (!extraFlags.empty()) cmd += " " + extraFlags;
  RunResult r = run_command(cmd, sbx.dir(), 120);
  if (r.exitCode != 0) throw BuildFailedAfterImplant(r.output);
}

}  // namespace

std::string feature_macro(const std::string& flag) {
  std::string macro = "FEATURE_";
  for (char c : flag)
    macro += std::isalnum((unsigned char)c) ? (char)std::toupper(c) : '_';
  return macro;
}

std::string default_wrapper_block(const OverOrgan& organ) {
  std::string block = "{\n";
  for (const auto& e : organ.statementArray) {
    if (e.kind == StatementEntry::Kind::OrganElement) continue;
    block += "        " + e.text + "\n";
  }
  block += "    }";
  return block;
}

PostoperativeProject implant(const OverOrgan& organ, const ProductBase& base,
                             const HostContext& host,
                             const std::string& wrapperBlock,
                             const std::string& flag) {
  std::vector<std::pair<std::string, std::string>> hostFiles(
      base.files.begin(), base.files.end());
  ProjectModel hostPm = parse_project("/host", hostFiles);
  CloneReport report = detect_clones(organ, hostPm);

  std::map<std::string, std::string> files = base.files;
  std::string guard = flag.empty() ? "" : feature_macro(flag);
  // Merged elements always need a guard to coexist.
  std::string mergeGuard =
      guard.empty() ? feature_macro(organ.featureId) : guard;

  std::map<std::string, CloneVerdict> verdictOf;
  for (const auto& d : report.decisions)
    verdictOf[d.organFile + "\n" + d.organElement] = d.verdict;

  // Merge: replace each affected host element with a guarded pair holding
  // the organ variant and the host variant.
  std::map<std::string, std::vector<TextEdit>> mergeEdits;
  for (const auto& d : report.decisions) {
    if (d.verdict != CloneVerdict::Merge) continue;
    const OrganElement* oe = nullptr;
    for (const auto& cand : organ.organElements)
      if (cand.file == d.organFile && cand.name == d.organElement) oe = &cand;
    const Ast* hostAst = hostPm.findAst(d.hostFile);
    const Element* he = nullptr;
    forEachElement(hostPm, [&](const std::string& file, const Element& e) {
      if (file == d.hostFile && e.name == d.hostElement) he = &e;
    });
    if (!oe || !he) continue;
    std::string hostText = span_text(hostAst->text, he->span);
    TextEdit edit;
    edit.begin = he->span.begin;
    edit.end = he->span.end;
    edit.replacement = "#ifdef " + mergeGuard + "\n" + oe->text + "\n#else\n" +
                       hostText + "\n#endif";
    mergeEdits[d.hostFile].push_back(edit);
  }
  for (auto& [path, edits] : mergeEdits)
    files[path] = apply_edits(hostPm.findAst(path)->text, edits);

  // Grafts: append per donor file, preserving the organ's file placement.
  for (const auto& path : organ.fileMap) {
    std::string blob;
    for (const auto& oe : organ.organElements) {
      if (oe.file != path) continue;
      auto it = verdictOf.find(oe.file + "\n" + oe.name);
      bool graft = it == verdictOf.end() || it->second == CloneVerdict::Graft;
      if (!graft) continue;
      if (!blob.empty()) blob += "\n";
      blob += oe.text;
      if (blob.back() != '\n') blob += "\n";
    }
    if (blob.empty()) continue;
    std::string decls = organ_forward_decls(organ, path);
    std::string unit = decls.empty() ? blob : decls + "\n" + blob;
    if (!guard.empty())
      unit = "#ifdef " + guard + "\n" + unit + "#endif\n";

    auto existing = files.find(path);
    if (existing == files.end()) {
      std::string header;
      auto inc = organ.fileIncludes.find(path);
      if (inc != organ.fileIncludes.end())
        for (const auto& line : inc->second)
          if (!quotedIncludeOfMissing(line, organ.fileMap))
            header += line + "\n";
      files[path] = header.empty() ? unit : header + "\n" + unit;
    } else {
      std::string& content = existing->second;
      if (!content.empty() && content.back() != '\n') content += "\n";
      content += "\n" + unit;
    }
  }

  // The wrapper call replaces the insertion marker; the marker file also
  // receives declarations for the organ symbols the wrapper references.
  auto markerFile = files.find(host.file);
  if (markerFile == files.end()) throw MarkerNotFound(organ.featureId);
  auto pos = markerFile->second.find(host.marker);
  if (pos == std::string::npos) throw MarkerNotFound(organ.featureId);
  std::string call = wrapperBlock;
  if (!guard.empty())
    call = "\n#ifdef " + guard + "\n    " + wrapperBlock + "\n#endif\n";
  markerFile->second.replace(pos, host.marker.size(), call);
  std::string decls = organ_forward_decls(organ);
  if (!decls.empty())
    markerFile->second = decls + "\n" + markerFile->second;

  // Contract: the postoperative project always compiles — in both flag
  // states when flagged. The input tree is never modified.
  compileCheck(files, base.buildCommand, "");
  if (!guard.empty()) compileCheck(files, base.buildCommand, "-D" + guard);

  PostoperativeProject post;
  post.files = std::move(files);
  ImplantRecord record;
  record.featureId = organ.featureId;
  record.report = std::move(report);
  record.flag = flag;
  post.implantLog.push_back(std::move(record));
  return post;
}

}  // namespace transplant
