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

#ifndef TRANSPLANT_ERRORS_HPP
#define TRANSPLANT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace transplant {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& msg) : Error(msg) {}
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& file, int line, const std::string& expected)
      : Error(file + ":" + std::to_string(line) + ": syntax error, expected " +
              expected),
        file(file),
        line(line),
        expected(expected) {}
  std::string file;
  int line;
  std::string expected;
};

class UnsupportedConstruct : public Error {
 public:
  UnsupportedConstruct(const std::string& file, int line,
                       const std::string& construct)
      : Error(file + ":" + std::to_string(line) +
              ": unsupported construct: " + construct),
        file(file),
        line(line),
        construct(construct) {}
  std::string file;
  int line;
  std::string construct;
};

class UnbalancedDirective : public Error {
 public:
  UnbalancedDirective(const std::string& file, int line)
      : Error(file + ":" + std::to_string(line) + ": unbalanced directive"),
        file(file),
        line(line) {}
  std::string file;
  int line;
};

class UnresolvedSymbol : public Error {
 public:
  UnresolvedSymbol(const std::string& name, const std::string& file, int line)
      : Error(file + ":" + std::to_string(line) +
              ": unresolved symbol: " + name),
        name(name),
        file(file),
        line(line) {}
  std::string name;
  std::string file;
  int line;
};

class UnknownEntryPoint : public Error {
 public:
  explicit UnknownEntryPoint(const std::string& name)
      : Error("unknown entry point: " + name), name(name) {}
  std::string name;
};

class NoPathFromMain : public Error {
 public:
  explicit NoPathFromMain(const std::string& name)
      : Error("no path from main to " + name), name(name) {}
  std::string name;
};

class UnknownFeature : public Error {
 public:
  explicit UnknownFeature(const std::string& id)
      : Error("unknown feature: " + id), id(id) {}
  std::string id;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& msg) : Error("io error: " + msg) {}
};

class DuplicateFeatureId : public Error {
 public:
  explicit DuplicateFeatureId(const std::string& id)
      : Error("feature already stored: " + id), id(id) {}
  std::string id;
};

class DigestMismatch : public Error {
 public:
  explicit DigestMismatch(const std::string& file)
      : Error("digest mismatch: " + file), file(file) {}
  std::string file;
};

class MissingArtifact : public Error {
 public:
  explicit MissingArtifact(const std::string& what)
      : Error("missing artifact: " + what) {}
};

class MarkerNotFound : public Error {
 public:
  explicit MarkerNotFound(const std::string& id)
      : Error("insertion marker not found: " + id), id(id) {}
  std::string id;
};

class MarkerAmbiguous : public Error {
 public:
  explicit MarkerAmbiguous(const std::string& id)
      : Error("insertion marker occurs more than once: " + id), id(id) {}
  std::string id;
};

class SignatureConflict : public Error {
 public:
  explicit SignatureConflict(const std::string& name)
      : Error("conflicting signatures for " + name), name(name) {}
  std::string name;
};

class BuildFailedAfterImplant : public Error {
 public:
  explicit BuildFailedAfterImplant(const std::string& log)
      : Error("build failed after implant"), log(log) {}
  std::string log;
};

class NoViableOrganFound : public Error {
 public:
  explicit NoViableOrganFound(const std::string& report)
      : Error("no viable organ found"), report(report) {}
  std::string report;
};

class MissingSuite : public Error {
 public:
  explicit MissingSuite(const std::string& kind)
      : Error("missing suite: " + kind), kind(kind) {}
  std::string kind;
};

class PromotionBeforeValidation : public Error {
 public:
  PromotionBeforeValidation()
      : Error("cannot promote tests before a passing validation") {}
};

class SandboxIoError : public Error {
 public:
  explicit SandboxIoError(const std::string& msg)
      : Error("sandbox io error: " + msg) {}
};

class BuildToolMissing : public Error {
 public:
  explicit BuildToolMissing(const std::string& tool)
      : Error("build tool missing: " + tool) {}
};

}  // namespace transplant

#endif  // TRANSPLANT_ERRORS_HPP
