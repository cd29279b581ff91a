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

#ifndef TRANSPLANT_PLATFORM_HPP
#define TRANSPLANT_PLATFORM_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "transplant/organ.hpp"

namespace transplant {

inline constexpr const char* kToolVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Feature model
// ---------------------------------------------------------------------------

enum class FeatureKind { Mandatory, Optional, Alternative };

struct Feature {
  std::string id;
  std::string parent;  // empty for the root
  FeatureKind kind = FeatureKind::Optional;
};

struct CrossConstraint {
  enum class Kind { Requires, Excludes };
  Kind kind = Kind::Requires;
  std::string a;
  std::string b;
};

// Entry-point annotation tying a feature to its donor organ.
struct Annotation {
  std::string donorId;
  std::string entryPoint;
};

struct FeatureModel {
  std::vector<Feature> features;
  std::vector<CrossConstraint> crossTree;
  std::map<std::string, Annotation> annotations;
};

// Checks structural invariants: single root, existing parents, acyclic
// parent relation, identifier-shaped entry points. Throws Error on
// violation.
void check_feature_model(const FeatureModel& model);

// Returns every violated constraint for the selection, as stable
// human-readable strings. Selection of a feature implies selection of its
// parent; mandatory children of selected features must be selected; at
// most one alternative child per parent; requires/excludes as usual.
std::vector<std::string> validate_configuration(
    const FeatureModel& model, const std::set<std::string>& selected);

// ---------------------------------------------------------------------------
// Ice-box suites and product bases
// ---------------------------------------------------------------------------

struct IceboxTest {
  std::string name;
  // C driver source compiled against the organ; empty when `command` is a
  // standalone command template instead.
  std::string driverSource;
  std::string command;
  int expectedExit = 0;
  bool checkStdout = false;
  std::string expectedStdout;
};

struct IceboxSuite {
  std::string id;
  std::vector<IceboxTest> tests;
};

struct ProductBase {
  std::string id;
  // Command template with {out} and {sources} placeholders.
  std::string buildCommand;
  std::map<std::string, std::string> files;  // relative path -> content
  // Insertion points recorded per feature id: marker comment text.
  std::map<std::string, std::string> insertionPoints;
};

// Over-organ JSON document (sorted keys), the organ.json format.
std::string organ_to_json_text(const OverOrgan& organ);
OverOrgan organ_from_json_text(const std::string& text);

// ---------------------------------------------------------------------------
// Repository
// ---------------------------------------------------------------------------

// Layout: <root>/{feature-model.json, over-organs/<id>/, product-bases/<id>/,
// icebox/<id>/}. All documents are UTF-8 JSON with sorted keys. Stores are
// atomic (temp dir + rename) and serialized by per-artifact lock files;
// loads verify content digests.
class Platform {
 public:
  explicit Platform(std::string root);

  // Creates the repository layout and an empty feature model.
  static Platform init(const std::string& root);

  const std::string& root() const { return root_; }

  FeatureModel loadFeatureModel() const;
  void storeFeatureModel(const FeatureModel& model) const;

  std::string storeOverOrgan(const OverOrgan& organ, bool force = false) const;
  OverOrgan loadOverOrgan(const std::string& featureId) const;

  std::string storeProductBase(const ProductBase& base,
                               bool force = false) const;
  ProductBase loadProductBase(const std::string& id) const;

  std::string storeIcebox(const IceboxSuite& suite, bool force = false) const;
  IceboxSuite loadIcebox(const std::string& id) const;

  struct LsRow {
    std::string kind;
    std::string id;
    std::string createdAt;
    int fileCount = 0;
  };
  std::vector<LsRow> ls() const;

 private:
  std::string root_;
};

}  // namespace transplant

#endif  // TRANSPLANT_PLATFORM_HPP
