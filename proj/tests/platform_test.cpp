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

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <set>

#include "doctest.h"
#include "donor_fixtures.hpp"
#include "test_util.hpp"
#include "transplant/digest.hpp"
#include "transplant/errors.hpp"
#include "transplant/platform.hpp"

using namespace transplant;
namespace fs = std::filesystem;

namespace {

FeatureModel smallModel() {
  FeatureModel m;
  m.features = {
      {"editor", "", FeatureKind::Mandatory},
      {"search", "editor", FeatureKind::Mandatory},
      {"highlight", "editor", FeatureKind::Optional},
      {"undo", "editor", FeatureKind::Optional},
      {"tabs2", "editor", FeatureKind::Alternative},
      {"tabs4", "editor", FeatureKind::Alternative},
  };
  m.crossTree = {
      {CrossConstraint::Kind::Requires, "highlight", "search"},
      {CrossConstraint::Kind::Excludes, "undo", "tabs4"},
  };
  return m;
}

// Independent brute-force evaluator: expands the model into a list of
// logical constraints and checks each against the selection.
std::set<std::string> oracleViolations(const FeatureModel& m,
                                       const std::set<std::string>& sel) {
  std::set<std::string> out;
  auto has = [&](const std::string& id) { return sel.count(id) > 0; };
  for (const auto& f : m.features) {
    if (f.parent.empty()) continue;
    if (has(f.id) && !has(f.parent))
      out.insert("parent " + f.parent + " of " + f.id + " unselected");
    if (f.kind == FeatureKind::Mandatory && has(f.parent) && !has(f.id))
      out.insert("mandatory " + f.id + " under " + f.parent);
  }
  std::map<std::string, int> alt;
  for (const auto& f : m.features)
    if (f.kind == FeatureKind::Alternative && has(f.id)) ++alt[f.parent];
  for (const auto& [p, n] : alt)
    if (n > 1)
      out.insert("alternative group under " + p + " has " + std::to_string(n) +
                 " selected");
  for (const auto& c : m.crossTree) {
    bool bad = c.kind == CrossConstraint::Kind::Requires
                   ? has(c.a) && !has(c.b)
                   : has(c.a) && has(c.b);
    if (bad)
      out.insert(c.kind == CrossConstraint::Kind::Requires
                     ? "requires " + c.a + "->" + c.b
                     : "excludes " + c.a + "<->" + c.b);
  }
  return out;
}

std::set<std::string> asSet(const std::vector<std::string>& v) {
  return {v.begin(), v.end()};
}

}  // namespace

TEST_CASE("sha256 matches a known vector") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("root-only selection is valid") {
  FeatureModel m;
  m.features = {{"root", "", FeatureKind::Mandatory}};
  CHECK(validate_configuration(m, {"root"}).empty());
}

TEST_CASE("requires violation is reported") {
  FeatureModel m;
  m.features = {{"root", "", FeatureKind::Mandatory},
                {"a", "root", FeatureKind::Optional},
                {"b", "root", FeatureKind::Optional}};
  m.crossTree = {{CrossConstraint::Kind::Requires, "a", "b"}};
  CHECK(asSet(validate_configuration(m, {"root", "a"})) ==
        std::set<std::string>{"requires a->b"});
}

TEST_CASE("unknown selected feature raises") {
  FeatureModel m;
  m.features = {{"root", "", FeatureKind::Mandatory}};
  CHECK_THROWS_AS(validate_configuration(m, {"ghost"}), UnknownFeature);
}

TEST_CASE("exhaustive oracle equivalence on all 2^6 selections") {
  FeatureModel m = smallModel();
  std::vector<std::string> ids;
  for (const auto& f : m.features) ids.push_back(f.id);
  for (unsigned mask = 0; mask < (1u << ids.size()); ++mask) {
    std::set<std::string> sel;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (mask & (1u << i)) sel.insert(ids[i]);
    CHECK(asSet(validate_configuration(m, sel)) == oracleViolations(m, sel));
  }
}

TEST_CASE("feature model invariants are enforced") {
  FeatureModel twoRoots;
  twoRoots.features = {{"a", "", FeatureKind::Mandatory},
                       {"b", "", FeatureKind::Mandatory}};
  CHECK_THROWS_AS(check_feature_model(twoRoots), Error);

  FeatureModel cycle;
  cycle.features = {{"root", "", FeatureKind::Mandatory},
                    {"a", "b", FeatureKind::Optional},
                    {"b", "a", FeatureKind::Optional}};
  CHECK_THROWS_AS(check_feature_model(cycle), Error);

  FeatureModel badAnnotation;
  badAnnotation.features = {{"root", "", FeatureKind::Mandatory}};
  badAnnotation.annotations["root"] = {"d1", "not an identifier"};
  CHECK_THROWS_AS(check_feature_model(badAnnotation), Error);
}

TEST_CASE("feature model persists through the repository") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  FeatureModel m = smallModel();
  m.annotations["highlight"] = {"d1", "feat_sum"};
  p.storeFeatureModel(m);
  FeatureModel back = p.loadFeatureModel();
  REQUIRE(back.features.size() == m.features.size());
  CHECK(back.features[1].id == "search");
  CHECK(back.features[1].kind == FeatureKind::Mandatory);
  CHECK(back.crossTree.size() == 2);
  CHECK(back.annotations.at("highlight").entryPoint == "feat_sum");
}

TEST_CASE("stored over-organ lands in the documented layout") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  std::string manifest = p.storeOverOrgan(testutil::organD1("sum"));
  CHECK(fs::exists(dir.path() / "over-organs/sum/main.c"));
  CHECK(fs::exists(dir.path() / "over-organs/sum/util.c"));
  CHECK(fs::exists(dir.path() / "over-organs/sum/manifest.json"));
  CHECK(manifest ==
        (dir.path() / "over-organs/sum/manifest.json").string());
}

TEST_CASE("storing the same feature twice requires force") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  p.storeOverOrgan(testutil::organD1("sum"));
  CHECK_THROWS_AS(p.storeOverOrgan(testutil::organD1("sum")),
                  DuplicateFeatureId);
  CHECK_NOTHROW(p.storeOverOrgan(testutil::organD1("sum"), /*force=*/true));
}

TEST_CASE("over-organ round-trips structurally") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  OverOrgan organ = testutil::organD1("sum");
  p.storeOverOrgan(organ);
  OverOrgan back = p.loadOverOrgan("sum");
  CHECK(back.fileMap == organ.fileMap);
  CHECK(back.entryPoint == organ.entryPoint);
  CHECK(back.statementArray.size() == organ.statementArray.size());
  CHECK(back.entryCallArgs == organ.entryCallArgs);
  CHECK(back.organElements.size() == organ.organElements.size());
  for (std::size_t i = 0; i < organ.organElements.size(); ++i) {
    CHECK(back.organElements[i].text == organ.organElements[i].text);
    CHECK(back.organElements[i].file == organ.organElements[i].file);
  }
  CHECK(render_organ_files(back) == render_organ_files(organ));
}

TEST_CASE("store, load, re-store under a new id is byte-identical") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  p.storeOverOrgan(testutil::organD1("sum"));
  OverOrgan back = p.loadOverOrgan("sum");
  back.featureId = "sum2";
  p.storeOverOrgan(back);
  for (const char* f : {"main.c", "util.c", "organ.json"}) {
    std::string a = testutil::readFile(dir.path() / "over-organs/sum" / f);
    std::string b = testutil::readFile(dir.path() / "over-organs/sum2" / f);
    if (std::string(f) == "organ.json") continue;  // featureId differs
    CHECK(a == b);
  }
}

TEST_CASE("corrupting one stored byte is detected by name") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  p.storeOverOrgan(testutil::organD1("sum"));
  auto path = dir.path() / "over-organs/sum/util.c";
  std::string bytes = testutil::readFile(path);
  bytes[bytes.size() / 2] ^= 1;
  testutil::writeFile(path, bytes);
  try {
    p.loadOverOrgan("sum");
    FAIL("expected DigestMismatch");
  } catch (const DigestMismatch& e) {
    CHECK(e.file == "util.c");
  }
}

TEST_CASE("missing listed file raises MissingArtifact") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  p.storeOverOrgan(testutil::organD1("sum"));
  fs::remove(dir.path() / "over-organs/sum/util.c");
  CHECK_THROWS_AS(p.loadOverOrgan("sum"), MissingArtifact);
}

TEST_CASE("loading an absent artifact raises MissingArtifact") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  CHECK_THROWS_AS(p.loadOverOrgan("nope"), MissingArtifact);
}

TEST_CASE("product base round-trips and compiles") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  ProductBase base;
  base.id = "host";
  base.buildCommand = "cc -o {out} {sources}";
  base.files["app.c"] =
      "int main(void) {\n    /*@transplant:sum*/\n    return 0;\n}\n";
  base.insertionPoints["sum"] = "/*@transplant:sum*/";
  p.storeProductBase(base);
  ProductBase back = p.loadProductBase("host");
  CHECK(back.buildCommand == base.buildCommand);
  CHECK(back.files == base.files);
  CHECK(back.insertionPoints == base.insertionPoints);

  testutil::TempDir build;
  for (const auto& [path, content] : back.files)
    testutil::writeFile(build.path() / path, content);
  auto cc = testutil::runCmd("cc -o " + (build.path() / "app").string() + " " +
                             (build.path() / "app.c").string());
  CHECK(cc.exitCode == 0);
}

TEST_CASE("ice-box suite round-trips") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  IceboxSuite suite;
  suite.id = "sum";
  IceboxTest t;
  t.name = "sum-of-3";
  t.driverSource = "int feat_sum(int n);\nint main(void){feat_sum(3);return 0;}\n";
  t.expectedExit = 0;
  t.checkStdout = true;
  t.expectedStdout = "sum=6\n";
  suite.tests = {t};
  p.storeIcebox(suite);
  IceboxSuite back = p.loadIcebox("sum");
  REQUIRE(back.tests.size() == 1);
  CHECK(back.tests[0].name == "sum-of-3");
  CHECK(back.tests[0].expectedStdout == "sum=6\n");
  CHECK(back.tests[0].checkStdout);
}

TEST_CASE("over-organ stored after its ice-box suite references it") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  IceboxSuite suite;
  suite.id = "sum";
  suite.tests = {IceboxTest{"t", "", "true", 0, false, ""}};
  p.storeIcebox(suite);
  std::string manifest = p.storeOverOrgan(testutil::organD1("sum"));
  std::string text = testutil::readFile(manifest);
  CHECK(text.find("\"iceboxSuiteRef\": \"sum\"") != std::string::npos);
}

TEST_CASE("a crashed store publishes nothing") {
  testutil::TempDir dir;
  Platform::init(dir.path().string());
  pid_t child = fork();
  REQUIRE(child >= 0);
  if (child == 0) {
    setenv("TRANSPLANTC_FAULT_STORE", "before-rename", 1);
    Platform p(dir.path().string());
    p.storeOverOrgan(testutil::organD1("sum"));
    _exit(0);  // not reached: the fault hook exits first
  }
  int status = 0;
  waitpid(child, &status, 0);
  REQUIRE(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 3);
  CHECK_FALSE(fs::exists(dir.path() / "over-organs/sum"));
  // The repository stays usable: the same store now succeeds.
  Platform p(dir.path().string());
  CHECK_NOTHROW(p.storeOverOrgan(testutil::organD1("sum")));
  CHECK(fs::exists(dir.path() / "over-organs/sum/manifest.json"));
}

TEST_CASE("ls reports every stored artifact") {
  testutil::TempDir dir;
  Platform p = Platform::init(dir.path().string());
  p.storeOverOrgan(testutil::organD1("sum"));
  IceboxSuite suite;
  suite.id = "sum";
  suite.tests = {IceboxTest{"t", "", "true", 0, false, ""}};
  p.storeIcebox(suite);
  ProductBase base;
  base.id = "host";
  base.buildCommand = "cc -o {out} {sources}";
  base.files["app.c"] = "int main(void){return 0;}\n";
  p.storeProductBase(base);
  auto rows = p.ls();
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].kind == "over-organs");
  CHECK(rows[0].id == "sum");
  CHECK(rows[1].kind == "product-bases");
  CHECK(rows[1].id == "host");
  CHECK(rows[2].kind == "icebox");
  CHECK(rows[2].id == "sum");
  for (const auto& r : rows) CHECK(r.fileCount > 0);
}
