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

#include "transplant/platform.hpp"

#include <fcntl.h>
#include <signal.h>
#include <unistd.h>

#include <cerrno>

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "transplant/digest.hpp"
#include "transplant/errors.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace transplant {

namespace {

// ---------------------------------------------------------------------------
// Small file helpers
// ---------------------------------------------------------------------------

std::string readAll(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoError("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void writeAll(const fs::path& p, const std::string& content) {
  fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write " + p.string());
  out << content;
}

std::string nowIso8601() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// Exclusive per-artifact advisory lock: single writer per directory.
class ScopedLock {
 public:
  explicit ScopedLock(fs::path lockFile) : file_(std::move(lockFile)) {
    fs::create_directories(file_.parent_path());
    for (int attempt = 0; attempt < 200; ++attempt) {
      int fd = ::open(file_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
      if (fd >= 0) {
        std::string pid = std::to_string(::getpid());
        (void)!::write(fd, pid.data(), pid.size());
        ::close(fd);
        held_ = true;
        return;
      }
      // Break locks whose owning process died (e.g. crashed mid-store).
      std::ifstream in(file_);
      pid_t owner = 0;
      if (in >> owner && owner > 0 && ::kill(owner, 0) == -1 &&
          errno == ESRCH) {
        ::unlink(file_.c_str());
        continue;
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(25));
    }
    throw IoError("could not acquire lock " + file_.string());
  }
  ~ScopedLock() {
    if (held_) ::unlink(file_.c_str());
  }
  ScopedLock(const ScopedLock&) = delete;
  ScopedLock& operator=(const ScopedLock&) = delete;

 private:
  fs::path file_;
  bool held_ = false;
};

// ---------------------------------------------------------------------------
// Enum <-> string
// ---------------------------------------------------------------------------

std::string kindName(ElementKind k) {
  switch (k) {
    case ElementKind::FunctionDefinition: return "function-definition";
    case ElementKind::FunctionDeclaration: return "function-declaration";
    case ElementKind::GlobalVariable: return "global-variable";
    case ElementKind::TypeDefinition: return "type-definition";
    case ElementKind::ConstantDefinition: return "constant-definition";
    case ElementKind::IncludeDirective: return "include-directive";
    case ElementKind::ConditionalBlock: return "conditional-directive-block";
  }
  return "function-definition";
}

ElementKind kindFromName(const std::string& s) {
  if (s == "function-definition") return ElementKind::FunctionDefinition;
  if (s == "function-declaration") return ElementKind::FunctionDeclaration;
  if (s == "global-variable") return ElementKind::GlobalVariable;
  if (s == "type-definition") return ElementKind::TypeDefinition;
  if (s == "constant-definition") return ElementKind::ConstantDefinition;
  if (s == "include-directive") return ElementKind::IncludeDirective;
  if (s == "conditional-directive-block") return ElementKind::ConditionalBlock;
  throw IoError("unknown element kind: " + s);
}

std::string entryKindName(StatementEntry::Kind k) {
  switch (k) {
    case StatementEntry::Kind::OrganElement: return "organ-element";
    case StatementEntry::Kind::VeinStatement: return "vein-statement";
    case StatementEntry::Kind::EntryCall: return "entry-call";
  }
  return "vein-statement";
}

StatementEntry::Kind entryKindFromName(const std::string& s) {
  if (s == "organ-element") return StatementEntry::Kind::OrganElement;
  if (s == "vein-statement") return StatementEntry::Kind::VeinStatement;
  if (s == "entry-call") return StatementEntry::Kind::EntryCall;
  throw IoError("unknown statement entry kind: " + s);
}

std::string featureKindName(FeatureKind k) {
  switch (k) {
    case FeatureKind::Mandatory: return "mandatory";
    case FeatureKind::Optional: return "optional";
    case FeatureKind::Alternative: return "alternative";
  }
  return "optional";
}

FeatureKind featureKindFromName(const std::string& s) {
  if (s == "mandatory") return FeatureKind::Mandatory;
  if (s == "optional") return FeatureKind::Optional;
  if (s == "alternative") return FeatureKind::Alternative;
  throw IoError("unknown feature kind: " + s);
}

// ---------------------------------------------------------------------------
// JSON (de)serialization
// ---------------------------------------------------------------------------

json entryToJson(const StatementEntry& e) {
  return json{{"kind", entryKindName(e.kind)},
              {"file", e.file},
              {"element", e.element},
              {"index", e.index},
              {"text", e.text}};
}

StatementEntry entryFromJson(const json& j) {
  StatementEntry e;
  e.kind = entryKindFromName(j.at("kind").get<std::string>());
  e.file = j.at("file").get<std::string>();
  e.element = j.at("element").get<std::string>();
  e.index = j.at("index").get<int>();
  e.text = j.at("text").get<std::string>();
  return e;
}

json paramsToJson(const std::vector<Param>& params) {
  json out = json::array();
  for (const auto& p : params) out.push_back({{"type", p.type}, {"name", p.name}});
  return out;
}

std::vector<Param> paramsFromJson(const json& j) {
  std::vector<Param> out;
  for (const auto& p : j)
    out.push_back(Param{p.at("type").get<std::string>(),
                        p.at("name").get<std::string>()});
  return out;
}

json organToJson(const OverOrgan& organ) {
  json j;
  j["featureId"] = organ.featureId;
  j["donorId"] = organ.donorId;
  j["entryPoint"] = organ.entryPoint;
  j["entryReturnType"] = organ.entryReturnType;
  j["entryParams"] = paramsToJson(organ.entryParams);
  j["entryCallArgs"] = organ.entryCallArgs;
  j["organElements"] = json::array();
  for (const auto& e : organ.organElements)
    j["organElements"].push_back({{"file", e.file},
                                  {"name", e.name},
                                  {"kind", kindName(e.kind)},
                                  {"text", e.text}});
  j["veinStatements"] = json::array();
  for (const auto& e : organ.veinStatements)
    j["veinStatements"].push_back(entryToJson(e));
  j["statementArray"] = json::array();
  for (const auto& e : organ.statementArray)
    j["statementArray"].push_back(entryToJson(e));
  j["fileMap"] = organ.fileMap;
  j["boundarySymbols"] = organ.boundarySymbols;
  j["fileIncludes"] = organ.fileIncludes;
  j["freeVeinVars"] = paramsToJson(organ.freeVeinVars);
  return j;
}

OverOrgan organFromJson(const json& j) {
  OverOrgan organ;
  organ.featureId = j.at("featureId").get<std::string>();
  organ.donorId = j.at("donorId").get<std::string>();
  organ.entryPoint = j.at("entryPoint").get<std::string>();
  organ.entryReturnType = j.at("entryReturnType").get<std::string>();
  organ.entryParams = paramsFromJson(j.at("entryParams"));
  organ.entryCallArgs = j.at("entryCallArgs").get<std::vector<std::string>>();
  for (const auto& e : j.at("organElements"))
    organ.organElements.push_back(
        OrganElement{e.at("file").get<std::string>(),
                     e.at("name").get<std::string>(),
                     kindFromName(e.at("kind").get<std::string>()),
                     e.at("text").get<std::string>()});
  for (const auto& e : j.at("veinStatements"))
    organ.veinStatements.push_back(entryFromJson(e));
  for (const auto& e : j.at("statementArray"))
    organ.statementArray.push_back(entryFromJson(e));
  organ.fileMap = j.at("fileMap").get<std::vector<std::string>>();
  organ.boundarySymbols =
      j.at("boundarySymbols").get<std::vector<std::string>>();
  organ.fileIncludes =
      j.at("fileIncludes")
          .get<std::map<std::string, std::vector<std::string>>>();
  organ.freeVeinVars = paramsFromJson(j.at("freeVeinVars"));
  return organ;
}

json modelToJson(const FeatureModel& model) {
  json j;
  j["features"] = json::array();
  for (const auto& f : model.features)
    j["features"].push_back({{"id", f.id},
                             {"parent", f.parent},
                             {"kind", featureKindName(f.kind)}});
  j["crossTree"] = json::array();
  for (const auto& c : model.crossTree)
    j["crossTree"].push_back(
        {{"kind", c.kind == CrossConstraint::Kind::Requires ? "requires"
                                                            : "excludes"},
         {"a", c.a},
         {"b", c.b}});
  j["annotations"] = json::object();
  for (const auto& [id, a] : model.annotations)
    j["annotations"][id] = {{"donorId", a.donorId},
                            {"entryPoint", a.entryPoint}};
  return j;
}

FeatureModel modelFromJson(const json& j) {
  FeatureModel model;
  for (const auto& f : j.at("features"))
    model.features.push_back(
        Feature{f.at("id").get<std::string>(),
                f.at("parent").get<std::string>(),
                featureKindFromName(f.at("kind").get<std::string>())});
  for (const auto& c : j.at("crossTree"))
    model.crossTree.push_back(CrossConstraint{
        c.at("kind").get<std::string>() == "requires"
            ? CrossConstraint::Kind::Requires
            : CrossConstraint::Kind::Excludes,
        c.at("a").get<std::string>(), c.at("b").get<std::string>()});
  if (j.contains("annotations"))
    for (const auto& [id, a] : j.at("annotations").items())
      model.annotations[id] = Annotation{a.at("donorId").get<std::string>(),
                                         a.at("entryPoint").get<std::string>()};
  return model;
}

json iceboxToJson(const IceboxSuite& suite) {
  json j;
  j["id"] = suite.id;
  j["tests"] = json::array();
  for (const auto& t : suite.tests)
    j["tests"].push_back({{"name", t.name},
                          {"driverSource", t.driverSource},
                          {"command", t.command},
                          {"expectedExit", t.expectedExit},
                          {"checkStdout", t.checkStdout},
                          {"expectedStdout", t.expectedStdout}});
  return j;
}

IceboxSuite iceboxFromJson(const json& j) {
  IceboxSuite suite;
  suite.id = j.at("id").get<std::string>();
  for (const auto& t : j.at("tests")) {
    IceboxTest test;
    test.name = t.at("name").get<std::string>();
    test.driverSource = t.at("driverSource").get<std::string>();
    test.command = t.at("command").get<std::string>();
    test.expectedExit = t.at("expectedExit").get<int>();
    test.checkStdout = t.at("checkStdout").get<bool>();
    test.expectedStdout = t.at("expectedStdout").get<std::string>();
    suite.tests.push_back(std::move(test));
  }
  return suite;
}

// ---------------------------------------------------------------------------
// Generic artifact store/load
// ---------------------------------------------------------------------------

// Writes payload files plus a digest manifest into <root>/<kindDir>/<id>
// via a temp directory and a single rename, under an exclusive lock.
std::string storeArtifact(const fs::path& root, const std::string& kindDir,
                          const std::string& id,
                          const std::map<std::string, std::string>& files,
                          json manifestExtra, bool force) {
  fs::path dir = root / kindDir / id;
  if (fs::exists(dir) && !force) throw DuplicateFeatureId(id);
  ScopedLock lock(root / "locks" / (kindDir + "-" + id + ".lock"));

  json manifest = std::move(manifestExtra);
  manifest["files"] = json::array();
  for (const auto& [path, content] : files)
    manifest["files"].push_back(
        {{"path", path}, {"sha256", sha256_hex(content)}});
  manifest["createdAt"] = nowIso8601();
  manifest["toolVersion"] = kToolVersion;

  std::mt19937_64 rng(std::random_device{}());
  fs::path tmp = root / ".tmp" /
                 (kindDir + "-" + id + "-" + std::to_string(::getpid()) + "-" +
                  std::to_string(rng()));
  fs::create_directories(tmp);
  for (const auto& [path, content] : files) writeAll(tmp / path, content);
  writeAll(tmp / "manifest.json", manifest.dump(2) + "\n");

  // Fault-injection point for atomicity tests: crash before publication.
  const char* fault = std::getenv("TRANSPLANTC_FAULT_STORE");
  if (fault && std::string(fault) == "before-rename") ::_exit(3);

  fs::create_directories(dir.parent_path());
  if (fs::exists(dir)) fs::remove_all(dir);
  fs::rename(tmp, dir);
  return (dir / "manifest.json").string();
}

// Reads every manifest-listed file, verifying digests.
std::pair<json, std::map<std::string, std::string>> loadArtifact(
    const fs::path& root, const std::string& kindDir, const std::string& id) {
  fs::path dir = root / kindDir / id;
  if (!fs::exists(dir / "manifest.json")) throw MissingArtifact(kindDir + "/" + id);
  json manifest = json::parse(readAll(dir / "manifest.json"));
  std::map<std::string, std::string> files;
  for (const auto& f : manifest.at("files")) {
    std::string path = f.at("path").get<std::string>();
    if (!fs::exists(dir / path)) throw MissingArtifact(kindDir + "/" + id + "/" + path);
    std::string content = readAll(dir / path);
    if (sha256_hex(content) != f.at("sha256").get<std::string>())
      throw DigestMismatch(path);
    files[path] = std::move(content);
  }
  return {std::move(manifest), std::move(files)};
}

bool isIdentifier(const std::string& s) {
  if (s.empty() || (!std::isalpha((unsigned char)s[0]) && s[0] != '_'))
    return false;
  for (char c : s)
    if (!std::isalnum((unsigned char)c) && c != '_') return false;
  return true;
}

}  // namespace

std::string organ_to_json_text(const OverOrgan& organ) {
  return organToJson(organ).dump(2) + "\n";
}

OverOrgan organ_from_json_text(const std::string& text) {
  return organFromJson(json::parse(text));
}

// ---------------------------------------------------------------------------
// Feature model semantics
// ---------------------------------------------------------------------------

void check_feature_model(const FeatureModel& model) {
  std::map<std::string, const Feature*> byId;
  int roots = 0;
  for (const auto& f : model.features) {
    if (!byId.emplace(f.id, &f).second)
      throw Error("duplicate feature id: " + f.id);
    if (f.parent.empty()) ++roots;
  }
  if (!model.features.empty() && roots != 1)
    throw Error("feature model must have exactly one root");
  for (const auto& f : model.features) {
    if (!f.parent.empty() && !byId.count(f.parent))
      throw Error("unknown parent " + f.parent + " of " + f.id);
    // Acyclicity: walking up must reach the root within |features| steps.
    const Feature* cur = &f;
    for (std::size_t steps = 0; !cur->parent.empty(); ++steps) {
      if (steps > model.features.size())
        throw Error("parent cycle involving " + f.id);
      cur = byId.at(cur->parent);
    }
  }
  for (const auto& [id, a] : model.annotations) {
    if (!byId.count(id)) throw Error("annotation for unknown feature " + id);
    if (!isIdentifier(a.entryPoint))
      throw Error("annotation entry point is not an identifier: " +
                  a.entryPoint);
  }
}

std::vector<std::string> validate_configuration(
    const FeatureModel& model, const std::set<std::string>& selected) {
  std::map<std::string, const Feature*> byId;
  for (const auto& f : model.features) byId[f.id] = &f;
  for (const auto& id : selected)
    if (!byId.count(id)) throw UnknownFeature(id);

  std::vector<std::string> violations;
  for (const auto& id : selected) {
    const Feature* f = byId.at(id);
    if (!f->parent.empty() && !selected.count(f->parent))
      violations.push_back("parent " + f->parent + " of " + id + " unselected");
  }
  std::map<std::string, int> altSelected;  // parent -> selected alt children
  for (const auto& f : model.features) {
    if (f.kind == FeatureKind::Mandatory && !f.parent.empty() &&
        selected.count(f.parent) && !selected.count(f.id))
      violations.push_back("mandatory " + f.id + " under " + f.parent);
    if (f.kind == FeatureKind::Alternative && selected.count(f.id))
      ++altSelected[f.parent];
  }
  for (const auto& [parent, n] : altSelected)
    if (n > 1)
      violations.push_back("alternative group under " + parent + " has " +
                           std::to_string(n) + " selected");
  for (const auto& c : model.crossTree) {
    if (c.kind == CrossConstraint::Kind::Requires && selected.count(c.a) &&
        !selected.count(c.b))
      violations.push_back("requires " + c.a + "->" + c.b);
    if (c.kind == CrossConstraint::Kind::Excludes && selected.count(c.a) &&
        selected.count(c.b))
      violations.push_back("excludes " + c.a + "<->" + c.b);
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Repository
// ---------------------------------------------------------------------------

Platform::Platform(std::string root) : root_(std::move(root)) {}

Platform Platform::init(const std::string& root) {
  Platform p(root);
  for (const char* d : {"over-organs", "product-bases", "icebox", "locks", ".tmp"})
    fs::create_directories(fs::path(root) / d);
  if (!fs::exists(fs::path(root) / "feature-model.json"))
    p.storeFeatureModel(FeatureModel{});
  return p;
}

FeatureModel Platform::loadFeatureModel() const {
  fs::path p = fs::path(root_) / "feature-model.json";
  if (!fs::exists(p)) throw MissingArtifact("feature-model.json");
  FeatureModel model = modelFromJson(json::parse(readAll(p)));
  check_feature_model(model);
  return model;
}

void Platform::storeFeatureModel(const FeatureModel& model) const {
  check_feature_model(model);
  ScopedLock lock(fs::path(root_) / "locks" / "feature-model.lock");
  fs::path p = fs::path(root_) / "feature-model.json";
  fs::path tmp = p;
  tmp += ".tmp";
  writeAll(tmp, modelToJson(model).dump(2) + "\n");
  fs::rename(tmp, p);
}

std::string Platform::storeOverOrgan(const OverOrgan& organ, bool force) const {
  std::map<std::string, std::string> files = render_organ_files(organ);
  files["organ.json"] = organToJson(organ).dump(2) + "\n";
  json extra;
  extra["artifact"] = "over-organ";
  extra["featureId"] = organ.featureId;
  extra["donorId"] = organ.donorId;
  extra["entryPoint"] = organ.entryPoint;
  extra["boundarySymbols"] = organ.boundarySymbols;
  extra["iceboxSuiteRef"] =
      fs::exists(fs::path(root_) / "icebox" / organ.featureId / "manifest.json")
          ? organ.featureId
          : "";
  return storeArtifact(root_, "over-organs", organ.featureId, files, extra,
                       force);
}

OverOrgan Platform::loadOverOrgan(const std::string& featureId) const {
  auto [manifest, files] = loadArtifact(root_, "over-organs", featureId);
  return organFromJson(json::parse(files.at("organ.json")));
}

std::string Platform::storeProductBase(const ProductBase& base,
                                       bool force) const {
  std::map<std::string, std::string> files = base.files;
  json meta;
  meta["id"] = base.id;
  meta["buildCommand"] = base.buildCommand;
  meta["insertionPoints"] = base.insertionPoints;
  meta["sources"] = json::array();
  for (const auto& [path, _] : base.files) meta["sources"].push_back(path);
  files["base.json"] = meta.dump(2) + "\n";
  json extra;
  extra["artifact"] = "product-base";
  extra["featureId"] = base.id;
  extra["donorId"] = "";
  extra["entryPoint"] = "";
  extra["boundarySymbols"] = json::array();
  extra["iceboxSuiteRef"] = "";
  return storeArtifact(root_, "product-bases", base.id, files, extra, force);
}

ProductBase Platform::loadProductBase(const std::string& id) const {
  auto [manifest, files] = loadArtifact(root_, "product-bases", id);
  json meta = json::parse(files.at("base.json"));
  ProductBase base;
  base.id = meta.at("id").get<std::string>();
  base.buildCommand = meta.at("buildCommand").get<std::string>();
  base.insertionPoints =
      meta.at("insertionPoints").get<std::map<std::string, std::string>>();
  for (const auto& s : meta.at("sources"))
    base.files[s.get<std::string>()] = files.at(s.get<std::string>());
  return base;
}

std::string Platform::storeIcebox(const IceboxSuite& suite, bool force) const {
  std::map<std::string, std::string> files;
  files["suite.json"] = iceboxToJson(suite).dump(2) + "\n";
  json extra;
  extra["artifact"] = "icebox";
  extra["featureId"] = suite.id;
  extra["donorId"] = "";
  extra["entryPoint"] = "";
  extra["boundarySymbols"] = json::array();
  extra["iceboxSuiteRef"] = suite.id;
  return storeArtifact(root_, "icebox", suite.id, files, extra, force);
}

IceboxSuite Platform::loadIcebox(const std::string& id) const {
  auto [manifest, files] = loadArtifact(root_, "icebox", id);
  return iceboxFromJson(json::parse(files.at("suite.json")));
}

std::vector<Platform::LsRow> Platform::ls() const {
  std::vector<LsRow> rows;
  for (const char* kind : {"over-organs", "product-bases", "icebox"}) {
    fs::path dir = fs::path(root_) / kind;
    if (!fs::exists(dir)) continue;
    std::vector<std::string> ids;
    for (const auto& entry : fs::directory_iterator(dir))
      if (entry.is_directory()) ids.push_back(entry.path().filename().string());
    std::sort(ids.begin(), ids.end());
    for (const auto& id : ids) {
      fs::path mf = dir / id / "manifest.json";
      if (!fs::exists(mf)) continue;
      json manifest = json::parse(readAll(mf));
      rows.push_back(LsRow{kind, id,
                           manifest.value("createdAt", ""),
                           (int)manifest.at("files").size()});
    }
  }
  return rows;
}

// Declared with the extractor interface; storage lives with the platform.
std::string store_slices(const OverOrgan& organ, const std::string& platformRoot,
                         bool force) {
  if (!fs::exists(platformRoot))
    throw IoError("platform root does not exist: " + platformRoot);
  return Platform(platformRoot).storeOverOrgan(organ, force);
}

}  // namespace transplant
