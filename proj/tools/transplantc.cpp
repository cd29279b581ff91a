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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "transplant/errors.hpp"
#include "transplant/gp.hpp"
#include "transplant/implant.hpp"
#include "transplant/organ.hpp"
#include "transplant/parser.hpp"
#include "transplant/platform.hpp"
#include "transplant/postop.hpp"
#include "transplant/reconfig.hpp"
#include "transplant/sdg.hpp"
#include "transplant/wrapper.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace transplant;

namespace {

std::string readTextFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void writeTextFile(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

bool isSourcePath(const fs::path& p) {
  return p.extension() == ".c" || p.extension() == ".h";
}

// All .c/.h files under `dir`, keyed by relative path.
std::map<std::string, std::string> loadSourceTree(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (!entry.is_regular_file() || !isSourcePath(entry.path())) continue;
    std::string rel = fs::relative(entry.path(), dir).generic_string();
    files[rel] = readTextFile(entry.path());
  }
  return files;
}

ProjectModel parseTree(const std::string& root,
                       const std::map<std::string, std::string>& files) {
  std::vector<std::pair<std::string, std::string>> v(files.begin(),
                                                     files.end());
  return parse_project(root, v);
}

// Host project directory: sources plus base.json
// {"id", "buildCommand", "insertionPoints"} and suites/<kind>.json files.
ProductBase loadHostDir(const fs::path& dir) {
  ProductBase base;
  base.files = loadSourceTree(dir);
  fs::path meta = dir / "base.json";
  if (fs::exists(meta)) {
    json j = json::parse(readTextFile(meta));
    base.id = j.value("id", dir.filename().string());
    base.buildCommand = j.value("buildCommand", "cc -o {out} {sources}");
    if (j.contains("insertionPoints"))
      base.insertionPoints =
          j.at("insertionPoints").get<std::map<std::string, std::string>>();
  } else {
    base.id = dir.filename().string();
    base.buildCommand = "cc -o {out} {sources}";
  }
  return base;
}

TestSuite loadSuiteFile(const fs::path& path) {
  return suite_from_json(readTextFile(path));
}

std::vector<TestSuite> loadValidationSuites(const fs::path& hostDir) {
  std::vector<TestSuite> suites;
  for (const char* name :
       {"regression.json", "regression++.json", "acceptance.json"}) {
    fs::path p = hostDir / "suites" / name;
    if (fs::exists(p)) suites.push_back(loadSuiteFile(p));
  }
  return suites;
}

IceboxSuite loadIceboxSuite(const fs::path& hostDir,
                            const std::string& featureId) {
  fs::path p = hostDir / "suites" / "icebox.json";
  if (!fs::exists(p)) throw MissingSuite("icebox");
  TestSuite suite = loadSuiteFile(p);
  IceboxSuite icebox;
  icebox.id = featureId + "-icebox";
  icebox.tests = suite.tests;
  return icebox;
}

// One integer seed per line; '#' starts a comment.
std::vector<std::uint64_t> loadSeeds(const fs::path& path) {
  std::vector<std::uint64_t> seeds;
  std::istringstream in(readTextFile(path));
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::uint64_t s;
    if (ls >> s) seeds.push_back(s);
  }
  if (seeds.empty())
    throw InvalidArgument("no seeds in " + path.string());
  return seeds;
}

void writeTree(const fs::path& dir,
               const std::map<std::string, std::string>& files) {
  fs::create_directories(dir);
  for (const auto& [rel, content] : files) writeTextFile(dir / rel, content);
}

class RunLog {
 public:
  RunLog(std::string command, fs::path workspace)
      : workspace_(std::move(workspace)) {
    log_["command"] = std::move(command);
    log_["seeds"] = json::array();
    log_["timings"] = json::object();
    log_["verdict"] = "ok";
  }

  void setSeeds(const std::vector<std::uint64_t>& seeds) {
    log_["seeds"] = seeds;
  }
  void setVerdict(const std::string& v) { log_["verdict"] = v; }
  void set(const std::string& key, const json& value) { log_[key] = value; }

  template <typename Fn>
  auto stage(const std::string& name, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(name, t0);
    } else {
      auto result = fn();
      record(name, t0);
      return result;
    }
  }

  void write() const {
    writeTextFile(workspace_ / "run-log.json", log_.dump(2) + "\n");
  }

 private:
  void record(const std::string& name,
              std::chrono::steady_clock::time_point t0) {
    log_["timings"][name] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }

  fs::path workspace_;
  json log_;
};

Platform openPlatform(const fs::path& workspace) {
  fs::path root = workspace / "platform";
  if (!fs::exists(root)) return Platform::init(root.string());
  return Platform(root.string());
}

// ---------------------------------------------------------------------------
// Stages, shared by the per-stage subcommands and `transplant`.
// ---------------------------------------------------------------------------

void doExtract(const fs::path& donor, const std::string& entry,
               const fs::path& workspace, const std::string& emitSdg,
               bool force) {
  ProjectModel pm = parseTree(donor.string(), loadSourceTree(donor));
  Sdg sdg = build_sdg(pm);
  if (!emitSdg.empty()) writeTextFile(emitSdg, to_dot(sdg));
  OverOrgan organ = extract_over_organ(pm, sdg, entry, entry);
  organ.donorId = donor.filename().string();
  organ = build_statement_array(std::move(organ), pm, sdg, nullptr);
  Platform platform = openPlatform(workspace);
  std::string path = platform.storeOverOrgan(organ, force);
  std::cout << "stored over-organ " << organ.featureId << " at " << path
            << "\n";
}

struct AdaptOutcome {
  OverOrgan organ;
  std::string wrapperBlock;
};

AdaptOutcome doAdapt(const fs::path& workspace, const fs::path& hostDir,
                     const std::string& entry,
                     const std::vector<std::uint64_t>& seeds,
                     const GpConfig& configIn) {
  Platform platform = openPlatform(workspace);
  OverOrgan organ = platform.loadOverOrgan(entry);
  ProductBase base = loadHostDir(hostDir);
  IceboxSuite icebox = loadIceboxSuite(hostDir, entry);
  HostContext host = resolve_host_context(base, entry);
  GpConfig config = configIn;
  config.seeds = seeds;
  EvolveResult result = evolve(organ, host, base, icebox, config);

  fs::path out = workspace / "adapted" / entry;
  writeTextFile(out / "organ.json", organ_to_json_text(result.reducedOrgan));
  writeTextFile(out / "wrapper.txt", result.wrapperBlock);
  json log;
  log["seedUsed"] = result.seedUsed;
  log["evaluations"] = result.evaluations;
  log["statementCount"] = result.bestFitness.statementCount;
  log["iceboxPassed"] = result.bestFitness.iceboxPassed;
  log["iceboxTotal"] = result.bestFitness.iceboxTotal;
  writeTextFile(out / "adapt-log.json", log.dump(2) + "\n");
  std::cout << "adapted organ " << entry << ": "
            << result.bestFitness.statementCount << " statements, icebox "
            << result.bestFitness.iceboxPassed << "/"
            << result.bestFitness.iceboxTotal << "\n";
  return AdaptOutcome{std::move(result.reducedOrgan),
                      std::move(result.wrapperBlock)};
}

void doImplant(const fs::path& workspace, const fs::path& hostDir,
               const std::string& entry, const std::string& hostTarget,
               bool emitReport, const std::string& featureFlag) {
  ProductBase base = loadHostDir(hostDir);
  OverOrgan organ;
  std::string wrapperBlock;
  fs::path adapted = workspace / "adapted" / entry / "organ.json";
  if (fs::exists(adapted)) {
    organ = organ_from_json_text(readTextFile(adapted));
    wrapperBlock =
        readTextFile(workspace / "adapted" / entry / "wrapper.txt");
  } else {
    Platform platform = openPlatform(workspace);
    organ = platform.loadOverOrgan(entry);
    wrapperBlock = default_wrapper_block(organ);
  }
  HostContext host = resolve_host_context(base, entry);
  if (!hostTarget.empty() &&
      fs::path(hostTarget).filename().string() !=
          fs::path(host.file).filename().string())
    throw InvalidArgument("--host_target names " + hostTarget +
                          " but the insertion marker is in " + host.file);
  PostoperativeProject post =
      implant(organ, base, host, wrapperBlock, featureFlag);
  writeTree(workspace / "postoperative", post.files);
  if (emitReport)
    writeTextFile(workspace / "clone-report.json",
                  clone_report_json(post.implantLog.front().report));
  std::cout << "implanted " << entry << " into " << base.id << " ("
            << post.files.size() << " files)\n";
}

std::string doValidate(const fs::path& workspace, const fs::path& hostDir,
                       const RunOptions& options) {
  fs::path tree = workspace / "postoperative";
  if (!fs::exists(tree))
    throw InvalidArgument("no postoperative project in " +
                          workspace.string() + "; run implant first");
  ProductBase base = loadHostDir(hostDir);
  std::map<std::string, std::string> files = loadSourceTree(tree);
  std::vector<TestSuite> suites = loadValidationSuites(hostDir);
  ValidationReport report =
      validate(files, suites, base.buildCommand, options);
  writeTextFile(workspace / "validation-report.json",
                validation_report_json(report));
  for (const auto& s : report.suites)
    std::cout << suite_kind_name(s.kind) << ": " << s.passed << "/"
              << s.total << (s.ran ? "" : " (not run)") << "\n";
  std::cout << "verdict: " << report.verdict << "\n";
  return report.verdict;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transplantc: automated C feature transplantation"};
  app.require_subcommand(1);

  std::string donorFolder, hostProject, hostTarget, donorTarget, workspace;
  std::string coreFunctionTarget, seedsFile, featuresFile, emitSdg;
  std::string featureFlag;
  bool emitReport = false, force = false;
  int gpPop = 40, gpGens = 100, jobs = 1, testTimeoutSecs = 5;

  auto addWorkspace = [&](CLI::App* cmd) {
    cmd->add_option("--workspace", workspace, "Workspace directory")
        ->required();
  };

  CLI::App* cmdInit = app.add_subcommand("init", "Initialize the platform");
  addWorkspace(cmdInit);

  CLI::App* cmdReduce = app.add_subcommand(
      "reduce-host", "Remove preprocessor-guarded features from a tree");
  cmdReduce->add_option("--host_project", hostProject,
                        "The path to the host project source code")
      ->check(CLI::ExistingDirectory);
  cmdReduce->add_option("--donor_folder", donorFolder,
                        "The path to the donor source code")
      ->check(CLI::ExistingDirectory);
  cmdReduce->add_option("--features_file", featuresFile,
                        "Textual list of preprocessor directives to remove")
      ->required()
      ->check(CLI::ExistingFile);
  addWorkspace(cmdReduce);

  CLI::App* cmdExtract =
      app.add_subcommand("extract", "Extract an over-organ from a donor");
  cmdExtract->add_option("--donor_folder", donorFolder,
                         "The path to the donor source code")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmdExtract->add_option("--core_function_target", coreFunctionTarget,
                         "Entry-point function of the target feature")
      ->required();
  cmdExtract->add_option("--emit-sdg", emitSdg,
                         "Write the system dependency graph as DOT");
  cmdExtract->add_flag("--force", force, "Overwrite an existing artifact");
  addWorkspace(cmdExtract);

  auto addGpFlags = [&](CLI::App* cmd) {
    cmd->add_option("--seeds_file", seedsFile,
                    "File with the seeds for the genetic search")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--gp-pop", gpPop, "GP population size");
    cmd->add_option("--gp-gens", gpGens, "GP generation budget");
    cmd->add_option("--jobs", jobs, "Parallel evaluation jobs");
    cmd->add_option("--test-timeout-secs", testTimeoutSecs,
                    "Per-test timeout in seconds");
  };

  CLI::App* cmdAdapt = app.add_subcommand(
      "adapt", "Reduce and adapt a stored over-organ to a host");
  cmdAdapt->add_option("--host_project", hostProject,
                       "The path to the host project source code")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmdAdapt->add_option("--core_function_target", coreFunctionTarget,
                       "Entry-point function of the target feature")
      ->required();
  addGpFlags(cmdAdapt);
  addWorkspace(cmdAdapt);

  auto addImplantFlags = [&](CLI::App* cmd) {
    cmd->add_option("--host_target", hostTarget,
                    "Host file expected to hold the insertion marker");
    cmd->add_flag("--emit-report", emitReport,
                  "Write clone-report.json beside the product base");
    cmd->add_option("--feature-flag", featureFlag,
                    "Guard the implanted feature with #ifdef FEATURE_<id>");
  };

  CLI::App* cmdImplant =
      app.add_subcommand("implant", "Implant an organ into a product base");
  cmdImplant->add_option("--host_project", hostProject,
                         "The path to the host project source code")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmdImplant->add_option("--core_function_target", coreFunctionTarget,
                         "Entry-point function of the target feature")
      ->required();
  addImplantFlags(cmdImplant);
  addWorkspace(cmdImplant);

  CLI::App* cmdValidate = app.add_subcommand(
      "validate", "Run the three-step postoperative validation");
  cmdValidate->add_option("--host_project", hostProject,
                          "The path to the host project source code")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmdValidate->add_option("--jobs", jobs, "Parallel test jobs");
  cmdValidate->add_option("--test-timeout-secs", testTimeoutSecs,
                          "Per-test timeout in seconds");
  addWorkspace(cmdValidate);

  CLI::App* cmdTransplant = app.add_subcommand(
      "transplant", "Extract, adapt, implant and validate in one run");
  cmdTransplant->add_option("--donor_folder", donorFolder,
                            "The path to the donor source code")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmdTransplant->add_option("--host_project", hostProject,
                            "The path to the host project source code")
      ->required()
      ->check(CLI::ExistingDirectory);
  cmdTransplant->add_option("--core_function_target", coreFunctionTarget,
                            "Entry-point function of the target feature")
      ->required();
  cmdTransplant->add_option("--donor_target", donorTarget,
                            "Donor file containing the entry point");
  cmdTransplant->add_option("--emit-sdg", emitSdg,
                            "Write the system dependency graph as DOT");
  addGpFlags(cmdTransplant);
  addImplantFlags(cmdTransplant);
  cmdTransplant->add_flag("--force", force,
                          "Overwrite existing platform artifacts");
  addWorkspace(cmdTransplant);

  CLI::App* cmdPlatform =
      app.add_subcommand("platform", "Inspect the platform repository");
  cmdPlatform->require_subcommand(1);
  CLI::App* cmdLs = cmdPlatform->add_subcommand("ls", "List artifacts");
  addWorkspace(cmdLs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    fs::path ws = workspace;
    if (cmdInit->parsed()) {
      Platform platform = Platform::init((ws / "platform").string());
      std::cout << "initialized platform at " << platform.root() << "\n";
      return 0;
    }

    if (cmdReduce->parsed()) {
      if (hostProject.empty() && donorFolder.empty())
        throw InvalidArgument(
            "reduce-host needs --host_project or --donor_folder");
      RunLog log("reduce-host", ws);
      FeatureDirectiveList list = load_feature_list(featuresFile);
      log.stage("reduction", [&] {
        auto reduceTree = [&](const fs::path& dir, const std::string& label) {
          ProjectModel pm = parseTree(dir.string(), loadSourceTree(dir));
          ReconfigResult result = remove_features(pm, list);
          std::map<std::string, std::string> out;
          for (const auto& ast : result.project.asts)
            out[ast.file] = ast.text;
          writeTree(ws / label, out);
          for (const auto& f : result.unknownFeatures)
            std::cerr << "warning: unknown feature " << f << "\n";
          std::cout << "reduced tree written to " << (ws / label).string()
                    << "\n";
        };
        if (!hostProject.empty()) reduceTree(hostProject, "reduced-host");
        if (!donorFolder.empty()) reduceTree(donorFolder, "reduced-donor");
      });
      log.write();
      return 0;
    }

    if (cmdExtract->parsed()) {
      RunLog log("extract", ws);
      log.stage("extraction", [&] {
        doExtract(donorFolder, coreFunctionTarget, ws, emitSdg, force);
      });
      log.write();
      return 0;
    }

    if (cmdAdapt->parsed()) {
      RunLog log("adapt", ws);
      std::vector<std::uint64_t> seeds = loadSeeds(seedsFile);
      log.setSeeds(seeds);
      GpConfig config;
      config.populationSize = gpPop;
      config.maxGenerations = gpGens;
      config.jobs = jobs;
      config.testTimeoutSecs = testTimeoutSecs;
      log.stage("adaptation", [&] {
        doAdapt(ws, hostProject, coreFunctionTarget, seeds, config);
      });
      log.write();
      return 0;
    }

    if (cmdImplant->parsed()) {
      RunLog log("implant", ws);
      log.stage("merging", [&] {
        doImplant(ws, hostProject, coreFunctionTarget, hostTarget,
                  emitReport, featureFlag);
      });
      log.write();
      return 0;
    }

    if (cmdValidate->parsed()) {
      RunLog log("validate", ws);
      RunOptions options;
      options.jobs = jobs;
      options.testTimeoutSecs = testTimeoutSecs;
      std::string verdict = log.stage(
          "validation", [&] { return doValidate(ws, hostProject, options); });
      log.setVerdict(verdict);
      log.write();
      return verdict == "ok" ? 0 : 1;
    }

    if (cmdTransplant->parsed()) {
      RunLog log("transplant", ws);
      std::vector<std::uint64_t> seeds = loadSeeds(seedsFile);
      log.setSeeds(seeds);
      GpConfig config;
      config.populationSize = gpPop;
      config.maxGenerations = gpGens;
      config.jobs = jobs;
      config.testTimeoutSecs = testTimeoutSecs;
      log.stage("extraction", [&] {
        doExtract(donorFolder, coreFunctionTarget, ws, emitSdg, force);
      });
      log.stage("adaptation", [&] {
        doAdapt(ws, hostProject, coreFunctionTarget, seeds, config);
      });
      log.stage("merging", [&] {
        doImplant(ws, hostProject, coreFunctionTarget, hostTarget,
                  emitReport, featureFlag);
      });
      RunOptions options;
      options.jobs = jobs;
      options.testTimeoutSecs = testTimeoutSecs;
      std::string verdict = log.stage(
          "validation", [&] { return doValidate(ws, hostProject, options); });
      log.setVerdict(verdict);
      log.write();
      return verdict == "ok" ? 0 : 1;
    }

    if (cmdLs->parsed()) {
      Platform platform = openPlatform(ws);
      for (const auto& row : platform.ls())
        std::cout << row.kind << "\t" << row.id << "\t" << row.createdAt
                  << "\t" << row.fileCount << " files\n";
      return 0;
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
