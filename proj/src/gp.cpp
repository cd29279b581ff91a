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

#include "transplant/gp.hpp"

#include <algorithm>
#include <future>
#include <map>
#include <sstream>

#include "json.hpp"
#include "transplant/errors.hpp"
#include "transplant/printer.hpp"
#include "transplant/sandbox.hpp"

using nlohmann::json;

namespace transplant {

bool fitness_less(const Fitness& a, const Fitness& b) {
  if (a.compiled != b.compiled) return b.compiled;
  if (a.iceboxPassed != b.iceboxPassed) return a.iceboxPassed < b.iceboxPassed;
  return a.statementCount > b.statementCount;
}

namespace {

int countSet(const std::vector<char>& mask) {
  int n = 0;
  for (char c : mask) n += c != 0;
  return n;
}

std::string genomeKey(const GpIndividual& ind) {
  std::string key(ind.inclusionMask.begin(), ind.inclusionMask.end());
  for (const auto& b : ind.bindings) key += "|" + b;
  return key;
}

// Gene positions eligible per operator.
std::vector<int> maskPositions(const std::vector<char>& mask, bool set) {
  std::vector<int> out;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if ((mask[i] != 0) == set) out.push_back((int)i);
  return out;
}

}  // namespace

GpIndividual mutate(const GpIndividual& ind, const Wrapper& wrapper,
                    std::mt19937_64& rng) {
  GpIndividual child = ind;
  for (;;) {
    switch (rng() % 3) {
      case 0: {  // INSERT: set a cleared bit
        auto cleared = maskPositions(ind.inclusionMask, false);
        if (cleared.empty()) continue;
        child.inclusionMask[cleared[rng() % cleared.size()]] = 1;
        return child;
      }
      case 1: {  // DELETE: clear a set bit
        auto set = maskPositions(ind.inclusionMask, true);
        if (set.empty()) continue;
        child.inclusionMask[set[rng() % set.size()]] = 0;
        return child;
      }
      default: {  // REPLACE: rebind one slot to a different candidate
        std::vector<std::pair<int, std::string>> options;
        for (std::size_t s = 0; s < wrapper.parameterSlots.size(); ++s) {
          const auto& slot = wrapper.parameterSlots[s];
          std::string current =
              s < ind.bindings.size() ? ind.bindings[s] : "";
          for (const auto& cand : slot.candidates)
            if (cand != current && !(current.empty() && slot.isEntryParam &&
                                     !slot.candidates.empty() &&
                                     cand == slot.candidates.front()))
              options.emplace_back((int)s, cand);
        }
        if (options.empty()) continue;
        auto [s, cand] = options[rng() % options.size()];
        if ((std::size_t)s >= child.bindings.size())
          child.bindings.resize(wrapper.parameterSlots.size());
        child.bindings[s] = cand;
        return child;
      }
    }
  }
}

MaterializedCandidate materialize_candidate(const GpIndividual& ind,
                                            const OverOrgan& organ,
                                            const Wrapper& wrapper,
                                            const HostContext& host,
                                            const ProductBase& base) {
  MaterializedCandidate out;

  // Bindings for free vein variables rename the variable inside vein
  // statements; entry-parameter bindings replace the call argument.
  std::map<std::string, std::string> freeRenames;
  std::vector<std::string> callArgs = organ.entryCallArgs;
  if (callArgs.size() < organ.entryParams.size())
    callArgs.resize(organ.entryParams.size());
  for (std::size_t s = 0; s < wrapper.parameterSlots.size(); ++s) {
    const auto& slot = wrapper.parameterSlots[s];
    std::string bound = s < ind.bindings.size() ? ind.bindings[s] : "";
    if (bound.empty()) continue;
    if (slot.isEntryParam) {
      if (s < callArgs.size()) callArgs[s] = bound;
    } else {
      freeRenames[slot.organSymbol] = bound;
    }
  }

  // Wrapper block replacing the marker, honoring the inclusion mask.
  std::string block = "{\n";
  std::set<std::pair<std::string, std::string>> includedElements;
  bool callIncluded = false;
  for (std::size_t i = 0; i < organ.statementArray.size(); ++i) {
    if (i < ind.inclusionMask.size() && !ind.inclusionMask[i]) continue;
    const auto& e = organ.statementArray[i];
    switch (e.kind) {
      case StatementEntry::Kind::OrganElement:
        includedElements.insert({e.file, e.element});
        break;
      case StatementEntry::Kind::VeinStatement:
        block += "        " + rename_identifiers(e.text, freeRenames) + "\n";
        break;
      case StatementEntry::Kind::EntryCall: {
        std::string args;
        for (std::size_t k = 0; k < callArgs.size(); ++k) {
          if (k) args += ", ";
          args += rename_identifiers(callArgs[k], freeRenames);
        }
        block += "        " + organ.entryPoint + "(" + args + ");\n";
        callIncluded = true;
        break;
      }
    }
  }
  (void)callIncluded;
  block += "    }";
  out.wrapperBlock = block;

  // Organ files filtered to the entry point plus included elements.
  OverOrgan filtered = organ;
  filtered.organElements.clear();
  for (const auto& oe : organ.organElements) {
    bool isEntry = oe.name == organ.entryPoint &&
                   oe.kind == ElementKind::FunctionDefinition;
    if (isEntry || includedElements.count({oe.file, oe.name}))
      filtered.organElements.push_back(oe);
  }
  for (const auto& [path, content] : render_organ_files(filtered)) {
    std::string flat = "organ_" + path;
    std::replace(flat.begin(), flat.end(), '/', '_');
    out.files[flat] = content;
  }

  // Host copy with the marker spliced out. The marker file also receives
  // declarations for every organ symbol the wrapper may reference.
  for (const auto& [path, content] : base.files) {
    std::string spliced = content;
    if (path == host.file) {
      auto pos = spliced.find(host.marker);
      if (pos != std::string::npos)
        spliced.replace(pos, host.marker.size(), block);
      std::string decls = organ_forward_decls(filtered);
      if (!decls.empty()) spliced = decls + "\n" + spliced;
    }
    out.files[path] = spliced;
  }

  for (const auto& [path, _] : out.files)
    if (path.size() > 2 && path.substr(path.size() - 2) == ".c")
      out.sources.push_back(path);
  std::sort(out.sources.begin(), out.sources.end());
  return out;
}

Fitness evaluate(const GpIndividual& ind, const OverOrgan& organ,
                 const Wrapper& wrapper, const HostContext& host,
                 const ProductBase& base, const IceboxSuite& icebox,
                 const GpConfig& config) {
  Fitness f;
  f.iceboxTotal = (int)icebox.tests.size();
  f.statementCount = countSet(ind.inclusionMask);

  // Type filter: a binding outside the slot's type-compatible candidate
  // set is rejected before any compile is attempted.
  for (std::size_t s = 0; s < wrapper.parameterSlots.size(); ++s) {
    std::string bound = s < ind.bindings.size() ? ind.bindings[s] : "";
    if (bound.empty()) continue;
    const auto& cands = wrapper.parameterSlots[s].candidates;
    if (std::find(cands.begin(), cands.end(), bound) == cands.end())
      return f;
  }

  MaterializedCandidate cand =
      materialize_candidate(ind, organ, wrapper, host, base);
  ensure_build_tool(host.buildCommand);
  Sandbox sbx;
  sbx.writeFiles(cand.files);
  std::string build =
      expand_build_command(host.buildCommand, "app", cand.sources);
  RunResult br = run_command(build, sbx.dir(), 60);
  if (br.exitCode != 0) return f;
  f.compiled = true;

  for (const auto& t : icebox.tests) {
    std::string cmd = t.command.empty() ? "./app" : t.command;
    for (std::size_t pos = 0; (pos = cmd.find("{app}", pos)) != std::string::npos;)
      cmd.replace(pos, 5, "./app");
    RunResult tr = run_command(cmd, sbx.dir(), config.testTimeoutSecs);
    if (tr.timedOut || tr.exitCode != t.expectedExit) continue;
    if (t.checkStdout && tr.output != t.expectedStdout) continue;
    ++f.iceboxPassed;
  }
  return f;
}

namespace {

struct EvalCache {
  std::map<std::string, Fitness> memo;
  int evaluations = 0;

  Fitness get(const GpIndividual& ind, const OverOrgan& organ,
              const Wrapper& wrapper, const HostContext& host,
              const ProductBase& base, const IceboxSuite& icebox,
              const GpConfig& config) {
    auto key = genomeKey(ind);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    ++evaluations;
    Fitness f = evaluate(ind, organ, wrapper, host, base, icebox, config);
    memo[key] = f;
    return f;
  }
};

std::string failureReport(const std::vector<Fitness>& trajectory) {
  json j = json::array();
  for (const auto& f : trajectory)
    j.push_back({{"compiled", f.compiled},
                 {"iceboxPassed", f.iceboxPassed},
                 {"iceboxTotal", f.iceboxTotal},
                 {"statementCount", f.statementCount}});
  return json{{"bestFitnessTrajectory", j}}.dump();
}

}  // namespace

EvolveResult evolve(const OverOrgan& organ, const HostContext& host,
                    const ProductBase& base, const IceboxSuite& icebox,
                    const GpConfig& config) {
  if (icebox.tests.empty()) throw MissingSuite("icebox");
  if (config.populationSize < 2 || config.seeds.empty())
    throw Error("invalid gp config: population >= 2 and seeds required");

  Wrapper wrapper = synthesize_wrapper(organ, host);
  const std::size_t nGenes = organ.statementArray.size();
  std::vector<Fitness> trajectory;

  auto makeSeeded = [&](std::mt19937_64& rng, bool deterministic) {
    GpIndividual ind;
    ind.inclusionMask.assign(nGenes, 1);
    ind.bindings.assign(wrapper.parameterSlots.size(), "");
    for (std::size_t s = 0; s < wrapper.parameterSlots.size(); ++s) {
      const auto& slot = wrapper.parameterSlots[s];
      if (slot.isEntryParam) {
        // Donor's original argument expression unless randomized.
        if (!deterministic && !slot.candidates.empty() && rng() % 2)
          ind.bindings[s] = slot.candidates[rng() % slot.candidates.size()];
      } else if (!slot.candidates.empty()) {
        ind.bindings[s] =
            deterministic ? slot.candidates.front()
                          : slot.candidates[rng() % slot.candidates.size()];
      }
    }
    return ind;
  };

  for (std::uint64_t seed : config.seeds) {
    std::mt19937_64 rng(seed);
    EvalCache cache;

    std::vector<GpIndividual> pop;
    for (int i = 0; i < config.populationSize; ++i) {
      GpIndividual ind = makeSeeded(rng, i == 0);
      ind.seedLineage = seed;
      pop.push_back(std::move(ind));
    }

    // Evaluations join in index order regardless of completion order.
    std::vector<Fitness> fit(pop.size());
    auto evalRange = [&](std::size_t lo, std::size_t hi) {
      int jobs = std::max(1, config.jobs);
      for (std::size_t start = lo; start < hi;
           start += (std::size_t)jobs) {
        std::size_t end = std::min(hi, start + (std::size_t)jobs);
        std::vector<std::future<Fitness>> futs;
        for (std::size_t i = start + 1; i < end; ++i)
          futs.push_back(std::async(std::launch::async, [&, i] {
            return evaluate(pop[i], organ, wrapper, host, base, icebox,
                            config);
          }));
        fit[start] = cache.get(pop[start], organ, wrapper, host, base, icebox,
                               config);
        for (std::size_t i = start + 1; i < end; ++i) {
          Fitness f = futs[i - start - 1].get();
          cache.memo[genomeKey(pop[i])] = f;
          ++cache.evaluations;
          fit[i] = f;
        }
      }
    };
    evalRange(0, pop.size());

    auto bestIndex = [&] {
      std::size_t b = 0;
      for (std::size_t i = 1; i < pop.size(); ++i)
        if (fitness_less(fit[b], fit[i])) b = i;
      return b;
    };
    auto worstIndex = [&](std::size_t keep) {
      std::size_t w = keep == 0 ? 1 : 0;
      for (std::size_t i = 0; i < pop.size(); ++i)
        if (i != keep && fitness_less(fit[i], fit[w])) w = i;
      return w;
    };

    long steps = (long)config.maxGenerations * config.populationSize;
    std::size_t viable = pop.size();
    for (long step = 0;; ++step) {
      std::size_t b = bestIndex();
      if (step % config.populationSize == 0) trajectory.push_back(fit[b]);
      if (fit[b].viable()) {
        viable = b;
        break;
      }
      if (step >= steps) break;
      // Tournament of 2, mutate, replace the worst (elitism of 1).
      std::size_t i1 = rng() % pop.size();
      std::size_t i2 = rng() % pop.size();
      std::size_t parent = fitness_less(fit[i1], fit[i2]) ? i2 : i1;
      GpIndividual child = mutate(pop[parent], wrapper, rng);
      child.seedLineage = seed;
      Fitness cf =
          cache.get(child, organ, wrapper, host, base, icebox, config);
      std::size_t w = worstIndex(b);
      if (fitness_less(fit[w], cf)) {
        pop[w] = std::move(child);
        fit[w] = cf;
      }
    }
    if (viable == pop.size()) continue;  // next seed

    // Greedy reduction: drop statements one at a time while every ice-box
    // test still passes; iterate to a fixed point.
    GpIndividual best = pop[viable];
    Fitness bestFit = fit[viable];
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < best.inclusionMask.size(); ++i) {
        if (!best.inclusionMask[i]) continue;
        GpIndividual trial = best;
        trial.inclusionMask[i] = 0;
        Fitness tf =
            cache.get(trial, organ, wrapper, host, base, icebox, config);
        if (tf.viable()) {
          best = std::move(trial);
          bestFit = tf;
          changed = true;
        }
      }
    }
    trajectory.push_back(bestFit);

    EvolveResult result;
    result.best = best;
    result.bestFitness = bestFit;
    result.trajectory = trajectory;
    result.seedUsed = seed;
    result.evaluations = cache.evaluations;

    // Final artifacts: reduced organ, bound wrapper, wrapper block.
    result.reducedOrgan = organ;
    result.reducedOrgan.statementArray.clear();
    std::set<std::pair<std::string, std::string>> included;
    for (std::size_t i = 0; i < organ.statementArray.size(); ++i) {
      if (!best.inclusionMask[i]) continue;
      result.reducedOrgan.statementArray.push_back(organ.statementArray[i]);
      if (organ.statementArray[i].kind == StatementEntry::Kind::OrganElement)
        included.insert(
            {organ.statementArray[i].file, organ.statementArray[i].element});
    }
    result.reducedOrgan.organElements.clear();
    for (const auto& oe : organ.organElements) {
      bool isEntry = oe.name == organ.entryPoint &&
                     oe.kind == ElementKind::FunctionDefinition;
      if (isEntry || included.count({oe.file, oe.name}))
        result.reducedOrgan.organElements.push_back(oe);
    }
    result.reducedOrgan.fileMap.clear();
    for (const auto& oe : result.reducedOrgan.organElements)
      if (std::find(result.reducedOrgan.fileMap.begin(),
                    result.reducedOrgan.fileMap.end(),
                    oe.file) == result.reducedOrgan.fileMap.end())
        result.reducedOrgan.fileMap.push_back(oe.file);

    result.boundWrapper = wrapper;
    for (std::size_t s = 0; s < result.boundWrapper.parameterSlots.size(); ++s)
      result.boundWrapper.parameterSlots[s].bound =
          s < best.bindings.size() ? best.bindings[s] : "";
    result.wrapperBlock =
        materialize_candidate(best, organ, wrapper, host, base).wrapperBlock;
    return result;
  }

  throw NoViableOrganFound(failureReport(trajectory));
}

}  // namespace transplant
