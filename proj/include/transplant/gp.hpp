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

#ifndef TRANSPLANT_GP_HPP
#define TRANSPLANT_GP_HPP

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "transplant/organ.hpp"
#include "transplant/platform.hpp"
#include "transplant/wrapper.hpp"

namespace transplant {

struct GpIndividual {
  std::vector<char> inclusionMask;    // one gene per statementArray entry
  std::vector<std::string> bindings;  // per slot; empty = donor original
  std::uint64_t seedLineage = 0;
};

struct Fitness {
  bool compiled = false;
  int iceboxPassed = 0;
  int iceboxTotal = 0;
  int statementCount = 0;

  bool viable() const { return compiled && iceboxPassed == iceboxTotal; }
};

// Strict-weak total order: lexicographic on (compiled, iceboxPassed,
// -statementCount). Returns true when a is worse than b.
bool fitness_less(const Fitness& a, const Fitness& b);

struct GpConfig {
  int populationSize = 40;
  int maxGenerations = 100;
  int tournamentSize = 2;
  std::vector<std::uint64_t> seeds;  // non-empty
  int testTimeoutSecs = 5;
  int jobs = 1;
};

// Applies exactly one operator — INSERT (set a cleared mask bit), DELETE
// (clear a set bit) or REPLACE (rebind one slot to a different candidate) —
// resampling inapplicable operators. The child differs from the parent in
// exactly one gene.
GpIndividual mutate(const GpIndividual& ind, const Wrapper& wrapper,
                    std::mt19937_64& rng);

// Candidate organ + wrapper spliced into a copy of the product base.
struct MaterializedCandidate {
  std::map<std::string, std::string> files;  // complete buildable tree
  std::vector<std::string> sources;          // .c files, sorted
  std::string wrapperBlock;                  // text replacing the marker
};

MaterializedCandidate materialize_candidate(const GpIndividual& ind,
                                            const OverOrgan& organ,
                                            const Wrapper& wrapper,
                                            const HostContext& host,
                                            const ProductBase& base);

Fitness evaluate(const GpIndividual& ind, const OverOrgan& organ,
                 const Wrapper& wrapper, const HostContext& host,
                 const ProductBase& base, const IceboxSuite& icebox,
                 const GpConfig& config);

struct EvolveResult {
  GpIndividual best;
  Fitness bestFitness;
  OverOrgan reducedOrgan;  // statement array and elements filtered by mask
  Wrapper boundWrapper;
  std::string wrapperBlock;
  std::vector<Fitness> trajectory;  // best fitness per generation
  std::uint64_t seedUsed = 0;
  int evaluations = 0;
};

// Steady-state, mutation-only GP with tournament selection and elitism 1,
// followed by a greedy reduction phase that minimizes statementCount while
// keeping every ice-box test passing. Deterministic given config.seeds.
// Throws NoViableOrganFound (message carries the fitness trajectory) when
// no fully passing individual appears within budget on any seed.
EvolveResult evolve(const OverOrgan& organ, const HostContext& host,
                    const ProductBase& base, const IceboxSuite& icebox,
                    const GpConfig& config);

}  // namespace transplant

#endif  // TRANSPLANT_GP_HPP
