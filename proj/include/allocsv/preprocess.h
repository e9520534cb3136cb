// Copyright 2026 The allocsv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ALLOCSV_PREPROCESS_H_
#define ALLOCSV_PREPROCESS_H_

#include <string>
#include <vector>

#include "allocsv/matching.h"
#include "allocsv/scenario.h"
#include "json.hpp"

namespace allocsv {

// Game-preserving simplifications. Every transformation keeps each agent's
// Shapley value.

// Removes goods of value 0 and remaps the interest sets.
Scenario StripNullGoods(const Scenario& scenario, int* removed = nullptr);

// A sub-scenario with the indices of its agents in the parent scenario.
struct SubScenario {
  Scenario scenario;
  std::vector<int> agents;
};

// One sub-scenario per connected component of the agents graph, ordered by
// lowest member.
std::vector<SubScenario> SplitComponents(const Scenario& scenario);

struct ResolvedValue {
  int agent = 0;  // index in the input scenario
  double value = 0.0;
};

struct Separation {
  std::vector<ResolvedValue> resolved;
  SubScenario remainder;
  int rounds = 0;
};

// Repeatedly removes every agent i with marg({i}, N) >= opt({i}) - tol on
// the current remainder, resolving it to opt({i}). tol is
// tolerance * max(1, opt(N)).
Separation SeparateSingletons(const Scenario& scenario,
                              double tolerance = 1e-12,
                              const MatchingOptions& matching = {});

struct PrunedPair {
  int agent = 0;  // indices in the input scenario
  int good = 0;
};

// Drops g from the interest set of i when val(g) plus the k - 1 largest
// other values in that set falls below marg({i}, N) - tol. Goods nobody
// wants any more are removed as well.
Scenario PruneUselessGoods(const Scenario& scenario,
                           std::vector<PrunedPair>* pruned = nullptr,
                           double tolerance = 1e-12,
                           const MatchingOptions& matching = {});

enum class ResolveReason { kEmptyInterest, kSeparable, kIsolated };

struct ResolvedAgent {
  int agent = 0;  // index in the original scenario
  double value = 0.0;
  ResolveReason reason = ResolveReason::kSeparable;
};

struct PrunedGood {
  std::string agent;
  std::string good;
};

struct PreprocessOptions {
  double tolerance = 1e-12;
  bool prune = true;
  // 0 selects DefaultThreads(); used for per-component pruning.
  int workers = 0;
  MatchingOptions matching;
};

struct PreprocessReport {
  int input_agents = 0;
  int input_goods = 0;
  int empty_interest_agents = 0;
  int null_goods = 0;
  int separable_agents = 0;
  int separation_rounds = 0;
  int components_before_pruning = 0;
  int isolated_after_pruning = 0;
  std::vector<PrunedGood> pruned;
  std::vector<ResolvedAgent> resolved;
  // Components with at least two agents; agents index the original
  // scenario.
  std::vector<SubScenario> components;
  double seconds = 0.0;
};

// Drop empty-interest agents, strip null goods, separate singletons to a
// fixpoint, split into components, prune useless goods per component and
// split again. Single-agent components are resolved to opt({i}).
PreprocessReport RunPipeline(const Scenario& scenario,
                             const PreprocessOptions& options = {});

nlohmann::json PreprocessReportToJson(const Scenario& original,
                                      const PreprocessReport& report);

}  // namespace allocsv

#endif  // ALLOCSV_PREPROCESS_H_
