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

#include "allocsv/solve.h"

#include <algorithm>
#include <chrono>
#include <memory>
#include <string>

#include "allocsv/bounds.h"
#include "allocsv/exact.h"
#include "allocsv/game.h"
#include "allocsv/parallel.h"
#include "allocsv/preprocess.h"
#include "allocsv/rng.h"

namespace allocsv {

void SolvePolicy::Validate() const {
  auto fail = [](const std::string& msg) { throw Error("policy: " + msg); };
  if (exact_limit < 0) fail("exact-limit must be >= 0");
  if (bounds_max_neigh < 0) fail("max-neigh must be >= 0");
  if (!(epsilon > 0.0 && epsilon < 1.0)) fail("epsilon must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 1.0)) fail("delta must lie in (0, 1)");
  if (runs < 1) fail("runs must be >= 1");
  if (threads < 0) fail("threads must be >= 0");
}

namespace {

double Since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t)
      .count();
}

struct ComponentOutcome {
  std::vector<AgentRecord> records;
  std::string route;
  uint64_t matching_calls = 0;
  double seconds = 0.0;
};

ComponentOutcome SolveComponent(const SubScenario& comp, size_t index,
                                const SolvePolicy& policy, int threads) {
  const auto start = std::chrono::steady_clock::now();
  GameOptions opts;
  opts.cache = std::make_shared<CharacteristicCache>();
  opts.component_id = static_cast<uint32_t>(index);
  const Game game(comp.scenario, opts);
  const int n = game.num_agents();
  ComponentOutcome out;
  out.records.resize(n);
  for (int i = 0; i < n; ++i) out.records[i].agent = comp.scenario.agents[i].id;

  if (n <= policy.exact_limit) {
    ExactOptions eo;
    eo.workers = threads;
    eo.limit = policy.exact_limit;
    const ExactResult r = ExactShapley(game, eo);
    for (int i = 0; i < n; ++i) {
      out.records[i].kind = RecordKind::kExact;
      out.records[i].method = "exact";
      out.records[i].value = r.values[i];
    }
    out.route = "exact";
  } else {
    BoundsOptions bo;
    bo.max_neigh = policy.bounds_max_neigh;
    bo.workers = threads;
    const BoundsResult bounds = ComputeBounds(game, bo);
    const uint64_t seed = SplitMix64(policy.seed ^ SplitMix64(index));
    SamplingResult est;
    std::string method;
    if (policy.sampler == SamplerKind::kFpras) {
      FprasOptions fo;
      fo.epsilon = policy.epsilon;
      fo.delta = policy.delta;
      fo.runs = policy.runs;
      fo.seed = seed;
      fo.workers = threads;
      est = FprasShapley(game, fo);
      method = "fpras";
    } else {
      RangeOptions ro;
      ro.epsilon = policy.epsilon;
      ro.delta = policy.delta;
      ro.mode = policy.range_mode;
      ro.seed = seed;
      ro.workers = threads;
      for (const AgentBounds& b : bounds.agents) ro.lower_bounds.push_back(b.lb);
      est = RangeSamplerShapley(game, ro);
      method = "range";
    }
    for (int i = 0; i < n; ++i) {
      const AgentBounds& b = bounds.agents[i];
      AgentRecord& rec = out.records[i];
      rec.lb = b.lb;
      rec.ub = b.ub;
      rec.fallback = b.fallback;
      rec.epsilon = policy.epsilon;
      rec.delta = policy.delta;
      rec.samples = est.samples[i];
      if (b.lb == b.ub) {
        rec.kind = RecordKind::kExact;
        rec.method = "bounds";
        rec.value = b.lb;
      } else {
        rec.kind = RecordKind::kEstimate;
        rec.method = method + "+bounds";
        rec.value = std::clamp(est.estimates[i], b.lb, b.ub);
      }
    }
    out.route = method;
  }
  out.matching_calls = game.matching_calls();
  out.seconds = Since(start);
  for (AgentRecord& rec : out.records) rec.wall_seconds = out.seconds;
  return out;
}

}  // namespace

ShapleyReport Solve(const Scenario& scenario, const SolvePolicy& policy) {
  policy.Validate();
  const auto start = std::chrono::steady_clock::now();
  const int threads = policy.threads > 0 ? policy.threads : DefaultThreads();

  PreprocessOptions po;
  po.prune = policy.prune;
  po.workers = threads;
  const PreprocessReport pre = RunPipeline(scenario, po);
  const double preprocess_seconds = Since(start);

  const size_t num_comps = pre.components.size();
  std::vector<ComponentOutcome> outcomes(num_comps);
  // Large components get the whole thread budget one at a time; the small
  // ones share it, one thread each.
  std::vector<size_t> large, small;
  for (size_t c = 0; c < num_comps; ++c) {
    const int n = pre.components[c].scenario.num_agents();
    (n > 14 ? large : small).push_back(c);
  }
  for (size_t c : large) {
    outcomes[c] = SolveComponent(pre.components[c], c, policy, threads);
  }
  ParallelFor(threads, small.size(), [&](size_t k) {
    const size_t c = small[k];
    outcomes[c] = SolveComponent(pre.components[c], c, policy, 1);
  });

  std::vector<AgentRecord> records(scenario.num_agents());
  for (const ResolvedAgent& r : pre.resolved) {
    AgentRecord& rec = records[r.agent];
    rec.agent = scenario.agents[r.agent].id;
    rec.kind = RecordKind::kExact;
    rec.method = r.reason == ResolveReason::kEmptyInterest ? "empty-interest"
                 : r.reason == ResolveReason::kSeparable   ? "separable"
                                                           : "isolated";
    rec.value = r.value;
  }
  nlohmann::json comps = nlohmann::json::array();
  uint64_t matching_calls = 0;
  for (size_t c = 0; c < num_comps; ++c) {
    const SubScenario& comp = pre.components[c];
    for (size_t i = 0; i < comp.agents.size(); ++i) {
      records[comp.agents[i]] = std::move(outcomes[c].records[i]);
    }
    matching_calls += outcomes[c].matching_calls;
    comps.push_back({{"agents", comp.agents.size()},
                     {"route", outcomes[c].route},
                     {"matching_calls", outcomes[c].matching_calls},
                     {"seconds", outcomes[c].seconds}});
  }

  ShapleyReport report;
  report.records = std::move(records);
  const char* sampler =
      policy.sampler == SamplerKind::kFpras ? "fpras" : "range";
  report.meta = {
      {"tool", "allocsv"},
      {"seed", policy.seed},
      {"policy",
       {{"exact_limit", policy.exact_limit},
        {"max_neigh", policy.bounds_max_neigh},
        {"sampler", sampler},
        {"mode", policy.range_mode == ErrorMode::kRelative ? "rel" : "abs"},
        {"epsilon", policy.epsilon},
        {"delta", policy.delta},
        {"runs", policy.runs},
        {"threads", threads},
        {"prune", policy.prune}}},
      {"preprocess",
       {{"resolved", pre.resolved.size()},
        {"components", num_comps},
        {"seconds", preprocess_seconds}}},
      {"components", std::move(comps)},
      {"matching_calls", matching_calls},
      {"seconds", Since(start)}};
  return report;
}

}  // namespace allocsv
