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

#include "allocsv/preprocess.h"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <numeric>

#include "allocsv/agents_graph.h"
#include "allocsv/game.h"
#include "allocsv/parallel.h"

namespace allocsv {
namespace {

std::vector<int> Iota(int n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 0);
  return v;
}

GameOptions CachedGame(const MatchingOptions& matching) {
  GameOptions opts;
  opts.cache = std::make_shared<CharacteristicCache>();
  opts.matching = matching;
  return opts;
}

}  // namespace

Scenario StripNullGoods(const Scenario& scenario, int* removed) {
  std::vector<int> map(scenario.num_goods(), -1);
  Scenario out;
  out.capacity = scenario.capacity;
  for (int g = 0; g < scenario.num_goods(); ++g) {
    if (scenario.goods[g].value > 0.0) {
      map[g] = out.num_goods();
      out.goods.push_back(scenario.goods[g]);
    }
  }
  for (const Agent& a : scenario.agents) {
    Agent b;
    b.id = a.id;
    for (int g : a.interest) {
      if (map[g] >= 0) b.interest.push_back(map[g]);
    }
    out.agents.push_back(std::move(b));
  }
  if (removed != nullptr) {
    *removed = scenario.num_goods() - out.num_goods();
  }
  return out;
}

std::vector<SubScenario> SplitComponents(const Scenario& scenario) {
  const AgentsGraph graph(scenario);
  std::vector<SubScenario> out;
  for (std::vector<int>& members : graph.ComponentLists()) {
    SubScenario sub;
    sub.scenario = RestrictToAgents(scenario, members);
    sub.agents = std::move(members);
    out.push_back(std::move(sub));
  }
  return out;
}

Separation SeparateSingletons(const Scenario& scenario, double tolerance,
                              const MatchingOptions& matching) {
  Separation out;
  out.remainder.scenario = scenario;
  out.remainder.agents = Iota(scenario.num_agents());
  std::vector<char> dirty(scenario.num_agents(), 1);
  while (out.remainder.scenario.num_agents() > 0) {
    const Scenario& current = out.remainder.scenario;
    const int n = current.num_agents();
    const Game game(current, CachedGame(matching));
    const double tol = tolerance * std::max(1.0, game.GrandValue());
    std::vector<char> separable(n, 0);
    bool any = false;
    for (int i = 0; i < n; ++i) {
      if (!dirty[i]) continue;
      if (game.GrandMarginal(i) >= game.Solo(i) - tol) {
        separable[i] = 1;
        any = true;
      }
    }
    if (!any) break;
    ++out.rounds;
    // Only components that lost a member can change.
    std::vector<char> touched(n, 0);
    for (const std::vector<int>& comp : game.graph().ComponentLists()) {
      bool hit = false;
      for (int i : comp) hit = hit || separable[i];
      if (!hit) continue;
      for (int i : comp) touched[i] = 1;
    }
    std::vector<int> keep;
    std::vector<char> next_dirty;
    for (int i = 0; i < n; ++i) {
      if (separable[i]) {
        out.resolved.push_back({out.remainder.agents[i], game.Solo(i)});
      } else {
        keep.push_back(i);
        next_dirty.push_back(touched[i]);
      }
    }
    SubScenario next;
    next.scenario = RestrictToAgents(current, keep);
    for (int i : keep) next.agents.push_back(out.remainder.agents[i]);
    out.remainder = std::move(next);
    dirty = std::move(next_dirty);
  }
  std::sort(out.resolved.begin(), out.resolved.end(),
            [](const ResolvedValue& a, const ResolvedValue& b) {
              return a.agent < b.agent;
            });
  return out;
}

Scenario PruneUselessGoods(const Scenario& scenario,
                           std::vector<PrunedPair>* pruned, double tolerance,
                           const MatchingOptions& matching) {
  const Game game(scenario, CachedGame(matching));
  const double tol = tolerance * std::max(1.0, game.GrandValue());
  const int k = scenario.capacity;
  Scenario out = scenario;
  for (int i = 0; i < scenario.num_agents(); ++i) {
    const std::vector<int>& interest = scenario.agents[i].interest;
    if (interest.empty()) continue;
    const double marg = game.GrandMarginal(i);
    std::vector<double> desc;
    for (int g : interest) desc.push_back(scenario.goods[g].value);
    std::sort(desc.begin(), desc.end(), std::greater<>());
    std::vector<int> kept;
    for (int g : interest) {
      const double val = scenario.goods[g].value;
      // Best k - 1 values among the other goods: skip one copy of val.
      double rest = 0.0;
      int taken = 0;
      bool skipped = false;
      for (double x : desc) {
        if (taken == k - 1) break;
        if (!skipped && x == val) {
          skipped = true;
          continue;
        }
        rest += x;
        ++taken;
      }
      if (val + rest < marg - tol) {
        if (pruned != nullptr) pruned->push_back({i, g});
      } else {
        kept.push_back(g);
      }
    }
    out.agents[i].interest = std::move(kept);
  }
  // Drop goods nobody wants any more.
  return RestrictToAgents(out, Iota(out.num_agents()));
}

PreprocessReport RunPipeline(const Scenario& scenario,
                             const PreprocessOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  scenario.Validate();
  PreprocessReport report;
  report.input_agents = scenario.num_agents();
  report.input_goods = scenario.num_goods();

  std::vector<int> keep;
  for (int i = 0; i < scenario.num_agents(); ++i) {
    if (scenario.agents[i].interest.empty()) {
      report.resolved.push_back({i, 0.0, ResolveReason::kEmptyInterest});
      ++report.empty_interest_agents;
    } else {
      keep.push_back(i);
    }
  }
  const Scenario stripped =
      StripNullGoods(RestrictToAgents(scenario, keep), &report.null_goods);

  const Separation sep =
      SeparateSingletons(stripped, options.tolerance, options.matching);
  report.separation_rounds = sep.rounds;
  for (const ResolvedValue& r : sep.resolved) {
    report.resolved.push_back(
        {keep[r.agent], r.value, ResolveReason::kSeparable});
    ++report.separable_agents;
  }
  std::vector<int> to_original;
  for (int i : sep.remainder.agents) to_original.push_back(keep[i]);

  std::vector<SubScenario> comps = SplitComponents(sep.remainder.scenario);
  report.components_before_pruning = static_cast<int>(comps.size());

  struct Outcome {
    std::vector<PrunedPair> pruned;
    std::vector<SubScenario> parts;
  };
  std::vector<Outcome> outcomes(comps.size());
  ParallelFor(options.workers > 0 ? options.workers : DefaultThreads(),
              comps.size(), [&](size_t c) {
    const Scenario& s = comps[c].scenario;
    if (!options.prune || s.num_agents() < 2) {
      outcomes[c].parts.push_back({s, Iota(s.num_agents())});
      return;
    }
    const Scenario pruned = PruneUselessGoods(
        s, &outcomes[c].pruned, options.tolerance, options.matching);
    outcomes[c].parts = SplitComponents(pruned);
  });

  for (size_t c = 0; c < comps.size(); ++c) {
    const SubScenario& comp = comps[c];
    for (const PrunedPair& p : outcomes[c].pruned) {
      report.pruned.push_back({comp.scenario.agents[p.agent].id,
                               comp.scenario.goods[p.good].id});
    }
    for (SubScenario& part : outcomes[c].parts) {
      for (int& i : part.agents) i = to_original[comp.agents[i]];
      if (part.scenario.num_agents() == 1) {
        const Scenario& s = part.scenario;
        report.resolved.push_back(
            {part.agents[0],
             OptimalValue(s, s.GrandCoalition(), options.matching),
             ResolveReason::kIsolated});
        ++report.isolated_after_pruning;
      } else {
        report.components.push_back(std::move(part));
      }
    }
  }
  std::sort(report.resolved.begin(), report.resolved.end(),
            [](const ResolvedAgent& a, const ResolvedAgent& b) {
              return a.agent < b.agent;
            });
  std::sort(report.components.begin(), report.components.end(),
            [](const SubScenario& a, const SubScenario& b) {
              return a.agents.front() < b.agents.front();
            });
  report.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return report;
}

nlohmann::json PreprocessReportToJson(const Scenario& original,
                                      const PreprocessReport& report) {
  using nlohmann::json;
  std::map<int, int> histogram;
  json components = json::array();
  for (const SubScenario& c : report.components) {
    ++histogram[c.scenario.num_agents()];
    json ids = json::array();
    for (int i : c.agents) ids.push_back(original.agents[i].id);
    components.push_back({{"agents", std::move(ids)},
                          {"goods", c.scenario.num_goods()}});
  }
  json hist = json::array();
  for (const auto& [size, count] : histogram) {
    hist.push_back({{"size", size}, {"count", count}});
  }
  json resolved = json::array();
  for (const ResolvedAgent& r : report.resolved) {
    const char* reason = r.reason == ResolveReason::kEmptyInterest
                             ? "empty-interest"
                             : r.reason == ResolveReason::kSeparable
                                   ? "separable"
                                   : "isolated";
    resolved.push_back({{"id", original.agents[r.agent].id},
                        {"value", r.value},
                        {"reason", reason}});
  }
  json pruned = json::array();
  for (const PrunedGood& p : report.pruned) {
    pruned.push_back({{"agent", p.agent}, {"good", p.good}});
  }
  return json{
      {"stages",
       {{"input_agents", report.input_agents},
        {"input_goods", report.input_goods},
        {"empty_interest_agents", report.empty_interest_agents},
        {"null_goods", report.null_goods},
        {"separable_agents", report.separable_agents},
        {"separation_rounds", report.separation_rounds},
        {"components_before_pruning", report.components_before_pruning},
        {"pruned_pairs", report.pruned.size()},
        {"isolated_after_pruning", report.isolated_after_pruning},
        {"components", report.components.size()},
        {"seconds", report.seconds}}},
      {"component_sizes", std::move(hist)},
      {"components", std::move(components)},
      {"resolved", std::move(resolved)},
      {"pruned", std::move(pruned)}};
}

}  // namespace allocsv
