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

#include "allocsv/generator.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "allocsv/agents_graph.h"
#include "allocsv/rng.h"

namespace allocsv {

void GeneratorParams::Validate() const {
  auto fail = [](const std::string& msg) { throw Error("generator: " + msg); };
  if (agents < 0) fail("agents must be >= 0");
  if (!(goods_per_agent >= 1.0)) fail("goods_per_agent must be >= 1");
  if (!(coauthor_prob >= 0.0 && coauthor_prob < 1.0)) {
    fail("coauthor_prob must lie in [0, 1)");
  }
  if (max_authors < 1) fail("max_authors must be >= 1");
  if (group_size < 1) fail("group_size must be >= 1");
  if (!(locality >= 0.0 && locality <= 1.0)) fail("locality must lie in [0, 1]");
  if (!(activity_skew >= 0.0 && std::isfinite(activity_skew))) {
    fail("activity_skew must be finite and >= 0");
  }
  if (values.empty()) fail("values must not be empty");
  if (values.size() != value_weights.size()) {
    fail("values and value_weights differ in length");
  }
  double total = 0.0;
  for (size_t k = 0; k < values.size(); ++k) {
    if (!(values[k] >= 0.0) || !std::isfinite(values[k])) {
      fail("values must be finite and >= 0");
    }
    if (!(value_weights[k] >= 0.0)) fail("value_weights must be >= 0");
    total += value_weights[k];
  }
  if (!(total > 0.0)) fail("value_weights must not all be 0");
  if (capacity < 1) fail("capacity must be >= 1");
}

Scenario Generate(const GeneratorParams& params) {
  params.Validate();
  std::mt19937_64 rng = JobRng(params.seed, 0x67656e, 0);
  Scenario s;
  s.capacity = params.capacity;
  const int n = params.agents;
  for (int i = 0; i < n; ++i) s.agents.push_back({"a" + std::to_string(i), {}});
  if (n == 0) return s;

  const int num_goods =
      std::max(n, static_cast<int>(std::lround(n * params.goods_per_agent)));
  std::vector<double> cumulative(params.value_weights.size());
  std::partial_sum(params.value_weights.begin(), params.value_weights.end(),
                   cumulative.begin());
  const int groups = (n + params.group_size - 1) / params.group_size;
  std::vector<int> ranked(n);
  std::iota(ranked.begin(), ranked.end(), 0);
  std::vector<double> activity(n), weight(n);
  for (int r = 0; r < n; ++r) {
    const int q = r + static_cast<int>(UniformBelow(rng, n - r));
    std::swap(ranked[r], ranked[q]);
    activity[r] = std::pow(r + 1.0, -params.activity_skew);
    weight[ranked[r]] = activity[r];
  }
  std::partial_sum(activity.begin(), activity.end(), activity.begin());
  std::vector<double> group_max(groups, 0.0);
  for (int i = 0; i < n; ++i) {
    double& m = group_max[i / params.group_size];
    m = std::max(m, weight[i]);
  }
  auto active = [&]() {
    const double a = UniformUnit(rng) * activity.back();
    const size_t r = std::min<size_t>(
        std::upper_bound(activity.begin(), activity.end(), a) -
            activity.begin(),
        n - 1);
    return ranked[r];
  };

  for (int g = 0; g < num_goods; ++g) {
    const double u = UniformUnit(rng) * cumulative.back();
    const size_t v = std::min<size_t>(
        std::upper_bound(cumulative.begin(), cumulative.end(), u) -
            cumulative.begin(),
        params.values.size() - 1);
    s.goods.push_back({"g" + std::to_string(g), params.values[v]});

    const int first = g < n ? g : active();
    std::vector<int> authors = {first};
    int extra = 0;
    while (extra + 1 < params.max_authors &&
           UniformUnit(rng) < params.coauthor_prob) {
      ++extra;
    }
    const int group = first / params.group_size;
    const int group_begin = group * params.group_size;
    const int group_len = std::min(params.group_size, n - group_begin);
    // Bounded retries keep tiny instances from spinning.
    for (int tries = 0; extra > 0 && tries < 32 * params.max_authors;
         ++tries) {
      int who;
      if (groups > 1 && UniformUnit(rng) >= params.locality) {
        who = active();
      } else {
        // Activity-weighted draw inside the group by rejection.
        who = group_begin + static_cast<int>(UniformBelow(rng, group_len));
        if (UniformUnit(rng) * group_max[group] >= weight[who]) continue;
      }
      if (std::find(authors.begin(), authors.end(), who) != authors.end()) {
        continue;
      }
      authors.push_back(who);
      --extra;
    }
    for (int a : authors) s.agents[a].interest.push_back(g);
  }
  NormalizeInterest(s);
  return s;
}

Scenario ExtractSubgraph(const Scenario& scenario, int size, uint64_t seed,
                         ExtractMode mode) {
  const int n = scenario.num_agents();
  if (size < 0 || size > n) {
    throw Error("extract: size " + std::to_string(size) +
                " out of range for " + std::to_string(n) + " agents");
  }
  std::mt19937_64 rng = JobRng(seed, 0x657874, 0);
  std::vector<int> chosen;
  if (mode == ExtractMode::kUniform) {
    std::vector<int> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    for (int q = 0; q < size; ++q) {
      const int r = q + static_cast<int>(UniformBelow(rng, n - q));
      std::swap(pool[q], pool[r]);
    }
    chosen.assign(pool.begin(), pool.begin() + size);
  } else {
    const AgentsGraph graph(scenario);
    std::vector<char> in(n, 0);
    std::vector<int> frontier;
    while (static_cast<int>(chosen.size()) < size) {
      if (frontier.empty()) {
        // Restart from a random agent not yet taken.
        std::vector<int> rest;
        for (int i = 0; i < n; ++i) {
          if (!in[i]) rest.push_back(i);
        }
        frontier.push_back(rest[UniformBelow(rng, rest.size())]);
      }
      const size_t pick = UniformBelow(rng, frontier.size());
      const int u = frontier[pick];
      frontier[pick] = frontier.back();
      frontier.pop_back();
      if (in[u]) continue;
      in[u] = 1;
      chosen.push_back(u);
      for (int w : graph.Adjacency(u)) {
        if (!in[w]) frontier.push_back(w);
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return RestrictToAgents(scenario, chosen);
}

}  // namespace allocsv
