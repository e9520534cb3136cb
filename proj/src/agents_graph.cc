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

#include "allocsv/agents_graph.h"

#include <algorithm>
#include <bit>

namespace allocsv {

AgentsGraph::AgentsGraph(const Scenario& scenario) {
  const int n = scenario.num_agents();
  std::vector<std::vector<int>> interested(scenario.num_goods());
  for (int i = 0; i < n; ++i) {
    for (int g : scenario.agents[i].interest) interested[g].push_back(i);
  }
  neighbor_sets_.assign(n, Coalition(n));
  for (const auto& group : interested) {
    for (size_t a = 0; a < group.size(); ++a) {
      for (size_t b = a + 1; b < group.size(); ++b) {
        neighbor_sets_[group[a]].Insert(group[b]);
        neighbor_sets_[group[b]].Insert(group[a]);
      }
    }
  }
  adjacency_.resize(n);
  for (int i = 0; i < n; ++i) adjacency_[i] = neighbor_sets_[i].Members();
}

int AgentsGraph::NumEdges() const {
  size_t twice = 0;
  for (const auto& adj : adjacency_) twice += adj.size();
  return static_cast<int>(twice / 2);
}

Coalition AgentsGraph::ReachableFrom(int seed, const Coalition& within) const {
  Coalition seen(num_agents());
  seen.Insert(seed);
  std::vector<int> stack = {seed};
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : adjacency_[u]) {
      if (within.Contains(w) && !seen.Contains(w)) {
        seen.Insert(w);
        stack.push_back(w);
      }
    }
  }
  return seen;
}

std::vector<Coalition> AgentsGraph::Components(const Coalition& c) const {
  std::vector<Coalition> out;
  Coalition remaining = c;
  for (int seed = remaining.First(); seed >= 0; seed = remaining.First()) {
    Coalition comp = ReachableFrom(seed, c);
    remaining.Subtract(comp);
    out.push_back(std::move(comp));
  }
  return out;
}

std::vector<std::vector<int>> AgentsGraph::ComponentLists() const {
  std::vector<std::vector<int>> out;
  for (const Coalition& comp : Components(Coalition::Full(num_agents()))) {
    out.push_back(comp.Members());
  }
  return out;
}

SmallGraph::SmallGraph(const AgentsGraph& graph) {
  neighbors_.resize(graph.num_agents());
  for (int i = 0; i < graph.num_agents(); ++i) {
    neighbors_[i] = graph.Neighbors(i).Mask();
  }
}

uint64_t SmallGraph::ReachableFrom(int seed, uint64_t within) const {
  uint64_t seen = uint64_t{1} << seed;
  uint64_t frontier = seen;
  while (frontier != 0) {
    uint64_t next = 0;
    while (frontier != 0) {
      next |= neighbors_[std::countr_zero(frontier)];
      frontier &= frontier - 1;
    }
    next &= within & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen;
}

bool SmallGraph::Connected(uint64_t mask) const {
  if (mask == 0) return true;
  return ReachableFrom(std::countr_zero(mask), mask) == mask;
}

}  // namespace allocsv
