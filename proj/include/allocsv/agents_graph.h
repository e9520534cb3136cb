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

#ifndef ALLOCSV_AGENTS_GRAPH_H_
#define ALLOCSV_AGENTS_GRAPH_H_

#include <vector>

#include "allocsv/coalition.h"
#include "allocsv/scenario.h"

namespace allocsv {

// Undirected graph on agents: i and j are adjacent iff some good is in
// both interest sets. Symmetric, no self-loops.
class AgentsGraph {
 public:
  AgentsGraph() = default;
  explicit AgentsGraph(const Scenario& scenario);

  int num_agents() const { return static_cast<int>(adjacency_.size()); }
  const Coalition& Neighbors(int i) const { return neighbor_sets_[i]; }
  const std::vector<int>& Adjacency(int i) const { return adjacency_[i]; }
  int Degree(int i) const { return static_cast<int>(adjacency_[i].size()); }
  int NumEdges() const;

  // Members of `within` reachable from `seed` through members of `within`.
  // `seed` itself is included whether or not it belongs to `within`.
  Coalition ReachableFrom(int seed, const Coalition& within) const;

  // Connected components of the subgraph induced by `c`, ordered by their
  // lowest member.
  std::vector<Coalition> Components(const Coalition& c) const;

  // Components of the whole graph as sorted member lists.
  std::vector<std::vector<int>> ComponentLists() const;

 private:
  std::vector<std::vector<int>> adjacency_;
  std::vector<Coalition> neighbor_sets_;
};

// Components of induced subgraphs for graphs with at most 64 agents, where
// the whole neighborhood of an agent is one machine word.
class SmallGraph {
 public:
  explicit SmallGraph(const AgentsGraph& graph);

  uint64_t Neighbors(int i) const { return neighbors_[i]; }
  uint64_t ReachableFrom(int seed, uint64_t within) const;
  bool Connected(uint64_t mask) const;

 private:
  std::vector<uint64_t> neighbors_;
};

}  // namespace allocsv

#endif  // ALLOCSV_AGENTS_GRAPH_H_
