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

#ifndef ALLOCSV_BOUNDS_H_
#define ALLOCSV_BOUNDS_H_

#include <cstdint>
#include <vector>

#include "allocsv/game.h"
#include "allocsv/report.h"

namespace allocsv {

// Total Shapley weight of the coalitions that contain exactly a given
// p-subset of an agent's neighbors, for an agent with l non-neighbors and
// z neighbors outside the subset:
//   y = sum_{j=0..l} C(l, j) (p + j)! (n - p - j - 1)! / n!.
// Throws Error unless l, p, z >= 0 and l + p + z + 1 == n.
double ProfileWeight(int l, int p, int z, int n);

enum class BoundSide { kBoth, kLower, kUpper };

struct BoundsOptions {
  // Agents to bound; empty means all.
  std::vector<int> agents;
  // Agents with more neighbors get [marg(i, N), opt({i})].
  int max_neigh = 19;
  // The side not computed gets its trivial value.
  BoundSide side = BoundSide::kBoth;
  // 0 selects DefaultThreads().
  int workers = 0;
  // Profiles per job.
  uint64_t job_profiles = 4096;
};

struct AgentBounds {
  int agent = 0;
  double lb = 0.0;
  double ub = 0.0;
  bool fallback = false;
  int neighbors = 0;
  // Sum of the profile weights used; 1 up to rounding.
  double weight_sum = 0.0;
};

struct BoundsResult {
  std::vector<AgentBounds> agents;
  uint64_t matching_calls = 0;
  double seconds = 0.0;
};

// For every neighbor subset P of agent i, with C the non-neighbors of i:
//   LB_i = sum_P y(P) (v(C u P u {i}) - v(C u P)),
//   UB_i = sum_P y(P) (v(P u {i}) - v(P)).
// Profiles are visited in Gray-code order.
BoundsResult ComputeBounds(const Game& game, const BoundsOptions& options = {});

ShapleyReport BoundsReport(const Game& game, const BoundsResult& result);

}  // namespace allocsv

#endif  // ALLOCSV_BOUNDS_H_
