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

#ifndef ALLOCSV_MATCHING_H_
#define ALLOCSV_MATCHING_H_

#include "allocsv/coalition.h"
#include "allocsv/kernels.h"
#include "allocsv/scenario.h"

namespace allocsv {

// Optimal allocations reduce to maximum-weight bipartite matching between
// agent slots (each agent replicated `capacity` times) and the positive
// goods wanted by the coalition. Zero-value goods never change the optimum
// and are left out of the instance.
enum class MatchingAlgorithm {
  // Dense Hungarian for small instances, greedy augmentation otherwise.
  kAuto,
  // O(n^2 m) Hungarian method on the full cost matrix; the row scans run on
  // the selected SIMD kernel table.
  kDenseHungarian,
  // Successive shortest augmenting paths (Dijkstra with potentials) over
  // the sparse interest edges, one agent slot at a time.
  kShortestPath,
  // Goods in descending value order, each kept when an unweighted
  // augmenting path can place it.
  kGreedyAugment,
};

struct MatchingOptions {
  MatchingAlgorithm algorithm = MatchingAlgorithm::kAuto;
  // nullptr selects kernels::ActiveKernels().
  const kernels::KernelTable* kernels = nullptr;
};

struct MatchingResult {
  Allocation allocation;
  double value = 0.0;
};

// Maximum total value of a feasible allocation for `c`; 0 for the empty
// coalition. The value is the sum of the assigned goods in descending value
// order, so it matches AllocationValue() of the reconstructed allocation.
double OptimalValue(const Scenario& scenario, const Coalition& c,
                    const MatchingOptions& options = {});

MatchingResult OptimalAllocation(const Scenario& scenario, const Coalition& c,
                                 const MatchingOptions& options = {});

}  // namespace allocsv

#endif  // ALLOCSV_MATCHING_H_
