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

#ifndef ALLOCSV_SCENARIO_H_
#define ALLOCSV_SCENARIO_H_

#include <stdexcept>
#include <string>
#include <vector>

#include "allocsv/coalition.h"

namespace allocsv {

// Every recoverable failure in the library (bad input, refused request)
// surfaces as this exception type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Good {
  std::string id;
  double value = 0.0;
};

struct Agent {
  std::string id;
  // Indices into Scenario::goods, sorted ascending, no duplicates.
  std::vector<int> interest;
};

// Agents, valued indivisible goods, the interest map and the per-agent
// capacity. Agent order is the canonical index used by coalition bitsets.
struct Scenario {
  std::vector<Agent> agents;
  std::vector<Good> goods;
  int capacity = 1;

  int num_agents() const { return static_cast<int>(agents.size()); }
  int num_goods() const { return static_cast<int>(goods.size()); }
  Coalition GrandCoalition() const { return Coalition::Full(num_agents()); }

  // Throws Error naming the first violated invariant.
  void Validate() const;
};

// assignment[i] lists the goods held by agent i (empty for agents outside
// the coalition).
struct Allocation {
  std::vector<std::vector<int>> assignment;
};

// True when `allocation` respects interest sets, capacity and disjointness
// for coalition `c`.
bool IsFeasible(const Scenario& scenario, const Coalition& c,
                const Allocation& allocation);

// Sum of the values of the assigned goods, in canonical (descending value)
// order so equal multisets always give identical doubles.
double AllocationValue(const Scenario& scenario, const Allocation& allocation);

// Restriction to `agents` (given in the desired new order) and to the goods
// they are interested in, kept in original good order.
Scenario RestrictToAgents(const Scenario& scenario,
                          const std::vector<int>& agents);

// Sorted, duplicate-free interest lists.
void NormalizeInterest(Scenario& scenario);

}  // namespace allocsv

#endif  // ALLOCSV_SCENARIO_H_
