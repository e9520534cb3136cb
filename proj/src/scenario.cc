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

#include "allocsv/scenario.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

namespace allocsv {

void Scenario::Validate() const {
  if (capacity < 1) {
    throw Error("capacity must be >= 1, got " + std::to_string(capacity));
  }
  std::unordered_set<std::string> good_ids;
  for (const Good& g : goods) {
    if (!(g.value >= 0.0) || !std::isfinite(g.value)) {
      throw Error("good '" + g.id + "' has invalid value " +
                  std::to_string(g.value) + " (must be finite and >= 0)");
    }
    if (!good_ids.insert(g.id).second) {
      throw Error("duplicate good id '" + g.id + "'");
    }
  }
  std::unordered_set<std::string> agent_ids;
  for (const Agent& a : agents) {
    if (!agent_ids.insert(a.id).second) {
      throw Error("duplicate agent id '" + a.id + "'");
    }
    for (size_t k = 0; k < a.interest.size(); ++k) {
      const int g = a.interest[k];
      if (g < 0 || g >= num_goods()) {
        throw Error("agent '" + a.id + "' refers to unknown good index " +
                    std::to_string(g));
      }
      if (k > 0 && a.interest[k - 1] >= g) {
        throw Error("agent '" + a.id + "' interest list not normalized");
      }
    }
  }
}

void NormalizeInterest(Scenario& scenario) {
  for (Agent& a : scenario.agents) {
    std::sort(a.interest.begin(), a.interest.end());
    a.interest.erase(std::unique(a.interest.begin(), a.interest.end()),
                     a.interest.end());
  }
}

bool IsFeasible(const Scenario& scenario, const Coalition& c,
                const Allocation& allocation) {
  if (static_cast<int>(allocation.assignment.size()) != scenario.num_agents()) {
    return false;
  }
  std::vector<char> taken(scenario.num_goods(), 0);
  for (int i = 0; i < scenario.num_agents(); ++i) {
    const auto& held = allocation.assignment[i];
    if (held.empty()) continue;
    if (!c.Contains(i)) return false;
    if (static_cast<int>(held.size()) > scenario.capacity) return false;
    const auto& interest = scenario.agents[i].interest;
    for (int g : held) {
      if (g < 0 || g >= scenario.num_goods()) return false;
      if (!std::binary_search(interest.begin(), interest.end(), g)) {
        return false;
      }
      if (taken[g]) return false;
      taken[g] = 1;
    }
  }
  return true;
}

double AllocationValue(const Scenario& scenario, const Allocation& allocation) {
  std::vector<double> values;
  for (const auto& held : allocation.assignment) {
    for (int g : held) values.push_back(scenario.goods[g].value);
  }
  std::sort(values.begin(), values.end(), std::greater<>());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

Scenario RestrictToAgents(const Scenario& scenario,
                          const std::vector<int>& agents) {
  std::vector<int> good_map(scenario.num_goods(), -1);
  for (int i : agents) {
    for (int g : scenario.agents[i].interest) good_map[g] = 0;
  }
  Scenario out;
  out.capacity = scenario.capacity;
  for (int g = 0; g < scenario.num_goods(); ++g) {
    if (good_map[g] == 0) {
      good_map[g] = out.num_goods();
      out.goods.push_back(scenario.goods[g]);
    }
  }
  out.agents.reserve(agents.size());
  for (int i : agents) {
    Agent a;
    a.id = scenario.agents[i].id;
    for (int g : scenario.agents[i].interest) a.interest.push_back(good_map[g]);
    out.agents.push_back(std::move(a));
  }
  return out;
}

}  // namespace allocsv
