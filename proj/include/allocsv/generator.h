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

#ifndef ALLOCSV_GENERATOR_H_
#define ALLOCSV_GENERATOR_H_

#include <cstdint>
#include <vector>

#include "allocsv/scenario.h"

namespace allocsv {

// Synthetic author/publication instances. Every agent first authors at
// least one good; each good has 1 + X authors where P(X >= t) =
// coauthor_prob^t, truncated at max_authors. Co-authors come from the
// first author's group with probability `locality`, otherwise from anyone;
// both draws favor active agents.
struct GeneratorParams {
  int agents = 100;
  // Goods per agent on average (at least 1).
  double goods_per_agent = 1.66;
  double coauthor_prob = 0.3;
  int max_authors = 6;
  int group_size = 25;
  double locality = 0.7;
  // Goods beyond the first per agent pick their first author with weight
  // rank^-activity_skew over a random ranking of the agents; 0 is uniform.
  double activity_skew = 0.8;
  std::vector<double> values = {0.0, 0.1, 0.4, 0.7, 1.0};
  std::vector<double> value_weights = {0.05, 0.15, 0.25, 0.30, 0.25};
  int capacity = 2;
  uint64_t seed = 0;

  // Throws Error describing the first invalid field.
  void Validate() const;
};

// Deterministic for fixed params. Agents are "a<k>", goods "g<k>".
Scenario Generate(const GeneratorParams& params);

enum class ExtractMode {
  // Uniform sample of distinct agents.
  kUniform,
  // Grown by random frontier expansion from a random agent, restarting in
  // a fresh place when a component runs out.
  kConnected,
};

// Restriction to `size` sampled agents (kept in their original order) and
// the goods they want. Throws Error when size is negative or exceeds the
// number of agents.
Scenario ExtractSubgraph(const Scenario& scenario, int size, uint64_t seed,
                         ExtractMode mode = ExtractMode::kUniform);

}  // namespace allocsv

#endif  // ALLOCSV_GENERATOR_H_
