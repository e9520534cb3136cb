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

#ifndef ALLOCSV_GAME_H_
#define ALLOCSV_GAME_H_

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "allocsv/agents_graph.h"
#include "allocsv/cache.h"
#include "allocsv/coalition.h"
#include "allocsv/matching.h"
#include "allocsv/scenario.h"

namespace allocsv {

struct GameOptions {
  // Shared memo table; nullptr disables caching.
  std::shared_ptr<CharacteristicCache> cache;
  // Distinguishes games sharing one cache.
  uint32_t component_id = 0;
  MatchingOptions matching;
};

// The allocation game of a scenario. v(C) is evaluated as the sum over the
// connected pieces of C in the agents graph, each piece solved (or looked
// up) on its own. Pieces are summed in order of their lowest member so the
// same coalition always yields the same bits.
//
// Thread-safe; all methods are const.
class Game {
 public:
  explicit Game(Scenario scenario, GameOptions options = {});

  Game(const Game&) = delete;
  Game& operator=(const Game&) = delete;

  const Scenario& scenario() const { return scenario_; }
  const AgentsGraph& graph() const { return graph_; }
  int num_agents() const { return scenario_.num_agents(); }
  uint32_t component_id() const { return options_.component_id; }
  const MatchingOptions& matching_options() const { return options_.matching; }
  CharacteristicCache* cache() const { return options_.cache.get(); }
  // Present only when num_agents() <= 64.
  const SmallGraph* small_graph() const {
    return small_ ? &*small_ : nullptr;
  }

  // opt(C).
  double Value(const Coalition& c) const;
  // opt(C) for a coalition known to be connected.
  double ConnectedValue(const Coalition& c) const;
  // opt({i}).
  double Solo(int i) const { return solo_[i]; }
  // opt(N).
  double GrandValue() const { return grand_; }
  // v(C u {i}) - v(C). Throws Error when i is in C.
  double Marginal(int i, const Coalition& c) const;
  // marg({i}, N).
  double GrandMarginal(int i) const;

  // Mask variants; require num_agents() <= 64.
  double ValueMask(uint64_t mask) const;
  double MarginalMask(int i, uint64_t mask) const;

  uint64_t matching_calls() const {
    return matching_calls_.load(std::memory_order_relaxed);
  }

 private:
  double Solve(const Coalition& c) const;
  double ConnectedMask(uint64_t mask) const;

  Scenario scenario_;
  GameOptions options_;
  AgentsGraph graph_;
  std::optional<SmallGraph> small_;
  CharacteristicCache::DenseTable* dense_ = nullptr;
  std::vector<double> solo_;
  double grand_ = 0.0;
  mutable std::atomic<uint64_t> matching_calls_{0};
};

// Free-function forms of the characteristic function.
inline double CharValue(const Game& game, const Coalition& c) {
  return game.Value(c);
}
inline double MarginalContribution(const Game& game, int i,
                                   const Coalition& c) {
  return game.Marginal(i, c);
}

}  // namespace allocsv

#endif  // ALLOCSV_GAME_H_
