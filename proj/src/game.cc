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

#include "allocsv/game.h"

#include <bit>
#include <string>
#include <utility>

namespace allocsv {

Game::Game(Scenario scenario, GameOptions options)
    : scenario_(std::move(scenario)), options_(std::move(options)) {
  scenario_.Validate();
  graph_ = AgentsGraph(scenario_);
  const int n = scenario_.num_agents();
  if (n <= 64) small_.emplace(graph_);
  if (options_.cache) {
    dense_ = options_.cache->Dense(options_.component_id, n);
  }
  solo_.resize(n);
  for (int i = 0; i < n; ++i) {
    solo_[i] = OptimalValue(scenario_, Coalition::Of(n, std::vector<int>{i}),
                            options_.matching);
  }
  grand_ = Value(scenario_.GrandCoalition());
}

double Game::Solve(const Coalition& c) const {
  matching_calls_.fetch_add(1, std::memory_order_relaxed);
  return OptimalValue(scenario_, c, options_.matching);
}

double Game::ConnectedValue(const Coalition& c) const {
  const int size = c.Size();
  if (size == 0) return 0.0;
  if (size == 1) return solo_[c.First()];
  CharacteristicCache* cache = options_.cache.get();
  if (cache == nullptr) return Solve(c);
  if (dense_ != nullptr) {
    const uint64_t mask = c.Mask();
    if (auto hit = dense_->Lookup(mask)) {
      cache->RecordHit();
      return *hit;
    }
    cache->RecordMiss();
    const double v = Solve(c);
    dense_->Store(mask, v);
    return v;
  }
  if (auto hit = cache->Lookup(options_.component_id, c)) return *hit;
  const double v = Solve(c);
  cache->Store(options_.component_id, c, v);
  return v;
}

double Game::ConnectedMask(uint64_t mask) const {
  if (mask == 0) return 0.0;
  if ((mask & (mask - 1)) == 0) return solo_[std::countr_zero(mask)];
  return ConnectedValue(Coalition::FromMask(num_agents(), mask));
}

double Game::Value(const Coalition& c) const {
  if (small_) return ValueMask(c.Mask());
  double total = 0.0;
  for (const Coalition& piece : graph_.Components(c)) {
    total += ConnectedValue(piece);
  }
  return total;
}

double Game::ValueMask(uint64_t mask) const {
  double total = 0.0;
  uint64_t rest = mask;
  while (rest != 0) {
    const int seed = std::countr_zero(rest);
    const uint64_t piece = small_->ReachableFrom(seed, rest);
    total += ConnectedMask(piece);
    rest &= ~piece;
  }
  return total;
}

double Game::Marginal(int i, const Coalition& c) const {
  if (c.Contains(i)) {
    throw Error("marginal contribution: agent " + std::to_string(i) +
                " already belongs to the coalition");
  }
  if (small_) return MarginalMask(i, c.Mask());
  // Only the part of C reachable from i interacts with i.
  Coalition with_i = graph_.ReachableFrom(i, c);
  if (with_i.Size() == 1) return solo_[i];
  Coalition reach = with_i.Without(i);
  return ConnectedValue(with_i) - Value(reach);
}

double Game::MarginalMask(int i, uint64_t mask) const {
  const uint64_t bit = uint64_t{1} << i;
  if (mask & bit) {
    throw Error("marginal contribution: agent " + std::to_string(i) +
                " already belongs to the coalition");
  }
  const uint64_t with_i = small_->ReachableFrom(i, mask);
  if (with_i == bit) return solo_[i];
  return ConnectedMask(with_i) - ValueMask(with_i & ~bit);
}

double Game::GrandMarginal(int i) const {
  return Marginal(i, scenario_.GrandCoalition().Without(i));
}

}  // namespace allocsv
