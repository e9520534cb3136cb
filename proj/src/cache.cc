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

#include "allocsv/cache.h"

#include <bit>

namespace allocsv {
namespace {

// Quiet NaN pattern never produced by a matching value.
constexpr uint64_t kEmpty = 0x7ff8dead0000beefull;

}  // namespace

CharacteristicCache::CharacteristicCache(size_t max_entries, int num_shards)
    : per_shard_cap_(max_entries == 0
                         ? 0
                         : (max_entries + num_shards - 1) / num_shards),
      shards_(num_shards) {}

std::optional<double> CharacteristicCache::Lookup(uint32_t component,
                                                  const Coalition& c) {
  Key key{component, c};
  const size_t h = KeyHash{}(key);
  Shard& shard = ShardFor(h);
  std::lock_guard<std::mutex> lock(shard.mu);
  auto it = shard.map.find(key);
  if (it == shard.map.end()) {
    misses_.fetch_add(1, std::memory_order_relaxed);
    return std::nullopt;
  }
  if (per_shard_cap_ != 0) {
    shard.lru.splice(shard.lru.begin(), shard.lru, it->second.lru);
  }
  hits_.fetch_add(1, std::memory_order_relaxed);
  return it->second.value;
}

void CharacteristicCache::Store(uint32_t component, const Coalition& c,
                                double value) {
  Key key{component, c};
  const size_t h = KeyHash{}(key);
  Shard& shard = ShardFor(h);
  std::lock_guard<std::mutex> lock(shard.mu);
  if (shard.map.count(key) != 0) return;
  if (per_shard_cap_ == 0) {
    shard.map.emplace(std::move(key), Entry{value, {}});
    return;
  }
  if (shard.map.size() >= per_shard_cap_) {
    shard.map.erase(shard.lru.back());
    shard.lru.pop_back();
    evictions_.fetch_add(1, std::memory_order_relaxed);
  }
  shard.lru.push_front(key);
  shard.map.emplace(std::move(key), Entry{value, shard.lru.begin()});
}

CharacteristicCache::DenseTable::DenseTable(int num_agents)
    : bits_(std::make_unique<std::atomic<uint64_t>[]>(size_t{1} << num_agents)) {
  const size_t size = size_t{1} << num_agents;
  for (size_t k = 0; k < size; ++k) {
    bits_[k].store(kEmpty, std::memory_order_relaxed);
  }
}

std::optional<double> CharacteristicCache::DenseTable::Lookup(
    uint64_t mask) const {
  const uint64_t raw = bits_[mask].load(std::memory_order_relaxed);
  if (raw == kEmpty) return std::nullopt;
  return std::bit_cast<double>(raw);
}

void CharacteristicCache::DenseTable::Store(uint64_t mask, double value) {
  bits_[mask].store(std::bit_cast<uint64_t>(value), std::memory_order_relaxed);
}

CharacteristicCache::DenseTable* CharacteristicCache::Dense(uint32_t component,
                                                            int num_agents) {
  if (num_agents > kMaxDenseAgents) return nullptr;
  std::lock_guard<std::mutex> lock(dense_mu_);
  auto& slot = dense_[component];
  if (!slot) slot = std::make_unique<DenseTable>(num_agents);
  return slot.get();
}

CacheStats CharacteristicCache::stats() const {
  CacheStats s;
  s.hits = hits_.load();
  s.misses = misses_.load();
  s.evictions = evictions_.load();
  for (const Shard& shard : shards_) {
    s.entries += shard.map.size();
  }
  return s;
}

void CharacteristicCache::Clear() {
  for (Shard& shard : shards_) {
    std::lock_guard<std::mutex> lock(shard.mu);
    shard.map.clear();
    shard.lru.clear();
  }
  std::lock_guard<std::mutex> lock(dense_mu_);
  dense_.clear();
}

}  // namespace allocsv
