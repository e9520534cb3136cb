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

#ifndef ALLOCSV_CACHE_H_
#define ALLOCSV_CACHE_H_

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "allocsv/coalition.h"

namespace allocsv {

struct CacheStats {
  uint64_t hits = 0;
  uint64_t misses = 0;
  uint64_t entries = 0;
  uint64_t evictions = 0;
};

// Memoized coalition values keyed by (component id, coalition). Safe for
// concurrent use. Values are pure functions of their key, so racing
// writers always store the same bits.
//
// Small components can register a dense table indexed by the coalition
// mask; everything else goes to a sharded hash map, optionally capped with
// per-shard LRU eviction.
class CharacteristicCache {
 public:
  static constexpr int kMaxDenseAgents = 20;

  // max_entries == 0 means unbounded.
  explicit CharacteristicCache(size_t max_entries = 0, int num_shards = 64);

  CharacteristicCache(const CharacteristicCache&) = delete;
  CharacteristicCache& operator=(const CharacteristicCache&) = delete;

  std::optional<double> Lookup(uint32_t component, const Coalition& c);
  void Store(uint32_t component, const Coalition& c, double value);

  class DenseTable {
   public:
    explicit DenseTable(int num_agents);
    std::optional<double> Lookup(uint64_t mask) const;
    void Store(uint64_t mask, double value);

   private:
    std::unique_ptr<std::atomic<uint64_t>[]> bits_;
  };

  // Returns the dense table of `component`, creating it on first use.
  // Returns nullptr when num_agents exceeds kMaxDenseAgents.
  DenseTable* Dense(uint32_t component, int num_agents);

  // Counters of the dense tables are recorded by their callers.
  void RecordHit() { hits_.fetch_add(1, std::memory_order_relaxed); }
  void RecordMiss() { misses_.fetch_add(1, std::memory_order_relaxed); }

  CacheStats stats() const;
  void Clear();

 private:
  struct Key {
    uint32_t component;
    Coalition coalition;
    friend bool operator==(const Key& a, const Key& b) {
      return a.component == b.component && a.coalition == b.coalition;
    }
  };
  struct KeyHash {
    size_t operator()(const Key& k) const {
      return k.coalition.Hash() ^ (size_t(k.component) * 0x9e3779b97f4a7c15ull);
    }
  };
  struct Entry {
    double value;
    std::list<Key>::iterator lru;
  };
  struct Shard {
    std::mutex mu;
    std::unordered_map<Key, Entry, KeyHash> map;
    std::list<Key> lru;  // front = most recent; only maintained when capped
  };

  Shard& ShardFor(size_t hash) { return shards_[hash % shards_.size()]; }

  size_t per_shard_cap_;
  std::vector<Shard> shards_;
  std::mutex dense_mu_;
  std::unordered_map<uint32_t, std::unique_ptr<DenseTable>> dense_;
  std::atomic<uint64_t> hits_{0};
  std::atomic<uint64_t> misses_{0};
  std::atomic<uint64_t> evictions_{0};
};

}  // namespace allocsv

#endif  // ALLOCSV_CACHE_H_
