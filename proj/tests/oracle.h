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

// Brute-force reference implementations for tests. Deliberately naive and
// independent of the library's algorithms.

#ifndef ALLOCSV_TESTS_ORACLE_H_
#define ALLOCSV_TESTS_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "allocsv/scenario.h"

namespace allocsv::oracle {

// Max value over every assignment of goods to interested members of `mask`
// (or to nobody) with at most k goods per agent.
inline double BruteOpt(const Scenario& s, uint64_t mask) {
  std::vector<int> load(s.num_agents(), 0);
  std::vector<std::vector<int>> wanted(s.num_goods());
  for (int i = 0; i < s.num_agents(); ++i) {
    if (!((mask >> i) & 1)) continue;
    for (int g : s.agents[i].interest) wanted[g].push_back(i);
  }
  std::function<double(int)> go = [&](int g) -> double {
    if (g == s.num_goods()) return 0.0;
    double best = go(g + 1);
    for (int i : wanted[g]) {
      if (load[i] == s.capacity) continue;
      ++load[i];
      best = std::max(best, s.goods[g].value + go(g + 1));
      --load[i];
    }
    return best;
  };
  return go(0);
}

// Max-weight assignment by successive longest augmenting paths with
// Bellman-Ford on an explicit flow network. Exact for nonnegative values.
inline double FlowOpt(const Scenario& s, uint64_t mask) {
  const int n = s.num_agents();
  const int m = s.num_goods();
  // Nodes: source, agents, goods, sink.
  const int src = 0, sink = 1 + n + m, nodes = sink + 1;
  struct Edge {
    int to;
    int cap;
    double cost;
  };
  std::vector<Edge> edges;
  std::vector<std::vector<int>> out(nodes);
  auto add = [&](int a, int b, int cap, double cost) {
    out[a].push_back(static_cast<int>(edges.size()));
    edges.push_back({b, cap, cost});
    out[b].push_back(static_cast<int>(edges.size()));
    edges.push_back({a, 0, -cost});
  };
  for (int i = 0; i < n; ++i) {
    if (!((mask >> i) & 1)) continue;
    add(src, 1 + i, s.capacity, 0.0);
    for (int g : s.agents[i].interest) {
      add(1 + i, 1 + n + g, 1, -s.goods[g].value);
    }
  }
  for (int g = 0; g < m; ++g) add(1 + n + g, sink, 1, 0.0);
  double total = 0.0;
  while (true) {
    std::vector<double> dist(nodes, std::numeric_limits<double>::infinity());
    std::vector<int> via(nodes, -1);
    dist[src] = 0.0;
    for (int round = 0; round < nodes; ++round) {
      bool changed = false;
      for (int u = 0; u < nodes; ++u) {
        if (std::isinf(dist[u])) continue;
        for (int e : out[u]) {
          if (edges[e].cap > 0 &&
              dist[u] + edges[e].cost < dist[edges[e].to] - 1e-12) {
            dist[edges[e].to] = dist[u] + edges[e].cost;
            via[edges[e].to] = e;
            changed = true;
          }
        }
      }
      if (!changed) break;
    }
    // Stop once an extra unit no longer increases the value.
    if (std::isinf(dist[sink]) || dist[sink] >= -1e-12) break;
    for (int v = sink; v != src; v = edges[via[v] ^ 1].to) {
      --edges[via[v]].cap;
      ++edges[via[v] ^ 1].cap;
    }
    total -= dist[sink];
  }
  return total;
}

// v over all 2^n masks.
inline std::vector<double> ValueTable(
    int n, const std::function<double(uint64_t)>& v) {
  std::vector<double> t(size_t{1} << n);
  for (uint64_t mask = 0; mask < t.size(); ++mask) t[mask] = v(mask);
  return t;
}

// Shapley values by averaging marginal contributions over all n!
// permutations.
inline std::vector<double> PermutationShapley(int n,
                                              const std::vector<double>& v) {
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> sv(n, 0.0);
  double count = 0.0;
  do {
    uint64_t prefix = 0;
    for (int j : order) {
      sv[j] += v[prefix | (uint64_t{1} << j)] - v[prefix];
      prefix |= uint64_t{1} << j;
    }
    count += 1.0;
  } while (std::next_permutation(order.begin(), order.end()));
  for (double& x : sv) x /= count;
  return sv;
}

// Shapley values from the subset formula with integer factorials.
inline std::vector<double> SubsetShapley(int n, const std::vector<double>& v) {
  std::vector<long double> fact(n + 1, 1.0L);
  for (int k = 1; k <= n; ++k) fact[k] = fact[k - 1] * k;
  std::vector<double> sv(n, 0.0);
  for (int i = 0; i < n; ++i) {
    long double acc = 0.0L;
    for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
      if ((mask >> i) & 1) continue;
      const int s = __builtin_popcountll(mask);
      acc += fact[s] * fact[n - s - 1] / fact[n] *
             (v[mask | (uint64_t{1} << i)] - v[mask]);
    }
    sv[i] = static_cast<double>(acc);
  }
  return sv;
}

inline std::vector<double> OracleShapley(const Scenario& s) {
  const int n = s.num_agents();
  const auto v = ValueTable(n, [&](uint64_t m) { return FlowOpt(s, m); });
  return n <= 8 ? PermutationShapley(n, v) : SubsetShapley(n, v);
}

struct RandomSpec {
  int agents = 6;
  int goods = 8;
  int capacity = 2;
  // Probability that an agent wants a given good.
  double density = 0.3;
  std::vector<double> values = {0.0, 0.1, 0.4, 0.7, 1.0};
};

inline Scenario RandomScenario(const RandomSpec& spec, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Scenario s;
  s.capacity = spec.capacity;
  for (int g = 0; g < spec.goods; ++g) {
    s.goods.push_back({"g" + std::to_string(g),
                       spec.values[rng() % spec.values.size()]});
  }
  for (int i = 0; i < spec.agents; ++i) {
    Agent a;
    a.id = "a" + std::to_string(i);
    for (int g = 0; g < spec.goods; ++g) {
      if (unit(rng) < spec.density) a.interest.push_back(g);
    }
    s.agents.push_back(std::move(a));
  }
  return s;
}

inline bool Near(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a),
                                                         std::abs(b)));
}

}  // namespace allocsv::oracle

#endif  // ALLOCSV_TESTS_ORACLE_H_
