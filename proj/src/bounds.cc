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

#include "allocsv/bounds.h"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <string>

#include "allocsv/exact.h"
#include "allocsv/parallel.h"

namespace allocsv {

double ProfileWeight(int l, int p, int z, int n) {
  if (l < 0 || p < 0 || z < 0 || l + p + z + 1 != n) {
    throw Error("profile weight: inconsistent sizes l=" + std::to_string(l) +
                " p=" + std::to_string(p) + " z=" + std::to_string(z) +
                " n=" + std::to_string(n));
  }
  // term_j = C(l, j) w(p + j, n), advanced by the ratio of consecutive
  // terms.
  double term = ShapleyWeight(p, n);
  double sum = term;
  for (int j = 0; j < l; ++j) {
    term *= static_cast<double>(l - j) / (j + 1);
    term *= static_cast<double>(p + j + 1) / (n - 1 - p - j);
    sum += term;
  }
  return sum;
}

namespace {

constexpr int kMaxNeighLimit = 40;

struct Job {
  int slot;          // index into the agent list
  uint64_t begin;    // first Gray-code step
  uint64_t end;
};

struct Partial {
  double lb = 0.0;
  double ub = 0.0;
  double weight = 0.0;
};

}  // namespace

BoundsResult ComputeBounds(const Game& game, const BoundsOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int n = game.num_agents();
  const uint64_t calls_before = game.matching_calls();
  std::vector<int> agents = options.agents;
  if (agents.empty()) {
    for (int i = 0; i < n; ++i) agents.push_back(i);
  }
  for (int i : agents) {
    if (i < 0 || i >= n) {
      throw Error("bounds: agent index " + std::to_string(i) +
                  " out of range");
    }
  }
  if (options.max_neigh < 0 || options.max_neigh > kMaxNeighLimit) {
    throw Error("bounds: max_neigh must be in [0, " +
                std::to_string(kMaxNeighLimit) + "]");
  }
  const bool lower = options.side != BoundSide::kUpper;
  const bool upper = options.side != BoundSide::kLower;
  const AgentsGraph& graph = game.graph();
  const uint64_t block = std::max<uint64_t>(options.job_profiles, 1);

  BoundsResult result;
  result.agents.resize(agents.size());
  // y depends only on |P|, so it is tabulated per agent.
  std::vector<std::vector<double>> weights(agents.size());
  std::vector<Job> jobs;
  for (size_t s = 0; s < agents.size(); ++s) {
    const int i = agents[s];
    AgentBounds& b = result.agents[s];
    b.agent = i;
    b.neighbors = graph.Degree(i);
    if (b.neighbors > options.max_neigh) {
      b.fallback = true;
      continue;
    }
    const int d = b.neighbors;
    const int l = n - 1 - d;
    for (int p = 0; p <= d; ++p) {
      weights[s].push_back(ProfileWeight(l, p, d - p, n));
    }
    const uint64_t profiles = uint64_t{1} << d;
    for (uint64_t t = 0; t < profiles; t += block) {
      jobs.push_back({static_cast<int>(s), t, std::min(profiles, t + block)});
    }
  }

  std::vector<Partial> partial(jobs.size());
  ParallelFor(options.workers > 0 ? options.workers : DefaultThreads(),
              jobs.size(), [&](size_t k) {
    const Job& job = jobs[k];
    const int i = agents[job.slot];
    const std::vector<int>& nb = graph.Adjacency(i);
    const std::vector<double>& y = weights[job.slot];
    Coalition profile(n);
    uint64_t gray = job.begin ^ (job.begin >> 1);
    for (size_t b = 0; b < nb.size(); ++b) {
      if ((gray >> b) & 1u) profile.Insert(nb[b]);
    }
    Coalition outer = graph.Neighbors(i).Complement().Without(i);
    outer |= profile;
    Partial acc;
    for (uint64_t t = job.begin; t < job.end; ++t) {
      if (t != job.begin) {
        const int b = std::countr_zero(t);
        const int j = nb[b];
        if (profile.Contains(j)) {
          profile.Erase(j);
          outer.Erase(j);
        } else {
          profile.Insert(j);
          outer.Insert(j);
        }
      }
      const double w = y[profile.Size()];
      acc.weight += w;
      const double hi = upper ? game.Marginal(i, profile) : 0.0;
      if (lower) {
        double lo = game.Marginal(i, outer);
        // The game is submodular; this only absorbs rounding so collapsed
        // bounds come out bit-equal.
        if (upper) lo = std::min(lo, hi);
        acc.lb += w * lo;
      }
      if (upper) acc.ub += w * hi;
    }
    partial[k] = acc;
  });

  for (size_t k = 0; k < jobs.size(); ++k) {
    AgentBounds& b = result.agents[jobs[k].slot];
    b.lb += partial[k].lb;
    b.ub += partial[k].ub;
    b.weight_sum += partial[k].weight;
  }
  for (AgentBounds& b : result.agents) {
    if (b.fallback || !lower) b.lb = game.GrandMarginal(b.agent);
    if (b.fallback || !upper) b.ub = game.Solo(b.agent);
    if (b.fallback) b.lb = std::min(b.lb, b.ub);
  }
  result.matching_calls = game.matching_calls() - calls_before;
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

ShapleyReport BoundsReport(const Game& game, const BoundsResult& result) {
  ShapleyReport report;
  for (const AgentBounds& b : result.agents) {
    AgentRecord rec;
    rec.agent = game.scenario().agents[b.agent].id;
    if (b.lb == b.ub) {
      rec.kind = RecordKind::kExact;
      rec.value = b.lb;
    } else {
      rec.kind = RecordKind::kInterval;
    }
    rec.method = b.fallback ? "bounds-fallback" : "bounds";
    rec.lb = b.lb;
    rec.ub = b.ub;
    rec.fallback = b.fallback;
    report.records.push_back(std::move(rec));
  }
  report.meta["matching_calls"] = result.matching_calls;
  report.meta["seconds"] = result.seconds;
  return report;
}

}  // namespace allocsv
