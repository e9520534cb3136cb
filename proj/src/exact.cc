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

#include "allocsv/exact.h"

#include <algorithm>
#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "allocsv/parallel.h"

namespace allocsv {
namespace {

// Hard ceiling regardless of the configured limit: the value table holds
// 2^n doubles.
constexpr int kMaxExactAgents = 32;

}  // namespace

double ShapleyWeight(int csize, int n) {
  if (n < 1 || csize < 0 || csize > n - 1) {
    throw Error("shapley weight: coalition size " + std::to_string(csize) +
                " out of range for " + std::to_string(n) + " agents");
  }
  // 1 / (n * C(n-1, csize)), with the binomial built by the multiplicative
  // formula over the smaller side.
  const int k = std::min(csize, n - 1 - csize);
  double binom = 1.0;
  for (int j = 1; j <= k; ++j) {
    binom = binom * (n - k - 1 + j) / j;
  }
  if (std::isfinite(binom)) return 1.0 / (n * binom);
  return std::exp(std::lgamma(csize + 1.0) + std::lgamma(n - csize + 0.0) -
                  std::lgamma(n + 1.0));
}

ExactResult ExactShapley(const Game& game, const ExactOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int n = game.num_agents();
  const int limit = std::min(options.limit, kMaxExactAgents);
  if (n > limit) {
    throw Error("exact: component has " + std::to_string(n) +
                " agents, above the exact limit of " + std::to_string(limit) +
                "; use bounds or a sampler for it");
  }
  ExactResult result;
  result.values.assign(n, 0.0);
  if (n == 0) return result;
  if (n == 1) {
    result.values[0] = game.Solo(0);
    return result;
  }

  const int workers = options.workers > 0 ? options.workers : DefaultThreads();
  const kernels::KernelTable& kt =
      options.kernels ? *options.kernels : kernels::ActiveKernels();
  const SmallGraph& graph = *game.small_graph();
  const Scenario& scenario = game.scenario();
  const MatchingOptions& matching = game.matching_options();

  const uint64_t total = uint64_t{1} << n;
  const uint64_t job_masks = std::min(std::bit_ceil(std::max<uint64_t>(
                                          options.job_masks, 1)),
                                      total);
  const size_t num_jobs = total / job_masks;
  std::unique_ptr<double[]> table(new double[total]);
  constexpr double kPending = std::numeric_limits<double>::quiet_NaN();

  // Connected coalitions first; the rest only need table lookups.
  std::atomic<uint64_t> calls{0};
  ParallelFor(workers, num_jobs, [&](size_t job) {
    const uint64_t begin = job * job_masks;
    uint64_t local_calls = 0;
    for (uint64_t mask = begin; mask < begin + job_masks; ++mask) {
      if (mask == 0) {
        table[mask] = 0.0;
      } else if ((mask & (mask - 1)) == 0) {
        table[mask] = game.Solo(std::countr_zero(mask));
      } else if (graph.ReachableFrom(std::countr_zero(mask), mask) == mask) {
        table[mask] =
            OptimalValue(scenario, Coalition::FromMask(n, mask), matching);
        ++local_calls;
      } else {
        table[mask] = kPending;
      }
    }
    calls.fetch_add(local_calls, std::memory_order_relaxed);
  });
  ParallelFor(workers, num_jobs, [&](size_t job) {
    const uint64_t begin = job * job_masks;
    for (uint64_t mask = begin; mask < begin + job_masks; ++mask) {
      if (!std::isnan(table[mask])) continue;
      // Same piece order as Game::ValueMask.
      double sum = 0.0;
      uint64_t rest = mask;
      while (rest != 0) {
        const uint64_t piece =
            graph.ReachableFrom(std::countr_zero(rest), rest);
        sum += table[piece];
        rest &= ~piece;
      }
      table[mask] = sum;
    }
  });

  // coef_in[s] = w(s-1, n) for members, coef_out[s] = -w(s, n) for the
  // others; the grand coalition has no outsiders.
  std::vector<double> coef_in(n + 1, 0.0), coef_out(n + 1, 0.0);
  for (int s = 1; s <= n; ++s) coef_in[s] = ShapleyWeight(s - 1, n);
  for (int s = 0; s < n; ++s) coef_out[s] = -ShapleyWeight(s, n);

  std::vector<double> partial(num_jobs * n, 0.0);
  ParallelFor(workers, num_jobs, [&](size_t job) {
    const uint64_t begin = job * job_masks;
    kt.accumulate(table.get() + begin, begin, job_masks, n, coef_in.data(),
                  coef_out.data(), partial.data() + job * n);
  });

  for (int i = 0; i < n; ++i) {
    double sum = 0.0;
    double comp = 0.0;
    for (size_t job = 0; job < num_jobs; ++job) {
      const double x = partial[job * n + i];
      if (options.kahan) {
        // Neumaier's variant.
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
          comp += (sum - t) + x;
        } else {
          comp += (x - t) + sum;
        }
        sum = t;
      } else {
        sum += x;
      }
    }
    result.values[i] = sum + comp;
  }
  result.matching_calls = calls.load();
  result.seconds = std::chrono::duration<double>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  return result;
}

ShapleyReport ExactShapleyReport(const Game& game,
                                 const ExactOptions& options) {
  const ExactResult r = ExactShapley(game, options);
  ShapleyReport report;
  for (int i = 0; i < game.num_agents(); ++i) {
    AgentRecord rec;
    rec.agent = game.scenario().agents[i].id;
    rec.kind = RecordKind::kExact;
    rec.method = "exact";
    rec.value = r.values[i];
    rec.wall_seconds = r.seconds;
    report.records.push_back(std::move(rec));
  }
  report.meta["matching_calls"] = r.matching_calls;
  report.meta["seconds"] = r.seconds;
  report.meta["grand_value"] = game.GrandValue();
  return report;
}

}  // namespace allocsv
