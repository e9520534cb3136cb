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

#ifndef ALLOCSV_SAMPLING_H_
#define ALLOCSV_SAMPLING_H_

#include <cstdint>
#include <vector>

#include "allocsv/game.h"
#include "allocsv/report.h"

namespace allocsv {

// ceil(n (n - 1) / (delta epsilon^2)). Throws Error unless epsilon and
// delta lie in (0, 1).
uint64_t FprasSampleCount(int n, double epsilon, double delta);

struct FprasOptions {
  double epsilon = 0.1;
  double delta = 0.01;
  int runs = 3;
  uint64_t seed = 0;
  // 0 selects DefaultThreads().
  int workers = 0;
  // Add opt({j}) directly when no neighbor of j precedes it.
  bool shortcut = true;
  // Rescale so the estimates sum to opt(N).
  bool scale = true;
  uint64_t permutations_per_job = 64;
};

struct SamplingResult {
  std::vector<double> estimates;
  // Marginal contributions drawn per agent, over all runs.
  std::vector<uint64_t> samples;
  uint64_t contributions = 0;
  uint64_t shortcut_hits = 0;
  uint64_t matching_calls = 0;
  // Per-run averages, before the median and scaling (fpras only).
  std::vector<std::vector<double>> runs;
  double seconds = 0.0;
};

// Permutation sampler. Each run draws ceil(m / n) uniform permutations,
// with m = FprasSampleCount(n, epsilon, delta), so every agent receives
// the same number of contributions; each agent's sum is divided by its
// own count. The result is the per-agent median over runs, scaled to sum
// to opt(N).
SamplingResult FprasShapley(const Game& game, const FprasOptions& options);

struct AgentRange {
  double solo = 0.0;            // opt({i})
  double grand_marginal = 0.0;  // marg({i}, N)
  double range = 0.0;           // solo - grand_marginal, clamped to >= 0
};

std::vector<AgentRange> ComputeRanges(const Game& game, int workers = 0);

// ceil(ln(2 / delta_i) range^2 / (2 epsilon_i^2)); 0 when range is 0.
uint64_t RangeSampleBound(double range, double epsilon_i, double delta_i);

enum class ErrorMode { kAbsolute, kRelative };

struct RangeOptions {
  double epsilon = 0.1;
  double delta = 0.01;
  ErrorMode mode = ErrorMode::kAbsolute;
  // Per-agent lower bounds for the relative mode; empty selects
  // marg({i}, N).
  std::vector<double> lower_bounds;
  uint64_t batch = 1024;
  uint64_t seed = 0;
  // 0 selects DefaultThreads().
  int workers = 0;
};

// Per-agent sampler: agent i averages m_i marginal contributions
// marg({i}, S), where |S| is uniform in {0, ..., n - 1} and S is a uniform
// subset of that size of N \ {i}; m_i = RangeSampleBound(r_i, epsilon_i,
// delta / n). Agents with r_i = 0 get opt({i}) without sampling. In the
// relative mode epsilon_i = epsilon * lower_bound_i, and a non-positive
// lower bound on an agent that needs samples is an Error.
SamplingResult RangeSamplerShapley(const Game& game,
                                   const RangeOptions& options);

ShapleyReport SamplingReport(const Game& game, const SamplingResult& result,
                             std::string_view method, double epsilon,
                             double delta);

}  // namespace allocsv

#endif  // ALLOCSV_SAMPLING_H_
