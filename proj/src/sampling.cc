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

#include "allocsv/sampling.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <string>

#include "allocsv/parallel.h"
#include "allocsv/rng.h"

namespace allocsv {
namespace {

void CheckUnit(double x, const char* name) {
  if (!(x > 0.0 && x < 1.0)) {
    throw Error(std::string(name) + " must lie in (0, 1), got " +
                std::to_string(x));
  }
}

double Elapsed(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

double Median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const size_t h = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[h];
  return 0.5 * (xs[h - 1] + xs[h]);
}

// Shortcut test and marginal for one permutation step.
struct Stepper {
  const Game& game;
  bool shortcut;
  uint64_t hits = 0;

  double StepMask(int j, uint64_t prefix) {
    if (shortcut && (game.small_graph()->Neighbors(j) & prefix) == 0) {
      ++hits;
      return game.Solo(j);
    }
    return game.MarginalMask(j, prefix);
  }

  double Step(int j, const Coalition& prefix) {
    if (shortcut && !game.graph().Neighbors(j).Intersects(prefix)) {
      ++hits;
      return game.Solo(j);
    }
    return game.Marginal(j, prefix);
  }
};

}  // namespace

uint64_t FprasSampleCount(int n, double epsilon, double delta) {
  CheckUnit(epsilon, "epsilon");
  CheckUnit(delta, "delta");
  const double m = static_cast<double>(n) * (n - 1) /
                   (delta * epsilon * epsilon);
  return static_cast<uint64_t>(std::ceil(m));
}

SamplingResult FprasShapley(const Game& game, const FprasOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const int n = game.num_agents();
  const uint64_t m = FprasSampleCount(n, options.epsilon, options.delta);
  if (options.runs < 1) throw Error("fpras: runs must be >= 1");
  SamplingResult result;
  result.estimates.assign(n, 0.0);
  result.samples.assign(n, 0);
  if (n == 0) return result;
  if (n == 1) {
    result.estimates[0] = game.Solo(0);
    return result;
  }
  const uint64_t calls_before = game.matching_calls();
  const uint64_t perms = std::max<uint64_t>(1, (m + n - 1) / n);
  const uint64_t per_job = std::max<uint64_t>(options.permutations_per_job, 1);
  const uint64_t jobs_per_run = (perms + per_job - 1) / per_job;
  const size_t num_jobs = jobs_per_run * options.runs;
  const bool small = n <= 64;

  std::vector<double> sums(num_jobs * n, 0.0);
  std::vector<uint64_t> hits(num_jobs, 0);
  ParallelFor(options.workers > 0 ? options.workers : DefaultThreads(),
              num_jobs, [&](size_t job) {
    const uint64_t run = job / jobs_per_run;
    const uint64_t local = job % jobs_per_run;
    std::mt19937_64 rng = JobRng(options.seed, run, local);
    const uint64_t count =
        std::min(per_job, perms - local * per_job);
    std::vector<int> order(n);
    double* acc = sums.data() + job * n;
    Stepper stepper{game, options.shortcut};
    Coalition prefix(n);
    for (uint64_t p = 0; p < count; ++p) {
      std::iota(order.begin(), order.end(), 0);
      for (int k = n - 1; k > 0; --k) {
        std::swap(order[k], order[UniformBelow(rng, k + 1)]);
      }
      if (small) {
        uint64_t mask = 0;
        for (int j : order) {
          acc[j] += stepper.StepMask(j, mask);
          mask |= uint64_t{1} << j;
        }
      } else {
        prefix.Clear();
        for (int j : order) {
          acc[j] += stepper.Step(j, prefix);
          prefix.Insert(j);
        }
      }
    }
    hits[job] = stepper.hits;
  });

  result.runs.assign(options.runs, std::vector<double>(n, 0.0));
  for (size_t job = 0; job < num_jobs; ++job) {
    std::vector<double>& run = result.runs[job / jobs_per_run];
    for (int i = 0; i < n; ++i) run[i] += sums[job * n + i];
    result.shortcut_hits += hits[job];
  }
  for (auto& run : result.runs) {
    for (double& x : run) x /= static_cast<double>(perms);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<double> xs;
    for (const auto& run : result.runs) xs.push_back(run[i]);
    result.estimates[i] = Median(std::move(xs));
    result.samples[i] = perms * options.runs;
  }
  if (options.scale) {
    double total = 0.0;
    for (double x : result.estimates) total += x;
    if (total > 0.0) {
      const double factor = game.GrandValue() / total;
      for (double& x : result.estimates) x *= factor;
    }
  }
  result.contributions = perms * n * options.runs;
  result.matching_calls = game.matching_calls() - calls_before;
  result.seconds = Elapsed(start);
  return result;
}

std::vector<AgentRange> ComputeRanges(const Game& game, int workers) {
  const int n = game.num_agents();
  std::vector<AgentRange> out(n);
  ParallelFor(workers > 0 ? workers : DefaultThreads(), n, [&](size_t i) {
    AgentRange& r = out[i];
    r.solo = game.Solo(static_cast<int>(i));
    r.grand_marginal = game.GrandMarginal(static_cast<int>(i));
    r.range = r.solo - r.grand_marginal;
    // Rounding noise around a constant marginal.
    if (r.range <= 1e-12 * std::max(1.0, r.solo)) r.range = 0.0;
  });
  return out;
}

uint64_t RangeSampleBound(double range, double epsilon_i, double delta_i) {
  if (!(range > 0.0)) return 0;
  if (!(epsilon_i > 0.0)) {
    throw Error("range sampler: per-agent epsilon must be positive");
  }
  CheckUnit(delta_i, "delta_i");
  return static_cast<uint64_t>(std::ceil(std::log(2.0 / delta_i) * range *
                                         range /
                                         (2.0 * epsilon_i * epsilon_i)));
}

SamplingResult RangeSamplerShapley(const Game& game,
                                   const RangeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  CheckUnit(options.delta, "delta");
  if (!(options.epsilon > 0.0)) {
    throw Error("range sampler: epsilon must be positive");
  }
  const int n = game.num_agents();
  SamplingResult result;
  result.estimates.assign(n, 0.0);
  result.samples.assign(n, 0);
  if (n == 0) return result;
  if (!options.lower_bounds.empty() &&
      static_cast<int>(options.lower_bounds.size()) != n) {
    throw Error("range sampler: expected " + std::to_string(n) +
                " lower bounds, got " +
                std::to_string(options.lower_bounds.size()));
  }
  const int workers = options.workers > 0 ? options.workers : DefaultThreads();
  const uint64_t calls_before = game.matching_calls();
  const std::vector<AgentRange> ranges = ComputeRanges(game, workers);
  const double delta_i = options.delta / n;

  struct Job {
    int agent;
    uint64_t batch;
    uint64_t count;
  };
  std::vector<Job> jobs;
  const uint64_t batch = std::max<uint64_t>(options.batch, 1);
  for (int i = 0; i < n; ++i) {
    double eps_i = options.epsilon;
    if (options.mode == ErrorMode::kRelative && ranges[i].range > 0.0) {
      const double lb = options.lower_bounds.empty()
                            ? ranges[i].grand_marginal
                            : options.lower_bounds[i];
      if (!(lb > 0.0)) {
        throw Error("range sampler: relative mode needs a positive lower "
                    "bound for agent '" + game.scenario().agents[i].id +
                    "'; run bounds first or use the absolute mode");
      }
      eps_i = options.epsilon * lb;
    }
    const uint64_t m_i = RangeSampleBound(ranges[i].range, eps_i, delta_i);
    result.samples[i] = m_i;
    if (m_i == 0) result.estimates[i] = ranges[i].solo;
    for (uint64_t b = 0; b * batch < m_i; ++b) {
      jobs.push_back({i, b, std::min(batch, m_i - b * batch)});
    }
  }

  std::vector<double> sums(jobs.size(), 0.0);
  const bool small = n <= 64;
  ParallelFor(workers, jobs.size(), [&](size_t k) {
    const Job& job = jobs[k];
    const int i = job.agent;
    std::mt19937_64 rng = JobRng(options.seed, i, job.batch);
    std::vector<int> others;
    others.reserve(n - 1);
    for (int j = 0; j < n; ++j) {
      if (j != i) others.push_back(j);
    }
    Coalition s(n);
    double sum = 0.0;
    for (uint64_t t = 0; t < job.count; ++t) {
      const int size = static_cast<int>(UniformBelow(rng, n));
      // Partial Fisher-Yates: the first `size` slots become a uniform
      // subset whatever the current arrangement.
      for (int q = 0; q < size; ++q) {
        const int r = q + static_cast<int>(UniformBelow(rng, n - 1 - q));
        std::swap(others[q], others[r]);
      }
      if (small) {
        uint64_t mask = 0;
        for (int q = 0; q < size; ++q) mask |= uint64_t{1} << others[q];
        sum += game.MarginalMask(i, mask);
      } else {
        s.Clear();
        for (int q = 0; q < size; ++q) s.Insert(others[q]);
        sum += game.Marginal(i, s);
      }
    }
    sums[k] = sum;
  });

  std::vector<double> totals(n, 0.0);
  for (size_t k = 0; k < jobs.size(); ++k) totals[jobs[k].agent] += sums[k];
  for (int i = 0; i < n; ++i) {
    if (result.samples[i] > 0) {
      result.estimates[i] = totals[i] / static_cast<double>(result.samples[i]);
    }
    result.contributions += result.samples[i];
  }
  result.matching_calls = game.matching_calls() - calls_before;
  result.seconds = Elapsed(start);
  return result;
}

ShapleyReport SamplingReport(const Game& game, const SamplingResult& result,
                             std::string_view method, double epsilon,
                             double delta) {
  ShapleyReport report;
  for (int i = 0; i < game.num_agents(); ++i) {
    AgentRecord rec;
    rec.agent = game.scenario().agents[i].id;
    rec.kind = RecordKind::kEstimate;
    rec.method = std::string(method);
    rec.value = result.estimates[i];
    rec.epsilon = epsilon;
    rec.delta = delta;
    rec.samples = result.samples[i];
    rec.wall_seconds = result.seconds;
    report.records.push_back(std::move(rec));
  }
  report.meta["contributions"] = result.contributions;
  report.meta["shortcut_hits"] = result.shortcut_hits;
  report.meta["matching_calls"] = result.matching_calls;
  report.meta["seconds"] = result.seconds;
  return report;
}

}  // namespace allocsv
