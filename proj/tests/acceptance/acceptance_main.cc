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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Detail lines start with "  ".

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstring>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "../oracle.h"
#include "allocsv/agents_graph.h"
#include "allocsv/bounds.h"
#include "allocsv/exact.h"
#include "allocsv/game.h"
#include "allocsv/generator.h"
#include "allocsv/json_io.h"
#include "allocsv/parallel.h"
#include "allocsv/preprocess.h"
#include "allocsv/sampling.h"
#include "allocsv/solve.h"

namespace allocsv {
namespace {

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

void Note(const char* fmt, ...) {
  std::printf("  ");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
  std::fflush(stdout);
}

// Collects failures of one criterion.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    ++failures_;
    if (failures_ <= 5) Note("failed: %s", what.c_str());
  }
  bool ok() const { return failures_ == 0; }

 private:
  int failures_ = 0;
};

// Every exact run in the suite goes through here so the axiom criterion
// covers all of them.
struct AxiomLog {
  int runs = 0;
  int violations = 0;
  double worst_efficiency = 0.0;
};
AxiomLog axioms;

std::vector<double> Exact(const Game& game) {
  const ExactResult r = ExactShapley(game);
  ++axioms.runs;
  const double sum = std::accumulate(r.values.begin(), r.values.end(), 0.0);
  const double gap = std::abs(sum - game.GrandValue());
  axioms.worst_efficiency = std::max(axioms.worst_efficiency, gap);
  bool bad = gap > 1e-9;
  for (int i = 0; i < game.num_agents(); ++i) {
    if (r.values[i] < game.GrandMarginal(i) - 1e-9) bad = true;
  }
  if (bad) ++axioms.violations;
  return r.values;
}

std::vector<double> Exact(const Scenario& s) {
  GameOptions o;
  o.cache = std::make_shared<CharacteristicCache>();
  return Exact(Game(s, o));
}

bool Close(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a),
                                                          std::abs(b)));
}

// Smallest c with P(Binomial(trials, p) <= c) >= 0.99.
int BinomialQuantile99(int trials, double p) {
  double cdf = 0.0;
  for (int c = 0; c <= trials; ++c) {
    cdf += std::exp(std::lgamma(trials + 1.0) - std::lgamma(c + 1.0) -
                    std::lgamma(trials - c + 1.0) + c * std::log(p) +
                    (trials - c) * std::log1p(-p));
    if (cdf >= 0.99) return c;
  }
  return trials;
}

// The small random instances shared by criteria 2 and 3: half from the
// generator on a few agents, half from a denser independent sampler.
std::vector<Scenario> SmallInstances() {
  std::vector<Scenario> out;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    const int n = 4 + static_cast<int>(seed % 9);
    const int k = 1 + static_cast<int>(seed % 2);
    if (seed % 2 == 0) {
      GeneratorParams p;
      p.agents = n;
      p.capacity = k;
      p.coauthor_prob = 0.5;
      p.group_size = 4;
      p.seed = 1000 + seed;
      out.push_back(Generate(p));
    } else {
      oracle::RandomSpec spec;
      spec.agents = n;
      spec.goods = n + 2;
      spec.capacity = k;
      spec.density = 0.25;
      out.push_back(oracle::RandomScenario(spec, seed));
    }
  }
  return out;
}

bool Criterion1() {
  Check check;
  const Scenario s = LoadScenario(std::string(ALLOCSV_TEST_DATA) +
                                  "/example1.json");
  const Game game(s);
  // N, {a1,a2}, {a1,a3}, {a2,a3}, {a1}, {a2}, {a3}.
  const uint64_t masks[] = {7, 3, 5, 6, 1, 2, 4};
  const double expect[] = {6, 5, 4, 4, 3, 3, 1};
  for (int q = 0; q < 7; ++q) {
    const double v = game.ValueMask(masks[q]);
    check.Expect(v == expect[q], "v(mask " + std::to_string(masks[q]) +
                                     ") = " + std::to_string(v));
  }
  // Reference values: all 3! orders over the stated table.
  std::vector<double> table(8, 0.0);
  for (int q = 0; q < 7; ++q) table[masks[q]] = expect[q];
  const std::vector<double> ref = oracle::PermutationShapley(3, table);
  const std::vector<double> sv = Exact(game);
  const double stated[] = {2.5, 2.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    check.Expect(std::abs(sv[i] - ref[i]) <= 1e-12, "sv vs permutations");
    check.Expect(std::abs(sv[i] - stated[i]) <= 1e-12, "sv vs stated");
  }
  Note("sv = (%.6g, %.6g, %.6g)", sv[0], sv[1], sv[2]);
  return check.ok();
}

bool Criterion2(const std::vector<Scenario>& instances) {
  Check check;
  int components = 0, resolved = 0;
  for (size_t k = 0; k < instances.size(); ++k) {
    const Scenario& s = instances[k];
    const std::vector<double> before = Exact(s);
    const std::vector<double> brute = oracle::OracleShapley(s);
    const PreprocessReport r = RunPipeline(s);
    std::vector<double> after(s.num_agents(), NAN);
    for (const ResolvedAgent& a : r.resolved) after[a.agent] = a.value;
    resolved += static_cast<int>(r.resolved.size());
    for (const SubScenario& c : r.components) {
      ++components;
      const std::vector<double> part = Exact(c.scenario);
      for (size_t q = 0; q < c.agents.size(); ++q) after[c.agents[q]] = part[q];
    }
    for (int i = 0; i < s.num_agents(); ++i) {
      const std::string where =
          "instance " + std::to_string(k) + " agent " + std::to_string(i);
      check.Expect(Close(before[i], after[i], 1e-9), where + " pipeline");
      check.Expect(Close(before[i], brute[i], 1e-9), where + " oracle");
    }
  }
  Note("%zu instances, %d agents resolved, %d components left",
       instances.size(), resolved, components);
  return check.ok();
}

bool Criterion3(const std::vector<Scenario>& instances) {
  Check check;
  int collapsed = 0, agents = 0;
  double worst_partition = 0.0;
  for (size_t k = 0; k < instances.size(); ++k) {
    GameOptions o;
    o.cache = std::make_shared<CharacteristicCache>();
    const Game game(instances[k], o);
    const std::vector<double> sv = Exact(game);
    const BoundsResult b = ComputeBounds(game, {});
    for (const AgentBounds& a : b.agents) {
      ++agents;
      const std::string where = "instance " + std::to_string(k) + " agent " +
                                std::to_string(a.agent);
      const double x = sv[a.agent];
      check.Expect(a.lb <= x + 1e-9 && x <= a.ub + 1e-9, where + " sandwich");
      if (a.lb == a.ub) {
        ++collapsed;
        check.Expect(Close(a.lb, x, 1e-9), where + " collapsed value");
      }
      if (!a.fallback) {
        worst_partition = std::max(worst_partition, std::abs(a.weight_sum - 1));
        check.Expect(std::abs(a.weight_sum - 1.0) <= 1e-12,
                     where + " partition identity");
      }
    }
  }
  Note("%d agents, %d with LB = UB, worst |sum y - 1| = %.3g", agents,
       collapsed, worst_partition);
  return check.ok();
}

Scenario Big() {
  GeneratorParams p;
  p.agents = 3562;
  p.seed = 2026;
  return Generate(p);
}

bool Criterion4(const Scenario& big) {
  int agents = 0, collapsed = 0;
  for (uint64_t seed = 0; seed < 20; ++seed) {
    const Scenario s = ExtractSubgraph(big, 26, seed);
    const Game game(s);
    BoundsOptions o;
    o.max_neigh = 19;
    for (const AgentBounds& a : ComputeBounds(game, o).agents) {
      ++agents;
      if (a.lb == a.ub) ++collapsed;
    }
  }
  const double share = static_cast<double>(collapsed) / agents;
  Note("uniform 26-agent extracts: %d of %d agents with LB = UB (%.1f%%)",
       collapsed, agents, 100 * share);
  return share >= 0.9;
}

// The largest component left after preprocessing the large instance.
Scenario DominantComponent(const Scenario& big) {
  const PreprocessReport pre = RunPipeline(big);
  const SubScenario* best = nullptr;
  for (const SubScenario& c : pre.components) {
    if (best == nullptr || c.agents.size() > best->agents.size()) best = &c;
  }
  return best->scenario;
}

// A connected 12-agent piece of the dominant component; among 50 seeds the
// one with the most agents whose marginals vary, so sampling has work to do.
Scenario TwelveAgents(const Scenario& dominant) {
  Scenario best;
  int best_varying = -1;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Scenario s = ExtractSubgraph(dominant, 12, seed, ExtractMode::kConnected);
    if (AgentsGraph(s).Components(s.GrandCoalition()).size() != 1) continue;
    int varying = 0;
    for (const AgentRange& r : ComputeRanges(Game(s), 1)) {
      varying += r.range > 0.0;
    }
    if (varying > best_varying) {
      best_varying = varying;
      best = std::move(s);
    }
  }
  Note("12-agent instance: %d agents with a nonzero range", best_varying);
  return best;
}

bool Criterion5(const Scenario& twelve) {
  GameOptions go;
  go.cache = std::make_shared<CharacteristicCache>();
  const Game game(twelve, go);
  const std::vector<double> sv = Exact(game);
  const double eps = 0.3, delta = 0.01;
  // Relative error is undefined at sv = 0; rounding can leave such values
  // at +-1e-17.
  const double zero = 1e-9 * std::max(1.0, game.GrandValue());
  int trials = 0, failures = 0, skipped = 0;
  for (double x : sv) skipped += x <= zero;
  double max_err = 0.0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    FprasOptions o;
    o.epsilon = eps;
    o.delta = delta;
    o.seed = seed;
    const SamplingResult r = FprasShapley(game, o);
    for (int i = 0; i < game.num_agents(); ++i) {
      if (sv[i] <= zero) continue;
      const double err = std::abs(r.estimates[i] - sv[i]) / sv[i];
      max_err = std::max(max_err, err);
      ++trials;
      if (err > eps) ++failures;
    }
  }
  const int allowed = BinomialQuantile99(trials, delta);
  Note("%d per-agent trials, %d above epsilon (allowed %d), max relative "
       "error %.4f; %d agents with sv = 0 skipped",
       trials, failures, allowed, max_err, skipped);
  return trials > 0 && failures <= allowed;
}

bool Criterion6(const Scenario& dominant) {
  Check check;
  uint64_t hits = 0, contributions = 0;
  for (uint64_t seed = 0; seed < 5; ++seed) {
    const Scenario s =
        ExtractSubgraph(dominant, 100, seed, ExtractMode::kConnected);
    GameOptions go;
    go.cache = std::make_shared<CharacteristicCache>();
    const Game game(s, go);
    FprasOptions on;
    on.epsilon = 0.9;
    on.delta = 0.9;
    on.seed = seed;
    FprasOptions off = on;
    off.shortcut = false;
    const SamplingResult a = FprasShapley(game, on);
    const SamplingResult b = FprasShapley(game, off);
    check.Expect(std::memcmp(a.estimates.data(), b.estimates.data(),
                             a.estimates.size() * sizeof(double)) == 0,
                 "estimates differ with the shortcut, seed " +
                     std::to_string(seed));
    hits += a.shortcut_hits;
    contributions += a.contributions;
  }
  const double share = static_cast<double>(hits) / contributions;
  Note("shortcut served %.1f%% of %llu contributions", 100 * share,
       static_cast<unsigned long long>(contributions));
  check.Expect(share >= 0.15 && share <= 0.35, "shortcut share out of range");
  return check.ok();
}

bool Criterion7(const Scenario& twelve) {
  Check check;
  // Hand-computed: ceil(ln(2 / d) * r^2 / (2 e^2)).
  struct Case {
    double r, e, d;
    uint64_t m;
  };
  const Case cases[] = {
      {1.0, 0.1, 0.01 / 3, 320},  // ln(600) * 50 = 319.8
      {1.0, 0.1, 0.01, 265},      // ln(200) * 50 = 264.9
      {1.0, 0.05, 0.01, 1060},    // ln(200) * 200 = 1059.7
      {2.0, 0.1, 0.1, 600},       // ln(20) * 200 = 599.1
      {0.3, 0.1, 0.5, 7},         // ln(4) * 4.5 = 6.24
  };
  for (const Case& c : cases) {
    const uint64_t m = RangeSampleBound(c.r, c.e, c.d);
    check.Expect(m == c.m, "m = " + std::to_string(m) + ", expected " +
                               std::to_string(c.m));
  }
  GameOptions go;
  go.cache = std::make_shared<CharacteristicCache>();
  const Game game(twelve, go);
  const std::vector<double> sv = Exact(game);
  const double eps = 0.05, delta = 0.01;
  int failed_trials = 0;
  double max_err = 0.0;
  for (uint64_t seed = 0; seed < 200; ++seed) {
    RangeOptions o;
    o.epsilon = eps;
    o.delta = delta;
    o.seed = seed;
    const SamplingResult r = RangeSamplerShapley(game, o);
    bool failed = false;
    for (int i = 0; i < game.num_agents(); ++i) {
      const double err = std::abs(r.estimates[i] - sv[i]);
      max_err = std::max(max_err, err);
      if (err >= eps) failed = true;
    }
    failed_trials += failed;
  }
  Note("200 trials at absolute epsilon %.2f: %d failed (allowed %.0f), max "
       "error %.4f",
       eps, failed_trials, 200 * delta, max_err);
  check.Expect(failed_trials <= 200 * delta, "failure fraction above delta");
  return check.ok();
}

bool Criterion8(const Scenario& big) {
  Check check;
  Note("instance: %d agents, %d goods, k = %d", big.num_agents(),
       big.num_goods(), big.capacity);
  const auto t0 = Clock::now();
  const PreprocessReport pre = RunPipeline(big);
  Note("preprocess: %.2f s, %d empty-interest, %d null goods, %d separable "
       "in %d rounds, %zu pruned pairs, %d isolated after pruning",
       Since(t0), pre.empty_interest_agents, pre.null_goods,
       pre.separable_agents, pre.separation_rounds, pre.pruned.size(),
       pre.isolated_after_pruning);
  size_t largest = 0, second = 0, in_components = 0;
  const SubScenario* dominant = nullptr;
  for (const SubScenario& c : pre.components) {
    in_components += c.agents.size();
    if (c.agents.size() > largest) {
      second = largest;
      largest = c.agents.size();
      dominant = &c;
    } else {
      second = std::max(second, c.agents.size());
    }
  }
  Note("resolved %zu of %d agents; %zu components, largest %zu, next %zu",
       pre.resolved.size(), big.num_agents(), pre.components.size(), largest,
       second);
  check.Expect(2 * pre.resolved.size() > static_cast<size_t>(big.num_agents()),
               "preprocessing resolved a minority of agents");
  check.Expect(largest >= 600, "no component with 600+ agents");
  check.Expect(largest > 5 * second, "largest component is not dominant");
  if (dominant == nullptr || largest < 600) return false;

  GameOptions go;
  go.cache = std::make_shared<CharacteristicCache>();
  const Game game(dominant->scenario, go);
  const int n = game.num_agents();
  const auto t1 = Clock::now();
  BoundsOptions bo;
  bo.max_neigh = 19;
  const BoundsResult bounds = ComputeBounds(game, bo);
  int fallbacks = 0, collapsed = 0;
  for (const AgentBounds& a : bounds.agents) {
    fallbacks += a.fallback;
    collapsed += a.lb == a.ub;
  }
  Note("bounds on %d agents: %.2f s, %d fallbacks, %d with LB = UB", n,
       Since(t1), fallbacks, collapsed);

  const auto t2 = Clock::now();
  RangeOptions ro;
  ro.epsilon = 0.05;
  ro.delta = 0.01;
  ro.mode = ErrorMode::kRelative;
  ro.seed = 7;
  for (const AgentBounds& a : bounds.agents) ro.lower_bounds.push_back(a.lb);
  const SamplingResult r = RangeSamplerShapley(game, ro);
  const uint64_t total =
      std::accumulate(r.samples.begin(), r.samples.end(), uint64_t{0});
  const double seconds = Since(t2);
  Note("range sampler (relative 0.05, delta 0.01): %.2f s, %llu samples, "
       "%llu matching calls",
       seconds, static_cast<unsigned long long>(total),
       static_cast<unsigned long long>(r.matching_calls));
  const uint64_t m = FprasSampleCount(n, 0.05, 0.01);
  Note("fpras with the same parameters would need m = %llu permutations "
       "(%llu marginal contributions), not run",
       static_cast<unsigned long long>(m),
       static_cast<unsigned long long>(m * static_cast<uint64_t>(n)));
  for (int i = 0; i < n; ++i) {
    check.Expect(std::isfinite(r.estimates[i]), "non-finite estimate");
  }
  return check.ok();
}

bool Criterion9() {
  Note("%d exact runs, %d violations, worst |sum sv - opt(N)| = %.3g",
       axioms.runs, axioms.violations, axioms.worst_efficiency);
  return axioms.runs > 0 && axioms.violations == 0;
}

bool SameBits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

bool Criterion10(const Scenario& big) {
  Check check;
  const Scenario s = ExtractSubgraph(big, 40, 3, ExtractMode::kConnected);
  const Game game(s);
  const int workers[] = {1, 4, 16};
  std::vector<std::vector<double>> fp, rs, sv, ex;
  for (int w : workers) {
    FprasOptions fo;
    fo.epsilon = 0.5;
    fo.delta = 0.2;
    fo.seed = 11;
    fo.workers = w;
    fp.push_back(FprasShapley(game, fo).estimates);
    RangeOptions ro;
    ro.epsilon = 0.1;
    ro.delta = 0.1;
    ro.seed = 11;
    ro.workers = w;
    rs.push_back(RangeSamplerShapley(game, ro).estimates);
    SolvePolicy policy;
    policy.exact_limit = 8;
    policy.epsilon = 0.2;
    policy.delta = 0.1;
    policy.seed = 11;
    policy.threads = w;
    std::vector<double> values;
    for (const AgentRecord& rec : Solve(s, policy).records) {
      values.push_back(rec.value.value_or(NAN));
    }
    sv.push_back(values);
    const Scenario small = ExtractSubgraph(s, 14, 1, ExtractMode::kConnected);
    ExactOptions eo;
    eo.workers = w;
    eo.job_masks = 64;
    ex.push_back(ExactShapley(Game(small), eo).values);
  }
  for (int q = 1; q < 3; ++q) {
    const std::string w = " at " + std::to_string(workers[q]) + " workers";
    check.Expect(SameBits(fp[0], fp[q]), "fpras differs" + w);
    check.Expect(SameBits(rs[0], rs[q]), "range sampler differs" + w);
    check.Expect(SameBits(sv[0], sv[q]), "solve differs" + w);
    check.Expect(SameBits(ex[0], ex[q]), "exact differs" + w);
  }
  check.Expect(ScenarioToJson(Generate({})) == ScenarioToJson(Generate({})),
               "generate differs");
  Note("fpras, range sampler, solve and exact bit-identical at 1, 4, 16 "
       "workers: %s",
       check.ok() ? "yes" : "no");
  return check.ok();
}

int Main() {
  int failed = 0;
  auto run = [&](int id, const char* name, double budget,
                 const std::function<bool()>& body) {
    const auto t = Clock::now();
    bool ok = false;
    try {
      ok = body();
    } catch (const std::exception& e) {
      Note("exception: %s", e.what());
    }
    const double seconds = Since(t);
    if (budget > 0 && seconds > budget) {
      Note("over the %.0f s budget", budget);
      ok = false;
    }
    std::printf("%s %d %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, name, seconds);
    std::fflush(stdout);
    failed += !ok;
  };
  Note("threads: %d", DefaultThreads());
  const std::vector<Scenario> small = SmallInstances();
  const Scenario big = Big();
  const Scenario dominant = DominantComponent(big);
  const Scenario twelve = TwelveAgents(dominant);
  run(1, "example characteristic function and exact values", 1,
      Criterion1);
  run(2, "preprocessing preserves shapley values", 300,
      [&] { return Criterion2(small); });
  run(3, "bounds sandwich exact values", 300,
      [&] { return Criterion3(small); });
  run(4, "bounds collapse on sparse 26-agent instances", 0,
      [&] { return Criterion4(big); });
  run(5, "fpras error rate", 600, [&] { return Criterion5(twelve); });
  run(6, "fpras shortcut", 0, [&] { return Criterion6(dominant); });
  run(7, "range sampler sample counts and error rate", 600,
      [&] { return Criterion7(twelve); });
  run(8, "large generated instance", 0, [&] { return Criterion8(big); });
  run(9, "efficiency and marginality of exact runs", 0, Criterion9);
  run(10, "determinism across worker counts", 0,
      [&] { return Criterion10(big); });
  std::printf("%s: %d of 10 criteria failed\n", failed ? "FAIL" : "PASS",
              failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace
}  // namespace allocsv

int main() { return allocsv::Main(); }
