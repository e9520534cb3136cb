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

#include <cstring>

#include "allocsv/exact.h"
#include "gtest/gtest.h"
#include "oracle.h"
#include "testing.h"

namespace allocsv {
namespace {

// Sum over j of C(l, j) (p + j)! (n - p - j - 1)! / n! with long double
// factorials.
double NaiveProfileWeight(int l, int p, int n) {
  auto fact = [](int k) {
    long double f = 1.0L;
    for (int q = 2; q <= k; ++q) f *= q;
    return f;
  };
  long double sum = 0.0L;
  for (int j = 0; j <= l; ++j) {
    sum += fact(l) / (fact(j) * fact(l - j)) * fact(p + j) *
           fact(n - p - j - 1) / fact(n);
  }
  return static_cast<double>(sum);
}

TEST(ProfileWeightTest, NoNeighborsCarriesAllWeight) {
  for (int n : {1, 2, 5, 20, 200}) {
    EXPECT_NEAR(ProfileWeight(n - 1, 0, 0, n), 1.0, 1e-12) << n;
  }
}

TEST(ProfileWeightTest, ThreeAgentsOneNeighbor) {
  // l = 1: y(empty) = w(0) + w(1) = 1/3 + 1/6, y({j}) = w(1) + w(2).
  EXPECT_NEAR(ProfileWeight(1, 0, 1, 3), 0.5, 1e-15);
  EXPECT_NEAR(ProfileWeight(1, 1, 0, 3), 0.5, 1e-15);
}

TEST(ProfileWeightTest, MatchesNaiveSum) {
  for (int n = 1; n <= 16; ++n) {
    for (int d = 0; d < n; ++d) {
      for (int p = 0; p <= d; ++p) {
        EXPECT_NEAR(ProfileWeight(n - 1 - d, p, d - p, n),
                    NaiveProfileWeight(n - 1 - d, p, n), 1e-14);
      }
    }
  }
}

TEST(ProfileWeightTest, PartitionIdentity) {
  for (int n : {2, 7, 12, 26, 64, 600}) {
    for (int d : {0, 1, 5, 19}) {
      if (d >= n) continue;
      double total = 0.0, binom = 1.0;
      for (int p = 0; p <= d; ++p) {
        total += binom * ProfileWeight(n - 1 - d, p, d - p, n);
        binom = binom * (d - p) / (p + 1);
      }
      EXPECT_NEAR(total, 1.0, 1e-12) << n << " " << d;
    }
  }
}

TEST(ProfileWeightTest, InconsistentSizes) {
  EXPECT_THROW(ProfileWeight(1, 1, 1, 5), Error);
  EXPECT_THROW(ProfileWeight(-1, 1, 1, 2), Error);
}

TEST(BoundsTest, IsolatedAgentIsExact) {
  Scenario s;
  s.goods = {{"g", 1.0}, {"h", 0.4}};
  s.agents = {{"a", {0}}, {"b", {1}}};
  const Game game(s);
  const BoundsResult r = ComputeBounds(game);
  for (const AgentBounds& b : r.agents) {
    EXPECT_EQ(b.lb, game.Solo(b.agent));
    EXPECT_EQ(b.ub, game.Solo(b.agent));
    EXPECT_FALSE(b.fallback);
  }
}

TEST(BoundsTest, SandwichAgainstExact) {
  for (uint64_t seed = 0; seed < 60; ++seed) {
    oracle::RandomSpec spec;
    spec.agents = 3 + seed % 10;
    spec.goods = 6 + seed % 8;
    spec.capacity = 1 + seed % 2;
    spec.density = 0.1 + 0.03 * (seed % 5);
    const Scenario s = oracle::RandomScenario(spec, seed);
    const Game game(s, testing::Cached());
    const ExactResult exact = ExactShapley(game);
    const BoundsResult r = ComputeBounds(game);
    for (const AgentBounds& b : r.agents) {
      const int i = b.agent;
      EXPECT_LE(b.lb, exact.values[i] + 1e-9) << seed << " " << i;
      EXPECT_GE(b.ub, exact.values[i] - 1e-9) << seed << " " << i;
      EXPECT_GE(b.lb, game.GrandMarginal(i) - 1e-9);
      EXPECT_LE(b.ub, game.Solo(i) + 1e-9);
      EXPECT_NEAR(b.weight_sum, 1.0, 1e-12);
      if (b.lb == b.ub) {
        EXPECT_NEAR(b.lb, exact.values[i], 1e-9);
      }
    }
  }
}

TEST(BoundsTest, CliqueBoundsEqualShapley) {
  for (uint64_t seed = 0; seed < 10; ++seed) {
    oracle::RandomSpec spec;
    spec.agents = 3 + seed % 8;
    spec.goods = 8;
    const Scenario base = oracle::RandomScenario(spec, seed);
    // A shared zero-value good makes everyone adjacent.
    Scenario s = base;
    s.goods.push_back({"hub", 0.0});
    for (Agent& a : s.agents) a.interest.push_back(s.num_goods() - 1);
    const Game game(s);
    const ExactResult exact = ExactShapley(game);
    const BoundsResult r = ComputeBounds(game);
    for (const AgentBounds& b : r.agents) {
      EXPECT_EQ(std::memcmp(&b.lb, &b.ub, sizeof(double)), 0);
      EXPECT_NEAR(b.lb, exact.values[b.agent], 1e-12);
    }
  }
}

TEST(BoundsTest, FallbackBeyondMaxNeigh) {
  Scenario s;
  s.goods = {{"g", 1.0}, {"h", 0.4}, {"x", 0.7}};
  s.agents = {{"hub", {0, 1, 2}}, {"a", {0}}, {"b", {1}}, {"c", {2}}};
  const Game game(s);
  BoundsOptions o;
  o.max_neigh = 2;
  const BoundsResult r = ComputeBounds(game, o);
  EXPECT_TRUE(r.agents[0].fallback);
  EXPECT_EQ(r.agents[0].lb, game.GrandMarginal(0));
  EXPECT_EQ(r.agents[0].ub, game.Solo(0));
  EXPECT_FALSE(r.agents[1].fallback);
}

TEST(BoundsTest, OneSidedRunsUseTrivialOtherSide) {
  const Game game(testing::Fixture("example2.json"));
  BoundsOptions both;
  const BoundsResult full = ComputeBounds(game, both);
  BoundsOptions lower;
  lower.side = BoundSide::kLower;
  BoundsOptions upper;
  upper.side = BoundSide::kUpper;
  const BoundsResult lo = ComputeBounds(game, lower);
  const BoundsResult up = ComputeBounds(game, upper);
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(lo.agents[i].lb, full.agents[i].lb);
    EXPECT_EQ(lo.agents[i].ub, game.Solo(i));
    EXPECT_EQ(up.agents[i].ub, full.agents[i].ub);
    EXPECT_EQ(up.agents[i].lb, game.GrandMarginal(i));
  }
}

TEST(BoundsTest, AgentFilterAndDeterminism) {
  oracle::RandomSpec spec;
  spec.agents = 12;
  spec.goods = 14;
  spec.density = 0.15;
  const Scenario s = oracle::RandomScenario(spec, 5);
  const Game game(s, testing::Cached());
  BoundsOptions o;
  o.agents = {3, 7};
  o.workers = 1;
  o.job_profiles = 2;
  const BoundsResult a = ComputeBounds(game, o);
  ASSERT_EQ(a.agents.size(), 2u);
  EXPECT_EQ(a.agents[1].agent, 7);
  for (int workers : {4, 16}) {
    o.workers = workers;
    const BoundsResult b = ComputeBounds(game, o);
    for (size_t k = 0; k < 2; ++k) {
      EXPECT_EQ(std::memcmp(&a.agents[k].lb, &b.agents[k].lb, 8), 0);
      EXPECT_EQ(std::memcmp(&a.agents[k].ub, &b.agents[k].ub, 8), 0);
    }
  }
  o.agents = {12};
  EXPECT_THROW(ComputeBounds(game, o), Error);
}

}  // namespace
}  // namespace allocsv
