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

// Every available kernel table must reproduce the scalar reference bit for
// bit.

#include "allocsv/kernels.h"

#include <algorithm>
#include <cstring>
#include <random>
#include <vector>

#include "gtest/gtest.h"

namespace allocsv::kernels {
namespace {

bool SameBits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

class KernelEquivalenceTest
    : public ::testing::TestWithParam<const KernelTable*> {};

TEST_P(KernelEquivalenceTest, RelaxRow) {
  const KernelTable& ref = ScalarKernels();
  const KernelTable& k = *GetParam();
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (size_t cols : {1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 100u}) {
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<double> row(cols), cp(cols), slack(cols);
      std::vector<uint64_t> used(cols);
      std::vector<int32_t> way(cols, -1);
      for (size_t j = 0; j < cols; ++j) {
        // Coarse values force ties.
        row[j] = static_cast<double>(static_cast<int>(u(rng)));
        cp[j] = static_cast<double>(static_cast<int>(u(rng))) * 0.5;
        slack[j] = rng() % 4 == 0 ? 1e300 : static_cast<double>(static_cast<int>(u(rng)));
        used[j] = rng() % 3 == 0 ? ~uint64_t{0} : 0;
      }
      std::vector<double> slack2 = slack;
      std::vector<int32_t> way2 = way;
      const double rp = static_cast<double>(static_cast<int>(u(rng)));
      const ArgMin a = ref.relax_row(row.data(), rp, cp.data(), slack.data(),
                                     way.data(), used.data(), 7, cols);
      const ArgMin b = k.relax_row(row.data(), rp, cp.data(), slack2.data(),
                                   way2.data(), used.data(), 7, cols);
      EXPECT_EQ(std::memcmp(&a.value, &b.value, sizeof(double)), 0);
      EXPECT_EQ(a.index, b.index);
      EXPECT_TRUE(SameBits(slack, slack2));
      EXPECT_EQ(way, way2);
    }
  }
}

TEST_P(KernelEquivalenceTest, Shift) {
  const KernelTable& ref = ScalarKernels();
  const KernelTable& k = *GetParam();
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (size_t cols : {1u, 3u, 4u, 5u, 13u, 64u}) {
    std::vector<double> cp(cols), slack(cols);
    std::vector<uint64_t> used(cols);
    for (size_t j = 0; j < cols; ++j) {
      cp[j] = u(rng);
      slack[j] = u(rng);
      used[j] = rng() % 2 ? ~uint64_t{0} : 0;
    }
    std::vector<double> cp2 = cp, slack2 = slack;
    ref.shift(0.375, used.data(), cp.data(), slack.data(), cols);
    k.shift(0.375, used.data(), cp2.data(), slack2.data(), cols);
    EXPECT_TRUE(SameBits(cp, cp2));
    EXPECT_TRUE(SameBits(slack, slack2));
  }
}

TEST_P(KernelEquivalenceTest, Accumulate) {
  const KernelTable& ref = ScalarKernels();
  const KernelTable& k = *GetParam();
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int n : {1, 2, 3, 4, 5, 7, 8, 13, 26, 33, 64}) {
    std::vector<double> ci(n + 1), co(n + 1);
    for (int s = 0; s <= n; ++s) {
      ci[s] = u(rng);
      co[s] = -u(rng);
    }
    const uint64_t first = n >= 20 ? (rng() >> (64 - n + 1)) : 0;
    // Masks must stay below 2^n.
    const size_t count =
        n >= 20 ? 777 : std::min<size_t>(777, (size_t{1} << n) - first);
    std::vector<double> values(count);
    for (double& v : values) v = u(rng);
    std::vector<double> acc(n), acc2(n);
    for (int i = 0; i < n; ++i) acc[i] = acc2[i] = u(rng);
    ref.accumulate(values.data(), first, count, n, ci.data(), co.data(),
                   acc.data());
    k.accumulate(values.data(), first, count, n, ci.data(), co.data(),
                 acc2.data());
    EXPECT_TRUE(SameBits(acc, acc2)) << "n=" << n;
  }
}

INSTANTIATE_TEST_SUITE_P(
    AllTables, KernelEquivalenceTest,
    ::testing::ValuesIn(AvailableKernels()),
    [](const ::testing::TestParamInfo<const KernelTable*>& info) {
      return std::string(info.param->name);
    });

TEST(KernelDispatchTest, ScalarAlwaysAvailable) {
  const auto tables = AvailableKernels();
  ASSERT_FALSE(tables.empty());
  EXPECT_EQ(tables.front()->name, "scalar");
  bool active_listed = false;
  for (const KernelTable* t : tables) {
    active_listed = active_listed || t == &ActiveKernels();
  }
  EXPECT_TRUE(active_listed);
}

}  // namespace
}  // namespace allocsv::kernels
