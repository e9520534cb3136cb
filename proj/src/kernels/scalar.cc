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

// Reference kernels. The vector variants must match these bit for bit.

#include <bit>
#include <limits>

#include "allocsv/kernels.h"

namespace allocsv::kernels {
namespace {

ArgMin RelaxRowScalar(const double* row, double row_potential,
                      const double* col_potential, double* min_slack,
                      int32_t* way, const uint64_t* used, int32_t from_column,
                      size_t num_columns) {
  ArgMin best{std::numeric_limits<double>::infinity(), -1};
  for (size_t j = 0; j < num_columns; ++j) {
    if (used[j] != 0) continue;
    const double slack = (row[j] - row_potential) - col_potential[j];
    if (slack < min_slack[j]) {
      min_slack[j] = slack;
      way[j] = from_column;
    }
    if (min_slack[j] < best.value) {
      best.value = min_slack[j];
      best.index = static_cast<int32_t>(j);
    }
  }
  return best;
}

void ShiftScalar(double delta, const uint64_t* used, double* col_potential,
                 double* min_slack, size_t num_columns) {
  for (size_t j = 0; j < num_columns; ++j) {
    if (used[j] != 0) {
      col_potential[j] -= delta;
    } else {
      min_slack[j] -= delta;
    }
  }
}

void AccumulateScalar(const double* values, uint64_t first_mask, size_t count,
                      int num_agents, const double* coef_in,
                      const double* coef_out, double* acc) {
  for (size_t t = 0; t < count; ++t) {
    const uint64_t mask = first_mask + t;
    const int s = std::popcount(mask);
    const double in = values[t] * coef_in[s];
    const double out = values[t] * coef_out[s];
    for (int i = 0; i < num_agents; ++i) {
      acc[i] += ((mask >> i) & 1u) ? in : out;
    }
  }
}

}  // namespace

const KernelTable& ScalarKernels() {
  static const KernelTable table{"scalar", &RelaxRowScalar, &ShiftScalar,
                                 &AccumulateScalar};
  return table;
}

}  // namespace allocsv::kernels
