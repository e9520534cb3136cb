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

#ifndef ALLOCSV_KERNELS_H_
#define ALLOCSV_KERNELS_H_

#include <cstddef>
#include <cstdint>
#include <string_view>
#include <vector>

namespace allocsv::kernels {

// Value and position of the smallest slack among the columns scanned by
// RelaxRow. `index` is the lowest column attaining `value`.
struct ArgMin {
  double value;
  int32_t index;
};

// One row scan of the dense Hungarian method. For every column j with
// used[j] == 0:
//   slack = (row[j] - row_potential) - col_potential[j]
//   if slack < min_slack[j]: min_slack[j] = slack, way[j] = from_column
// and returns the smallest min_slack[j] over those columns. `used` holds
// 0 or ~0 per column.
using RelaxRowFn = ArgMin (*)(const double* row, double row_potential,
                              const double* col_potential, double* min_slack,
                              int32_t* way, const uint64_t* used,
                              int32_t from_column, size_t num_columns);

// col_potential[j] -= delta on used columns, min_slack[j] -= delta on the
// others.
using ShiftFn = void (*)(double delta, const uint64_t* used,
                         double* col_potential, double* min_slack,
                         size_t num_columns);

// Exact-Shapley accumulation over `count` consecutive coalition masks
// starting at `first_mask`:
//   s = popcount(mask)
//   acc[i] += bit i of mask ? values[t] * coef_in[s] : values[t] * coef_out[s]
// for every agent i < num_agents.
using AccumulateFn = void (*)(const double* values, uint64_t first_mask,
                              size_t count, int num_agents,
                              const double* coef_in, const double* coef_out,
                              double* acc);

struct KernelTable {
  std::string_view name;
  RelaxRowFn relax_row;
  ShiftFn shift;
  AccumulateFn accumulate;
};

const KernelTable& ScalarKernels();

// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* Avx2Kernels();
const KernelTable* NeonKernels();

// Every variant usable on this machine, scalar first.
std::vector<const KernelTable*> AvailableKernels();

// Best available variant. ALLOCSV_KERNELS=scalar|avx2|neon overrides the
// choice; an unavailable request falls back to scalar.
const KernelTable& ActiveKernels();

}  // namespace allocsv::kernels

#endif  // ALLOCSV_KERNELS_H_
