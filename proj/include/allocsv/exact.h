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

#ifndef ALLOCSV_EXACT_H_
#define ALLOCSV_EXACT_H_

#include <cstdint>
#include <vector>

#include "allocsv/game.h"
#include "allocsv/kernels.h"
#include "allocsv/report.h"

namespace allocsv {

// |C|! (n - |C| - 1)! / n!, the probability that a uniformly random
// permutation of n agents puts exactly the members of a given C (of size
// csize) before a given agent. Throws Error unless 0 <= csize < n.
double ShapleyWeight(int csize, int n);

struct ExactOptions {
  // 0 selects DefaultThreads().
  int workers = 0;
  // Largest component accepted.
  int limit = 26;
  // Compensated merge of the per-job partial sums.
  bool kahan = false;
  // Coalitions per job, a power of two.
  uint64_t job_masks = uint64_t{1} << 14;
  // nullptr selects kernels::ActiveKernels().
  const kernels::KernelTable* kernels = nullptr;
};

struct ExactResult {
  std::vector<double> values;
  uint64_t matching_calls = 0;
  double seconds = 0.0;
};

// Shapley values of every agent by enumerating all 2^n coalitions. The
// value table is filled first (one matching per connected coalition, sums
// of pieces for the rest), then each coalition S contributes v(S) w(|S|-1)
// to its members and -v(S) w(|S|) to the others. Results do not depend on
// the worker count.
//
// Throws Error when the game has more than options.limit agents.
ExactResult ExactShapley(const Game& game, const ExactOptions& options = {});

ShapleyReport ExactShapleyReport(const Game& game,
                                 const ExactOptions& options = {});

}  // namespace allocsv

#endif  // ALLOCSV_EXACT_H_
