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

#ifndef ALLOCSV_SOLVE_H_
#define ALLOCSV_SOLVE_H_

#include <cstdint>

#include "allocsv/report.h"
#include "allocsv/sampling.h"
#include "allocsv/scenario.h"

namespace allocsv {

enum class SamplerKind { kFpras, kRange };

struct SolvePolicy {
  // Components up to this size are solved exactly.
  int exact_limit = 20;
  int bounds_max_neigh = 19;
  SamplerKind sampler = SamplerKind::kRange;
  // Range sampler only; the relative mode uses the bounds as lower bounds.
  ErrorMode range_mode = ErrorMode::kAbsolute;
  double epsilon = 0.1;
  double delta = 0.01;
  int runs = 3;
  uint64_t seed = 0;
  // 0 selects DefaultThreads().
  int threads = 0;
  bool prune = true;

  // Throws Error describing the first invalid field.
  void Validate() const;
};

// Preprocesses, then routes every remaining component: exact when small
// enough, otherwise bounds plus the configured sampler, with each estimate
// clamped into its interval. Records follow the scenario's agent order.
ShapleyReport Solve(const Scenario& scenario, const SolvePolicy& policy);

}  // namespace allocsv

#endif  // ALLOCSV_SOLVE_H_
