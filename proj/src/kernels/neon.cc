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

// NEON kernels for aarch64, two doubles per lane group. NEON is part of the
// aarch64 baseline, so no runtime probe is needed there.

#include "allocsv/kernels.h"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>
#include <limits>

namespace allocsv::kernels {
namespace {

ArgMin RelaxRowNeon(const double* row, double row_potential,
                    const double* col_potential, double* min_slack,
                    int32_t* way, const uint64_t* used, int32_t from_column,
                    size_t num_columns) {
  const double inf = std::numeric_limits<double>::infinity();
  const float64x2_t rp = vdupq_n_f64(row_potential);
  const float64x2_t vinf = vdupq_n_f64(inf);
  float64x2_t best = vinf;
  float64x2_t best_idx = vdupq_n_f64(-1.0);
  const double idx_init[2] = {0.0, 1.0};
  float64x2_t idx = vld1q_f64(idx_init);
  const float64x2_t two = vdupq_n_f64(2.0);

  size_t j = 0;
  for (; j + 2 <= num_columns; j += 2) {
    const uint64x2_t unused = vceqzq_u64(vld1q_u64(used + j));
    const float64x2_t slack =
        vsubq_f64(vsubq_f64(vld1q_f64(row + j), rp), vld1q_f64(col_potential + j));
    const float64x2_t ms = vld1q_f64(min_slack + j);
    const uint64x2_t lower = vandq_u64(vcltq_f64(slack, ms), unused);
    const float64x2_t updated = vbslq_f64(lower, slack, ms);
    vst1q_f64(min_slack + j, updated);
    if (vgetq_lane_u64(lower, 0) != 0) way[j] = from_column;
    if (vgetq_lane_u64(lower, 1) != 0) way[j + 1] = from_column;
    const float64x2_t cand = vbslq_f64(unused, updated, vinf);
    const uint64x2_t better = vcltq_f64(cand, best);
    best = vbslq_f64(better, cand, best);
    best_idx = vbslq_f64(better, idx, best_idx);
    idx = vaddq_f64(idx, two);
  }

  double lane_val[2];
  double lane_idx[2];
  vst1q_f64(lane_val, best);
  vst1q_f64(lane_idx, best_idx);
  ArgMin result{inf, -1};
  for (int l = 0; l < 2; ++l) {
    if (lane_idx[l] < 0) continue;
    const int32_t li = static_cast<int32_t>(lane_idx[l]);
    if (lane_val[l] < result.value ||
        (lane_val[l] == result.value && li < result.index)) {
      result.value = lane_val[l];
      result.index = li;
    }
  }

  for (; j < num_columns; ++j) {
    if (used[j] != 0) continue;
    const double slack = (row[j] - row_potential) - col_potential[j];
    if (slack < min_slack[j]) {
      min_slack[j] = slack;
      way[j] = from_column;
    }
    if (min_slack[j] < result.value) {
      result.value = min_slack[j];
      result.index = static_cast<int32_t>(j);
    }
  }
  return result;
}

void ShiftNeon(double delta, const uint64_t* used, double* col_potential,
               double* min_slack, size_t num_columns) {
  const float64x2_t d = vdupq_n_f64(delta);
  size_t j = 0;
  for (; j + 2 <= num_columns; j += 2) {
    const uint64x2_t in_tree = vtstq_u64(vld1q_u64(used + j), vld1q_u64(used + j));
    const float64x2_t cp = vld1q_f64(col_potential + j);
    const float64x2_t ms = vld1q_f64(min_slack + j);
    vst1q_f64(col_potential + j, vbslq_f64(in_tree, vsubq_f64(cp, d), cp));
    vst1q_f64(min_slack + j, vbslq_f64(in_tree, ms, vsubq_f64(ms, d)));
  }
  for (; j < num_columns; ++j) {
    if (used[j] != 0) {
      col_potential[j] -= delta;
    } else {
      min_slack[j] -= delta;
    }
  }
}

void AccumulateNeon(const double* values, uint64_t first_mask, size_t count,
                    int num_agents, const double* coef_in,
                    const double* coef_out, double* acc) {
  constexpr int kMaxGroups = 32;
  const int groups = (num_agents + 1) / 2;
  double padded[kMaxGroups * 2] = {};
  for (int i = 0; i < num_agents; ++i) padded[i] = acc[i];

  uint64x2_t lane_bits[kMaxGroups];
  float64x2_t sums[kMaxGroups];
  for (int g = 0; g < groups; ++g) {
    uint64_t b[2];
    for (int l = 0; l < 2; ++l) {
      const int i = g * 2 + l;
      b[l] = i < 64 ? uint64_t{1} << i : 0;
    }
    lane_bits[g] = vld1q_u64(b);
    sums[g] = vld1q_f64(padded + 2 * g);
  }

  for (size_t t = 0; t < count; ++t) {
    const uint64_t mask = first_mask + t;
    const int s = std::popcount(mask);
    const float64x2_t in = vdupq_n_f64(values[t] * coef_in[s]);
    const float64x2_t out = vdupq_n_f64(values[t] * coef_out[s]);
    const uint64x2_t vm = vdupq_n_u64(mask);
    for (int g = 0; g < groups; ++g) {
      const uint64x2_t sel = vtstq_u64(vm, lane_bits[g]);
      sums[g] = vaddq_f64(sums[g], vbslq_f64(sel, in, out));
    }
  }

  for (int g = 0; g < groups; ++g) vst1q_f64(padded + 2 * g, sums[g]);
  for (int i = 0; i < num_agents; ++i) acc[i] = padded[i];
}

}  // namespace

const KernelTable* NeonKernels() {
  static const KernelTable table{"neon", &RelaxRowNeon, &ShiftNeon,
                                 &AccumulateNeon};
  return &table;
}

}  // namespace allocsv::kernels

#else

namespace allocsv::kernels {
const KernelTable* NeonKernels() { return nullptr; }
}  // namespace allocsv::kernels

#endif
