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

// AVX2 kernels, four doubles per lane group. This translation unit is built
// with -mavx2 and only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>
#include <limits>

#include "allocsv/kernels.h"

namespace allocsv::kernels {
namespace {

ArgMin RelaxRowAvx2(const double* row, double row_potential,
                    const double* col_potential, double* min_slack,
                    int32_t* way, const uint64_t* used, int32_t from_column,
                    size_t num_columns) {
  const double inf = std::numeric_limits<double>::infinity();
  const __m256d rp = _mm256_set1_pd(row_potential);
  const __m256d vinf = _mm256_set1_pd(inf);
  __m256d best = vinf;
  __m256d best_idx = _mm256_set1_pd(-1.0);
  __m256d idx = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);
  const __m256d four = _mm256_set1_pd(4.0);

  size_t j = 0;
  for (; j + 4 <= num_columns; j += 4) {
    const __m256i u = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(used + j));
    const __m256d unused =
        _mm256_castsi256_pd(_mm256_cmpeq_epi64(u, _mm256_setzero_si256()));
    const __m256d slack = _mm256_sub_pd(
        _mm256_sub_pd(_mm256_loadu_pd(row + j), rp),
        _mm256_loadu_pd(col_potential + j));
    const __m256d ms = _mm256_loadu_pd(min_slack + j);
    const __m256d lower =
        _mm256_and_pd(_mm256_cmp_pd(slack, ms, _CMP_LT_OQ), unused);
    const __m256d updated = _mm256_blendv_pd(ms, slack, lower);
    _mm256_storeu_pd(min_slack + j, updated);
    int bits = _mm256_movemask_pd(lower);
    while (bits != 0) {
      way[j + std::countr_zero(unsigned(bits))] = from_column;
      bits &= bits - 1;
    }
    const __m256d cand = _mm256_blendv_pd(vinf, updated, unused);
    const __m256d better = _mm256_cmp_pd(cand, best, _CMP_LT_OQ);
    best = _mm256_blendv_pd(best, cand, better);
    best_idx = _mm256_blendv_pd(best_idx, idx, better);
    idx = _mm256_add_pd(idx, four);
  }

  alignas(32) double lane_val[4];
  alignas(32) double lane_idx[4];
  _mm256_store_pd(lane_val, best);
  _mm256_store_pd(lane_idx, best_idx);
  ArgMin result{inf, -1};
  for (int l = 0; l < 4; ++l) {
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

void ShiftAvx2(double delta, const uint64_t* used, double* col_potential,
               double* min_slack, size_t num_columns) {
  const __m256d d = _mm256_set1_pd(delta);
  size_t j = 0;
  for (; j + 4 <= num_columns; j += 4) {
    const __m256i u = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(used + j));
    const __m256d in_tree = _mm256_castsi256_pd(
        _mm256_xor_si256(_mm256_cmpeq_epi64(u, _mm256_setzero_si256()),
                         _mm256_set1_epi64x(-1)));
    const __m256d cp = _mm256_loadu_pd(col_potential + j);
    const __m256d ms = _mm256_loadu_pd(min_slack + j);
    _mm256_storeu_pd(col_potential + j,
                     _mm256_blendv_pd(cp, _mm256_sub_pd(cp, d), in_tree));
    _mm256_storeu_pd(min_slack + j,
                     _mm256_blendv_pd(_mm256_sub_pd(ms, d), ms, in_tree));
  }
  for (; j < num_columns; ++j) {
    if (used[j] != 0) {
      col_potential[j] -= delta;
    } else {
      min_slack[j] -= delta;
    }
  }
}

void AccumulateAvx2(const double* values, uint64_t first_mask, size_t count,
                    int num_agents, const double* coef_in,
                    const double* coef_out, double* acc) {
  constexpr int kMaxGroups = 16;
  const int groups = (num_agents + 3) / 4;
  alignas(32) double padded[kMaxGroups * 4] = {};
  for (int i = 0; i < num_agents; ++i) padded[i] = acc[i];

  __m256i lane_bits[kMaxGroups];
  __m256d sums[kMaxGroups];
  for (int g = 0; g < groups; ++g) {
    uint64_t b[4];
    for (int l = 0; l < 4; ++l) {
      const int i = g * 4 + l;
      b[l] = i < 64 ? uint64_t{1} << i : 0;
    }
    lane_bits[g] = _mm256_setr_epi64x(static_cast<long long>(b[0]),
                                      static_cast<long long>(b[1]),
                                      static_cast<long long>(b[2]),
                                      static_cast<long long>(b[3]));
    sums[g] = _mm256_load_pd(padded + 4 * g);
  }

  for (size_t t = 0; t < count; ++t) {
    const uint64_t mask = first_mask + t;
    const int s = std::popcount(mask);
    const __m256d in = _mm256_set1_pd(values[t] * coef_in[s]);
    const __m256d out = _mm256_set1_pd(values[t] * coef_out[s]);
    const __m256i vm = _mm256_set1_epi64x(static_cast<long long>(mask));
    for (int g = 0; g < groups; ++g) {
      const __m256i hit = _mm256_and_si256(vm, lane_bits[g]);
      const __m256d sel = _mm256_castsi256_pd(_mm256_cmpeq_epi64(hit, lane_bits[g]));
      sums[g] = _mm256_add_pd(sums[g], _mm256_blendv_pd(out, in, sel));
    }
  }

  for (int g = 0; g < groups; ++g) _mm256_store_pd(padded + 4 * g, sums[g]);
  for (int i = 0; i < num_agents; ++i) acc[i] = padded[i];
}

}  // namespace

const KernelTable* Avx2Kernels() {
  static const KernelTable table{"avx2", &RelaxRowAvx2, &ShiftAvx2,
                                 &AccumulateAvx2};
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &table : nullptr;
}

}  // namespace allocsv::kernels
