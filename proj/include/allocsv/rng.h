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

#ifndef ALLOCSV_RNG_H_
#define ALLOCSV_RNG_H_

#include <cstdint>
#include <random>

namespace allocsv {

inline uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Independent stream for job `job` of stream family `stream` under `seed`.
inline std::mt19937_64 JobRng(uint64_t seed, uint64_t stream, uint64_t job) {
  const uint64_t s = SplitMix64(SplitMix64(SplitMix64(seed) ^ stream) ^ job);
  return std::mt19937_64(s);
}

// Uniform integer in [0, bound) by rejection; bound > 0. Unlike
// std::uniform_int_distribution the draw sequence is fixed by this code,
// so results do not depend on the standard library build.
inline uint64_t UniformBelow(std::mt19937_64& rng, uint64_t bound) {
  const uint64_t limit = ~uint64_t{0} - (~uint64_t{0} % bound);
  uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

// Uniform double in [0, 1).
inline double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace allocsv

#endif  // ALLOCSV_RNG_H_
