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

#include <cstdlib>
#include <string_view>

#include "allocsv/kernels.h"

namespace allocsv::kernels {

#if !defined(ALLOCSV_HAVE_AVX2)
const KernelTable* Avx2Kernels() { return nullptr; }
#endif

std::vector<const KernelTable*> AvailableKernels() {
  std::vector<const KernelTable*> out = {&ScalarKernels()};
  if (const KernelTable* t = Avx2Kernels()) out.push_back(t);
  if (const KernelTable* t = NeonKernels()) out.push_back(t);
  return out;
}

namespace {

const KernelTable& Select() {
  const char* env = std::getenv("ALLOCSV_KERNELS");
  if (env != nullptr) {
    const std::string_view want(env);
    for (const KernelTable* t : AvailableKernels()) {
      if (t->name == want) return *t;
    }
    return ScalarKernels();
  }
  if (const KernelTable* t = Avx2Kernels()) return *t;
  if (const KernelTable* t = NeonKernels()) return *t;
  return ScalarKernels();
}

}  // namespace

const KernelTable& ActiveKernels() {
  static const KernelTable& active = Select();
  return active;
}

}  // namespace allocsv::kernels
