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

#ifndef ALLOCSV_PARALLEL_H_
#define ALLOCSV_PARALLEL_H_

#include <cstddef>
#include <functional>

namespace allocsv {

// Thread count from ALLOCSV_THREADS, else the hardware concurrency.
int DefaultThreads();

// Runs job(0) .. job(num_jobs - 1) on up to `workers` threads. Workers pull
// the next job index from a shared counter; callers write results into
// per-job slots and merge them in index order afterwards, which keeps the
// outcome independent of scheduling. The first exception thrown by a job
// is rethrown after all workers stop.
void ParallelFor(int workers, size_t num_jobs,
                 const std::function<void(size_t)>& job);

}  // namespace allocsv

#endif  // ALLOCSV_PARALLEL_H_
