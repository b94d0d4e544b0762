// Copyright 2026 The urate Authors.
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

#ifndef URATE_PARALLEL_H_
#define URATE_PARALLEL_H_

#include <cstddef>
#include <cstdint>
#include <functional>

namespace urate {

// Worker count from URATE_WORKERS, else hardware concurrency (>= 1).
unsigned WorkerCount();

// Runs body(i) for i in [0, n) on WorkerCount() threads. Each index runs
// exactly once; results must be written by index, so the outcome does not
// depend on scheduling. The first exception is rethrown.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body);

// Stream seed for (seed, a, b) via splitmix64.
std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t a, std::uint64_t b);

}  // namespace urate

#endif  // URATE_PARALLEL_H_
