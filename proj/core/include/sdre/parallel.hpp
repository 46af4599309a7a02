// Copyright 2026 The sdre Authors.
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

#ifndef SDRE_PARALLEL_HPP_
#define SDRE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace sdre {

// Process-wide worker bound used by batch operations that do not take an
// explicit job count. Defaults to std::thread::hardware_concurrency().
std::size_t Parallelism();
void SetParallelism(std::size_t jobs);

// Runs body(i) for i in [0, n) on up to `jobs` threads. Work is claimed in
// index order; results must be written to per-index slots by the caller.
// The first exception thrown by any body is rethrown after all workers stop.
void ParallelFor(std::size_t n, std::size_t jobs,
                 const std::function<void(std::size_t)>& body);

}  // namespace sdre

#endif  // SDRE_PARALLEL_HPP_
