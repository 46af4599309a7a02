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

#ifndef SDRE_RANDOM_HPP_
#define SDRE_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string_view>
#include <random>
#include <vector>

namespace sdre {

// Mixes a parent seed with a list of stream identifiers. Used everywhere a
// component needs an independent, reproducible sub-stream (per tree, per
// replication, per bumping iteration, ...).
std::uint64_t DeriveSeed(std::uint64_t seed,
                         std::initializer_list<std::uint64_t> stream);

// Stable 64-bit hash of a string, for deriving seeds from names.
std::uint64_t HashName(std::string_view name);

// Thin wrapper over mt19937_64. The floating-point draws are computed from
// raw engine bits so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double Uniform();
  // Uniform integer on [0, n). n must be positive.
  std::size_t Below(std::size_t n);
  double Normal();
  std::uint64_t Bits() { return engine_(); }

  // Uniformly random k-subset of {0, ..., n-1}, in ascending order.
  std::vector<std::size_t> Subset(std::size_t n, std::size_t k);
  std::vector<std::size_t> Permutation(std::size_t n);

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace sdre

#endif  // SDRE_RANDOM_HPP_
