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

#ifndef SDRE_SAMPLING_HPP_
#define SDRE_SAMPLING_HPP_

#include <cstddef>
#include <cstdint>
#include <string_view>

#include "sdre/box.hpp"
#include "sdre/dataset.hpp"

namespace sdre {

enum class Sampler { kUniform, kLhs, kHalton };

Sampler ParseSampler(std::string_view name);
std::string_view SamplerName(Sampler sampler);

// n i.i.d. points, uniform on `box`.
PointMatrix uniform_sample(std::size_t n, const HyperBox& box,
                           std::uint64_t seed);

// Plain Latin hypercube: each dimension's interval is cut into n equal
// strata, every stratum receives exactly one point, placed uniformly inside
// it. Stratum permutations are independent across dimensions.
PointMatrix lhs_sample(std::size_t n, const HyperBox& box, std::uint64_t seed);

// Unscrambled Halton points with indices skip+1 ... skip+n. Supports up to
// kMaxHaltonDims dimensions (one prime base per dimension).
PointMatrix halton_sample(std::size_t n, const HyperBox& box,
                          std::size_t skip = 0);

inline constexpr std::size_t kMaxHaltonDims = 12;

// Van der Corput radical inverse of `index` in `base`.
double RadicalInverse(std::uint64_t index, unsigned base);

}  // namespace sdre

#endif  // SDRE_SAMPLING_HPP_
