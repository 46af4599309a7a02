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

#include "sdre/sampling.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sdre/error.hpp"
#include "sdre/random.hpp"

namespace sdre {
namespace {

constexpr std::array<unsigned, kMaxHaltonDims> kPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Keeps rounding from pushing a scaled coordinate past its bound.
double Scale(const HyperBox& box, std::size_t dim, double unit) {
  const double v = box.lower[dim] + unit * box.width(dim);
  return std::clamp(v, box.lower[dim], box.upper[dim]);
}

}  // namespace

Sampler ParseSampler(std::string_view name) {
  if (name == "uniform") return Sampler::kUniform;
  if (name == "lhs") return Sampler::kLhs;
  if (name == "halton") return Sampler::kHalton;
  Fail(ErrorKind::kInvalidConfig,
       "sampler: unknown value '" + std::string(name) +
           "' (expected lhs, halton or uniform)");
}

std::string_view SamplerName(Sampler sampler) {
  switch (sampler) {
    case Sampler::kUniform: return "uniform";
    case Sampler::kLhs: return "lhs";
    case Sampler::kHalton: return "halton";
  }
  return "uniform";
}

PointMatrix uniform_sample(std::size_t n, const HyperBox& box,
                           std::uint64_t seed) {
  box.Validate();
  Rng rng(seed);
  PointMatrix out(n, box.dims(), box);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < box.dims(); ++c) {
      out(r, c) = Scale(box, c, rng.Uniform());
    }
  }
  return out;
}

PointMatrix lhs_sample(std::size_t n, const HyperBox& box, std::uint64_t seed) {
  box.Validate();
  if (n == 0) Fail(ErrorKind::kInvalidConfig, "n: Latin hypercube needs n >= 1");
  Rng rng(seed);
  PointMatrix out(n, box.dims(), box);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t c = 0; c < box.dims(); ++c) {
    const auto strata = rng.Permutation(n);
    for (std::size_t r = 0; r < n; ++r) {
      const double lo = static_cast<double>(strata[r]) * inv_n;
      const double hi = static_cast<double>(strata[r] + 1) * inv_n;
      // Stay inside [lo, hi) even when lo + u / n rounds up to hi.
      double u = lo + rng.Uniform() * inv_n;
      if (u >= hi) u = std::nextafter(hi, lo);
      out(r, c) = Scale(box, c, u);
    }
  }
  return out;
}

double RadicalInverse(std::uint64_t index, unsigned base) {
  const double inv_base = 1.0 / base;
  double inv = inv_base;
  double result = 0.0;
  while (index > 0) {
    result += static_cast<double>(index % base) * inv;
    index /= base;
    inv *= inv_base;
  }
  return result;
}

PointMatrix halton_sample(std::size_t n, const HyperBox& box, std::size_t skip) {
  box.Validate();
  if (box.dims() > kMaxHaltonDims) {
    Fail(ErrorKind::kUnsupportedDimension,
         "Halton sampling supports at most " + std::to_string(kMaxHaltonDims) +
             " dimensions, got " + std::to_string(box.dims()));
  }
  PointMatrix out(n, box.dims(), box);
  for (std::size_t r = 0; r < n; ++r) {
    const std::uint64_t index = skip + r + 1;
    for (std::size_t c = 0; c < box.dims(); ++c) {
      out(r, c) = Scale(box, c, RadicalInverse(index, kPrimes[c]));
    }
  }
  return out;
}

}  // namespace sdre
