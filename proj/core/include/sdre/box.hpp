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

#ifndef SDRE_BOX_HPP_
#define SDRE_BOX_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace sdre {

// Axis-aligned hyperbox [lower_i, upper_i] per dimension. Scenarios are
// expressed as boxes, as is the admissible input region of a DGP.
struct HyperBox {
  std::vector<double> lower;
  std::vector<double> upper;

  HyperBox() = default;
  HyperBox(std::vector<double> lo, std::vector<double> hi);

  static HyperBox Unit(std::size_t dims);

  std::size_t dims() const { return lower.size(); }
  double width(std::size_t i) const { return upper[i] - lower[i]; }

  // Throws kInvalidBox if sizes differ, dims == 0, or lower > upper anywhere.
  void Validate() const;
  // Like Validate() but additionally requires positive width everywhere.
  void ValidateNonDegenerate() const;

  bool Contains(std::span<const double> point) const;
  // True if this box lies inside `outer` (inclusive bounds).
  bool Within(const HyperBox& outer) const;

  friend bool operator==(const HyperBox&, const HyperBox&) = default;
};

// Throws kShape on dimension mismatch.
bool contains(const HyperBox& box, std::span<const double> point);

// Volume of `box` measured in units where every side of `reference` has
// length one. Zero-width reference sides are skipped.
double NormalizedVolume(const HyperBox& box, const HyperBox& reference);

// Intersection; sides collapse to an empty interval (lower > upper is never
// produced, an empty side is reported via the bool).
bool Intersect(const HyperBox& a, const HyperBox& b, HyperBox* out);

}  // namespace sdre

#endif  // SDRE_BOX_HPP_
