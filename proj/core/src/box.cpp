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

#include "sdre/box.hpp"

#include <algorithm>
#include <string>

#include "sdre/error.hpp"

namespace sdre {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidBox: return "invalid-box";
    case ErrorKind::kShape: return "shape";
    case ErrorKind::kUnknownDgp: return "unknown-dgp";
    case ErrorKind::kInvalidLabel: return "invalid-label";
    case ErrorKind::kUnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::kSimulationFailure: return "simulation-failure";
    case ErrorKind::kUndefinedCoverage: return "undefined-coverage";
    case ErrorKind::kValidationUndefined: return "validation-undefined";
    case ErrorKind::kInvalidConfig: return "invalid-config";
    case ErrorKind::kUndefinedMu: return "undefined-mu";
    case ErrorKind::kData: return "data";
  }
  return "unknown";
}

HyperBox::HyperBox(std::vector<double> lo, std::vector<double> hi)
    : lower(std::move(lo)), upper(std::move(hi)) {}

HyperBox HyperBox::Unit(std::size_t dims) {
  return HyperBox(std::vector<double>(dims, 0.0), std::vector<double>(dims, 1.0));
}

void HyperBox::Validate() const {
  if (lower.size() != upper.size()) {
    Fail(ErrorKind::kInvalidBox, "box bound vectors differ in length");
  }
  if (lower.empty()) Fail(ErrorKind::kInvalidBox, "box has no dimensions");
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) {
      Fail(ErrorKind::kInvalidBox,
           "box lower bound exceeds upper bound in dimension " + std::to_string(i));
    }
  }
}

void HyperBox::ValidateNonDegenerate() const {
  Validate();
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (!(lower[i] < upper[i])) {
      Fail(ErrorKind::kInvalidBox,
           "box has zero width in dimension " + std::to_string(i));
    }
  }
}

bool HyperBox::Contains(std::span<const double> point) const {
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (point[i] < lower[i] || point[i] > upper[i]) return false;
  }
  return true;
}

bool HyperBox::Within(const HyperBox& outer) const {
  if (outer.dims() != dims()) return false;
  for (std::size_t i = 0; i < lower.size(); ++i) {
    if (lower[i] < outer.lower[i] || upper[i] > outer.upper[i]) return false;
  }
  return true;
}

bool contains(const HyperBox& box, std::span<const double> point) {
  if (point.size() != box.dims()) {
    Fail(ErrorKind::kShape, "point has " + std::to_string(point.size()) +
                                " coordinates, box has " +
                                std::to_string(box.dims()) + " dimensions");
  }
  return box.Contains(point);
}

double NormalizedVolume(const HyperBox& box, const HyperBox& reference) {
  if (box.dims() != reference.dims()) {
    Fail(ErrorKind::kShape, "box and reference differ in dimension");
  }
  double v = 1.0;
  for (std::size_t i = 0; i < box.dims(); ++i) {
    const double ref = reference.width(i);
    if (ref <= 0.0) continue;
    v *= std::max(0.0, box.width(i)) / ref;
  }
  return v;
}

bool Intersect(const HyperBox& a, const HyperBox& b, HyperBox* out) {
  if (a.dims() != b.dims()) Fail(ErrorKind::kShape, "boxes differ in dimension");
  HyperBox r = a;
  bool non_empty = true;
  for (std::size_t i = 0; i < a.dims(); ++i) {
    r.lower[i] = std::max(a.lower[i], b.lower[i]);
    r.upper[i] = std::min(a.upper[i], b.upper[i]);
    if (r.lower[i] > r.upper[i]) {
      non_empty = false;
      r.upper[i] = r.lower[i];
    }
  }
  if (out) *out = std::move(r);
  return non_empty;
}

}  // namespace sdre
