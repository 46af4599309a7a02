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

#ifndef SDRE_METRICS_HPP_
#define SDRE_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sdre/box.hpp"
#include "sdre/dataset.hpp"

namespace sdre {

struct CoverageDensity {
  double coverage = 0.0;
  // Empty when the box holds no points (density is undefined, not zero).
  std::optional<double> density;
};

// coverage = S1 / N1, density = S1 / (S1 + S0). For fractional labels the
// counts become sums of y and (1 - y). Throws kUndefinedCoverage if N1 == 0.
CoverageDensity coverage_density(const HyperBox& box, const Dataset& data);

// One box of a peeling trajectory evaluated on a fixed dataset.
struct TrajectoryPoint {
  std::size_t box_index = 0;
  double coverage = 0.0;
  std::optional<double> density;
  std::size_t n_train = 0;
  std::size_t n_val = 0;
};

// Area under the density-vs-coverage curve over coverage in [0, 1].
// Points are ordered by decreasing coverage (duplicates keep the highest
// density), joined piecewise-linearly, anchored at (1, base_rate) when a
// base rate is given and extended horizontally down to coverage 0 from the
// lowest-coverage point. Without a base rate, and if no point has coverage
// one, the highest-coverage point is extended horizontally to 1 instead.
// Points with undefined density are ignored.
double trajectory_auc(std::span<const TrajectoryPoint> points,
                      std::optional<double> base_rate = std::nullopt);

// Number of dimensions where `box` is tighter than `box0` by more than
// rel_tol times that dimension's box0 width.
std::size_t restricted_dims(const HyperBox& box, const HyperBox& box0,
                            double rel_tol = 1e-9);

// Overlap volume over union volume, with volumes normalised by `box0`.
// Two zero-volume boxes score 1 if identical, else 0.
double consistency(const HyperBox& a, const HyperBox& b, const HyperBox& box0);
double consistency(const HyperBox& a, const HyperBox& b);

struct Quality {
  double coverage = 0.0;
  double density = 0.0;
};

// True if `by` dominates `q`: at least as good in both metrics and strictly
// better in one. Equal candidates do not dominate each other.
bool Dominates(const Quality& by, const Quality& q);

// Indices (ascending) of the candidates not dominated by any other.
std::vector<std::size_t> pareto_front(std::span<const Quality> candidates);

}  // namespace sdre

#endif  // SDRE_METRICS_HPP_
