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

#include "sdre/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "sdre/error.hpp"

namespace sdre {

CoverageDensity coverage_density(const HyperBox& box, const Dataset& data) {
  if (data.size() == 0) Fail(ErrorKind::kUndefinedCoverage, "coverage of an empty dataset");
  if (box.dims() != data.dims()) {
    Fail(ErrorKind::kShape, "box and dataset dimensions differ");
  }
  double n1 = 0.0, s1 = 0.0, s0 = 0.0;
  bool any_inside = false;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double y = data.y[i];
    n1 += y;
    if (box.Contains(data.x.row(i))) {
      any_inside = true;
      s1 += y;
      s0 += 1.0 - y;
    }
  }
  if (n1 <= 0.0) Fail(ErrorKind::kUndefinedCoverage, "dataset holds no cases of interest");
  CoverageDensity out;
  out.coverage = s1 / n1;
  if (any_inside && s1 + s0 > 0.0) out.density = s1 / (s1 + s0);
  return out;
}

double trajectory_auc(std::span<const TrajectoryPoint> points,
                      std::optional<double> base_rate) {
  std::vector<std::pair<double, double>> curve;  // (coverage, density)
  for (const auto& p : points) {
    if (p.density) curve.emplace_back(p.coverage, *p.density);
  }
  if (base_rate) curve.emplace_back(1.0, *base_rate);
  if (curve.empty()) Fail(ErrorKind::kData, "trajectory has no point with defined density");

  std::sort(curve.begin(), curve.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second > b.second;
  });
  // after sorting, the first entry of each coverage value carries its max density
  curve.erase(std::unique(curve.begin(), curve.end(),
                          [](const auto& a, const auto& b) { return a.first == b.first; }),
              curve.end());
  if (curve.front().first < 1.0) curve.insert(curve.begin(), {1.0, curve.front().second});

  double area = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const double dx = curve[i].first - curve[i + 1].first;
    area += dx * 0.5 * (curve[i].second + curve[i + 1].second);
  }
  area += curve.back().first * curve.back().second;
  return area;
}

std::size_t restricted_dims(const HyperBox& box, const HyperBox& box0, double rel_tol) {
  if (box.dims() != box0.dims()) Fail(ErrorKind::kShape, "box dimensions differ");
  std::size_t count = 0;
  for (std::size_t i = 0; i < box.dims(); ++i) {
    const double tol = rel_tol * box0.width(i);
    if (box.lower[i] > box0.lower[i] + tol || box.upper[i] < box0.upper[i] - tol) ++count;
  }
  return count;
}

namespace {

double Consistency(const HyperBox& a, const HyperBox& b, const HyperBox* box0) {
  if (a.dims() != b.dims()) Fail(ErrorKind::kShape, "box dimensions differ");
  const auto volume = [&](const HyperBox& box) {
    if (box0) return NormalizedVolume(box, *box0);
    double v = 1.0;
    for (std::size_t i = 0; i < box.dims(); ++i) v *= box.width(i);
    return v;
  };
  const double va = volume(a), vb = volume(b);
  if (va <= 0.0 && vb <= 0.0) return a == b ? 1.0 : 0.0;
  HyperBox overlap;
  const double vo = Intersect(a, b, &overlap) ? volume(overlap) : 0.0;
  const double vu = va + vb - vo;
  return vu > 0.0 ? std::clamp(vo / vu, 0.0, 1.0) : 0.0;
}

}  // namespace

double consistency(const HyperBox& a, const HyperBox& b, const HyperBox& box0) {
  if (box0.dims() != a.dims()) Fail(ErrorKind::kShape, "box dimensions differ");
  return Consistency(a, b, &box0);
}

double consistency(const HyperBox& a, const HyperBox& b) {
  return Consistency(a, b, nullptr);
}

bool Dominates(const Quality& by, const Quality& q) {
  return by.coverage >= q.coverage && by.density >= q.density &&
         (by.coverage > q.coverage || by.density > q.density);
}

std::vector<std::size_t> pareto_front(std::span<const Quality> candidates) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (candidates[a].coverage != candidates[b].coverage) {
      return candidates[a].coverage > candidates[b].coverage;
    }
    return candidates[a].density > candidates[b].density;
  });
  // Sweep groups of equal coverage from high to low. Within a group only the
  // top density survives, and only if no higher-coverage group reached it.
  std::vector<std::size_t> front;
  bool have_best = false;
  double best = 0.0;
  for (std::size_t g = 0; g < order.size();) {
    const double cov = candidates[order[g]].coverage;
    const double top = candidates[order[g]].density;
    std::size_t end = g;
    while (end < order.size() && candidates[order[end]].coverage == cov) ++end;
    if (!have_best || top > best) {
      for (std::size_t k = g; k < end && candidates[order[k]].density == top; ++k) {
        front.push_back(order[k]);
      }
      best = top;
      have_best = true;
    }
    g = end;
  }
  std::sort(front.begin(), front.end());
  return front;
}

}  // namespace sdre
