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

#include "sdre/dataset.hpp"

#include <algorithm>
#include <string>

#include "sdre/error.hpp"

namespace sdre {

PointMatrix::PointMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

PointMatrix::PointMatrix(std::size_t rows, std::size_t cols, HyperBox box)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0), box_(std::move(box)) {}

void PointMatrix::AppendRow(std::span<const double> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) {
    Fail(ErrorKind::kShape, "row has " + std::to_string(values.size()) +
                                " values, expected " + std::to_string(cols_));
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

PointMatrix PointMatrix::Select(std::span<const std::size_t> indices) const {
  PointMatrix out(indices.size(), cols_, box_);
  for (std::size_t r = 0; r < indices.size(); ++r) {
    const auto src = row(indices[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

Dataset::Dataset(PointMatrix points, std::vector<double> labels)
    : x(std::move(points)), y(std::move(labels)) {
  if (x.rows() != y.size()) {
    Fail(ErrorKind::kShape, "dataset has " + std::to_string(x.rows()) +
                                " points but " + std::to_string(y.size()) +
                                " labels");
  }
}

Dataset Dataset::Select(std::span<const std::size_t> indices) const {
  std::vector<double> labels(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) labels[i] = y[indices[i]];
  return Dataset(x.Select(indices), std::move(labels));
}

double Dataset::MeanLabel() const {
  if (y.empty()) return 0.0;
  double s = 0.0;
  for (double v : y) s += v;
  return s / static_cast<double>(y.size());
}

bool Dataset::IsBinary() const {
  return std::all_of(y.begin(), y.end(),
                     [](double v) { return v == 0.0 || v == 1.0; });
}

HyperBox BoundingBox(const PointMatrix& points) {
  HyperBox b(std::vector<double>(points.cols(), 0.0),
             std::vector<double>(points.cols(), 0.0));
  if (points.empty()) return b;
  for (std::size_t c = 0; c < points.cols(); ++c) {
    b.lower[c] = b.upper[c] = points(0, c);
  }
  for (std::size_t r = 1; r < points.rows(); ++r) {
    for (std::size_t c = 0; c < points.cols(); ++c) {
      b.lower[c] = std::min(b.lower[c], points(r, c));
      b.upper[c] = std::max(b.upper[c], points(r, c));
    }
  }
  return b;
}

}  // namespace sdre
