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

#ifndef SDRE_DATASET_HPP_
#define SDRE_DATASET_HPP_

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sdre/box.hpp"

namespace sdre {

// Row-major n x D matrix of points together with the box they were drawn in.
class PointMatrix {
 public:
  PointMatrix() = default;
  PointMatrix(std::size_t rows, std::size_t cols);
  PointMatrix(std::size_t rows, std::size_t cols, HyperBox box);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void AppendRow(std::span<const double> values);
  // Rows at `indices`, in that order.
  PointMatrix Select(std::span<const std::size_t> indices) const;

  const HyperBox& box() const { return box_; }
  void set_box(HyperBox box) { box_ = std::move(box); }

  const std::vector<double>& data() const { return data_; }

  friend bool operator==(const PointMatrix&, const PointMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  HyperBox box_;
};

// Points plus labels. Labels lie in [0, 1]; simulator output is exactly
// {0, 1}, metamodel probabilities may be fractional. y = 1 marks cases of
// interest.
struct Dataset {
  PointMatrix x;
  std::vector<double> y;

  Dataset() = default;
  Dataset(PointMatrix points, std::vector<double> labels);

  std::size_t size() const { return y.size(); }
  std::size_t dims() const { return x.cols(); }

  Dataset Select(std::span<const std::size_t> indices) const;
  double MeanLabel() const;
  bool IsBinary() const;
};

// Smallest box containing every row of `points`.
HyperBox BoundingBox(const PointMatrix& points);

}  // namespace sdre

#endif  // SDRE_DATASET_HPP_
