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

#ifndef SDRE_FOREST_HPP_
#define SDRE_FOREST_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "sdre/dataset.hpp"

namespace sdre {

struct ForestConfig {
  std::size_t n_trees = 500;
  std::size_t mtry = 0;  // 0: floor(sqrt(D))
  std::size_t min_node = 1;
  std::uint64_t seed = 0;

  std::size_t ResolvedMtry(std::size_t dims) const;
};

// Binary classification tree stored as flat node arrays. Leaves carry the
// positive-class fraction of their training samples.
class Tree {
 public:
  struct Node {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    std::uint32_t left = 0;
    std::uint32_t right = 0;
    double value = 0.0;
  };

  Tree() = default;
  explicit Tree(std::vector<Node> nodes) : nodes_(std::move(nodes)) {}

  double Predict(std::span<const double> x) const;
  const std::vector<Node>& nodes() const { return nodes_; }

 private:
  std::vector<Node> nodes_;
};

class Forest {
 public:
  Forest() = default;

  const std::vector<Tree>& trees() const { return trees_; }
  const ForestConfig& config() const { return config_; }
  std::size_t dims() const { return dims_; }
  double oob_error() const { return oob_error_; }
  // Set when the training labels had a single class; every tree is then a
  // single leaf and the forest is a constant predictor.
  bool degenerate() const { return degenerate_; }

  void Save(std::ostream& out) const;
  static Forest Load(std::istream& in);

 private:
  friend Forest fit(const Dataset& d, const ForestConfig& cfg);

  std::vector<Tree> trees_;
  ForestConfig config_;
  std::size_t dims_ = 0;
  double oob_error_ = 0.0;
  bool degenerate_ = false;
};

// Random forest: bootstrap sample per tree, Gini splits over mtry random
// candidate features per node, midpoints between distinct sorted values as
// thresholds, grown until pure or min_node. Deterministic per seed.
Forest fit(const Dataset& d, const ForestConfig& cfg);

// Picks the grid value with the lowest OOB error (ties: smaller mtry).
ForestConfig tune_mtry(const Dataset& d, std::span<const std::size_t> grid,
                       const ForestConfig& cfg);

// {floor(sqrt(D)), floor(D/2), D}, deduplicated and at least 1.
std::vector<std::size_t> DefaultMtryGrid(std::size_t dims);

// Mean over trees of leaf positive fractions.
std::vector<double> predict_proba(const Forest& f, const PointMatrix& points);
// 1 iff predict_proba >= 0.5.
std::vector<double> predict_label(const Forest& f, const PointMatrix& points);

}  // namespace sdre

#endif  // SDRE_FOREST_HPP_
