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

#ifndef SDRE_PRIM_HPP_
#define SDRE_PRIM_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sdre/box.hpp"
#include "sdre/dataset.hpp"

namespace sdre {

struct PeelConfig {
  double alpha = 0.05;
  std::size_t minpts = 20;
  std::size_t max_iter = 99;
  std::uint64_t seed = 0;
  // Dimensions allowed to be peeled; empty means all. Used by bumping.
  std::vector<std::size_t> dims;

  void Validate(std::size_t total_dims) const;
};

// Nested boxes box_0 ... box_r from one peeling run, where r is the box with
// the highest validation mean.
struct BoxSequence {
  std::vector<HyperBox> boxes;
  std::vector<double> val_means;
  std::vector<std::size_t> n_train;
  std::vector<std::size_t> n_val;
  std::size_t selected_index = 0;

  std::size_t size() const { return boxes.size(); }
  const HyperBox& selected() const { return boxes[selected_index]; }
};

// Replay record of one peeling iteration.
struct PeelStep {
  struct Candidate {
    std::size_t dim;
    bool top;  // true: slice with the largest values removed
    std::size_t retained;
    double mean;
  };
  std::vector<Candidate> candidates;
  std::size_t chosen = 0;
};

// PRIM peeling. Each iteration tries, for every allowed dimension, removing
// the alpha-share of points with the largest and with the smallest values,
// keeps the candidate whose remaining points have the highest mean label,
// and moves the peeled bound onto the retained data. Stops when the train or
// validation set holds at most minpts points, or after max_iter iterations.
// `trace`, when non-null, receives one entry per iteration.
BoxSequence peel(const Dataset& d, const Dataset& d_val, const HyperBox& box0,
                 const PeelConfig& cfg, std::vector<PeelStep>* trace = nullptr);

// PRIM pasting: grows `box` one bound at a time (volume factor 1 + beta,
// clipped to box0) while some expansion takes in at least one point of d and
// keeps the mean label from dropping; among admissible expansions one is
// chosen uniformly at random.
HyperBox paste(const Dataset& d, const HyperBox& box, const HyperBox& box0,
               double beta, std::uint64_t seed);

struct BumpedBox {
  HyperBox box;
  double coverage = 0.0;
  double density = 0.0;
  std::size_t run = 0;
  std::size_t box_index = 0;
};

struct BumpingOptions {
  std::size_t attributes = 0;   // t
  std::size_t iterations = 50;  // T
  bool bootstrap = true;        // test hook; false peels d itself
};

// PRIM with bumping: T peels on bootstrap resamples of d, each restricted to
// a random subset of t attributes; returns the boxes of all runs that are
// not dominated in (coverage, density) on d_val, ordered by decreasing
// coverage. Identical boxes are reported once.
std::vector<BumpedBox> bumping(const Dataset& d, const Dataset& d_val,
                               const HyperBox& box0, const PeelConfig& cfg,
                               const BumpingOptions& options);

}  // namespace sdre

#endif  // SDRE_PRIM_HPP_
