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

#ifndef SDRE_MSE_HPP_
#define SDRE_MSE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sdre/box.hpp"
#include "sdre/dgp.hpp"
#include "sdre/forest.hpp"

namespace sdre {

// How the per-fit terms are combined into MSE_AM.
enum class MseAmFormula {
  // mean_i (Bias_i^2 + Var_i): the bias-variance decomposition.
  kDecomposition,
  // sum_i (Bias_i + Var_i), taken literally from the tabulated procedure.
  kLiteral,
};

struct MseConfig {
  std::size_t n = 400;              // |d|
  std::size_t k = 100000;           // K
  std::size_t reps_outer = 200;     // independent data sets d_i
  std::size_t reps_inner = 100;     // relabelled sets per fitted forest
  std::size_t ground_truth = 1000000;
  // When the inner draws of one fit need more forest predictions than this
  // in total, they are resampled (with replacement) from one pool of this
  // many forest-labelled points inside b.
  std::size_t pool_cap = 20000;
  ForestConfig forest;
  bool tune_mtry = false;
  MseAmFormula formula = MseAmFormula::kDecomposition;
  std::uint64_t seed = 1;
};

struct MseReport {
  HyperBox box_b;
  double mu_gt = 0.0;
  double mse_o = 0.0;
  double mse_am = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> mu_hat;   // per outer data set, simulator labels
  std::vector<double> bias;     // per fit: mu_gt - mean_j mu_hat^a_ij
  std::vector<double> variance; // per fit: variance over j
};

// Estimates the error of the in-box mean label for a fixed box b, once from
// simulator labels (MSE_O) and once through a forest metamodel (MSE_AM).
// Throws kUndefinedMu if b holds no ground-truth point.
MseReport mse_experiment(const DgpSpec& dgp, const HyperBox& box_b,
                         const MseConfig& cfg);

}  // namespace sdre

#endif  // SDRE_MSE_HPP_
