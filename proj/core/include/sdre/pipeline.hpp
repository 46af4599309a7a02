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

#ifndef SDRE_PIPELINE_HPP_
#define SDRE_PIPELINE_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sdre/box.hpp"
#include "sdre/dataset.hpp"
#include "sdre/dgp.hpp"
#include "sdre/metrics.hpp"

namespace sdre {

// The six discovery methods, in report column order.
enum class Method { kB, kBAll, kO, kOp, kRFl, kRFp };

inline constexpr std::array<Method, 6> kAllMethods = {
    Method::kB, Method::kBAll, Method::kO, Method::kOp, Method::kRFl,
    Method::kRFp};

std::string_view MethodName(Method method);
// Throws kInvalidConfig listing the valid names.
Method ParseMethod(std::string_view name);

// Which dataset validates the peel inside the RF methods.
enum class RfValidation { kRelabeled, kOriginal };

struct ExperimentConfig {
  std::vector<Method> methods{kAllMethods.begin(), kAllMethods.end()};
  std::vector<std::string> dgps{"dgp3"};
  double alpha = 0.05;
  std::size_t minpts = 20;
  std::size_t max_iter = 99;
  double beta = 0.01;
  std::size_t bump_iterations = 50;  // T
  std::size_t new_points = 100000;   // K
  std::vector<std::size_t> sizes{400, 800, 1600};
  std::size_t reps = 50;
  double noise_level = 0.0;
  std::size_t test_size = 10000;
  std::uint64_t base_seed = 1;
  std::size_t n_trees = 500;
  std::vector<std::size_t> mtry_grid;  // empty: DefaultMtryGrid(D)
  bool tune_mtry = true;
  RfValidation rf_validation = RfValidation::kOriginal;
  std::size_t jobs = 0;  // 0: Parallelism()

  void Validate() const;
};

// Attribute count used by the bumping variants.
std::size_t BumpingAttributes(Method method, std::size_t dims);

struct DiscoveryResult {
  std::vector<HyperBox> boxes;  // trajectory; boxes[0] is box_0
  std::vector<double> val_means;
  std::vector<std::size_t> n_train;
  std::vector<std::size_t> n_val;
  std::size_t last_index = 0;  // the box reported as the method's answer
  bool fell_back = false;      // RF forest was constant; plain peel used
  std::optional<std::size_t> tuned_mtry;
  std::optional<double> oob_error;

  const HyperBox& last_box() const { return boxes[last_index]; }
};

struct DiscoverHooks {
  // Replaces the fitted forest in RF.l / RF.p: maps the K new points to
  // labels. Used to check the method against a known rule.
  std::function<std::vector<double>(const PointMatrix&)> labeler;
};

// Runs one method. O: peel; O.p: peel then paste every box; B / B.all:
// bumping with t = ceil(sqrt(D)) / D; RF.l / RF.p: fit a forest on d,
// label K uniform points in box0 by class / probability, peel those.
DiscoveryResult discover(Method method, const Dataset& d, const Dataset& d_val,
                         const HyperBox& box0, const ExperimentConfig& cfg,
                         std::uint64_t seed, const DiscoverHooks& hooks = {});

struct RunMetrics {
  std::size_t rep = 0;
  double auc = 0.0;
  std::optional<double> density;  // of the last box
  std::size_t restricted = 0;
  double volume_fraction = 0.0;
  HyperBox last_box;
  std::vector<TrajectoryPoint> trajectory;
};

// Metrics of one discovery result on an independent test set.
RunMetrics EvaluateRun(const DiscoveryResult& result, const Dataset& test,
                       const HyperBox& box0);

// Trajectory of `boxes` on `data`, with n_train / n_val copied from `result`.
std::vector<TrajectoryPoint> Trajectory(const DiscoveryResult& result,
                                        const Dataset& data);

// Mean consistency over all pairs of boxes.
double MeanPairwiseConsistency(std::span<const HyperBox> boxes,
                               const HyperBox& box0);

enum class Metric { kAuc, kDensity, kInterpretability, kConsistency };
inline constexpr std::array<Metric, 4> kAllMetrics = {
    Metric::kAuc, Metric::kDensity, Metric::kInterpretability,
    Metric::kConsistency};
std::string_view MetricName(Metric metric);

struct CellResult {
  std::string dgp;
  std::size_t size = 0;
  Method method = Method::kO;
  std::size_t runs_ok = 0;
  std::size_t runs_failed = 0;
  double auc = 0.0;           // percent
  double density = 0.0;       // percent
  double restricted = 0.0;    // mean count
  double consistency = 0.0;   // percent
  double volume = 0.0;        // percent of box_0
  std::vector<RunMetrics> runs;

  double Value(Metric metric) const;
};

struct CellFailure {
  std::string dgp;
  std::size_t size = 0;
  std::string method;
  std::size_t rep = 0;
  std::string message;
};

struct RankCount {
  std::size_t first = 0;
  std::size_t second = 0;
};

struct BenchmarkResult {
  std::vector<CellResult> cells;
  std::vector<CellFailure> failures;
  std::vector<Method> methods;
  std::vector<std::string> dgps;
  std::vector<std::size_t> sizes;

  const CellResult* Find(std::string_view dgp, std::size_t size,
                         Method method) const;
  // "#1" / "#2" counts of `method` for `metric` at `size` across DGPs.
  // Higher is better except for interpretability (fewer restricted dims).
  // Ties are broken by method column order.
  RankCount Ranks(Metric metric, std::size_t size, Method method) const;
  // Mean of the cell values over DGPs with at least one successful run.
  double Average(Metric metric, std::size_t size, Method method) const;
};

// Replications of every (dgp, size, method) cell. Data sets use d = d_val;
// explicit DGPs are sampled by LHS, simulators by Halton; label noise is
// applied to d only; metrics come from one test set per DGP.
BenchmarkResult run_benchmark(const ExperimentConfig& cfg,
                              const DgpRegistry& registry = DgpRegistry::Builtin());

// Seeds used by run_benchmark, exposed so single runs can be replayed.
std::uint64_t TestSetSeed(std::uint64_t base_seed, std::string_view dgp);
std::uint64_t ReplicationSeed(std::uint64_t base_seed, std::string_view dgp,
                              std::size_t size, std::size_t rep);

}  // namespace sdre

#endif  // SDRE_PIPELINE_HPP_
