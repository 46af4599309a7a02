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

#include "sdre/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <string>

#include "sdre/error.hpp"
#include "sdre/forest.hpp"
#include "sdre/parallel.hpp"
#include "sdre/prim.hpp"
#include "sdre/random.hpp"
#include "sdre/sampling.hpp"

namespace sdre {

namespace {

constexpr std::array<std::string_view, 6> kMethodNames = {"B", "B.all", "O",
                                                          "O.p", "RF.l", "RF.p"};

// Sub-stream identifiers below a discovery seed.
enum Stream : std::uint64_t {
  kForestStream = 1,
  kPointsStream = 2,
  kPasteStream = 3,
  kBumpStream = 4,
  kNoiseStream = 5,
  kDiscoverStream = 6,
  kDataStream = 7,
};

std::size_t MethodIndex(Method m) { return static_cast<std::size_t>(m); }

PeelConfig MakePeelConfig(const ExperimentConfig& cfg, std::uint64_t seed) {
  PeelConfig pc;
  pc.alpha = cfg.alpha;
  pc.minpts = cfg.minpts;
  pc.max_iter = cfg.max_iter;
  pc.seed = seed;
  return pc;
}

DiscoveryResult FromSequence(BoxSequence seq) {
  DiscoveryResult r;
  r.boxes = std::move(seq.boxes);
  r.val_means = std::move(seq.val_means);
  r.n_train = std::move(seq.n_train);
  r.n_val = std::move(seq.n_val);
  r.last_index = r.boxes.size() - 1;
  return r;
}

// The relabelled data set of the RF methods, shared by RF.l and RF.p.
struct Relabel {
  PointMatrix points;
  std::vector<double> proba;
  bool degenerate = false;
  std::optional<std::size_t> mtry;
  std::optional<double> oob;
};

Relabel BuildRelabel(const Dataset& d, const HyperBox& box0,
                     const ExperimentConfig& cfg, std::uint64_t seed,
                     const DiscoverHooks& hooks) {
  Relabel r;
  r.points = uniform_sample(cfg.new_points, box0, DeriveSeed(seed, {kPointsStream}));
  if (hooks.labeler) {
    r.proba = hooks.labeler(r.points);
    if (r.proba.size() != r.points.rows()) {
      Fail(ErrorKind::kShape, "labeler returned the wrong number of labels");
    }
    return r;
  }
  ForestConfig fc;
  fc.n_trees = cfg.n_trees;
  fc.seed = DeriveSeed(seed, {kForestStream});
  std::vector<std::size_t> grid =
      cfg.mtry_grid.empty() ? DefaultMtryGrid(d.dims()) : cfg.mtry_grid;
  std::sort(grid.begin(), grid.end());
  Forest forest;
  if (cfg.tune_mtry && grid.size() > 1) {
    // same as tune_mtry(), but keeps the winning forest instead of refitting
    double best_err = 2.0;
    for (std::size_t m : grid) {
      fc.mtry = m;
      Forest candidate = fit(d, fc);
      if (candidate.degenerate()) {
        forest = std::move(candidate);
        break;
      }
      if (candidate.oob_error() < best_err) {
        best_err = candidate.oob_error();
        forest = std::move(candidate);
      }
    }
  } else {
    fc.mtry = grid.front();
    forest = fit(d, fc);
  }
  r.degenerate = forest.degenerate();
  r.mtry = forest.config().mtry;
  r.oob = forest.oob_error();
  if (!r.degenerate) r.proba = predict_proba(forest, r.points);
  return r;
}

DiscoveryResult DiscoverRf(Method method, const Dataset& d, const Dataset& d_val,
                           const HyperBox& box0, const ExperimentConfig& cfg,
                           std::uint64_t seed, const Relabel& relabel) {
  const PeelConfig pc = MakePeelConfig(cfg, seed);
  if (relabel.degenerate) {
    DiscoveryResult r = FromSequence(peel(d, d_val, box0, pc));
    r.fell_back = true;
    r.tuned_mtry = relabel.mtry;
    r.oob_error = relabel.oob;
    return r;
  }
  std::vector<double> y = relabel.proba;
  if (method == Method::kRFl) {
    for (double& v : y) v = v >= 0.5 ? 1.0 : 0.0;
  }
  const Dataset d_new(relabel.points, std::move(y));
  const Dataset& validation = cfg.rf_validation == RfValidation::kRelabeled ? d_new : d_val;
  DiscoveryResult r = FromSequence(peel(d_new, validation, box0, pc));
  r.tuned_mtry = relabel.mtry;
  r.oob_error = relabel.oob;
  return r;
}

DiscoveryResult DiscoverBasic(Method method, const Dataset& d, const Dataset& d_val,
                              const HyperBox& box0, const ExperimentConfig& cfg,
                              std::uint64_t seed) {
  const PeelConfig pc = MakePeelConfig(cfg, seed);
  switch (method) {
    case Method::kO:
      return FromSequence(peel(d, d_val, box0, pc));
    case Method::kOp: {
      DiscoveryResult r = FromSequence(peel(d, d_val, box0, pc));
      for (std::size_t j = 0; j < r.boxes.size(); ++j) {
        r.boxes[j] = paste(d, r.boxes[j], box0, cfg.beta,
                           DeriveSeed(seed, {kPasteStream, j}));
      }
      return r;
    }
    case Method::kB:
    case Method::kBAll: {
      BumpingOptions opt;
      opt.attributes = BumpingAttributes(method, box0.dims());
      opt.iterations = cfg.bump_iterations;
      PeelConfig bump_cfg = pc;
      bump_cfg.seed = DeriveSeed(seed, {kBumpStream, MethodIndex(method)});
      const auto front = bumping(d, d_val, box0, bump_cfg, opt);
      DiscoveryResult r;
      const bool has_box0 = !front.empty() && front.front().box == box0;
      if (!has_box0) {
        r.boxes.push_back(box0);
        r.val_means.push_back(d_val.MeanLabel());
        r.n_train.push_back(d.size());
        r.n_val.push_back(d_val.size());
      }
      std::size_t best = 0;
      double best_density = -1.0, best_coverage = -1.0;
      for (const auto& b : front) {
        std::size_t n_tr = 0, n_va = 0;
        for (std::size_t i = 0; i < d.size(); ++i) n_tr += b.box.Contains(d.x.row(i));
        for (std::size_t i = 0; i < d_val.size(); ++i) n_va += b.box.Contains(d_val.x.row(i));
        r.boxes.push_back(b.box);
        r.val_means.push_back(b.density);
        r.n_train.push_back(n_tr);
        r.n_val.push_back(n_va);
        if (b.density > best_density ||
            (b.density == best_density && b.coverage > best_coverage)) {
          best_density = b.density;
          best_coverage = b.coverage;
          best = r.boxes.size() - 1;
        }
      }
      r.last_index = best;
      return r;
    }
    default:
      break;
  }
  Fail(ErrorKind::kInvalidConfig, "not a basic method");
}

double Mean(const std::vector<double>& v) {
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

}  // namespace

std::string_view MethodName(Method method) { return kMethodNames[MethodIndex(method)]; }

Method ParseMethod(std::string_view name) {
  for (std::size_t i = 0; i < kMethodNames.size(); ++i) {
    if (kMethodNames[i] == name) return kAllMethods[i];
  }
  Fail(ErrorKind::kInvalidConfig, "unknown method '" + std::string(name) +
                                      "' (valid: B, B.all, O, O.p, RF.l, RF.p)");
}

void ExperimentConfig::Validate() const {
  const auto bad = [](const std::string& what) { Fail(ErrorKind::kInvalidConfig, what); };
  if (methods.empty()) bad("methods: at least one method is required");
  if (dgps.empty()) bad("dgps: at least one dgp is required");
  if (!(alpha > 0.0 && alpha < 0.5)) bad("alpha: must lie in (0, 0.5)");
  if (minpts < 1) bad("minpts: must be at least 1");
  if (!(beta > 0.0)) bad("beta: must be positive");
  if (bump_iterations < 1) bad("bump_iterations: must be at least 1");
  if (new_points < 1) bad("new_points: must be at least 1");
  if (sizes.empty()) bad("sizes: at least one size is required");
  for (std::size_t s : sizes) {
    if (s < 2) bad("sizes: every size must be at least 2");
  }
  if (reps < 1) bad("reps: must be at least 1");
  if (!(noise_level >= 0.0 && noise_level <= 0.5)) bad("noise_level: must lie in [0, 0.5]");
  if (test_size < 1) bad("test_size: must be at least 1");
  if (n_trees < 1) bad("n_trees: must be at least 1");
  for (std::size_t m : mtry_grid) {
    if (m < 1) bad("mtry_grid: values must be at least 1");
  }
}

std::size_t BumpingAttributes(Method method, std::size_t dims) {
  if (method == Method::kB) {
    return static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(dims)) - 1e-12));
  }
  return dims;
}

DiscoveryResult discover(Method method, const Dataset& d, const Dataset& d_val,
                         const HyperBox& box0, const ExperimentConfig& cfg,
                         std::uint64_t seed, const DiscoverHooks& hooks) {
  cfg.Validate();
  if (method == Method::kRFl || method == Method::kRFp) {
    if (!cfg.mtry_grid.empty() &&
        *std::max_element(cfg.mtry_grid.begin(), cfg.mtry_grid.end()) > d.dims()) {
      Fail(ErrorKind::kInvalidConfig, "mtry_grid: values must not exceed D");
    }
    const Relabel relabel = BuildRelabel(d, box0, cfg, seed, hooks);
    return DiscoverRf(method, d, d_val, box0, cfg, seed, relabel);
  }
  return DiscoverBasic(method, d, d_val, box0, cfg, seed);
}

std::vector<TrajectoryPoint> Trajectory(const DiscoveryResult& result, const Dataset& data) {
  std::vector<TrajectoryPoint> out;
  out.reserve(result.boxes.size());
  for (std::size_t j = 0; j < result.boxes.size(); ++j) {
    const auto cd = coverage_density(result.boxes[j], data);
    TrajectoryPoint p;
    p.box_index = j;
    p.coverage = cd.coverage;
    p.density = cd.density;
    if (j < result.n_train.size()) p.n_train = result.n_train[j];
    if (j < result.n_val.size()) p.n_val = result.n_val[j];
    out.push_back(p);
  }
  return out;
}

RunMetrics EvaluateRun(const DiscoveryResult& result, const Dataset& test,
                       const HyperBox& box0) {
  RunMetrics m;
  m.trajectory = Trajectory(result, test);
  m.auc = trajectory_auc(m.trajectory, test.MeanLabel());
  m.last_box = result.last_box();
  m.density = m.trajectory[result.last_index].density;
  m.restricted = restricted_dims(m.last_box, box0);
  m.volume_fraction = NormalizedVolume(m.last_box, box0);
  return m;
}

double MeanPairwiseConsistency(std::span<const HyperBox> boxes, const HyperBox& box0) {
  if (boxes.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size(); ++j) {
      sum += consistency(boxes[i], boxes[j], box0);
      ++pairs;
    }
  }
  return sum / static_cast<double>(pairs);
}

std::string_view MetricName(Metric metric) {
  switch (metric) {
    case Metric::kAuc: return "auc";
    case Metric::kDensity: return "density";
    case Metric::kInterpretability: return "interp";
    case Metric::kConsistency: return "consistency";
  }
  return "unknown";
}

double CellResult::Value(Metric metric) const {
  switch (metric) {
    case Metric::kAuc: return auc;
    case Metric::kDensity: return density;
    case Metric::kInterpretability: return restricted;
    case Metric::kConsistency: return consistency;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

const CellResult* BenchmarkResult::Find(std::string_view dgp, std::size_t size,
                                        Method method) const {
  for (const auto& c : cells) {
    if (c.dgp == dgp && c.size == size && c.method == method) return &c;
  }
  return nullptr;
}

RankCount BenchmarkResult::Ranks(Metric metric, std::size_t size, Method method) const {
  RankCount rc;
  const bool lower_better = metric == Metric::kInterpretability;
  for (const auto& dgp : dgps) {
    std::vector<std::pair<double, Method>> ranked;
    for (Method m : kAllMethods) {
      if (std::find(methods.begin(), methods.end(), m) == methods.end()) continue;
      const CellResult* c = Find(dgp, size, m);
      if (!c || c->runs_ok == 0 || std::isnan(c->Value(metric))) continue;
      ranked.emplace_back(lower_better ? -c->Value(metric) : c->Value(metric), m);
    }
    // stable: equal values keep column order
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    if (!ranked.empty() && ranked[0].second == method) ++rc.first;
    if (ranked.size() > 1 && ranked[1].second == method) ++rc.second;
  }
  return rc;
}

double BenchmarkResult::Average(Metric metric, std::size_t size, Method method) const {
  std::vector<double> values;
  for (const auto& dgp : dgps) {
    const CellResult* c = Find(dgp, size, method);
    if (c && c->runs_ok > 0 && !std::isnan(c->Value(metric))) values.push_back(c->Value(metric));
  }
  return Mean(values);
}

std::uint64_t TestSetSeed(std::uint64_t base_seed, std::string_view dgp) {
  return DeriveSeed(base_seed, {HashName(dgp), 0});
}

std::uint64_t ReplicationSeed(std::uint64_t base_seed, std::string_view dgp,
                              std::size_t size, std::size_t rep) {
  return DeriveSeed(base_seed, {HashName(dgp), 1, size, rep});
}

BenchmarkResult run_benchmark(const ExperimentConfig& cfg, const DgpRegistry& registry) {
  cfg.Validate();
  for (const auto& name : cfg.dgps) registry.Find(name);

  BenchmarkResult result;
  result.methods = cfg.methods;
  result.dgps = cfg.dgps;
  result.sizes = cfg.sizes;
  const std::size_t jobs = cfg.jobs ? cfg.jobs : Parallelism();
  const bool want_rf =
      std::any_of(cfg.methods.begin(), cfg.methods.end(),
                  [](Method m) { return m == Method::kRFl || m == Method::kRFp; });

  for (const auto& name : cfg.dgps) {
    const DgpSpec& spec = registry.Find(name);
    const HyperBox& box0 = spec.input_box;
    const bool halton = spec.preferred_sampler == Sampler::kHalton;
    const Dataset test = GenerateDataset(spec, cfg.test_size, spec.preferred_sampler,
                                         TestSetSeed(cfg.base_seed, name), 0);

    for (std::size_t size : cfg.sizes) {
      // per rep, per method: metrics or an error message
      struct Outcome {
        std::optional<RunMetrics> metrics;
        std::string error;
      };
      std::vector<std::vector<Outcome>> outcomes(cfg.reps,
                                                 std::vector<Outcome>(cfg.methods.size()));
      ParallelFor(cfg.reps, jobs, [&](std::size_t rep) {
        const std::uint64_t seed = ReplicationSeed(cfg.base_seed, name, size, rep);
        Dataset d;
        try {
          d = GenerateDataset(spec, size, spec.preferred_sampler,
                              DeriveSeed(seed, {kDataStream}),
                              halton ? cfg.test_size + rep * size : 0);
          if (cfg.noise_level > 0.0) {
            d.y = flip_noise(d.y, cfg.noise_level, DeriveSeed(seed, {kNoiseStream}));
          }
        } catch (const std::exception& e) {
          for (auto& o : outcomes[rep]) o.error = std::string("data: ") + e.what();
          return;
        }
        const std::uint64_t run_seed = DeriveSeed(seed, {kDiscoverStream});
        std::optional<Relabel> relabel;
        std::string relabel_error;
        if (want_rf) {
          try {
            relabel = BuildRelabel(d, box0, cfg, run_seed, {});
          } catch (const std::exception& e) {
            relabel_error = e.what();
          }
        }
        for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
          const Method m = cfg.methods[mi];
          try {
            DiscoveryResult r;
            if (m == Method::kRFl || m == Method::kRFp) {
              if (!relabel) Fail(ErrorKind::kData, relabel_error);
              r = DiscoverRf(m, d, d, box0, cfg, run_seed, *relabel);
            } else {
              r = DiscoverBasic(m, d, d, box0, cfg, run_seed);
            }
            outcomes[rep][mi].metrics = EvaluateRun(r, test, box0);
            outcomes[rep][mi].metrics->rep = rep;
          } catch (const std::exception& e) {
            outcomes[rep][mi].error = e.what();
          }
        }
      });

      for (std::size_t mi = 0; mi < cfg.methods.size(); ++mi) {
        CellResult cell;
        cell.dgp = name;
        cell.size = size;
        cell.method = cfg.methods[mi];
        std::vector<double> auc, density, restricted, volume;
        std::vector<HyperBox> last_boxes;
        for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
          const Outcome& o = outcomes[rep][mi];
          if (!o.metrics) {
            ++cell.runs_failed;
            result.failures.push_back(
                {name, size, std::string(MethodName(cell.method)), rep, o.error});
            continue;
          }
          ++cell.runs_ok;
          auc.push_back(100.0 * o.metrics->auc);
          if (o.metrics->density) density.push_back(100.0 * *o.metrics->density);
          restricted.push_back(static_cast<double>(o.metrics->restricted));
          volume.push_back(100.0 * o.metrics->volume_fraction);
          last_boxes.push_back(o.metrics->last_box);
          cell.runs.push_back(*o.metrics);
        }
        cell.auc = Mean(auc);
        cell.density = Mean(density);
        cell.restricted = Mean(restricted);
        cell.volume = Mean(volume);
        cell.consistency = 100.0 * MeanPairwiseConsistency(last_boxes, box0);
        result.cells.push_back(std::move(cell));
      }
    }
  }
  return result;
}

}  // namespace sdre
