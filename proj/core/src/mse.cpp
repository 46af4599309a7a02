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

#include "sdre/mse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "sdre/error.hpp"
#include "sdre/parallel.hpp"
#include "sdre/random.hpp"
#include "sdre/sampling.hpp"

namespace sdre {

namespace {

double Mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Unbiased sample variance; zero for fewer than two values.
double Variance(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  const double m = Mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

struct FitOutcome {
  double mu_hat = 0.0;
  double bias = 0.0;
  double variance = 0.0;
};

}  // namespace

MseReport mse_experiment(const DgpSpec& dgp, const HyperBox& box_b, const MseConfig& cfg) {
  box_b.ValidateNonDegenerate();
  if (box_b.dims() != dgp.dims || !box_b.Within(dgp.input_box)) {
    Fail(ErrorKind::kInvalidBox, "box b must lie inside the dgp input box");
  }
  if (cfg.n < 2 || cfg.k < 1 || cfg.reps_outer < 2 || cfg.reps_inner < 2 ||
      cfg.ground_truth < 1 || cfg.pool_cap < 1) {
    Fail(ErrorKind::kInvalidConfig, "mse: n, k, reps and pool sizes must be positive");
  }

  MseReport report;
  report.box_b = box_b;
  report.n = cfg.n;
  report.k = cfg.k;

  // Inputs are uniform, so points of b are uniform in b.
  {
    const PointMatrix gt = uniform_sample(cfg.ground_truth, box_b, DeriveSeed(cfg.seed, {0}));
    const auto y = evaluate(dgp, gt, DeriveSeed(cfg.seed, {1}));
    if (y.empty()) Fail(ErrorKind::kUndefinedMu, "box b holds no ground-truth point");
    report.mu_gt = Mean(y);
  }

  const double share = NormalizedVolume(box_b, dgp.input_box);
  std::vector<FitOutcome> fits(cfg.reps_outer);
  std::vector<char> usable(cfg.reps_outer, 0);
  ParallelFor(cfg.reps_outer, 1, [&](std::size_t i) {
    const std::uint64_t seed = DeriveSeed(cfg.seed, {2, i});
    const Dataset d = GenerateDataset(dgp, cfg.n, Sampler::kLhs, seed);
    double sum = 0.0;
    std::size_t inside = 0;
    for (std::size_t r = 0; r < d.size(); ++r) {
      if (box_b.Contains(d.x.row(r))) {
        sum += d.y[r];
        ++inside;
      }
    }
    if (inside == 0) return;
    usable[i] = 1;
    fits[i].mu_hat = sum / static_cast<double>(inside);

    ForestConfig fc = cfg.forest;
    fc.seed = DeriveSeed(seed, {3});
    if (cfg.tune_mtry) {
      const auto grid = DefaultMtryGrid(d.dims());
      fc = tune_mtry(d, grid, fc);
    }
    const Forest forest = fit(d, fc);

    Rng rng(DeriveSeed(seed, {4}));
    std::binomial_distribution<std::size_t> count(cfg.k, share);
    std::vector<std::size_t> ks(cfg.reps_inner);
    std::size_t total = 0;
    for (auto& k : ks) {
      do {
        k = count(rng.engine());
      } while (k == 0);
      total += k;
    }

    std::vector<double> mu_a(cfg.reps_inner);
    if (total > cfg.pool_cap) {
      // one fixed pool of labelled points in b, resampled with replacement
      const PointMatrix pool = uniform_sample(cfg.pool_cap, box_b, DeriveSeed(seed, {5}));
      const auto p = predict_proba(forest, pool);
      for (std::size_t j = 0; j < cfg.reps_inner; ++j) {
        double s = 0.0;
        for (std::size_t t = 0; t < ks[j]; ++t) s += p[rng.Below(p.size())];
        mu_a[j] = s / static_cast<double>(ks[j]);
      }
    } else {
      for (std::size_t j = 0; j < cfg.reps_inner; ++j) {
        const PointMatrix pts = uniform_sample(ks[j], box_b, DeriveSeed(seed, {6, j}));
        mu_a[j] = Mean(predict_proba(forest, pts));
      }
    }
    fits[i].bias = report.mu_gt - Mean(mu_a);
    fits[i].variance = Variance(mu_a);
  });

  double acc = 0.0;
  for (std::size_t i = 0; i < fits.size(); ++i) {
    if (!usable[i]) continue;
    report.mu_hat.push_back(fits[i].mu_hat);
    report.bias.push_back(fits[i].bias);
    report.variance.push_back(fits[i].variance);
    acc += cfg.formula == MseAmFormula::kDecomposition
               ? fits[i].bias * fits[i].bias + fits[i].variance
               : fits[i].bias + fits[i].variance;
  }
  if (report.mu_hat.size() < 2) {
    Fail(ErrorKind::kUndefinedMu, "too few data sets place a point in box b");
  }
  report.mse_o = Variance(report.mu_hat);
  report.mse_am = cfg.formula == MseAmFormula::kDecomposition
                      ? acc / static_cast<double>(report.bias.size())
                      : acc;
  return report;
}

}  // namespace sdre
