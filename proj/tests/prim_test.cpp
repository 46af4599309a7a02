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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sdre/dgp.hpp"
#include "sdre/error.hpp"
#include "sdre/metrics.hpp"
#include "sdre/prim.hpp"
#include "sdre/random.hpp"
#include "sdre/sampling.hpp"
#include "test_util.hpp"

namespace sdre {
namespace {

using testing::MakeDataset;
using testing::MeanInside;
using testing::OracleCandidates;
using testing::RandomInstance;

TEST(PeelConfig, Validation) {
  PeelConfig c;
  EXPECT_NO_THROW(c.Validate(3));
  c.alpha = 0.5;
  EXPECT_THROW(c.Validate(3), Error);
  c.alpha = 0.0;
  EXPECT_THROW(c.Validate(3), Error);
  c = PeelConfig{};
  c.minpts = 0;
  EXPECT_THROW(c.Validate(3), Error);
  c = PeelConfig{};
  c.dims = {0, 0};
  EXPECT_THROW(c.Validate(3), Error);
  c.dims = {3};
  EXPECT_THROW(c.Validate(3), Error);
}

TEST(Peel, AllPositiveLabelsSelectBox0) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < 100; ++i) rows.push_back({i / 100.0, (i * 37 % 100) / 100.0});
  const auto d = MakeDataset(rows, std::vector<double>(100, 1.0));
  const auto seq = peel(d, d, HyperBox::Unit(2), PeelConfig{});
  EXPECT_EQ(seq.selected_index, 0u);
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq.boxes[0], HyperBox::Unit(2));
  EXPECT_EQ(seq.val_means[0], 1.0);
}

TEST(Peel, FirstCutRemovesPureNegativeTopSlice) {
  // x2 = i/20 with the top two rows negative; x1 = 7i mod 20 / 20. The rows
  // at both ends of x1 and the bottom of x2 are positive.
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (int i = 0; i < 20; ++i) {
    rows.push_back({(i * 7 % 20) / 20.0, i / 20.0});
    const bool end = i == 0 || i == 1 || i == 3 || i == 14 || i == 17;
    y.push_back(i >= 18 ? 0.0 : (end || i % 2 == 0) ? 1.0 : 0.0);
  }
  const auto d = MakeDataset(rows, y);

  PeelConfig cfg;
  cfg.alpha = 0.1;
  cfg.minpts = 2;
  std::vector<PeelStep> trace;
  peel(d, d, HyperBox::Unit(2), cfg, &trace);
  ASSERT_FALSE(trace.empty());

  const auto cands = OracleCandidates(d, HyperBox::Unit(2), 0.1);
  ASSERT_EQ(cands.size(), 4u);
  const auto best = std::max_element(cands.begin(), cands.end(),
                                     [](const auto& a, const auto& b) { return a.mean < b.mean; });
  EXPECT_EQ(best->dim, 1u);
  EXPECT_TRUE(best->top);
  for (const auto& c : cands) {
    if (&c != &*best) EXPECT_LT(c.mean, best->mean);
  }
  const auto& chosen = trace[0].candidates[trace[0].chosen];
  EXPECT_EQ(chosen.dim, 1u);
  EXPECT_TRUE(chosen.top);
  EXPECT_EQ(chosen.retained, 18u);
}

TEST(Peel, TooFewPointsReturnsBox0) {
  const auto d = RandomInstance(1, 20, 2);
  const auto seq = peel(d, d, HyperBox::Unit(2), PeelConfig{});
  ASSERT_EQ(seq.size(), 1u);
  EXPECT_EQ(seq.boxes[0], HyperBox::Unit(2));
}

TEST(Peel, EmptyValidationIsError) {
  const auto d = RandomInstance(1, 50, 2);
  const Dataset empty(PointMatrix(0, 2), {});
  try {
    peel(d, empty, HyperBox::Unit(2), PeelConfig{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidationUndefined);
  }
}

// Nestedness, replay against the oracle, shrinkage and determinism.
TEST(Peel, PropertiesOnRandomInstances) {
  Rng rng(2024);
  for (int inst = 0; inst < 200; ++inst) {
    const std::size_t dims = 1 + rng.Below(5);
    const std::size_t n = 40 + rng.Below(300);
    const bool soft = inst % 4 == 3;
    const auto d = RandomInstance(rng.Bits(), n, dims, soft);
    const auto d_val = inst % 2 ? RandomInstance(rng.Bits(), n, dims, soft) : d;
    PeelConfig cfg;
    cfg.alpha = 0.02 + 0.2 * rng.Uniform();
    cfg.minpts = 5 + rng.Below(20);
    const HyperBox box0 = HyperBox::Unit(dims);

    std::vector<PeelStep> trace;
    const auto seq = peel(d, d_val, box0, cfg, &trace);
    SCOPED_TRACE("instance " + std::to_string(inst));

    ASSERT_GE(seq.size(), 1u);
    EXPECT_EQ(seq.boxes[0], box0);
    for (std::size_t j = 0; j + 1 < seq.size(); ++j) {
      EXPECT_TRUE(seq.boxes[j + 1].Within(seq.boxes[j]));
      const auto keep = static_cast<std::size_t>(std::ceil((1 - cfg.alpha) * seq.n_train[j] - 1e-9));
      EXPECT_LT(seq.n_train[j + 1], seq.n_train[j]);
      EXPECT_GE(seq.n_train[j + 1], keep);
    }
    const auto argmax = std::max_element(seq.val_means.begin(), seq.val_means.end());
    EXPECT_EQ(seq.selected_index, static_cast<std::size_t>(argmax - seq.val_means.begin()));
    EXPECT_EQ(seq.selected_index + 1, seq.size());

    // replay every recorded iteration with the oracle
    HyperBox box = box0;
    for (std::size_t j = 0; j < trace.size(); ++j) {
      const auto oracle = OracleCandidates(d, box, cfg.alpha);
      const auto& step = trace[j];
      ASSERT_EQ(step.candidates.size(), oracle.size()) << "iteration " << j;
      for (std::size_t c = 0; c < oracle.size(); ++c) {
        EXPECT_EQ(step.candidates[c].dim, oracle[c].dim);
        EXPECT_EQ(step.candidates[c].top, oracle[c].top);
        EXPECT_EQ(step.candidates[c].retained, oracle[c].retained);
        EXPECT_NEAR(step.candidates[c].mean, oracle[c].mean, 1e-12);
      }
      const auto& chosen = oracle[step.chosen];
      for (const auto& c : oracle) EXPECT_GE(chosen.mean, c.mean - 1e-12);
      (chosen.top ? box.upper : box.lower)[chosen.dim] = chosen.threshold;
      if (j + 1 < seq.size()) {
        EXPECT_EQ(seq.boxes[j + 1], box);
        EXPECT_NEAR(seq.val_means[j + 1], MeanInside(d_val, box), 1e-12);
      }
    }

    const auto again = peel(d, d_val, box0, cfg);
    EXPECT_EQ(again.boxes, seq.boxes);
    EXPECT_EQ(again.val_means, seq.val_means);
  }
}

TEST(Peel, RecoversDgp3Rule) {
  DgpSpec dgp = DgpRegistry::Builtin().Find("dgp3");
  dgp.intrinsic_noise = 0.0;
  const auto test = GenerateDataset(dgp, 10000, Sampler::kUniform, 99);
  int good = 0;
  for (int run = 0; run < 50; ++run) {
    const auto d = GenerateDataset(dgp, 1000, Sampler::kLhs, 1000 + run);
    const auto seq = peel(d, d, dgp.input_box, PeelConfig{});
    const auto cd = coverage_density(seq.selected(), test);
    good += restricted_dims(seq.selected(), dgp.input_box) == 2 && cd.density &&
            *cd.density >= 0.95;
  }
  EXPECT_GE(good, 45);
}

TEST(Peel, NoSignalGivesBaseRateDensity) {
  Rng rng(77);
  double sum = 0;
  const int runs = 30;
  for (int run = 0; run < runs; ++run) {
    const auto x = lhs_sample(400, HyperBox::Unit(4), rng.Bits());
    std::vector<double> y(400);
    for (auto& v : y) v = rng.Uniform() < 0.3;
    const Dataset d(x, y);
    const auto seq = peel(d, d, HyperBox::Unit(4), PeelConfig{});
    const auto tx = uniform_sample(5000, HyperBox::Unit(4), rng.Bits());
    std::vector<double> ty(5000);
    for (auto& v : ty) v = rng.Uniform() < 0.3;
    sum += coverage_density(seq.selected(), Dataset(tx, ty)).density.value_or(0.3);
  }
  EXPECT_NEAR(sum / runs, 0.3, 0.04);
}

TEST(Paste, Box0IsFixedPoint) {
  const auto d = RandomInstance(4, 200, 3);
  EXPECT_EQ(paste(d, HyperBox::Unit(3), HyperBox::Unit(3), 0.01, 1), HyperBox::Unit(3));
}

TEST(Paste, GrowsGeometricallyToTheBoundary) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i <= 10000; ++i) rows.push_back({i / 10000.0});
  const auto d = MakeDataset(rows, std::vector<double>(rows.size(), 1.0));
  for (double beta : {0.01, 0.05, 0.2}) {
    // the width after k steps is 0.5 (1 + beta)^k, so the boundary is hit
    // at step ceil(ln 2 / ln(1 + beta)); one step earlier it is not
    const int k = static_cast<int>(std::ceil(std::log(2.0) / std::log1p(beta)));
    EXPECT_LT(0.5 * std::pow(1 + beta, k - 1), 1.0);
    EXPECT_GE(0.5 * std::pow(1 + beta, k), 1.0);
    const auto out = paste(d, HyperBox({0}, {0.5}), HyperBox::Unit(1), beta, 3);
    EXPECT_EQ(out, HyperBox::Unit(1)) << beta;
    // the same number of steps, done by hand, reaches the boundary
    HyperBox b({0}, {0.5});
    int steps = 0;
    while (b.upper[0] < 1.0) {
      b.upper[0] = std::min(1.0, b.upper[0] + beta * b.width(0));
      ++steps;
    }
    EXPECT_EQ(steps, k);
  }
}

TEST(Paste, PureNegativeNeighbourhoodLeavesBoxUnchanged) {
  std::vector<std::vector<double>> rows;
  std::vector<double> y;
  for (int i = 0; i <= 100; ++i) {
    const double v = i / 100.0;
    rows.push_back({v, v});
    const bool inside = v >= 0.4 && v <= 0.6;
    y.push_back(inside ? (i % 2) : 0.0);
  }
  const auto d = MakeDataset(rows, y);
  const HyperBox box({0.4, 0.4}, {0.6, 0.6});
  EXPECT_EQ(paste(d, box, HyperBox::Unit(2), 0.05, 7), box);
}

TEST(Paste, ResultContainsInputAndKeepsMean) {
  Rng rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto d = RandomInstance(rng.Bits(), 300, 3);
    const auto seq = peel(d, d, HyperBox::Unit(3), PeelConfig{});
    const auto out = paste(d, seq.selected(), HyperBox::Unit(3), 0.01, trial);
    EXPECT_TRUE(seq.selected().Within(out));
    EXPECT_TRUE(out.Within(HyperBox::Unit(3)));
    EXPECT_GE(MeanInside(d, out), MeanInside(d, seq.selected()) - 1e-12);
    EXPECT_EQ(out, paste(d, seq.selected(), HyperBox::Unit(3), 0.01, trial));
  }
}

TEST(Paste, BoxOutsideBox0Rejected) {
  const auto d = RandomInstance(4, 50, 1);
  EXPECT_THROW(paste(d, HyperBox({-0.5}, {0.5}), HyperBox::Unit(1), 0.01, 1), Error);
  EXPECT_THROW(paste(d, HyperBox({0.1}, {0.5}), HyperBox::Unit(1), 0.0, 1), Error);
}

TEST(Bumping, DegenerateRunReducesToPeel) {
  Rng rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = RandomInstance(rng.Bits(), 200, 3);
    PeelConfig cfg;
    cfg.seed = trial;
    const auto seq = peel(d, d, HyperBox::Unit(3), cfg);
    const auto out = bumping(d, d, HyperBox::Unit(3), cfg, {3, 1, false});
    ASSERT_FALSE(out.empty());
    for (const auto& b : out) {
      EXPECT_NE(std::find(seq.boxes.begin(), seq.boxes.end(), b.box), seq.boxes.end());
    }
  }
}

TEST(Bumping, FrontIsMutuallyNonDominated) {
  Rng rng(32);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = RandomInstance(rng.Bits(), 200, 4);
    const auto d_val = RandomInstance(rng.Bits(), 200, 4);
    PeelConfig cfg;
    cfg.seed = rng.Bits();
    const auto out = bumping(d, d_val, HyperBox::Unit(4), cfg, {2, 10, true});
    ASSERT_FALSE(out.empty());
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto cd = coverage_density(out[i].box, d_val);
      EXPECT_DOUBLE_EQ(cd.coverage, out[i].coverage);
      EXPECT_LE(restricted_dims(out[i].box, HyperBox::Unit(4)), 2u);
      if (i > 0) EXPECT_LE(out[i].coverage, out[i - 1].coverage);
      for (std::size_t j = 0; j < out.size(); ++j) {
        EXPECT_FALSE(Dominates({out[j].coverage, out[j].density},
                               {out[i].coverage, out[i].density}));
      }
    }
    const auto again = bumping(d, d_val, HyperBox::Unit(4), cfg, {2, 10, true});
    ASSERT_EQ(again.size(), out.size());
    for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(again[i].box, out[i].box);
  }
}

TEST(Bumping, TooManyAttributesRejected) {
  const auto d = RandomInstance(1, 100, 3);
  try {
    bumping(d, d, HyperBox::Unit(3), PeelConfig{}, {4, 5, true});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidConfig);
  }
}

TEST(Bumping, DsgcBoxesRestrictAtMostFourDims) {
  const auto& dgp = DgpRegistry::Builtin().Find("dsgc");
  const auto d = GenerateDataset(dgp, 400, Sampler::kHalton, 0, 500);
  const std::size_t t = static_cast<std::size_t>(std::ceil(std::sqrt(12.0)));
  ASSERT_EQ(t, 4u);
  PeelConfig cfg;
  cfg.seed = 5;
  const auto out = bumping(d, d, dgp.input_box, cfg, {t, 50, true});
  ASSERT_FALSE(out.empty());
  for (const auto& b : out) EXPECT_LE(restricted_dims(b.box, dgp.input_box), 4u);
}

}  // namespace
}  // namespace sdre
