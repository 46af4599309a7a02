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
#include <set>
#include <sstream>

#include "sdre/dgp.hpp"
#include "sdre/error.hpp"
#include "sdre/forest.hpp"
#include "sdre/random.hpp"
#include "sdre/sampling.hpp"
#include "test_util.hpp"

namespace sdre {
namespace {

const DgpSpec& Dgp3() { return DgpRegistry::Builtin().Find("dgp3"); }

PointMatrix Probe(std::vector<double> x) {
  PointMatrix m(0, x.size());
  m.AppendRow(x);
  return m;
}

double SampleVariance(const std::vector<double>& v) {
  double m = 0;
  for (double x : v) m += x;
  m /= v.size();
  double s = 0;
  for (double x : v) s += (x - m) * (x - m);
  return s / (v.size() - 1);
}

TEST(Forest, SingleClassIsConstant) {
  const auto d = testing::MakeDataset({{0.1, 0.2}, {0.5, 0.9}, {0.3, 0.3}}, {1, 1, 1});
  ForestConfig cfg;
  cfg.n_trees = 20;
  const Forest f = fit(d, cfg);
  EXPECT_TRUE(f.degenerate());
  const auto p = predict_proba(f, uniform_sample(100, HyperBox::Unit(2), 1));
  EXPECT_TRUE(std::all_of(p.begin(), p.end(), [](double v) { return v == 1.0; }));
}

TEST(Forest, TreeCountAndLeafRange) {
  const auto d = GenerateDataset(Dgp3(), 400, Sampler::kLhs, 3);
  ForestConfig cfg;
  cfg.n_trees = 50;
  cfg.seed = 4;
  const Forest f = fit(d, cfg);
  EXPECT_EQ(f.trees().size(), 50u);
  EXPECT_FALSE(f.degenerate());
  for (const auto& t : f.trees()) {
    for (const auto& n : t.nodes()) {
      if (n.feature < 0) {
        EXPECT_GE(n.value, 0.0);
        EXPECT_LE(n.value, 1.0);
      }
    }
  }
}

TEST(Forest, Dgp3OobErrorMatchesHeldOutError) {
  const auto d = GenerateDataset(Dgp3(), 400, Sampler::kLhs, 5);
  ForestConfig cfg;
  cfg.seed = 6;
  const Forest f = fit(d, cfg);
  EXPECT_LE(f.oob_error(), 0.05);
  // oracle: misclassification on 10^4 fresh points
  const auto test = GenerateDataset(Dgp3(), 10000, Sampler::kUniform, 7);
  const auto lab = predict_label(f, test.x);
  double wrong = 0;
  for (std::size_t i = 0; i < lab.size(); ++i) wrong += lab[i] != test.y[i];
  EXPECT_LE(wrong / lab.size(), 0.05);
}

TEST(Forest, DeterministicPerSeed) {
  const auto d = GenerateDataset(Dgp3(), 300, Sampler::kLhs, 8);
  ForestConfig cfg;
  cfg.n_trees = 40;
  cfg.seed = 9;
  const auto probe = uniform_sample(500, HyperBox::Unit(5), 10);
  EXPECT_EQ(predict_proba(fit(d, cfg), probe), predict_proba(fit(d, cfg), probe));
  ForestConfig other = cfg;
  other.seed = 10;
  EXPECT_NE(predict_proba(fit(d, cfg), probe), predict_proba(fit(d, other), probe));
}

TEST(Forest, Dgp3ProbabilityMargins) {
  const auto d = GenerateDataset(Dgp3(), 400, Sampler::kLhs, 11);
  ForestConfig cfg;
  cfg.seed = 12;
  const Forest f = fit(d, cfg);
  EXPECT_GT(predict_proba(f, Probe({0.9, 0.95, 0.5, 0.5, 0.5}))[0], 0.8);
  EXPECT_LT(predict_proba(f, Probe({0.1, 0.1, 0.5, 0.5, 0.5}))[0], 0.2);
}

TEST(Forest, LabelIsThresholdedProbability) {
  Rng rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = testing::RandomInstance(rng.Bits(), 200, 3, trial % 2 == 1);
    ForestConfig cfg;
    cfg.n_trees = 25;
    cfg.seed = rng.Bits();
    const Forest f = fit(d, cfg);
    const auto probe = uniform_sample(2000, HyperBox::Unit(3), rng.Bits());
    const auto p = predict_proba(f, probe);
    const auto l = predict_label(f, probe);
    for (std::size_t i = 0; i < p.size(); ++i) {
      ASSERT_GE(p[i], 0.0);
      ASSERT_LE(p[i], 1.0);
      ASSERT_EQ(l[i], p[i] >= 0.5 ? 1.0 : 0.0);
    }
  }
}

TEST(Forest, ShapeMismatch) {
  const auto d = GenerateDataset(Dgp3(), 100, Sampler::kLhs, 1);
  ForestConfig cfg;
  cfg.n_trees = 5;
  const Forest f = fit(d, cfg);
  try {
    predict_proba(f, PointMatrix(3, 4));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kShape);
  }
}

TEST(Forest, ConfigErrors) {
  const auto d = GenerateDataset(Dgp3(), 100, Sampler::kLhs, 1);
  ForestConfig cfg;
  cfg.n_trees = 0;
  EXPECT_THROW(fit(d, cfg), Error);
  cfg.n_trees = 5;
  cfg.mtry = 6;
  EXPECT_THROW(fit(d, cfg), Error);
  EXPECT_THROW(fit(testing::MakeDataset({{0.1}, {0.2}}, {0, 2}), ForestConfig{}), Error);
}

// Every threshold is the midpoint of two distinct training values of its
// feature. Duplicating rows adds no distinct value, so no new split point.
TEST(Forest, DuplicatedRowsKeepTheSplitSet) {
  auto d = GenerateDataset(Dgp3(), 150, Sampler::kLhs, 14);
  std::vector<std::set<double>> mids(d.dims());
  for (std::size_t c = 0; c < d.dims(); ++c) {
    std::set<double> vals;
    for (std::size_t r = 0; r < d.size(); ++r) vals.insert(d.x(r, c));
    for (auto a = vals.begin(); a != vals.end(); ++a) {
      for (auto b = std::next(a); b != vals.end(); ++b) mids[c].insert((*a + *b) / 2);
    }
  }
  Dataset dup = d;
  for (std::size_t r = 0; r < 50; ++r) {
    dup.x.AppendRow(d.x.row(r));
    dup.y.push_back(d.y[r]);
  }
  ForestConfig cfg;
  cfg.n_trees = 30;
  for (const Dataset* data : {&d, &dup}) {
    const Forest f = fit(*data, cfg);
    for (const auto& t : f.trees()) {
      for (const auto& n : t.nodes()) {
        if (n.feature < 0) continue;
        const auto& m = mids[n.feature];
        // thresholds may be nudged below the upper value when the midpoint
        // rounds onto it
        const auto it = m.lower_bound(n.threshold - 1e-12);
        ASSERT_NE(it, m.end());
        EXPECT_NEAR(*it, n.threshold, 1e-12);
      }
    }
  }
}

TEST(Forest, OobErrorShrinksWithMoreData) {
  double err[3] = {0, 0, 0};
  const std::size_t sizes[3] = {400, 800, 1600};
  const int reps = 5;
  for (int rep = 0; rep < reps; ++rep) {
    for (int s = 0; s < 3; ++s) {
      const auto d = GenerateDataset(Dgp3(), sizes[s], Sampler::kLhs, 100 + rep * 3 + s);
      ForestConfig cfg;
      cfg.n_trees = 200;
      cfg.seed = rep;
      err[s] += fit(d, cfg).oob_error() / reps;
    }
  }
  EXPECT_LE(err[1], err[0] + 0.02);
  EXPECT_LE(err[2], err[1] + 0.02);
}

TEST(TuneMtry, SingletonGrid) {
  const auto d = GenerateDataset(Dgp3(), 200, Sampler::kLhs, 1);
  ForestConfig cfg;
  cfg.n_trees = 20;
  const std::vector<std::size_t> grid = {3};
  EXPECT_EQ(tune_mtry(d, grid, cfg).mtry, 3u);
}

TEST(TuneMtry, PicksLowestOobError) {
  const auto d = GenerateDataset(Dgp3(), 400, Sampler::kLhs, 2);
  ForestConfig cfg;
  cfg.n_trees = 100;
  cfg.seed = 3;
  const std::vector<std::size_t> grid = {1, 2, 5};
  const auto tuned = tune_mtry(d, grid, cfg);
  ForestConfig chosen = cfg;
  chosen.mtry = tuned.mtry;
  const double best = fit(d, chosen).oob_error();
  for (std::size_t m : grid) {
    ForestConfig c = cfg;
    c.mtry = m;
    EXPECT_LE(best, fit(d, c).oob_error()) << "mtry " << m;
  }
}

TEST(TuneMtry, PureNoise) {
  Rng rng(15);
  const std::size_t n = 400;
  const auto x = lhs_sample(n, HyperBox::Unit(5), 16);
  std::vector<double> y(n);
  for (auto& v : y) v = rng.Uniform() < 0.5;
  const Dataset d(x, y);
  ForestConfig cfg;
  cfg.n_trees = 200;
  const auto grid = DefaultMtryGrid(5);
  const double sigma = std::sqrt(0.25 / n);
  for (std::size_t m : grid) {
    ForestConfig c = cfg;
    c.mtry = m;
    EXPECT_NEAR(fit(d, c).oob_error(), 0.5, 2 * sigma + 0.02) << "mtry " << m;
  }
  EXPECT_GE(tune_mtry(d, grid, cfg).mtry, 1u);
}

TEST(TuneMtry, GridValidation) {
  const auto d = GenerateDataset(Dgp3(), 50, Sampler::kLhs, 1);
  EXPECT_THROW(tune_mtry(d, std::vector<std::size_t>{}, ForestConfig{}), Error);
  EXPECT_THROW(tune_mtry(d, std::vector<std::size_t>{0}, ForestConfig{}), Error);
  EXPECT_THROW(tune_mtry(d, std::vector<std::size_t>{6}, ForestConfig{}), Error);
}

TEST(DefaultMtryGrid, Values) {
  EXPECT_EQ(DefaultMtryGrid(5), (std::vector<std::size_t>{2, 5}));
  EXPECT_EQ(DefaultMtryGrid(12), (std::vector<std::size_t>{3, 6, 12}));
  EXPECT_EQ(DefaultMtryGrid(1), (std::vector<std::size_t>{1}));
  EXPECT_EQ(DefaultMtryGrid(3), (std::vector<std::size_t>{1, 3}));
}

TEST(Forest, SaveLoadRoundTrip) {
  const auto d = GenerateDataset(Dgp3(), 200, Sampler::kLhs, 17);
  ForestConfig cfg;
  cfg.n_trees = 15;
  const Forest f = fit(d, cfg);
  std::stringstream ss;
  f.Save(ss);
  const Forest g = Forest::Load(ss);
  const auto probe = uniform_sample(1000, HyperBox::Unit(5), 18);
  EXPECT_EQ(predict_proba(f, probe), predict_proba(g, probe));
  EXPECT_EQ(g.dims(), 5u);
  EXPECT_EQ(g.oob_error(), f.oob_error());
}

TEST(Forest, LoadRejectsGarbage) {
  std::stringstream bad("not a forest");
  EXPECT_THROW(Forest::Load(bad), Error);
  const auto d = GenerateDataset(Dgp3(), 100, Sampler::kLhs, 17);
  ForestConfig cfg;
  cfg.n_trees = 2;
  std::stringstream ss;
  fit(d, cfg).Save(ss);
  std::string text = ss.str();
  text.resize(text.size() / 2);
  std::stringstream cut(text);
  EXPECT_THROW(Forest::Load(cut), Error);
}

// On the slab x3 > 0.95 the forest-probability mean over 20 fresh points
// varies less across data sets than the mean of the ~20 simulator labels.
TEST(Forest, ProbabilityMeanHasLowerVariance) {
  const HyperBox slab({0, 0, 0.95, 0, 0}, {1, 1, 1, 1, 1});
  std::vector<double> mu_hat, mu_am;
  Rng rng(19);
  for (int rep = 0; rep < 200; ++rep) {
    const auto d = GenerateDataset(Dgp3(), 400, Sampler::kLhs, rng.Bits());
    double s = 0;
    std::size_t k = 0;
    for (std::size_t r = 0; r < d.size(); ++r) {
      if (slab.Contains(d.x.row(r))) {
        s += d.y[r];
        ++k;
      }
    }
    mu_hat.push_back(s / k);
    ForestConfig cfg;
    cfg.n_trees = 100;
    cfg.seed = rng.Bits();
    const auto p = predict_proba(fit(d, cfg), uniform_sample(k, slab, rng.Bits()));
    double m = 0;
    for (double v : p) m += v;
    mu_am.push_back(m / p.size());
  }
  EXPECT_LE(SampleVariance(mu_am), SampleVariance(mu_hat));
}

}  // namespace
}  // namespace sdre
