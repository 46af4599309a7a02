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
#include <numbers>
#include <numeric>

#include "sdre/dgp.hpp"
#include "sdre/error.hpp"
#include "sdre/random.hpp"
#include "sdre/sampling.hpp"

namespace sdre {
namespace {

DgpSpec Quiet(const std::string& name) {
  DgpSpec s = DgpRegistry::Builtin().Find(name);
  s.intrinsic_noise = 0.0;
  return s;
}

double Label(const DgpSpec& dgp, std::vector<double> x) {
  PointMatrix m(0, x.size());
  m.AppendRow(x);
  return evaluate(dgp, m, 1)[0];
}

ErrorKind KindOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kData;
}

TEST(Registry, HoldsTheMandatorySet) {
  const auto& reg = DgpRegistry::Builtin();
  for (const char* name : {"dgp3", "ellipse", "dsgc", "morris", "sobol", "ishigami",
                           "borehole", "hart3", "hart4", "hart6sc", "moon10low"}) {
    EXPECT_TRUE(reg.Contains(name)) << name;
  }
  for (const auto& name : reg.Names()) {
    const auto& s = reg.Find(name);
    EXPECT_LE(s.influential, s.dims) << name;
    EXPECT_EQ(s.input_box.dims(), s.dims) << name;
    EXPECT_GT(s.expected_share, 0.0) << name;
    EXPECT_LT(s.expected_share, 1.0) << name;
  }
  EXPECT_EQ(reg.Find("dsgc").dims, 12u);
  EXPECT_EQ(reg.Find("ellipse").dims, 15u);
}

TEST(Registry, UnknownNameRejected) {
  EXPECT_EQ(KindOf([] { DgpRegistry::Builtin().Find("dgp9"); }), ErrorKind::kUnknownDgp);
}

TEST(Registry, PluginCanBeAdded) {
  DgpRegistry reg;
  DgpSpec s;
  s.name = "half";
  s.dims = 2;
  s.influential = 1;
  s.input_box = HyperBox::Unit(2);
  s.threshold = 0.5;
  s.expected_share = 0.5;
  s.function = [](std::span<const double> x) { return x[0]; };
  reg.Add(s);
  const auto d = GenerateDataset(reg.Find("half"), 1000, Sampler::kLhs, 3);
  EXPECT_NEAR(d.MeanLabel(), 0.5, 1e-9);  // LHS puts exactly 500 below 0.5
}

TEST(Evaluate, Dgp3Rule) {
  const auto dgp = Quiet("dgp3");
  EXPECT_EQ(Label(dgp, {0.7, 0.9, 0.1, 0.1, 0.1}), 1.0);
  EXPECT_EQ(Label(dgp, {0.5, 0.9, 0.1, 0.1, 0.1}), 0.0);
  EXPECT_EQ(Label(dgp, {0.7, 0.8, 0.1, 0.1, 0.1}), 0.0);
}

TEST(Evaluate, EllipseCentreIsInside) {
  const auto dgp = Quiet("ellipse");
  const auto c = functions::EllipseCenter();
  EXPECT_DOUBLE_EQ(functions::Ellipse(c), 0.0);
  EXPECT_EQ(Label(dgp, {c.begin(), c.end()}), 1.0);
}

TEST(Evaluate, ThresholdIsStrict) {
  DgpSpec s = Quiet("moon10low");
  // x1 + x2 + 3 x1 x3 = 1.5 exactly at (0.5, 1, 0)
  EXPECT_DOUBLE_EQ(functions::Moon10low(std::vector<double>{0.5, 1.0, 0.0}), 1.5);
  EXPECT_EQ(Label(s, {0.5, 1.0, 0.0}), 0.0);
  EXPECT_EQ(Label(s, {0.5, 0.99, 0.0}), 1.0);
}

TEST(Evaluate, DimensionMismatchIsShapeError) {
  const auto dgp = Quiet("dgp3");
  EXPECT_EQ(KindOf([&] { evaluate(dgp, PointMatrix(3, 4), 1); }), ErrorKind::kShape);
}

TEST(Evaluate, DeterministicPerSeed) {
  const auto& dgp = DgpRegistry::Builtin().Find("dgp3");
  const auto x = lhs_sample(2000, dgp.input_box, 4);
  EXPECT_EQ(evaluate(dgp, x, 9), evaluate(dgp, x, 9));
}

TEST(Evaluate, IntrinsicNoiseFlipsTwoPerThousand) {
  const auto& dgp = DgpRegistry::Builtin().Find("dgp3");
  const auto quiet = Quiet("dgp3");
  const auto x = lhs_sample(1000, dgp.input_box, 4);
  const auto a = evaluate(dgp, x, 9);
  const auto b = evaluate(quiet, x, 9);
  std::size_t diff = 0;
  for (std::size_t i = 0; i < a.size(); ++i) diff += a[i] != b[i];
  EXPECT_EQ(diff, 2u);
}

// Reference values of the standard test functions.
TEST(Functions, KnownValues) {
  using namespace functions;
  const double pi = std::numbers::pi;
  EXPECT_NEAR(Ishigami(std::vector<double>{0, 0, 0}), 0.0, 1e-12);
  EXPECT_NEAR(Ishigami(std::vector<double>{pi / 2, pi / 2, 0}), 8.0, 1e-12);
  EXPECT_NEAR(Ishigami(std::vector<double>{pi / 2, 0, 2}), 1.0 + 0.1 * 16, 1e-12);
  // global minimum of the 3-d Hartmann function
  EXPECT_NEAR(Hart3(std::vector<double>{0.114614, 0.555649, 0.852547}), -3.86278, 1e-4);
  // global minimum of the 6-d Hartmann function is -3.32237
  EXPECT_NEAR(Hart6sc(std::vector<double>{0.20169, 0.150011, 0.476874, 0.275332, 0.311652,
                                          0.6573}),
              -std::log(3.32237), 1e-4);
  // the first factor of the g-function vanishes at x1 = 0.5
  EXPECT_DOUBLE_EQ(SobolG(std::vector<double>(8, 0.5)), 0.0);
  double g0 = 1.0;
  for (double a : {0.0, 1.0, 4.5, 9.0, 99.0, 99.0, 99.0, 99.0}) g0 *= (2.0 + a) / (1.0 + a);
  EXPECT_NEAR(SobolG(std::vector<double>(8, 0.0)), g0, 1e-12);
  EXPECT_DOUBLE_EQ(Moon10low(std::vector<double>{0.2, 0.3, 0.5}), 0.2 + 0.3 + 0.3);
}

TEST(Functions, BoreholeNominalFlow) {
  // Nominal inputs give a flow of about 72.9 m^3/yr in the standard setup.
  const std::vector<double> x = {0.10, 25050.0, 89335.0, 1050.0, 89.55, 760.0, 1400.0, 10950.0};
  const double lr = std::log(x[1] / x[0]);
  const double expected = 2 * std::numbers::pi * x[2] * (x[3] - x[5]) /
                          (lr * (1 + 2 * x[6] * x[2] / (lr * x[0] * x[0] * x[7]) + x[2] / x[4]));
  EXPECT_NEAR(functions::Borehole(x), expected, 1e-9);
  EXPECT_GT(expected, 50.0);
  EXPECT_LT(expected, 100.0);
}

TEST(Functions, MorrisShareNearThirtyPercent) {
  const auto dgp = Quiet("morris");
  const auto d = GenerateDataset(dgp, 100000, Sampler::kLhs, 17);
  EXPECT_NEAR(d.MeanLabel(), 0.301, 0.015);
}

TEST(Functions, MorrisCoefficientsAreStable) {
  // the same point evaluates identically across calls
  std::vector<double> x(20, 0.3);
  EXPECT_EQ(functions::Morris(x), functions::Morris(x));
}

TEST(FlipNoise, ZeroLevelIsIdentity) {
  const std::vector<double> y = {0, 1, 1, 0, 1};
  EXPECT_EQ(flip_noise(y, 0.0, 3), y);
}

TEST(FlipNoise, ExactCount) {
  std::vector<double> y(1000);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = i % 3 == 0;
  for (double level : {0.002, 0.05, 0.25, 0.5}) {
    const auto out = flip_noise(y, level, 5);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < y.size(); ++i) diff += out[i] != y[i];
    EXPECT_EQ(diff, static_cast<std::size_t>(std::llround(level * 1000))) << level;
  }
}

TEST(FlipNoise, HalfLevelRandomisesLabels) {
  Rng rng(8);
  std::vector<double> y(400);
  for (auto& v : y) v = rng.Uniform() < 0.2;
  double mean = 0.0;
  const int seeds = 200;
  for (int s = 0; s < seeds; ++s) {
    const auto out = flip_noise(y, 0.5, s);
    mean += std::accumulate(out.begin(), out.end(), 0.0) / out.size();
  }
  EXPECT_NEAR(mean / seeds, 0.5, 0.02);
}

TEST(FlipNoise, TwiceKeepsMeanClose) {
  Rng rng(12);
  std::vector<double> y(2000);
  for (auto& v : y) v = rng.Uniform() < 0.3;
  const double m0 = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  for (double level : {0.01, 0.1, 0.3}) {
    const auto twice = flip_noise(flip_noise(y, level, 1), level, 2);
    const double m2 = std::accumulate(twice.begin(), twice.end(), 0.0) / y.size();
    EXPECT_LE(std::abs(m2 - m0), 2 * level * (1 - level)) << level;
  }
}

TEST(FlipNoise, DeterministicPerSeed) {
  std::vector<double> y(100, 0.0);
  EXPECT_EQ(flip_noise(y, 0.1, 4), flip_noise(y, 0.1, 4));
  EXPECT_NE(flip_noise(y, 0.1, 4), flip_noise(y, 0.1, 5));
}

TEST(FlipNoise, Errors) {
  EXPECT_EQ(KindOf([] { flip_noise(std::vector<double>{0, 0.5, 1}, 0.1, 1); }),
            ErrorKind::kInvalidLabel);
  EXPECT_EQ(KindOf([] { flip_noise(std::vector<double>{0, 1}, 0.6, 1); }),
            ErrorKind::kInvalidConfig);
  EXPECT_EQ(KindOf([] { flip_noise(std::vector<double>{0, 1}, -0.1, 1); }),
            ErrorKind::kInvalidConfig);
}

TEST(GenerateDataset, ShapeAndBox) {
  const auto& dgp = DgpRegistry::Builtin().Find("ishigami");
  const auto d = GenerateDataset(dgp, 300, Sampler::kUniform, 2);
  EXPECT_EQ(d.size(), 300u);
  EXPECT_EQ(d.dims(), 3u);
  EXPECT_TRUE(d.IsBinary());
  for (std::size_t r = 0; r < d.size(); ++r) EXPECT_TRUE(dgp.input_box.Contains(d.x.row(r)));
}

}  // namespace
}  // namespace sdre
