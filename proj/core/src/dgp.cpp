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

#include "sdre/dgp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "sdre/error.hpp"
#include "sdre/parallel.hpp"
#include "sdre/random.hpp"

namespace sdre {
namespace functions {
namespace {

constexpr std::array<double, 15> kEllipseW = {
    0.353, 0.434, 0.899, 0.373, 0.278, 0.164, 0.927, 0.769,
    0.975, 0.606, 0.0,   0.0,   0.0,   0.0,   0.0};
constexpr std::array<double, 15> kEllipseC = {
    0.975, 0.843, 0.772, 0.325, 0.805, 0.945, 0.221, 0.732,
    0.289, 0.6,   0.0,   0.0,   0.0,   0.0,   0.0};

constexpr std::array<double, 4> kHartAlpha = {1.0, 1.2, 3.0, 3.2};
constexpr double kHart3A[4][3] = {
    {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}, {3.0, 10.0, 30.0}, {0.1, 10.0, 35.0}};
constexpr double kHart3P[4][3] = {{0.3689, 0.1170, 0.2673},
                                  {0.4699, 0.4387, 0.7470},
                                  {0.1091, 0.8732, 0.5547},
                                  {0.0381, 0.5743, 0.8828}};
constexpr double kHart6A[4][6] = {{10.0, 3.0, 17.0, 3.5, 1.7, 8.0},
                                  {0.05, 10.0, 17.0, 0.1, 8.0, 14.0},
                                  {3.0, 3.5, 1.7, 10.0, 17.0, 8.0},
                                  {17.0, 8.0, 0.05, 10.0, 0.1, 14.0}};
constexpr double kHart6P[4][6] = {
    {0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
    {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
    {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
    {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

template <std::size_t D>
double HartmannSum(std::span<const double> x, const double (&a)[4][D],
                   const double (&p)[4][D], std::size_t dims) {
  double outer = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    double inner = 0.0;
    for (std::size_t j = 0; j < dims; ++j) {
      const double diff = x[j] - p[i][j];
      inner += a[i][j] * diff * diff;
    }
    outer += kHartAlpha[i] * std::exp(-inner);
  }
  return outer;
}

// Coefficients of the Morris screening function. The fixed effects follow
// the published definition; the remaining first- and second-order terms and
// the intercept are standard-normal draws, frozen here with a fixed seed.
struct MorrisCoefficients {
  static constexpr std::size_t kDims = 20;
  static constexpr std::uint64_t kSeed = 22;
  double b0 = 0.0;
  std::array<double, kDims> b1{};
  std::array<std::array<double, kDims>, kDims> b2{};

  MorrisCoefficients() {
    Rng rng(kSeed);
    b0 = rng.Normal();
    for (std::size_t i = 0; i < kDims; ++i) b1[i] = i < 10 ? 20.0 : rng.Normal();
    for (std::size_t i = 0; i < kDims; ++i) {
      for (std::size_t j = i + 1; j < kDims; ++j) {
        b2[i][j] = (i < 6 && j < 6) ? -15.0 : rng.Normal();
      }
    }
  }
};

const MorrisCoefficients& Morris20() {
  static const MorrisCoefficients coefficients;
  return coefficients;
}

}  // namespace

double Dgp3(std::span<const double> x) {
  return (x[0] > 0.6 && x[1] > 0.8) ? 1.0 : 0.0;
}

std::span<const double> EllipseWeights() { return kEllipseW; }
std::span<const double> EllipseCenter() { return kEllipseC; }

double Ellipse(std::span<const double> x) {
  double s = 0.0;
  for (std::size_t i = 0; i < kEllipseW.size(); ++i) {
    const double diff = x[i] - kEllipseC[i];
    s += kEllipseW[i] * diff * diff;
  }
  return std::sqrt(s);
}

double Morris(std::span<const double> x) {
  const auto& m = Morris20();
  std::array<double, MorrisCoefficients::kDims> w{};
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = (i == 2 || i == 4 || i == 6)
               ? 2.0 * (1.1 * x[i] / (x[i] + 0.1) - 0.5)
               : 2.0 * (x[i] - 0.5);
  }
  double y = m.b0;
  for (std::size_t i = 0; i < w.size(); ++i) y += m.b1[i] * w[i];
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) y += m.b2[i][j] * w[i] * w[j];
  }
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = i + 1; j < 5; ++j) {
      for (std::size_t l = j + 1; l < 5; ++l) y += -10.0 * w[i] * w[j] * w[l];
    }
  }
  y += 5.0 * w[0] * w[1] * w[2] * w[3];
  return y;
}

double SobolG(std::span<const double> x) {
  constexpr std::array<double, 8> a = {0.0, 1.0, 4.5, 9.0, 99.0, 99.0, 99.0, 99.0};
  double y = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    y *= (std::abs(4.0 * x[i] - 2.0) + a[i]) / (1.0 + a[i]);
  }
  return y;
}

double Ishigami(std::span<const double> x) {
  constexpr double a = 7.0, b = 0.1;
  const double s2 = std::sin(x[1]);
  return std::sin(x[0]) + a * s2 * s2 + b * std::pow(x[2], 4) * std::sin(x[0]);
}

double Borehole(std::span<const double> x) {
  const double rw = x[0], r = x[1], tu = x[2], hu = x[3];
  const double tl = x[4], hl = x[5], len = x[6], kw = x[7];
  const double log_ratio = std::log(r / rw);
  const double denom =
      log_ratio * (1.0 + 2.0 * len * tu / (log_ratio * rw * rw * kw) + tu / tl);
  return 2.0 * std::numbers::pi * tu * (hu - hl) / denom;
}

double Hart3(std::span<const double> x) {
  return -HartmannSum(x, kHart3A, kHart3P, 3);
}

double Hart4(std::span<const double> x) {
  return (1.1 - HartmannSum(x, kHart6A, kHart6P, 4)) / 0.839;
}

double Hart6sc(std::span<const double> x) {
  return -std::log(HartmannSum(x, kHart6A, kHart6P, 6));
}

double Moon10low(std::span<const double> x) {
  return x[0] + x[1] + 3.0 * x[0] * x[2];
}

}  // namespace functions

namespace {

DgpSpec Explicit(std::string name, std::size_t dims, std::size_t influential,
                 HyperBox box, std::optional<double> threshold, double share,
                 double (*fn)(std::span<const double>), double noise = 0.0) {
  DgpSpec s;
  s.name = std::move(name);
  s.dims = dims;
  s.influential = influential;
  s.input_box = std::move(box);
  s.threshold = threshold;
  s.intrinsic_noise = noise;
  s.expected_share = share;
  s.preferred_sampler = Sampler::kLhs;
  s.function = fn;
  return s;
}

HyperBox Cube(std::size_t dims, double lo, double hi) {
  return HyperBox(std::vector<double>(dims, lo), std::vector<double>(dims, hi));
}

DgpSpec DsgcSpec() {
  DgpSpec s;
  s.name = "dsgc";
  s.dims = 12;
  s.influential = 12;
  s.input_box = DsgcParams::InputBox();
  s.expected_share = 0.537;
  s.preferred_sampler = Sampler::kHalton;
  s.function = [](std::span<const double> x) {
    return static_cast<double>(dsgc_simulate(DsgcParams::FromPoint(x)));
  };
  s.batch = [](const PointMatrix& points) {
    std::vector<double> y(points.rows());
    ParallelFor(points.rows(), Parallelism(), [&](std::size_t i) {
      y[i] = static_cast<double>(dsgc_simulate(DsgcParams::FromPoint(points.row(i))));
    });
    return y;
  };
  return s;
}

DgpRegistry MakeBuiltin() {
  using namespace functions;
  DgpRegistry r;
  r.Add(Explicit("dgp3", 5, 2, Cube(5, 0, 1), std::nullopt, 0.082, Dgp3, 0.002));
  r.Add(Explicit("ellipse", 15, 10, Cube(15, 0, 1), 0.8, 0.225, Ellipse));
  r.Add(Explicit("morris", 20, 20, Cube(20, 0, 1), 20.0, 0.301, Morris));
  r.Add(Explicit("sobol", 8, 8, Cube(8, 0, 1), 0.7, 0.392, SobolG));
  r.Add(Explicit("ishigami", 3, 3, Cube(3, -std::numbers::pi, std::numbers::pi),
                 1.0, 0.255, Ishigami));
  r.Add(Explicit("borehole", 8, 8,
                 HyperBox({0.05, 100.0, 63070.0, 990.0, 63.1, 700.0, 1120.0, 9855.0},
                          {0.15, 50000.0, 115600.0, 1110.0, 116.0, 820.0, 1680.0,
                           12045.0}),
                 1000.0, 0.309, Borehole));
  r.Add(Explicit("hart3", 3, 3, Cube(3, 0, 1), -1.0, 0.335, Hart3));
  r.Add(Explicit("hart4", 4, 4, Cube(4, 0, 1), -0.5, 0.301, Hart4));
  r.Add(Explicit("hart6sc", 6, 6, Cube(6, 0, 1), 1.0, 0.226, Hart6sc));
  r.Add(Explicit("moon10low", 3, 3, Cube(3, 0, 1), 1.5, 0.456, Moon10low));
  r.Add(DsgcSpec());
  return r;
}

}  // namespace

const DgpRegistry& DgpRegistry::Builtin() {
  static const DgpRegistry registry = MakeBuiltin();
  return registry;
}

void DgpRegistry::Add(DgpSpec spec) {
  if (spec.name.empty()) Fail(ErrorKind::kInvalidConfig, "dgp: empty name");
  spec.input_box.Validate();
  if (spec.input_box.dims() != spec.dims || spec.influential > spec.dims) {
    Fail(ErrorKind::kInvalidConfig, "dgp " + spec.name + ": inconsistent dimensions");
  }
  if (!spec.function && !spec.batch) {
    Fail(ErrorKind::kInvalidConfig, "dgp " + spec.name + ": no evaluator");
  }
  specs_.insert_or_assign(spec.name, std::move(spec));
}

const DgpSpec& DgpRegistry::Find(const std::string& name) const {
  const auto it = specs_.find(name);
  if (it == specs_.end()) {
    std::string known;
    for (const auto& [k, v] : specs_) known += (known.empty() ? "" : ", ") + k;
    Fail(ErrorKind::kUnknownDgp, "unknown dgp '" + name + "' (known: " + known + ")");
  }
  return it->second;
}

bool DgpRegistry::Contains(const std::string& name) const {
  return specs_.contains(name);
}

std::vector<std::string> DgpRegistry::Names() const {
  std::vector<std::string> names;
  for (const auto& [k, v] : specs_) names.push_back(k);
  return names;
}

std::vector<double> flip_noise(std::span<const double> y, double level,
                               std::uint64_t seed) {
  if (!(level >= 0.0 && level <= 0.5)) {
    Fail(ErrorKind::kInvalidConfig, "noise_level must lie in [0, 0.5]");
  }
  for (double v : y) {
    if (v != 0.0 && v != 1.0) Fail(ErrorKind::kInvalidLabel, "label noise needs binary labels");
  }
  std::vector<double> out(y.begin(), y.end());
  const auto flips =
      static_cast<std::size_t>(std::llround(level * static_cast<double>(y.size())));
  if (flips == 0) return out;
  Rng rng(seed);
  for (std::size_t i : rng.Subset(y.size(), flips)) out[i] = 1.0 - out[i];
  return out;
}

std::vector<double> evaluate(const DgpSpec& dgp, const PointMatrix& points,
                             std::uint64_t seed) {
  if (points.cols() != dgp.dims) {
    Fail(ErrorKind::kShape, "dgp " + dgp.name + " expects " +
                                std::to_string(dgp.dims) + " inputs, got " +
                                std::to_string(points.cols()));
  }
  std::vector<double> raw;
  if (dgp.batch) {
    raw = dgp.batch(points);
  } else {
    raw.resize(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) raw[i] = dgp.Raw(points.row(i));
  }
  std::vector<double> y(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    y[i] = dgp.threshold ? (raw[i] < *dgp.threshold ? 1.0 : 0.0) : raw[i];
  }
  if (dgp.intrinsic_noise > 0.0) y = flip_noise(y, dgp.intrinsic_noise, seed);
  return y;
}

Dataset GenerateDataset(const DgpSpec& dgp, std::size_t n, Sampler sampler,
                        std::uint64_t seed, std::size_t halton_skip) {
  PointMatrix x;
  switch (sampler) {
    case Sampler::kUniform:
      x = uniform_sample(n, dgp.input_box, DeriveSeed(seed, {0}));
      break;
    case Sampler::kLhs:
      x = lhs_sample(n, dgp.input_box, DeriveSeed(seed, {0}));
      break;
    case Sampler::kHalton:
      x = halton_sample(n, dgp.input_box, halton_skip);
      break;
  }
  auto y = evaluate(dgp, x, DeriveSeed(seed, {1}));
  return Dataset(std::move(x), std::move(y));
}

}  // namespace sdre
