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

#ifndef SDRE_DGP_HPP_
#define SDRE_DGP_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sdre/box.hpp"
#include "sdre/dataset.hpp"
#include "sdre/dsgc.hpp"
#include "sdre/sampling.hpp"

namespace sdre {

// A data-generating process: either a continuous function binarised by
// `threshold` (y = 1 iff output < threshold) or a native binary rule
// (`threshold` empty, the function returns 0 or 1).
struct DgpSpec {
  std::string name;
  std::size_t dims = 0;
  std::size_t influential = 0;
  HyperBox input_box;
  std::optional<double> threshold;
  double intrinsic_noise = 0.0;
  double expected_share = 0.0;
  Sampler preferred_sampler = Sampler::kLhs;
  std::function<double(std::span<const double>)> function;
  // Optional batch evaluator used instead of `function` when set (the DSGC
  // simulator uses it to spread work across threads).
  std::function<std::vector<double>(const PointMatrix&)> batch;

  double Raw(std::span<const double> x) const { return function(x); }
};

class DgpRegistry {
 public:
  // Registry pre-populated with the built-in DGPs.
  static const DgpRegistry& Builtin();

  void Add(DgpSpec spec);
  // Throws kUnknownDgp.
  const DgpSpec& Find(const std::string& name) const;
  bool Contains(const std::string& name) const;
  std::vector<std::string> Names() const;

 private:
  std::map<std::string, DgpSpec> specs_;
};

// Labels `points`: binarises the raw output, then flips labels at the DGP's
// intrinsic noise rate. Deterministic per seed.
std::vector<double> evaluate(const DgpSpec& dgp, const PointMatrix& points,
                             std::uint64_t seed);

// Flips exactly round(level * N) distinct, uniformly chosen labels.
// Requires binary labels and 0 <= level <= 0.5.
std::vector<double> flip_noise(std::span<const double> y, double level,
                               std::uint64_t seed);

// Draws n points with `sampler` inside the DGP's input box and labels them.
// `halton_skip` is only used by the Halton sampler.
Dataset GenerateDataset(const DgpSpec& dgp, std::size_t n, Sampler sampler,
                        std::uint64_t seed, std::size_t halton_skip = 0);

// Individual benchmark functions, exposed for tests and plugins.
namespace functions {
double Dgp3(std::span<const double> x);
double Ellipse(std::span<const double> x);
double Morris(std::span<const double> x);
double SobolG(std::span<const double> x);
double Ishigami(std::span<const double> x);
double Borehole(std::span<const double> x);
double Hart3(std::span<const double> x);
double Hart4(std::span<const double> x);
double Hart6sc(std::span<const double> x);
double Moon10low(std::span<const double> x);

// Weight and centre vectors of the ellipse function (15 entries each).
std::span<const double> EllipseWeights();
std::span<const double> EllipseCenter();
}  // namespace functions

}  // namespace sdre

#endif  // SDRE_DGP_HPP_
