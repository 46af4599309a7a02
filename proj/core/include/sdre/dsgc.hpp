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

#ifndef SDRE_DSGC_HPP_
#define SDRE_DSGC_HPP_

#include <array>
#include <cstddef>
#include <span>

#include "sdre/box.hpp"

namespace sdre {

// Decentral smart grid control on a five-node star: one producer in the
// centre, four consumers. Each consumer j reacts to its frequency averaged
// over a window T_j with a delay tau_j and strength gamma_j:
//
//   theta_j'' = P_j - a theta_j' + sum_r K sin(theta_r - theta_j)
//               - (gamma_j / T_j) (theta_j(t - tau_j) - theta_j(t - tau_j - T_j))
struct DsgcParams {
  std::array<double, 4> gamma{};
  std::array<double, 4> tau{};
  std::array<double, 4> window{};

  static constexpr double kConsumerPower = -1.0;
  static constexpr double kProducerPower = 4.0;
  static constexpr double kDamping = 0.1;
  static constexpr double kCoupling = 8.0;

  // Layout of the 12 free inputs: gamma_1..4, tau_1..4, T_1..4.
  static DsgcParams FromPoint(std::span<const double> x);
  static HyperBox InputBox();

  // Throws kInvalidConfig when any coordinate leaves its admissible range.
  void Validate() const;
};

struct DsgcSimConfig {
  double step = 0.01;       // RK4 step [s]
  double horizon = 30.0;    // simulated time [s]
  double window = 5.0;      // final observation window [s]
  double kick = 0.1;        // initial frequency perturbation [rad/s]
  // A run is unstable when the largest |dtheta/dt| in the final window is
  // above decay_ratio * kick, i.e. the perturbation has not decayed to that
  // fraction by the end of the horizon.
  double decay_ratio = 0.5;
};

// Result of one integration: the largest |dtheta_j/dt| over all nodes in the
// final window, for the run that kicked consumer `kicked`.
double DsgcFinalAmplitude(const DsgcParams& params, const DsgcSimConfig& cfg,
                          std::size_t kicked);

// Worst case over the four single-consumer kicks, divided by the kick size.
double DsgcAmplitudeRatio(const DsgcParams& params, const DsgcSimConfig& cfg);

// 1 = unstable (case of interest), 0 = stable. Throws kSimulationFailure when
// the state becomes non-finite.
int dsgc_simulate(const DsgcParams& params, const DsgcSimConfig& cfg = {});

}  // namespace sdre

#endif  // SDRE_DSGC_HPP_
