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

#include "sdre/dsgc.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "sdre/error.hpp"

namespace sdre {
namespace {

constexpr std::size_t kNodes = 5;  // node 0 is the producer
constexpr std::size_t kConsumers = 4;

constexpr double kGammaMin = 0.05, kGammaMax = 1.0;
constexpr double kTauMin = 0.5, kTauMax = 5.0;
constexpr double kWindowMin = 1.0, kWindowMax = 4.0;

using State = std::array<double, kNodes>;

// Consumer phase history on the step grid, kept in a ring buffer. Times
// before zero read the initial state.
class History {
 public:
  History(double step, double max_delay, const State& initial)
      : step_(step),
        capacity_(static_cast<std::size_t>(std::ceil(max_delay / step)) + 4),
        buffer_(capacity_) {
    for (std::size_t j = 0; j < kConsumers; ++j) initial_[j] = initial[j + 1];
    buffer_[0] = initial_;
  }

  void Store(std::size_t step_index, const State& theta) {
    auto& slot = buffer_[step_index % capacity_];
    for (std::size_t j = 0; j < kConsumers; ++j) slot[j] = theta[j + 1];
  }

  double At(std::size_t consumer, double t) const {
    if (t <= 0.0) return initial_[consumer];
    const double pos = t / step_;
    const auto i0 = static_cast<std::size_t>(pos);
    const double frac = pos - static_cast<double>(i0);
    const double v0 = buffer_[i0 % capacity_][consumer];
    if (frac == 0.0) return v0;
    const double v1 = buffer_[(i0 + 1) % capacity_][consumer];
    return v0 + frac * (v1 - v0);
  }

 private:
  double step_;
  std::size_t capacity_;
  std::vector<std::array<double, kConsumers>> buffer_;
  std::array<double, kConsumers> initial_{};
};

struct Derivative {
  State dtheta;
  State domega;
};

Derivative Rhs(const DsgcParams& p, const History& history, double t,
               const State& theta, const State& omega) {
  Derivative d;
  d.dtheta = omega;
  d.domega[0] = DsgcParams::kProducerPower - DsgcParams::kDamping * omega[0];
  for (std::size_t j = 0; j < kConsumers; ++j) {
    const std::size_t node = j + 1;
    const double flow = DsgcParams::kCoupling * std::sin(theta[0] - theta[node]);
    d.domega[0] -= flow;
    const double delayed = history.At(j, t - p.tau[j]) -
                           history.At(j, t - p.tau[j] - p.window[j]);
    d.domega[node] = DsgcParams::kConsumerPower -
                     DsgcParams::kDamping * omega[node] + flow -
                     p.gamma[j] / p.window[j] * delayed;
  }
  return d;
}

void Axpy(State& out, const State& base, double h, const State& dir) {
  for (std::size_t i = 0; i < kNodes; ++i) out[i] = base[i] + h * dir[i];
}

}  // namespace

DsgcParams DsgcParams::FromPoint(std::span<const double> x) {
  if (x.size() != 3 * kConsumers) {
    Fail(ErrorKind::kShape, "DSGC point needs 12 coordinates, got " +
                                std::to_string(x.size()));
  }
  DsgcParams p;
  for (std::size_t j = 0; j < kConsumers; ++j) {
    p.gamma[j] = x[j];
    p.tau[j] = x[kConsumers + j];
    p.window[j] = x[2 * kConsumers + j];
  }
  return p;
}

HyperBox DsgcParams::InputBox() {
  HyperBox box;
  for (std::size_t j = 0; j < kConsumers; ++j) {
    box.lower.push_back(kGammaMin);
    box.upper.push_back(kGammaMax);
  }
  for (std::size_t j = 0; j < kConsumers; ++j) {
    box.lower.push_back(kTauMin);
    box.upper.push_back(kTauMax);
  }
  for (std::size_t j = 0; j < kConsumers; ++j) {
    box.lower.push_back(kWindowMin);
    box.upper.push_back(kWindowMax);
  }
  return box;
}

void DsgcParams::Validate() const {
  // A hair of slack absorbs rounding in scaled sample coordinates.
  constexpr double kSlack = 1e-12;
  auto check = [](double v, double lo, double hi, const char* name) {
    if (!(v >= lo - kSlack && v <= hi + kSlack)) {
      Fail(ErrorKind::kInvalidConfig,
           std::string("dsgc ") + name + " out of range: " + std::to_string(v));
    }
  };
  for (std::size_t j = 0; j < kConsumers; ++j) {
    check(gamma[j], kGammaMin, kGammaMax, "gamma");
    check(tau[j], kTauMin, kTauMax, "tau");
    check(window[j], kWindowMin, kWindowMax, "T");
  }
}

double DsgcFinalAmplitude(const DsgcParams& params, const DsgcSimConfig& cfg,
                          std::size_t kicked) {
  params.Validate();
  const double h = cfg.step;
  if (!(h > 0.0) || !(cfg.horizon > h) || cfg.window < 0.0 ||
      cfg.window > cfg.horizon || kicked >= kConsumers) {
    Fail(ErrorKind::kInvalidConfig, "invalid DSGC integration settings");
  }
  // Delayed lookups at RK4 stage times must refer to completed steps.
  if (*std::min_element(params.tau.begin(), params.tau.end()) < 2.0 * h) {
    Fail(ErrorKind::kInvalidConfig, "DSGC delay shorter than two steps");
  }

  // Synchronous state: every line carries its consumer's demand.
  State theta{};
  State omega{};
  const double lag = std::asin(-DsgcParams::kConsumerPower / DsgcParams::kCoupling);
  for (std::size_t j = 1; j < kNodes; ++j) theta[j] = -lag;
  omega[kicked + 1] = cfg.kick;

  double max_delay = 0.0;
  for (std::size_t j = 0; j < kConsumers; ++j) {
    max_delay = std::max(max_delay, params.tau[j] + params.window[j]);
  }
  History history(h, max_delay, theta);

  const auto steps = static_cast<std::size_t>(std::llround(cfg.horizon / h));
  const auto window_start =
      static_cast<std::size_t>(std::llround((cfg.horizon - cfg.window) / h));
  double amplitude = 0.0;
  State th2, om2, th3, om3, th4, om4;
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * h;
    const Derivative k1 = Rhs(params, history, t, theta, omega);
    Axpy(th2, theta, 0.5 * h, k1.dtheta);
    Axpy(om2, omega, 0.5 * h, k1.domega);
    const Derivative k2 = Rhs(params, history, t + 0.5 * h, th2, om2);
    Axpy(th3, theta, 0.5 * h, k2.dtheta);
    Axpy(om3, omega, 0.5 * h, k2.domega);
    const Derivative k3 = Rhs(params, history, t + 0.5 * h, th3, om3);
    Axpy(th4, theta, h, k3.dtheta);
    Axpy(om4, omega, h, k3.domega);
    const Derivative k4 = Rhs(params, history, t + h, th4, om4);
    for (std::size_t i = 0; i < kNodes; ++i) {
      theta[i] += h / 6.0 *
                  (k1.dtheta[i] + 2.0 * k2.dtheta[i] + 2.0 * k3.dtheta[i] + k4.dtheta[i]);
      omega[i] += h / 6.0 *
                  (k1.domega[i] + 2.0 * k2.domega[i] + 2.0 * k3.domega[i] + k4.domega[i]);
    }
    history.Store(s + 1, theta);
    if (s + 1 >= window_start) {
      for (std::size_t i = 0; i < kNodes; ++i) {
        if (!std::isfinite(omega[i]) || !std::isfinite(theta[i])) {
          Fail(ErrorKind::kSimulationFailure, "DSGC state became non-finite");
        }
        amplitude = std::max(amplitude, std::abs(omega[i]));
      }
    } else if (!std::isfinite(omega[0])) {
      Fail(ErrorKind::kSimulationFailure, "DSGC state became non-finite");
    }
  }
  return amplitude;
}

double DsgcAmplitudeRatio(const DsgcParams& params, const DsgcSimConfig& cfg) {
  if (!(cfg.kick > 0.0)) Fail(ErrorKind::kInvalidConfig, "DSGC kick must be positive");
  double worst = 0.0;
  for (std::size_t j = 0; j < kConsumers; ++j) {
    worst = std::max(worst, DsgcFinalAmplitude(params, cfg, j));
  }
  return worst / cfg.kick;
}

int dsgc_simulate(const DsgcParams& params, const DsgcSimConfig& cfg) {
  return DsgcAmplitudeRatio(params, cfg) > cfg.decay_ratio ? 1 : 0;
}

}  // namespace sdre
