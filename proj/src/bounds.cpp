// Copyright 2026 The lossmet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "lossmet/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace lossmet {

namespace {

constexpr double kStationaryWindow = 1e-12;

}  // namespace

BoundValue damping_bound_zero_temp(double n_in, double x) {
  if (!(n_in > 0.0)) {
    throw std::invalid_argument(
        "damping_bound_zero_temp: need a positive mean photon number");
  }
  if (!(x > 0.0)) {
    return BoundValue::diverged("zero exposure carries no information");
  }
  const double value = std::sqrt(std::expm1(2.0 * x) / n_in) / (2.0 * x);
  if (!std::isfinite(value)) {
    return BoundValue::diverged("exposure too large; bound overflows");
  }
  return BoundValue::finite(value);
}

BoundValue damping_bound_finite_temp(double n_in, const ChannelParams& params) {
  if (!(n_in >= 0.0)) {
    throw std::invalid_argument(
        "damping_bound_finite_temp: mean photon number must be >= 0");
  }
  const double eta = params.eta();
  const double loss = 1.0 - eta;
  const double n_t = params.n_t;
  if (n_in == 0.0 && n_t == 0.0) {
    return BoundValue::diverged(
        "no photons anywhere; the damping rate leaves no imprint");
  }
  // D is the variance scale of the joint beam-splitter / two-mode-squeezer
  // dilation of the attenuation map
  const double d = 1.0 + n_t * loss;
  const double info_scale =
      n_in * (1.0 + n_t * (1.0 + eta * eta)) + eta * d * n_t;
  const double value = d * std::sqrt(eta * loss) /
                       (2.0 * params.x * eta * std::sqrt(info_scale));
  if (!std::isfinite(value)) {
    return BoundValue::diverged("bound overflows at this exposure");
  }
  return BoundValue::finite(value);
}

BoundValue damping_sensitivity(double n_in, double var_in,
                               const ChannelParams& params) {
  if (!(n_in >= 0.0)) {
    throw std::invalid_argument(
        "damping_sensitivity: mean photon number must be >= 0");
  }
  if (!(var_in >= 0.0)) {
    throw std::invalid_argument(
        "damping_sensitivity: photon-number variance must be >= 0");
  }
  const double eta = params.eta();
  const double loss = 1.0 - eta;
  const double n_t = params.n_t;
  const double contrast = std::abs(n_in - n_t);
  if (contrast <= kStationaryWindow * std::max({1.0, n_in, n_t})) {
    return BoundValue::diverged(
        "input mean matches the bath occupation; the mean output photon "
        "number is stationary");
  }
  const double out_var = eta * eta * var_in +
                         eta * (2.0 * n_t + 1.0) * loss * n_in +
                         (n_t + 1.0 - eta * n_t) * n_t * loss;
  const double value =
      std::sqrt(out_var) / (2.0 * params.x * eta * contrast);
  if (!std::isfinite(value)) {
    return BoundValue::diverged("sensitivity overflows at this exposure");
  }
  return BoundValue::finite(value);
}

BoundValue temperature_bound(double n_in, const ChannelParams& params) {
  if (!(n_in >= 0.0)) {
    throw std::invalid_argument(
        "temperature_bound: mean photon number must be >= 0");
  }
  const double n_t = params.n_t;
  if (!(n_t > 0.0)) {
    return BoundValue::diverged(
        "zero-temperature boundary; the generator variance collapses");
  }
  const double eta = params.eta();
  const double loss = 1.0 - eta;
  const double d = 1.0 + n_t * loss;
  const double fisher = loss / (d * n_t) +
                        n_in * eta * loss * (2.0 * n_t + 1.0) /
                            (d * d * n_t * (1.0 + n_t));
  if (!(fisher > 0.0) || !std::isfinite(fisher)) {
    return BoundValue::diverged("no information about the bath occupation");
  }
  return BoundValue::finite(1.0 / std::sqrt(fisher));
}

OptimalTime optimal_interaction_time(double n_in) {
  if (!(n_in > 0.0)) {
    throw std::invalid_argument(
        "optimal_interaction_time: need a positive mean photon number");
  }
  // golden-section search; the objective is smooth and unimodal on this
  // bracket with a single interior minimum
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.01;
  double b = 5.0;
  auto f = [n_in](double x) {
    return damping_bound_zero_temp(n_in, x).value;
  };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > 1e-8) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x_opt = (a + b) / 2.0;
  return OptimalTime{x_opt, f(x_opt)};
}

}  // namespace lossmet
