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

#pragma once

#include <limits>
#include <optional>
#include <string>

#include "lossmet/fisher.hpp"
#include "lossmet/fockspace.hpp"

namespace lossmet {

/// A bound that may fail to exist at a given working point. Divergences are
/// values, not exceptions, so parameter sweeps can record the gap and move
/// on.
struct BoundValue {
  double value = 0.0;
  bool divergent = false;
  std::string reason;

  static BoundValue finite(double v) { return {v, false, {}}; }
  static BoundValue diverged(std::string why) {
    return {std::numeric_limits<double>::quiet_NaN(), true, std::move(why)};
  }
};

/// Best relative precision for the damping rate with an n_in-photon probe at
/// zero temperature: sqrt(e^{2x} - 1) / (2x sqrt(n_in)).
BoundValue damping_bound_zero_temp(double n_in, double x);

/// Finite-temperature generalization, from the variance of the generator of
/// the joint beam-splitter / two-mode-squeezer dilation of the channel.
/// With D = 1 + n_t(1-eta):
///   delta_gamma/gamma = D sqrt(eta(1-eta)) /
///       (2x eta sqrt(n_in (1 + n_t(1+eta^2)) + eta D n_t)).
/// Reduces to the zero-temperature bound at n_t = 0.
BoundValue damping_bound_finite_temp(double n_in, const ChannelParams& params);

/// Relative uncertainty of the damping rate from error propagation through
/// the mean output photon number:
///   sqrt(eta^2 var_in + eta(2 n_t+1)(1-eta) n_in + (n_t+1-eta n_t) n_t (1-eta))
///       / (2x eta |n_in - n_t|).
/// Never better than the dilation bound; equal at n_t = 0.
BoundValue damping_sensitivity(double n_in, double var_in,
                               const ChannelParams& params);

/// Best precision for the bath occupation from the same dilation generator,
/// now differentiated in n_t:
///   F = (1-eta)/(D n_t) + n_in eta (1-eta)(2 n_t+1) / (D^2 n_t (1+n_t)),
///   delta n_t = 1/sqrt(F),  D = 1 + n_t(1-eta).
/// For vacuum input this is sqrt(n_t (n_t + 1/(1-eta))), which relaxes to
/// the steady-state value sqrt(n_t (n_t+1)) as eta -> 0.
BoundValue temperature_bound(double n_in, const ChannelParams& params);

struct OptimalTime {
  double x_opt = 0.0;  // exposure minimizing the zero-temperature bound
  double bound = 0.0;  // bound value at the minimum (scales as 1/sqrt(n_in))
};

/// Golden-section minimum of damping_bound_zero_temp over x in [0.01, 5],
/// bracket shrunk below 1e-8. The minimizer solves e^{2x}(1 - x) = 1,
/// x ~ 0.797, value ~ 1.24/sqrt(n_in).
OptimalTime optimal_interaction_time(double n_in);

/// Bundle of the quantities available at one working point.
struct BoundReport {
  Parameter parameter = Parameter::kGamma;
  ChannelParams params;
  InputState input;
  BoundValue purification_bound;
  std::optional<BoundValue> sensitivity_bound;  // damping parameter only
  std::optional<BoundValue> exact_counting;
  int fisher_dim = 0;
  double fisher_dropped_mass = 0.0;
  bool fisher_reliable = true;
};

}  // namespace lossmet
