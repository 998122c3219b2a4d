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

#include "lossmet/fockspace.hpp"

namespace lossmet {

// Below this bath occupation the finite-temperature closed form is replaced
// by its zero-temperature (binomial) limit; the two agree to ~5e-9 per entry
// at the seam.
inline constexpr double kThermalFloor = 1e-8;

// Default adaptive-truncation target for the mass beyond the cut.
inline constexpr double kTailTarget = 1e-12;

enum class EvolutionMethod {
  kBinomial,              // number state, zero temperature
  kHypergeometric,        // number state, finite temperature
  kBoseEinstein,          // thermal or vacuum input (stays geometric)
  kRateEquation,          // numerical integrator, used as a cross-check
};

struct EvolutionResult {
  NumberDistribution dist;
  ChannelParams params;
  EvolutionMethod method;
  int dim_used = 0;
};

/// Output distribution for a number state |m> through the damping channel at
/// zero temperature: binomial thinning with retention eta.
EvolutionResult evolve_fock_zero_temp(int m, const ChannelParams& params);

/// Output distribution for |m> at finite temperature. Closed form: a
/// log-space prefactor times the terminating Gauss series at
/// z = eta / (n_t (1+n_t) (1-eta)^2). Requires params.n_t > kThermalFloor.
EvolutionResult evolve_fock_thermal(int m, const ChannelParams& params, int dim);

/// Thermal input of given mean stays thermal; the mean relaxes to
/// eta*(mean - n_t) + n_t.
EvolutionResult evolve_thermal_input(double mean, const ChannelParams& params,
                                     int dim);

/// Dispatcher: picks the closed-form route for the input kind and an
/// adaptive truncation dimension.
EvolutionResult evolve(const InputState& input, const ChannelParams& params);
EvolutionResult evolve(const InputState& input, const ChannelParams& params,
                       int dim);

/// Reference integrator for the photon-number rate equation
///   dp_n/ds = (n_t+1)[(n+1) p_{n+1} - n p_n] + n_t [n p_{n-1} - (n+1) p_n]
/// in the rescaled time s = 2x, classic fixed-step RK4, absorbing cut at dim.
/// Mass absorbed at the cut becomes tail_mass; errors out if it exceeds
/// 1e-8 (truncation too small for the requested evolution).
EvolutionResult ode_evolve(const NumberDistribution& initial,
                           const ChannelParams& params, int dim);

/// First and second output moments in closed form:
///   <N>   -> eta (m0 - n_t) + n_t
///   <N^2> -> eta^2 m2 + eta (4 n_t + 1)(1 - eta) m0
///            + 2 n_t^2 (1 - eta)^2 + n_t (1 - eta)
Moments output_moments(double mean0, double second0, const ChannelParams& params);

/// Truncation dimension: start at max(16, 4*(m + n_t(1-eta)) + 10) and double
/// until the tail mass drops below tail_target.
int adaptive_dim(const InputState& input, const ChannelParams& params,
                 double tail_target = kTailTarget);

}  // namespace lossmet
