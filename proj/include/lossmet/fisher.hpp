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

#include <functional>

#include "lossmet/channel.hpp"
#include "lossmet/fockspace.hpp"

namespace lossmet {

// Entries below this probability floor are skipped in Fisher sums; their
// mass is accounted in dropped_mass.
inline constexpr double kProbFloor = 1e-14;

// A Fisher result with more than this much unaccounted mass is flagged
// unreliable.
inline constexpr double kDroppedMassLimit = 1e-9;

// Truncation target used when building families for Fisher sums. Tail terms
// enter the sum weighted by ~n^2, so this is tighter than the channel-level
// default.
inline constexpr double kFisherTailTarget = 1e-15;

enum class Parameter { kGamma, kThermalOccupation };

enum class DerivativeMethod { kAnalytic, kCentralDifference };

/// One-parameter family of number distributions X -> p(X). All evaluations
/// of one family share a fixed truncation so stencil points line up.
struct DistributionFamily {
  std::function<NumberDistribution(double)> dist;
  // entrywise dp_n/dX; empty when only numeric differentiation is available
  std::function<std::vector<double>(double)> analytic_derivative;
  double domain_floor = 0.0;  // family is defined for X > domain_floor
};

struct DerivativeResult {
  std::vector<double> dp;
  DerivativeMethod method = DerivativeMethod::kCentralDifference;
  double step = 0.0;       // 0 for analytic
  bool one_sided = false;  // forward stencil was used at a domain edge
};

struct FisherResult {
  double value = 0.0;
  Parameter parameter = Parameter::kGamma;
  DerivativeMethod derivative_method = DerivativeMethod::kAnalytic;
  double step = 0.0;
  int dim_used = 0;
  double dropped_mass = 0.0;  // floor-skipped entries plus tail mass
  bool reliable = true;
  bool one_sided = false;
};

/// Entrywise dp_n/dX at x0. Analytic when the family provides it, otherwise
/// a Richardson-extrapolated central difference with
/// h = max(1e-5 |x0|, 1e-7); falls back to a second-order forward stencil
/// when x0 - h would leave the domain.
DerivativeResult distribution_derivative(const DistributionFamily& family,
                                         double x0);

/// Counting Fisher information F = sum_n (dp_n/dX)^2 / p_n at x0.
FisherResult counting_fisher(const DistributionFamily& family, double x0,
                             Parameter parameter);

/// Cramer-Rao uncertainty 1/sqrt(reps * F). Throws when F is not positive
/// (parameter not identifiable from the counting statistics).
double uncertainty_from_fisher(const FisherResult& fisher,
                               long long repetitions = 1);

/// Family of channel outputs with one of (x, n_t) promoted to the varying
/// parameter and the other pinned at `params`. Derivatives are analytic for
/// the binomial (Fock input, zero temperature, parameter x) and geometric
/// (thermal or vacuum input) routes, numeric otherwise. `dim` fixes the
/// truncation for every evaluation; pass adaptive_dim(...) based at the
/// working point.
DistributionFamily make_output_family(const InputState& input,
                                      const ChannelParams& params,
                                      Parameter parameter, int dim);

/// Convenience: counting Fisher of the channel output at `params` in the
/// chosen parameter, with truncation selected automatically to push the
/// tail below tail_target.
FisherResult output_counting_fisher(const InputState& input,
                                    const ChannelParams& params,
                                    Parameter parameter,
                                    double tail_target = kFisherTailTarget);

}  // namespace lossmet
