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

// Short-time expansion is trusted while 2 * slice_x * (1 + n_t) <= this.
inline constexpr double kShortTimeValidity = 0.05;

/// A stream of single-boson probes: total exposure total_x split into
/// total_x / slice_x probes of exposure slice_x each.
struct SequentialSpec {
  double total_x;
  double slice_x;
  double n_t;

  SequentialSpec(double total_x_, double slice_x_, double n_t_);
  double repetitions() const { return total_x / slice_x; }
};

/// Relative damping-rate precision of the probe stream at zero temperature:
/// the single-probe value at exposure slice_x improved by sqrt(total/slice)
/// repetitions. Approaches 1/sqrt(2 total_x) as slice_x -> 0.
double sequential_damping_uncertainty(const SequentialSpec& spec);

struct ShortTimeDistribution {
  NumberDistribution dist;      // outcomes {0, 1, 2}
  bool expansion_valid = true;  // first-order expansion within its window
};

/// First-order outcome probabilities for one single-boson probe:
///   p0 = 2 s (n_t + 1),  p2 = 4 s n_t,  p1 = 1 - p0 - p2,  s = slice_x.
/// Throws when the slice is so long a probability goes negative.
ShortTimeDistribution short_time_single_boson_distribution(double slice_x,
                                                           double n_t);

/// Bath-occupation precision of the probe stream: counting Fisher of the
/// three-outcome distribution in n_t, times total_x/slice_x repetitions,
/// inverted. Converges to sqrt(n_t(n_t+1) / ((3 n_t + 2) 2 total_x)) as
/// slice_x -> 0; requires n_t > 0.
double sequential_temperature_uncertainty(const SequentialSpec& spec);

/// Small-slice closed form sqrt(n_t(n_t+1) / ((3 n_t + 2) 2 total_x)).
double sequential_temperature_limit(double total_x, double n_t);

/// First-order uncertainty contributed by a relative clock error:
/// the limit value scales as 1/sqrt(t), so
/// delta = (1/2) * sequential_temperature_limit * rel_t_error.
double timing_error_propagation(const SequentialSpec& spec, double rel_t_error);

}  // namespace lossmet
