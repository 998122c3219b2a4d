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

#include "lossmet/sequential.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lossmet/bounds.hpp"
#include "lossmet/fisher.hpp"

namespace lossmet {

SequentialSpec::SequentialSpec(double total_x_in, double slice_x_in,
                               double n_t_in)
    : total_x(total_x_in), slice_x(slice_x_in), n_t(n_t_in) {
  if (!(total_x > 0.0) || !std::isfinite(total_x)) {
    throw std::invalid_argument("SequentialSpec: total_x must be positive");
  }
  if (!(slice_x > 0.0) || !std::isfinite(slice_x)) {
    throw std::invalid_argument("SequentialSpec: slice_x must be positive");
  }
  if (slice_x > total_x) {
    throw std::invalid_argument(
        "SequentialSpec: slice_x must not exceed total_x");
  }
  if (!(n_t >= 0.0) || !std::isfinite(n_t)) {
    throw std::invalid_argument("SequentialSpec: n_t must be >= 0");
  }
}

double sequential_damping_uncertainty(const SequentialSpec& spec) {
  if (spec.n_t != 0.0) {
    throw std::invalid_argument(
        "sequential_damping_uncertainty: only the zero-temperature strategy "
        "is supported");
  }
  const BoundValue per_slice = damping_bound_zero_temp(1.0, spec.slice_x);
  return per_slice.value / std::sqrt(spec.repetitions());
}

ShortTimeDistribution short_time_single_boson_distribution(double slice_x,
                                                           double n_t) {
  if (!(slice_x > 0.0) || !std::isfinite(slice_x)) {
    throw std::invalid_argument(
        "short_time_single_boson_distribution: slice_x must be positive");
  }
  if (!(n_t >= 0.0) || !std::isfinite(n_t)) {
    throw std::invalid_argument(
        "short_time_single_boson_distribution: n_t must be >= 0");
  }
  const double p0 = 2.0 * slice_x * (n_t + 1.0);  // boson decays
  const double p2 = 4.0 * slice_x * n_t;          // boson absorbed from bath
  const double p1 = 1.0 - p0 - p2;
  if (p1 < 0.0) {
    std::ostringstream msg;
    msg << "short_time_single_boson_distribution: slice_x=" << slice_x
        << " is outside the short-time regime at n_t=" << n_t
        << "; shrink the slice";
    throw std::invalid_argument(msg.str());
  }
  const bool valid = 2.0 * slice_x * (n_t + 1.0) <= kShortTimeValidity;
  return ShortTimeDistribution{NumberDistribution({p0, p1, p2}, 0.0), valid};
}

double sequential_temperature_uncertainty(const SequentialSpec& spec) {
  if (!(spec.n_t > 0.0)) {
    throw std::invalid_argument(
        "sequential_temperature_uncertainty: n_t must be positive; at zero "
        "temperature no absorption events occur");
  }
  const double s = spec.slice_x;
  DistributionFamily family;
  family.domain_floor = 0.0;
  family.dist = [s](double n_t) {
    return short_time_single_boson_distribution(s, n_t).dist;
  };
  family.analytic_derivative = [s](double) {
    return std::vector<double>{2.0 * s, -6.0 * s, 4.0 * s};
  };
  const FisherResult fisher =
      counting_fisher(family, spec.n_t, Parameter::kThermalOccupation);
  const double nu = spec.repetitions();
  return 1.0 / std::sqrt(nu * fisher.value);
}

double sequential_temperature_limit(double total_x, double n_t) {
  if (!(total_x > 0.0) || !std::isfinite(total_x)) {
    throw std::invalid_argument(
        "sequential_temperature_limit: total_x must be positive");
  }
  if (!(n_t > 0.0) || !std::isfinite(n_t)) {
    throw std::invalid_argument(
        "sequential_temperature_limit: n_t must be positive");
  }
  return std::sqrt(n_t * (n_t + 1.0) /
                   ((3.0 * n_t + 2.0) * 2.0 * total_x));
}

double timing_error_propagation(const SequentialSpec& spec,
                                double rel_time_error) {
  if (!(rel_time_error >= 0.0) || !std::isfinite(rel_time_error)) {
    throw std::invalid_argument(
        "timing_error_propagation: relative timing error must be >= 0");
  }
  // the limit scales as 1/sqrt(total exposure), so a relative exposure error
  // epsilon shifts it by epsilon/2 to first order
  return 0.5 * sequential_temperature_limit(spec.total_x, spec.n_t) *
         rel_time_error;
}

}  // namespace lossmet
