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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <stdexcept>

#include "lossmet/sequential.hpp"

using Catch::Approx;
using namespace lossmet;

TEST_CASE("short-time outcome probabilities for one boson") {
  // at slice 0.005 and unit bath occupation: decay 2s(n_t+1) = 0.02,
  // absorption 4 s n_t = 0.02, survival 0.96
  ShortTimeDistribution d = short_time_single_boson_distribution(0.005, 1.0);
  REQUIRE(d.dist.dim() == 3);
  REQUIRE(d.dist.prob(0) == Approx(0.02).epsilon(1e-14));
  REQUIRE(d.dist.prob(1) == Approx(0.96).epsilon(1e-14));
  REQUIRE(d.dist.prob(2) == Approx(0.02).epsilon(1e-14));
  REQUIRE(d.expansion_valid);

  // longer slices leave the trusted first-order window before any
  // probability can go negative
  ShortTimeDistribution long_slice =
      short_time_single_boson_distribution(0.05, 1.0);
  REQUIRE_FALSE(long_slice.expansion_valid);

  REQUIRE_THROWS_AS(short_time_single_boson_distribution(0.2, 1.5),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(short_time_single_boson_distribution(-0.01, 1.0),
                    std::invalid_argument);
}

TEST_CASE("stream uncertainty matches the explicit three-outcome Fisher") {
  const double s = 0.005;
  const double n_t = 1.0;
  const double total = 2.0;
  // F = s^2 (4/p0 + 36/p1 + 16/p2), nu = total/slice
  const double p0 = 2.0 * s * (n_t + 1.0);
  const double p2 = 4.0 * s * n_t;
  const double p1 = 1.0 - p0 - p2;
  const double fisher =
      s * s * (4.0 / p0 + 36.0 / p1 + 16.0 / p2);
  const double expected = 1.0 / std::sqrt((total / s) * fisher);
  REQUIRE(sequential_temperature_uncertainty(SequentialSpec(total, s, n_t)) ==
          Approx(expected).epsilon(1e-12));
}

TEST_CASE("temperature limit closed form and its small-occupation tail") {
  // frozen: n_t = 1, total_x = 3 gives sqrt(1/15)
  REQUIRE(sequential_temperature_limit(3.0, 1.0) ==
          Approx(std::sqrt(1.0 / 15.0)).epsilon(1e-14));
  // n_t << 1: sqrt(n_t / (4 total_x))
  REQUIRE(sequential_temperature_limit(2.0, 1e-4) ==
          Approx(std::sqrt(1e-4 / 8.0)).epsilon(1e-3));
  REQUIRE_THROWS_AS(sequential_temperature_limit(2.0, 0.0),
                    std::invalid_argument);
}

TEST_CASE("stream uncertainty converges to the limit at first order") {
  const double n_t = 1.0;
  const double total = 3.0;
  const double limit = sequential_temperature_limit(total, n_t);
  double err[3];
  const double slices[3] = {0.02, 0.01, 0.005};
  for (int i = 0; i < 3; ++i) {
    err[i] = limit - sequential_temperature_uncertainty(
                         SequentialSpec(total, slices[i], n_t));
    // the linearized three-outcome model overstates its information at a
    // finite slice, so the limit is approached from below
    REQUIRE(err[i] > 0.0);
  }
  // halving the slice halves the deviation: first-order convergence
  REQUIRE(err[0] / err[1] == Approx(2.0).margin(0.3));
  REQUIRE(err[1] / err[2] == Approx(2.0).margin(0.3));
}

TEST_CASE("damping stream approaches 1/sqrt(2 total_x)") {
  const double total = 2.5;
  const double limit = 1.0 / std::sqrt(2.0 * total);
  REQUIRE(limit == Approx(0.44721359549995794).epsilon(1e-14));
  const double v =
      sequential_damping_uncertainty(SequentialSpec(total, 1e-4, 0.0));
  REQUIRE(v == Approx(limit).epsilon(1e-4));
  // shrinking the slice only helps
  const double coarser =
      sequential_damping_uncertainty(SequentialSpec(total, 1e-2, 0.0));
  REQUIRE(coarser > v);
}

TEST_CASE("repetition count need not be an integer") {
  SequentialSpec spec(1.0, 0.003, 1.0);
  REQUIRE(spec.repetitions() == Approx(1000.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("timing error propagates at half the relative clock error") {
  SequentialSpec spec(3.0, 0.005, 1.0);
  const double limit = sequential_temperature_limit(3.0, 1.0);
  REQUIRE(timing_error_propagation(spec, 0.01) ==
          Approx(0.5 * limit * 0.01).epsilon(1e-14));
  REQUIRE(timing_error_propagation(spec, 0.0) == 0.0);
  REQUIRE_THROWS_AS(timing_error_propagation(spec, -0.1),
                    std::invalid_argument);
}

TEST_CASE("stream specifications are validated") {
  REQUIRE_THROWS_AS(SequentialSpec(1.0, 2.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(SequentialSpec(0.0, 0.1, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(SequentialSpec(1.0, 0.0, 1.0), std::invalid_argument);
  REQUIRE_THROWS_AS(SequentialSpec(1.0, 0.1, -1.0), std::invalid_argument);
  // the damping strategy is zero-temperature only
  REQUIRE_THROWS_AS(
      sequential_damping_uncertainty(SequentialSpec(1.0, 0.1, 0.5)),
      std::invalid_argument);
  // the temperature strategy needs absorption events to count
  REQUIRE_THROWS_AS(
      sequential_temperature_uncertainty(SequentialSpec(1.0, 0.1, 0.0)),
      std::invalid_argument);
}
