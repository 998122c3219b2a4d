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

#include <algorithm>
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <stdexcept>

#include "lossmet/channel.hpp"

using Catch::Approx;
using namespace lossmet;

TEST_CASE("zero-temperature Fock evolution is binomial thinning") {
  // frozen oracle: the no-loss probability of |32> at eta = 2/3 is
  // (2/3)^32 = 2.3178200225984726e-06
  ChannelParams p = ChannelParams::from_eta(2.0 / 3.0, 0.0);
  EvolutionResult r = evolve_fock_zero_temp(32, p);
  REQUIRE(r.method == EvolutionMethod::kBinomial);
  REQUIRE(r.dist.dim() == 33);
  REQUIRE(r.dist.prob(32) == Approx(2.3178200225984726e-06).epsilon(1e-12));
  REQUIRE(r.dist.tail_mass() == 0.0);

  // mean thins to eta * m
  Moments m = mean_and_second_moment(r.dist);
  REQUIRE(m.mean == Approx(32.0 * 2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("a thermal state matched to the bath is a fixed point") {
  ChannelParams p = ChannelParams::from_eta(0.6, 1.3);
  EvolutionResult r = evolve(InputState::thermal(1.3), p, 64);
  NumberDistribution ref = thermal_distribution(1.3, 64);
  for (int n = 0; n < 64; ++n) {
    REQUIRE(r.dist.prob(n) == Approx(ref.prob(n)).margin(1e-14));
  }
}

TEST_CASE("thermal input relaxes toward the bath occupation") {
  ChannelParams p = ChannelParams::from_eta(0.7, 0.5);
  EvolutionResult r = evolve(InputState::thermal(2.0), p, 256);
  Moments m = mean_and_second_moment(r.dist);
  REQUIRE(m.mean == Approx(0.7 * (2.0 - 0.5) + 0.5).epsilon(1e-12));
  REQUIRE(r.method == EvolutionMethod::kBoseEinstein);
}

TEST_CASE("closed-form moments match the evolved distribution") {
  ChannelParams p = ChannelParams::from_eta(0.6, 0.8);
  SECTION("thermal input") {
    const double mean0 = 1.5;
    const double second0 = 2.0 * mean0 * mean0 + mean0;
    Moments predicted = output_moments(mean0, second0, p);
    EvolutionResult r = evolve(InputState::thermal(mean0), p, 512);
    Moments measured = mean_and_second_moment(r.dist);
    REQUIRE(measured.mean == Approx(predicted.mean).epsilon(1e-10));
    REQUIRE(measured.second_moment ==
            Approx(predicted.second_moment).epsilon(1e-10));
  }
  SECTION("number-state input") {
    Moments predicted = output_moments(3.0, 9.0, p);
    EvolutionResult r = evolve(InputState::fock(3), p, 512);
    Moments measured = mean_and_second_moment(r.dist);
    REQUIRE(measured.mean == Approx(predicted.mean).epsilon(1e-10));
    REQUIRE(measured.second_moment ==
            Approx(predicted.second_moment).epsilon(1e-10));
  }
}

TEST_CASE("finite-temperature closed form matches the rate equation") {
  // property grid: every closed-form route against the reference integrator
  for (int m : {0, 1, 2, 3, 4}) {
    for (double n_t : {0.1, 0.5, 1.0, 2.0}) {
      for (double x : {0.05, 0.2, 0.8}) {
        ChannelParams p(x, n_t);
        const InputState input = InputState::fock(m);
        const int dim = adaptive_dim(input, p);
        EvolutionResult closed = evolve(input, p, dim);
        EvolutionResult ode = ode_evolve(fock_distribution(m, dim), p, dim);
        double max_diff = 0.0;
        for (int n = 0; n < dim; ++n) {
          max_diff = std::max(max_diff,
                              std::abs(closed.dist.prob(n) - ode.dist.prob(n)));
        }
        INFO("m=" << m << " n_t=" << n_t << " x=" << x << " dim=" << dim);
        // fixed-step RK4 truncation sits near 1e-10 on this grid
        REQUIRE(max_diff < 1e-9);
      }
    }
  }
}

TEST_CASE("rate equation preserves a thermal fixed point") {
  ChannelParams p(0.7, 1.2);
  const int dim = 96;
  EvolutionResult r = ode_evolve(thermal_distribution(1.2, dim), p, dim);
  NumberDistribution ref = thermal_distribution(1.2, dim);
  for (int n = 0; n < dim; ++n) {
    REQUIRE(r.dist.prob(n) == Approx(ref.prob(n)).margin(1e-11));
  }
}

TEST_CASE("the two zero-temperature routes agree at the dispatch seam") {
  // the finite-temperature closed form approaches the binomial one as the
  // bath empties; just above the floor the two differ by a few 1e-9 per
  // entry (the warm route refuses occupations at or below the floor)
  const double n_t = 1.0000001e-8;
  ChannelParams warm(0.3, n_t);
  ChannelParams cold(0.3, 0.0);
  EvolutionResult via_thermal = evolve_fock_thermal(2, warm, 32);
  EvolutionResult via_binomial = evolve(InputState::fock(2), cold, 32);
  for (int n = 0; n < 32; ++n) {
    REQUIRE(std::abs(via_thermal.dist.prob(n) - via_binomial.dist.prob(n)) <
            1e-8);
  }
}

TEST_CASE("dispatcher picks the route by input kind and bath occupation") {
  ChannelParams cold(0.4, 0.0);
  ChannelParams warm(0.4, 0.7);
  REQUIRE(evolve(InputState::fock(2), cold, 16).method ==
          EvolutionMethod::kBinomial);
  REQUIRE(evolve(InputState::fock(2), warm, 16).method ==
          EvolutionMethod::kHypergeometric);
  REQUIRE(evolve(InputState::vacuum(), warm, 16).method ==
          EvolutionMethod::kBoseEinstein);
  REQUIRE(evolve(InputState::thermal(1.0), cold, 16).method ==
          EvolutionMethod::kBoseEinstein);
}

TEST_CASE("adaptive truncation meets its tail target") {
  ChannelParams p = ChannelParams::from_eta(0.5, 2.0);
  const InputState input = InputState::thermal(3.0);
  const int dim_default = adaptive_dim(input, p);
  REQUIRE(evolve(input, p, dim_default).dist.tail_mass() <= kTailTarget);
  const int dim_tight = adaptive_dim(input, p, 1e-15);
  REQUIRE(dim_tight >= dim_default);
  REQUIRE(evolve(input, p, dim_tight).dist.tail_mass() <= 1e-15);
}

TEST_CASE("evolution rejects bad arguments") {
  ChannelParams p(0.4, 0.7);
  REQUIRE_THROWS_AS(evolve_fock_thermal(5, p, 5), std::invalid_argument);
  REQUIRE_THROWS_AS(evolve_fock_zero_temp(-1, p), std::invalid_argument);
  REQUIRE_THROWS_AS(evolve_thermal_input(-0.5, p, 16), std::invalid_argument);
  // the finite-temperature route refuses the zero-temperature floor
  ChannelParams cold(0.4, 0.0);
  REQUIRE_THROWS_AS(evolve_fock_thermal(2, cold, 16), std::invalid_argument);
}

TEST_CASE("rate equation detects an undersized truncation") {
  // |5> into a warm bath pushed for a long exposure cannot fit in 8 levels
  ChannelParams p(1.0, 2.0);
  REQUIRE_THROWS_AS(ode_evolve(fock_distribution(5, 8), p, 8),
                    std::runtime_error);
}
