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
#include <vector>

#include "lossmet/channel.hpp"
#include "lossmet/fisher.hpp"

using Catch::Approx;
using namespace lossmet;

namespace {

DistributionFamily drop_analytic(DistributionFamily family) {
  family.analytic_derivative = nullptr;
  return family;
}

double max_abs_diff(const std::vector<double>& a,
                    const std::vector<double>& b) {
  REQUIRE(a.size() == b.size());
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    m = std::max(m, std::abs(a[i] - b[i]));
  }
  return m;
}

}  // namespace

TEST_CASE("analytic and numeric derivatives agree") {
  SECTION("binomial route in the exposure") {
    ChannelParams p(0.4, 0.0);
    DistributionFamily family =
        make_output_family(InputState::fock(3), p, Parameter::kGamma, 8);
    REQUIRE(family.analytic_derivative);
    DerivativeResult an = distribution_derivative(family, p.x);
    DerivativeResult fd = distribution_derivative(drop_analytic(family), p.x);
    REQUIRE(an.method == DerivativeMethod::kAnalytic);
    REQUIRE(fd.method == DerivativeMethod::kCentralDifference);
    REQUIRE(max_abs_diff(an.dp, fd.dp) < 1e-6);
  }
  SECTION("geometric route in the exposure") {
    ChannelParams p = ChannelParams::from_eta(0.7, 0.8);
    DistributionFamily family =
        make_output_family(InputState::thermal(2.0), p, Parameter::kGamma, 64);
    REQUIRE(family.analytic_derivative);
    DerivativeResult an = distribution_derivative(family, p.x);
    DerivativeResult fd = distribution_derivative(drop_analytic(family), p.x);
    REQUIRE(max_abs_diff(an.dp, fd.dp) < 1e-6);
  }
  SECTION("geometric route in the bath occupation") {
    ChannelParams p = ChannelParams::from_eta(0.7, 0.8);
    DistributionFamily family = make_output_family(
        InputState::thermal(2.0), p, Parameter::kThermalOccupation, 64);
    REQUIRE(family.analytic_derivative);
    DerivativeResult an = distribution_derivative(family, p.n_t);
    DerivativeResult fd =
        distribution_derivative(drop_analytic(family), p.n_t);
    REQUIRE(max_abs_diff(an.dp, fd.dp) < 1e-6);
  }
  SECTION("warm number-state route differentiates numerically") {
    ChannelParams p(0.4, 0.7);
    DistributionFamily family =
        make_output_family(InputState::fock(2), p, Parameter::kGamma, 32);
    REQUIRE_FALSE(family.analytic_derivative);
  }
}

TEST_CASE("derivatives fall back to a forward stencil at the domain edge") {
  ChannelParams p(0.4, 0.0);
  DistributionFamily family = make_output_family(
      InputState::fock(1), p, Parameter::kThermalOccupation, 16);
  DerivativeResult d = distribution_derivative(family, 0.0);
  REQUIRE(d.one_sided);
  REQUIRE(d.method == DerivativeMethod::kCentralDifference);
}

TEST_CASE("counting information is invariant under zero padding") {
  ChannelParams p(0.4, 0.0);
  const InputState input = InputState::fock(1);
  FisherResult narrow = counting_fisher(
      make_output_family(input, p, Parameter::kGamma, 4), p.x,
      Parameter::kGamma);
  FisherResult wide = counting_fisher(
      make_output_family(input, p, Parameter::kGamma, 64), p.x,
      Parameter::kGamma);
  REQUIRE(narrow.value == Approx(wide.value).epsilon(1e-12));
}

TEST_CASE("binomial exposure information matches its closed form") {
  // for binomial thinning F_x = 4 eta m / (1 - eta)
  for (int m : {1, 3}) {
    for (double x : {0.1, 0.6}) {
      ChannelParams p(x, 0.0);
      FisherResult f = output_counting_fisher(InputState::fock(m), p,
                                              Parameter::kGamma);
      const double eta = p.eta();
      REQUIRE(f.value == Approx(4.0 * eta * m / (1.0 - eta)).epsilon(1e-12));
      REQUIRE(f.derivative_method == DerivativeMethod::kAnalytic);
    }
  }
}

TEST_CASE("geometric occupation information matches its closed form") {
  // geometric law: F_mean = 1/(mean(1+mean)); chain rule gives
  // F_{n_t} = (1-eta)^2 / (mean(1+mean))
  ChannelParams p = ChannelParams::from_eta(0.6, 1.5);
  FisherResult f = output_counting_fisher(InputState::vacuum(), p,
                                          Parameter::kThermalOccupation);
  const double mean = (1.0 - 0.6) * 1.5;
  const double expect = 0.4 * 0.4 / (mean * (1.0 + mean));
  REQUIRE(f.value == Approx(expect).epsilon(1e-9));
}

TEST_CASE("merging outcomes never increases the information") {
  ChannelParams p = ChannelParams::from_eta(0.7, 0.5);
  const int dim = 32;
  DistributionFamily fine =
      make_output_family(InputState::thermal(2.0), p, Parameter::kGamma, dim);
  // bin pairs of adjacent counts into one detector channel
  DistributionFamily coarse;
  coarse.domain_floor = fine.domain_floor;
  coarse.dist = [fine, dim](double x) {
    NumberDistribution d = fine.dist(x);
    std::vector<double> binned(static_cast<size_t>(dim) / 2, 0.0);
    for (int n = 0; n < dim; ++n) binned[static_cast<size_t>(n / 2)] += d.prob(n);
    return NumberDistribution(std::move(binned), d.tail_mass());
  };
  coarse.analytic_derivative = [fine, dim](double x) {
    std::vector<double> dp = fine.analytic_derivative(x);
    std::vector<double> binned(static_cast<size_t>(dim) / 2, 0.0);
    for (int n = 0; n < dim; ++n) binned[static_cast<size_t>(n / 2)] += dp[static_cast<size_t>(n)];
    return binned;
  };
  FisherResult f_fine = counting_fisher(fine, p.x, Parameter::kGamma);
  FisherResult f_coarse = counting_fisher(coarse, p.x, Parameter::kGamma);
  REQUIRE(f_coarse.value <= f_fine.value * (1.0 + 1e-12));
}

TEST_CASE("dropped mass is tracked and flags reliability") {
  // deliberately starved truncation: most of the mass sits beyond the cut
  ChannelParams p = ChannelParams::from_eta(0.9, 2.0);
  DistributionFamily family =
      make_output_family(InputState::thermal(4.0), p, Parameter::kGamma, 4);
  FisherResult f = counting_fisher(family, p.x, Parameter::kGamma);
  REQUIRE(f.dropped_mass > kDroppedMassLimit);
  REQUIRE_FALSE(f.reliable);

  // a healthy truncation keeps essentially everything
  FisherResult ok = output_counting_fisher(InputState::thermal(4.0), p,
                                           Parameter::kGamma);
  REQUIRE(ok.dropped_mass < kDroppedMassLimit);
  REQUIRE(ok.reliable);
}

TEST_CASE("uncertainty follows the Cramer-Rao recipe") {
  FisherResult f;
  f.value = 4.0;
  REQUIRE(uncertainty_from_fisher(f) == Approx(0.5));
  REQUIRE(uncertainty_from_fisher(f, 16) == Approx(0.125));
  REQUIRE_THROWS_AS(uncertainty_from_fisher(f, 0), std::invalid_argument);
  f.value = 0.0;
  REQUIRE_THROWS_AS(uncertainty_from_fisher(f), std::domain_error);
}

TEST_CASE("a stationary geometric family carries no information") {
  // thermal input already at the bath occupation: the output does not move
  ChannelParams p = ChannelParams::from_eta(0.8, 1.0);
  DistributionFamily family =
      make_output_family(InputState::thermal(1.0), p, Parameter::kGamma, 64);
  FisherResult f = counting_fisher(family, p.x, Parameter::kGamma);
  REQUIRE(f.value < 1e-18);
  REQUIRE_THROWS_AS(uncertainty_from_fisher(f), std::domain_error);
}
