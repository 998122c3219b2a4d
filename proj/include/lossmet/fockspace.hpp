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

#include <string>
#include <vector>

namespace lossmet {

// Tolerance for |sum(probs) + tail_mass - 1| at construction.
inline constexpr double kNormTolerance = 1e-10;

/// Photon-number distribution on {0, ..., dim-1} plus the probability mass
/// beyond the cut. Immutable once built; construction validates positivity
/// and normalization.
class NumberDistribution {
 public:
  NumberDistribution(std::vector<double> probs, double tail_mass);

  const std::vector<double>& probs() const { return probs_; }
  double prob(int n) const { return probs_.at(static_cast<size_t>(n)); }
  double tail_mass() const { return tail_mass_; }
  int dim() const { return static_cast<int>(probs_.size()); }

 private:
  std::vector<double> probs_;
  double tail_mass_;
};

/// Channel working point. x = gamma*t is the dimensionless exposure; the
/// library works at t = 1 throughout, so relative uncertainties in the
/// damping rate are exposure-based and free of the clock unit.
struct ChannelParams {
  double x;    // > 0
  double n_t;  // bath occupation, >= 0

  ChannelParams(double x_, double n_t_);
  double eta() const;  // transmissivity exp(-2x)
  static ChannelParams from_eta(double eta, double n_t);
};

/// Probe prepared at the channel input: vacuum, a number state, or a
/// thermal state of given mean occupation.
struct InputState {
  enum class Kind { kVacuum, kFock, kThermal };

  Kind kind = Kind::kVacuum;
  int fock_m = 0;
  double thermal_mean = 0.0;

  static InputState vacuum();
  static InputState fock(int m);
  static InputState thermal(double mean);

  double mean_occupation() const;
  double occupation_variance() const;
  std::string label() const;  // "vacuum", "fock:2", "thermal:1.5"
};

struct Moments {
  double mean = 0.0;
  double second_moment = 0.0;
  double tail_mass = 0.0;  // moment error is bounded by tail * O(n^2) terms
};

/// Point mass at photon number m.
NumberDistribution fock_distribution(int m, int dim);

/// Geometric (Bose-Einstein) distribution of given mean; the truncated tail
/// (mean/(1+mean))^dim is carried exactly.
NumberDistribution thermal_distribution(double mean, int dim);

Moments mean_and_second_moment(const NumberDistribution& dist);

}  // namespace lossmet
