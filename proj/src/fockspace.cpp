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

#include "lossmet/fockspace.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace lossmet {

namespace {

// Negative values this small are rounding debris and get clamped to zero;
// anything worse is a real bug in the caller.
constexpr double kNegativeSlack = 1e-12;

}  // namespace

NumberDistribution::NumberDistribution(std::vector<double> probs,
                                       double tail_mass)
    : probs_(std::move(probs)), tail_mass_(tail_mass) {
  if (probs_.empty()) {
    throw std::invalid_argument("NumberDistribution: empty probability vector");
  }
  long double sum = 0.0L;
  for (size_t n = 0; n < probs_.size(); ++n) {
    double& p = probs_[n];
    if (p < 0.0) {
      if (p < -kNegativeSlack) {
        std::ostringstream msg;
        msg << "NumberDistribution: negative probability " << p
            << " at entry " << n;
        throw std::invalid_argument(msg.str());
      }
      p = 0.0;
    }
    sum += p;
  }
  if (tail_mass_ < 0.0) {
    if (tail_mass_ < -kNegativeSlack) {
      throw std::invalid_argument("NumberDistribution: negative tail mass");
    }
    tail_mass_ = 0.0;
  }
  const double total = static_cast<double>(sum) + tail_mass_;
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "NumberDistribution: probabilities plus tail sum to " << total
        << ", off by more than " << kNormTolerance;
    throw std::invalid_argument(msg.str());
  }
}

ChannelParams::ChannelParams(double x_, double n_t_) : x(x_), n_t(n_t_) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::invalid_argument("ChannelParams: exposure x must be positive");
  }
  if (!(n_t >= 0.0) || !std::isfinite(n_t)) {
    throw std::invalid_argument(
        "ChannelParams: bath occupation n_t must be nonnegative");
  }
}

double ChannelParams::eta() const { return std::exp(-2.0 * x); }

ChannelParams ChannelParams::from_eta(double eta, double n_t) {
  if (!(eta > 0.0) || !(eta < 1.0)) {
    throw std::invalid_argument(
        "ChannelParams: transmissivity must lie in (0, 1)");
  }
  return ChannelParams(-0.5 * std::log(eta), n_t);
}

InputState InputState::vacuum() { return InputState{}; }

InputState InputState::fock(int m) {
  if (m < 0) {
    throw std::invalid_argument("InputState: photon number must be >= 0");
  }
  InputState s;
  s.kind = m == 0 ? Kind::kVacuum : Kind::kFock;
  s.fock_m = m;
  return s;
}

InputState InputState::thermal(double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean)) {
    throw std::invalid_argument("InputState: thermal mean must be >= 0");
  }
  InputState s;
  s.kind = mean == 0.0 ? Kind::kVacuum : Kind::kThermal;
  s.thermal_mean = mean;
  return s;
}

double InputState::mean_occupation() const {
  switch (kind) {
    case Kind::kVacuum: return 0.0;
    case Kind::kFock: return static_cast<double>(fock_m);
    case Kind::kThermal: return thermal_mean;
  }
  return 0.0;
}

double InputState::occupation_variance() const {
  // number states have sharp occupation; thermal variance is mean(1+mean)
  return kind == Kind::kThermal ? thermal_mean * (1.0 + thermal_mean) : 0.0;
}

std::string InputState::label() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::kVacuum: out << "vacuum"; break;
    case Kind::kFock: out << "fock:" << fock_m; break;
    case Kind::kThermal: out << "thermal:" << thermal_mean; break;
  }
  return out.str();
}

NumberDistribution fock_distribution(int m, int dim) {
  if (m < 0) {
    throw std::invalid_argument("fock_distribution: m must be >= 0");
  }
  if (dim <= m) {
    throw std::invalid_argument("fock_distribution: dim must exceed m");
  }
  std::vector<double> p(static_cast<size_t>(dim), 0.0);
  p[static_cast<size_t>(m)] = 1.0;
  return NumberDistribution(std::move(p), 0.0);
}

NumberDistribution thermal_distribution(double mean, int dim) {
  if (dim < 1) {
    throw std::invalid_argument("thermal_distribution: dim must be >= 1");
  }
  if (!(mean >= 0.0)) {
    throw std::invalid_argument("thermal_distribution: mean must be >= 0");
  }
  std::vector<double> p(static_cast<size_t>(dim), 0.0);
  if (mean == 0.0) {
    p[0] = 1.0;
    return NumberDistribution(std::move(p), 0.0);
  }
  const double r = mean / (1.0 + mean);
  const double p0 = 1.0 / (1.0 + mean);
  double v = p0;
  for (int n = 0; n < dim; ++n) {
    p[static_cast<size_t>(n)] = v;
    v *= r;
  }
  // geometric tail has the exact closed form r^dim
  const double tail = std::exp(static_cast<double>(dim) * std::log(r));
  return NumberDistribution(std::move(p), tail);
}

Moments mean_and_second_moment(const NumberDistribution& dist) {
  long double mean = 0.0L;
  long double second = 0.0L;
  const auto& p = dist.probs();
  for (size_t n = 1; n < p.size(); ++n) {
    const long double nn = static_cast<long double>(n);
    mean += nn * p[n];
    second += nn * nn * p[n];
  }
  return Moments{static_cast<double>(mean), static_cast<double>(second),
                 dist.tail_mass()};
}

}  // namespace lossmet
