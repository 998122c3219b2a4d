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

#include "lossmet/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "lossmet/specfun.hpp"

namespace lossmet {

namespace {

constexpr double kTailBlownLimit = -1e-8;  // hard error past this
constexpr double kOdeLeakLimit = 1e-8;
constexpr int kMaxDim = 1 << 16;

double relaxed_mean(double mean0, const ChannelParams& params) {
  const double eta = params.eta();
  return eta * (mean0 - params.n_t) + params.n_t;
}

}  // namespace

EvolutionResult evolve_fock_zero_temp(int m, const ChannelParams& params) {
  if (m < 0) {
    throw std::invalid_argument("evolve_fock_zero_temp: m must be >= 0");
  }
  const double eta = params.eta();
  const double log_eta = -2.0 * params.x;
  const double log_keep = std::log1p(-eta);  // ln(1 - eta)
  std::vector<double> p(static_cast<size_t>(m) + 1, 0.0);
  for (int n = 0; n <= m; ++n) {
    // survival of n photons out of m independent ones
    p[static_cast<size_t>(n)] = std::exp(log_binomial(m, n) + n * log_eta +
                                         (m - n) * log_keep);
  }
  NumberDistribution dist(std::move(p), 0.0);
  return EvolutionResult{std::move(dist), params, EvolutionMethod::kBinomial,
                         m + 1};
}

EvolutionResult evolve_fock_thermal(int m, const ChannelParams& params,
                                    int dim) {
  if (m < 0) {
    throw std::invalid_argument("evolve_fock_thermal: m must be >= 0");
  }
  if (dim <= m) {
    throw std::invalid_argument("evolve_fock_thermal: dim must exceed m");
  }
  const double n_t = params.n_t;
  if (!(n_t > kThermalFloor)) {
    throw std::invalid_argument(
        "evolve_fock_thermal: bath occupation at or below the "
        "zero-temperature floor; use the binomial route");
  }
  const double eta = params.eta();
  const double one_minus_eta = -std::expm1(-2.0 * params.x);  // 1 - eta
  const double log_loss = std::log(one_minus_eta);
  const double log_mix = std::log1p(n_t * one_minus_eta);  // ln(1 + n_t(1-eta))
  const double z =
      eta / (n_t * (1.0 + n_t) * one_minus_eta * one_minus_eta);

  std::vector<double> p(static_cast<size_t>(dim), 0.0);
  long double sum = 0.0L;
  for (int n = 0; n < dim; ++n) {
    const double log_pref = (n + m) * log_loss + m * std::log1p(n_t) +
                            n * std::log(n_t) - (n + m + 1) * log_mix;
    const double v = std::exp(log_pref) * hypergeom_terminating(n, m, z);
    p[static_cast<size_t>(n)] = v;
    sum += v;
  }
  double tail = static_cast<double>(1.0L - sum);
  if (tail < kTailBlownLimit) {
    std::ostringstream msg;
    msg << "evolve_fock_thermal: normalization blown (tail " << tail
        << ") at m=" << m << " x=" << params.x << " n_t=" << n_t
        << " dim=" << dim;
    throw std::runtime_error(msg.str());
  }
  tail = std::max(tail, 0.0);
  NumberDistribution dist(std::move(p), tail);
  return EvolutionResult{std::move(dist), params,
                         EvolutionMethod::kHypergeometric, dim};
}

EvolutionResult evolve_thermal_input(double mean, const ChannelParams& params,
                                     int dim) {
  if (!(mean >= 0.0)) {
    throw std::invalid_argument("evolve_thermal_input: mean must be >= 0");
  }
  NumberDistribution dist = thermal_distribution(relaxed_mean(mean, params), dim);
  return EvolutionResult{std::move(dist), params,
                         EvolutionMethod::kBoseEinstein, dim};
}

EvolutionResult evolve(const InputState& input, const ChannelParams& params,
                       int dim) {
  switch (input.kind) {
    case InputState::Kind::kVacuum:
      return evolve_thermal_input(0.0, params, dim);
    case InputState::Kind::kThermal:
      return evolve_thermal_input(input.thermal_mean, params, dim);
    case InputState::Kind::kFock:
      break;
  }
  if (params.n_t > kThermalFloor) {
    return evolve_fock_thermal(input.fock_m, params, dim);
  }
  // zero-temperature limit; pad the binomial support up to dim
  EvolutionResult res = evolve_fock_zero_temp(input.fock_m, params);
  if (dim > res.dist.dim()) {
    std::vector<double> p = res.dist.probs();
    p.resize(static_cast<size_t>(dim), 0.0);
    res = EvolutionResult{NumberDistribution(std::move(p), 0.0), params,
                          EvolutionMethod::kBinomial, dim};
  }
  return res;
}

EvolutionResult evolve(const InputState& input, const ChannelParams& params) {
  return evolve(input, params, adaptive_dim(input, params));
}

EvolutionResult ode_evolve(const NumberDistribution& initial,
                           const ChannelParams& params, int dim) {
  if (dim < 2) {
    throw std::invalid_argument("ode_evolve: dim must be >= 2");
  }
  if (initial.dim() > dim) {
    for (int n = dim; n < initial.dim(); ++n) {
      if (initial.prob(n) != 0.0) {
        throw std::invalid_argument(
            "ode_evolve: initial state does not fit inside dim");
      }
    }
  }
  const double n_t = params.n_t;
  const size_t d = static_cast<size_t>(dim);

  // state = probabilities plus one accumulator for mass absorbed at the cut;
  // the extended generator has exact zero column sums, so RK4 conserves the
  // total to roundoff
  std::vector<double> y(d + 1, 0.0);
  for (int n = 0; n < std::min(initial.dim(), dim); ++n) {
    y[static_cast<size_t>(n)] = initial.prob(n);
  }

  auto rhs = [&](const std::vector<double>& p, std::vector<double>& dp) {
    for (size_t n = 0; n < d; ++n) {
      const double up = n + 1 < d ? p[n + 1] : 0.0;
      const double down = n > 0 ? p[n - 1] : 0.0;
      dp[n] = (n_t + 1.0) * ((n + 1.0) * up - static_cast<double>(n) * p[n]) +
              n_t * (static_cast<double>(n) * down - (n + 1.0) * p[n]);
    }
    dp[d] = n_t * static_cast<double>(d) * p[d - 1];  // flux past the cut
  };

  const double s_total = 2.0 * params.x;
  const double h_cap =
      std::min(1e-3, 0.1 / ((1.0 + n_t) * static_cast<double>(dim)));
  const long steps = std::max(1L, static_cast<long>(std::ceil(s_total / h_cap)));
  const double h = s_total / static_cast<double>(steps);

  std::vector<double> k1(d + 1), k2(d + 1), k3(d + 1), k4(d + 1), tmp(d + 1);
  for (long step = 0; step < steps; ++step) {
    rhs(y, k1);
    for (size_t i = 0; i <= d; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    rhs(tmp, k2);
    for (size_t i = 0; i <= d; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    rhs(tmp, k3);
    for (size_t i = 0; i <= d; ++i) tmp[i] = y[i] + h * k3[i];
    rhs(tmp, k4);
    for (size_t i = 0; i <= d; ++i) {
      y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
  }

  const double leak = y[d];
  long double sum = 0.0L;
  for (size_t n = 0; n < d; ++n) sum += y[n];
  const double drift = std::abs(1.0 - static_cast<double>(sum) - leak);
  if (drift > 1e-8) {
    std::ostringstream msg;
    msg << "ode_evolve: normalization drifted by " << drift;
    throw std::runtime_error(msg.str());
  }
  if (leak + initial.tail_mass() > kOdeLeakLimit) {
    std::ostringstream msg;
    msg << "ode_evolve: " << leak + initial.tail_mass()
        << " of the mass crossed the truncation cut; increase dim";
    throw std::runtime_error(msg.str());
  }

  std::vector<double> p(y.begin(), y.begin() + static_cast<long>(d));
  double tail = 1.0;
  for (size_t n = 0; n < d; ++n) tail -= p[n];
  tail = std::max(tail, 0.0);
  NumberDistribution dist(std::move(p), tail);
  return EvolutionResult{std::move(dist), params,
                         EvolutionMethod::kRateEquation, dim};
}

Moments output_moments(double mean0, double second0,
                       const ChannelParams& params) {
  if (!(mean0 >= 0.0) || !(second0 >= mean0 * mean0)) {
    throw std::invalid_argument(
        "output_moments: need mean0 >= 0 and second0 >= mean0^2");
  }
  const double eta = params.eta();
  const double loss = 1.0 - eta;
  const double n_t = params.n_t;
  const double mean = relaxed_mean(mean0, params);
  const double second = eta * eta * second0 +
                        eta * (4.0 * n_t + 1.0) * loss * mean0 +
                        2.0 * n_t * n_t * loss * loss + n_t * loss;
  return Moments{mean, second, 0.0};
}

int adaptive_dim(const InputState& input, const ChannelParams& params,
                 double tail_target) {
  const double occupancy =
      input.mean_occupation() + params.n_t * (1.0 - params.eta());
  int dim = std::max(16, static_cast<int>(std::ceil(4.0 * occupancy + 10.0)));
  if (input.kind == InputState::Kind::kFock) {
    dim = std::max(dim, input.fock_m + 2);
  }
  while (dim < kMaxDim) {
    const EvolutionResult res = evolve(input, params, dim);
    if (res.dist.tail_mass() <= tail_target) return dim;
    dim *= 2;
  }
  return kMaxDim;
}

}  // namespace lossmet
