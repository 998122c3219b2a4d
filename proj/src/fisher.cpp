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

#include "lossmet/fisher.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lossmet/channel.hpp"
#include "lossmet/specfun.hpp"

namespace lossmet {

namespace {

std::vector<double> central_difference(const DistributionFamily& family,
                                       double x0, double h, int dim) {
  const NumberDistribution plus = family.dist(x0 + h);
  const NumberDistribution minus = family.dist(x0 - h);
  if (plus.dim() != dim || minus.dim() != dim) {
    throw std::runtime_error(
        "distribution_derivative: family changed dimension across the "
        "stencil");
  }
  std::vector<double> dp(static_cast<size_t>(dim));
  for (int n = 0; n < dim; ++n) {
    dp[static_cast<size_t>(n)] = (plus.prob(n) - minus.prob(n)) / (2.0 * h);
  }
  return dp;
}

// second-order forward stencil for points next to the domain edge
std::vector<double> forward_difference(const DistributionFamily& family,
                                       double x0, double h, int dim) {
  const NumberDistribution f0 = family.dist(x0);
  const NumberDistribution f1 = family.dist(x0 + h);
  const NumberDistribution f2 = family.dist(x0 + 2.0 * h);
  if (f0.dim() != dim || f1.dim() != dim || f2.dim() != dim) {
    throw std::runtime_error(
        "distribution_derivative: family changed dimension across the "
        "stencil");
  }
  std::vector<double> dp(static_cast<size_t>(dim));
  for (int n = 0; n < dim; ++n) {
    dp[static_cast<size_t>(n)] =
        (-3.0 * f0.prob(n) + 4.0 * f1.prob(n) - f2.prob(n)) / (2.0 * h);
  }
  return dp;
}

// dp_n/d(eta) for the n-out-of-m survival distribution
std::vector<double> binomial_eta_derivative(int m, double eta, int dim) {
  std::vector<double> dp(static_cast<size_t>(dim), 0.0);
  const double loss = 1.0 - eta;
  for (int n = 0; n <= m && n < dim; ++n) {
    const double c = std::exp(log_binomial(m, n));
    double v = 0.0;
    if (n > 0) {
      v += n * std::pow(eta, n - 1) * std::pow(loss, m - n);
    }
    if (n < m) {
      v -= (m - n) * std::pow(eta, n) * std::pow(loss, m - n - 1);
    }
    dp[static_cast<size_t>(n)] = c * v;
  }
  return dp;
}

// dp_n/d(mean) for a geometric photon-number distribution
std::vector<double> bose_einstein_mean_derivative(double mean, int dim) {
  std::vector<double> dp(static_cast<size_t>(dim), 0.0);
  if (mean == 0.0) {
    // limit of the geometric family collapsing onto the vacuum
    dp[0] = -1.0;
    if (dim > 1) dp[1] = 1.0;
    return dp;
  }
  const double log_mean = std::log(mean);
  const double log_mix = std::log1p(mean);
  for (int n = 0; n < dim; ++n) {
    dp[static_cast<size_t>(n)] =
        std::exp((n - 1) * log_mean - (n + 2) * log_mix) *
        (static_cast<double>(n) - mean);
  }
  return dp;
}

}  // namespace

DerivativeResult distribution_derivative(const DistributionFamily& family,
                                         double x0) {
  if (family.analytic_derivative) {
    return DerivativeResult{family.analytic_derivative(x0),
                            DerivativeMethod::kAnalytic, 0.0, false};
  }
  if (!family.dist) {
    throw std::invalid_argument(
        "distribution_derivative: family has no evaluator");
  }
  const int dim = family.dist(x0).dim();
  const double h = std::max(1e-5 * std::abs(x0), 1e-7);
  if (x0 - h <= family.domain_floor) {
    return DerivativeResult{forward_difference(family, x0, h, dim),
                            DerivativeMethod::kCentralDifference, h, true};
  }
  // Richardson extrapolation of two central stencils kills the O(h^2) term
  const std::vector<double> coarse = central_difference(family, x0, h, dim);
  const std::vector<double> fine =
      central_difference(family, x0, h / 2.0, dim);
  std::vector<double> dp(static_cast<size_t>(dim));
  for (int n = 0; n < dim; ++n) {
    dp[static_cast<size_t>(n)] =
        (4.0 * fine[static_cast<size_t>(n)] - coarse[static_cast<size_t>(n)]) /
        3.0;
  }
  return DerivativeResult{std::move(dp), DerivativeMethod::kCentralDifference,
                          h, false};
}

FisherResult counting_fisher(const DistributionFamily& family, double x0,
                             Parameter parameter) {
  if (!family.dist) {
    throw std::invalid_argument("counting_fisher: family has no evaluator");
  }
  const NumberDistribution dist = family.dist(x0);
  const DerivativeResult deriv = distribution_derivative(family, x0);
  if (static_cast<int>(deriv.dp.size()) != dist.dim()) {
    throw std::runtime_error(
        "counting_fisher: derivative and distribution dimensions disagree");
  }
  long double fisher = 0.0L;
  long double dropped = dist.tail_mass();
  bool any_kept = false;
  for (int n = 0; n < dist.dim(); ++n) {
    const double p = dist.prob(n);
    const double dp = deriv.dp[static_cast<size_t>(n)];
    if (p >= kProbFloor) {
      fisher += static_cast<long double>(dp) * dp / p;
      any_kept = true;
    } else {
      dropped += p;
    }
  }
  if (!any_kept) {
    throw std::runtime_error(
        "counting_fisher: every outcome fell below the probability floor");
  }
  const double dropped_mass = static_cast<double>(dropped);
  return FisherResult{static_cast<double>(fisher),
                      parameter,
                      deriv.method,
                      deriv.step,
                      dist.dim(),
                      dropped_mass,
                      dropped_mass < kDroppedMassLimit,
                      deriv.one_sided};
}

double uncertainty_from_fisher(const FisherResult& fisher,
                               long long repetitions) {
  if (repetitions < 1) {
    throw std::invalid_argument(
        "uncertainty_from_fisher: repetitions must be >= 1");
  }
  if (!(fisher.value > 0.0) || !std::isfinite(fisher.value)) {
    throw std::domain_error(
        "uncertainty_from_fisher: information is zero or undefined; the "
        "parameter is not identifiable here");
  }
  return 1.0 / std::sqrt(static_cast<double>(repetitions) * fisher.value);
}

DistributionFamily make_output_family(const InputState& input,
                                      const ChannelParams& params,
                                      Parameter parameter, int dim) {
  if (dim < 2) {
    throw std::invalid_argument("make_output_family: dim must be >= 2");
  }
  DistributionFamily family;
  family.domain_floor = 0.0;

  const InputState in = input;
  const double x_fixed = params.x;
  const double n_t_fixed = params.n_t;

  if (parameter == Parameter::kGamma) {
    family.dist = [in, n_t_fixed, dim](double x) {
      return evolve(in, ChannelParams(x, n_t_fixed), dim).dist;
    };
  } else {
    family.dist = [in, x_fixed, dim](double n_t) {
      return evolve(in, ChannelParams(x_fixed, n_t), dim).dist;
    };
  }

  const bool fock_input = in.kind == InputState::Kind::kFock;
  const bool zero_temp_fock = fock_input && n_t_fixed <= kThermalFloor;
  const bool geometric_output = !fock_input;

  if (geometric_output) {
    const double mean0 = in.mean_occupation();
    if (parameter == Parameter::kGamma) {
      family.analytic_derivative = [mean0, n_t_fixed, dim](double x) {
        const double eta = std::exp(-2.0 * x);
        const double mean = eta * (mean0 - n_t_fixed) + n_t_fixed;
        std::vector<double> dp = bose_einstein_mean_derivative(mean, dim);
        const double chain = -2.0 * eta * (mean0 - n_t_fixed);
        for (double& v : dp) v *= chain;
        return dp;
      };
    } else {
      family.analytic_derivative = [mean0, x_fixed, dim](double n_t) {
        const double eta = std::exp(-2.0 * x_fixed);
        const double mean = eta * (mean0 - n_t) + n_t;
        std::vector<double> dp = bose_einstein_mean_derivative(mean, dim);
        const double chain = 1.0 - eta;
        for (double& v : dp) v *= chain;
        return dp;
      };
    }
  } else if (zero_temp_fock && parameter == Parameter::kGamma) {
    const int m = in.fock_m;
    family.analytic_derivative = [m, dim](double x) {
      const double eta = std::exp(-2.0 * x);
      std::vector<double> dp = binomial_eta_derivative(m, eta, dim);
      const double chain = -2.0 * eta;
      for (double& v : dp) v *= chain;
      return dp;
    };
  }
  // remaining cases (Fock input into a warm bath) differentiate numerically

  return family;
}

FisherResult output_counting_fisher(const InputState& input,
                                    const ChannelParams& params,
                                    Parameter parameter, double tail_target) {
  const int dim = adaptive_dim(input, params, tail_target);
  const DistributionFamily family =
      make_output_family(input, params, parameter, dim);
  const double x0 =
      parameter == Parameter::kGamma ? params.x : params.n_t;
  return counting_fisher(family, x0, parameter);
}

}  // namespace lossmet
