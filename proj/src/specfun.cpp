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

#include "lossmet/specfun.hpp"

#include <cmath>
#include <stdexcept>

namespace lossmet {

double log_binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::invalid_argument("log_binomial: need 0 <= k <= n");
  }
  if (k == 0 || k == n) return 0.0;
  return std::lgamma(static_cast<double>(n) + 1.0) -
         std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double hypergeom_terminating(int n, int m, double z) {
  if (n < 0 || m < 0) {
    throw std::invalid_argument("hypergeom_terminating: orders must be >= 0");
  }
  if (!(z >= 0.0) || !std::isfinite(z)) {
    throw std::invalid_argument("hypergeom_terminating: need finite z >= 0");
  }
  const int kmax = n < m ? n : m;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int k = 0; k < kmax; ++k) {
    term *= static_cast<long double>(n - k) * static_cast<long double>(m - k) *
            static_cast<long double>(z) /
            (static_cast<long double>(k + 1) * static_cast<long double>(k + 1));
    sum += term;
  }
  return static_cast<double>(sum);
}

}  // namespace lossmet
