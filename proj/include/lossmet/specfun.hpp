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

namespace lossmet {

/// ln C(n, k) via log-gamma. Relative accuracy ~1e-14 up to n ~ 1e6.
double log_binomial(long long n, long long k);

/// Terminating Gauss series F(-n, -m; 1; z) = sum_k [(n)_k (m)_k falling /
/// (k!)^2] z^k, summed with the stable ratio recurrence
/// term_{k+1} = term_k * (n-k)(m-k) z / (k+1)^2. All terms are nonnegative
/// for z >= 0, so no cancellation occurs; accumulation is done in extended
/// precision. Symmetric in (n, m); equals 1 at z = 0 or min(n, m) = 0.
double hypergeom_terminating(int n, int m, double z);

}  // namespace lossmet
