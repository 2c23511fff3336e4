// Copyright 2026 The dpmech Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Closed-form mechanisms: truncated geometric (GM), explicit fair (EM),
// uniform (UM) and randomized response, with their closed-form L0 costs.

#pragma once

#include <cstddef>
#include <vector>

#include "dpmech/core.hpp"
#include "dpmech/error.hpp"

namespace dpmech {

namespace internal {

inline double require_strict_alpha(PrivacyLevel level) {
  const double a = level.alpha();
  if (!(a > 0.0 && a < 1.0)) {
    throw Error(ErrorCode::kAlphaOutOfRange,
                "closed-form mechanism needs alpha in (0, 1)");
  }
  return a;
}

inline void require_positive_n(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "group size must be >= 1");
}

// powers[k] = alpha^k for k in [0, count), built by repeated multiplication.
inline std::vector<double> alpha_powers(double alpha, std::size_t count) {
  std::vector<double> powers(count, 1.0);
  for (std::size_t k = 1; k < count; ++k) powers[k] = powers[k - 1] * alpha;
  return powers;
}

}  // namespace internal

struct GmParams {
  double x;  // corner rows 0 and n
  double y;  // interior rows

  static GmParams of(PrivacyLevel level) {
    const double a = internal::require_strict_alpha(level);
    return GmParams{1.0 / (1.0 + a), (1.0 - a) / (1.0 + a)};
  }
};

// Largest diagonal a fair alpha-DP mechanism of size n can have; the column
// floor(n/2) must hold y * alpha^|i-j| below and above the diagonal. For even
// n this is (1-a)/(1+a-2a^(n/2+1)); odd n gets one extra a^ceil(n/2) term.
struct EmParams {
  double y;

  static EmParams of(std::size_t n, PrivacyLevel level) {
    internal::require_positive_n(n);
    const double a = internal::require_strict_alpha(level);
    const auto powers = internal::alpha_powers(a, n / 2 + 2);
    double denom = 1.0;
    for (std::size_t k = 1; k <= n / 2; ++k) denom += 2.0 * powers[k];
    if (n % 2 == 1) denom += powers[(n + 1) / 2];
    return EmParams{1.0 / denom};
  }
};

inline Mechanism geometric(std::size_t n, PrivacyLevel level) {
  internal::require_positive_n(n);
  const GmParams params = GmParams::of(level);
  const auto powers = internal::alpha_powers(level.alpha(), n + 1);
  const std::size_t dim = n + 1;
  std::vector<double> entries(dim * dim);
  for (std::size_t i = 0; i <= n; ++i) {
    const double scale = (i == 0 || i == n) ? params.x : params.y;
    for (std::size_t j = 0; j <= n; ++j) {
      entries[i * dim + j] = scale * powers[i > j ? i - j : j - i];
    }
  }
  return Mechanism(n, std::move(entries));
}

inline Mechanism randomized_response(PrivacyLevel level) {
  return geometric(1, level);
}

// Each column holds the same multiset {y a^k}; entries within min(j, n-j) of
// the diagonal decay geometrically, further ones advance the exponent every
// second step so that row neighbours differ by at most one power.
inline Mechanism explicit_fair(std::size_t n, PrivacyLevel level) {
  const double y = EmParams::of(n, level).y;
  const auto powers = internal::alpha_powers(level.alpha(), n + 1);
  const std::size_t dim = n + 1;
  std::vector<double> entries(dim * dim);
  for (std::size_t j = 0; j <= n; ++j) {
    const std::size_t edge = std::min(j, n - j);
    for (std::size_t i = 0; i <= n; ++i) {
      const std::size_t dist = i > j ? i - j : j - i;
      const std::size_t exponent =
          dist < edge ? dist : (dist + edge + 1) / 2;
      entries[i * dim + j] = y * powers[exponent];
    }
  }
  return Mechanism(n, std::move(entries));
}

inline Mechanism uniform(std::size_t n) {
  internal::require_positive_n(n);
  const std::size_t dim = n + 1;
  return Mechanism(n, std::vector<double>(dim * dim, 1.0 / static_cast<double>(dim)));
}

inline double gm_l0_cost(PrivacyLevel level) {
  const double a = internal::require_strict_alpha(level);
  return 2.0 * a / (1.0 + a);
}

inline double em_l0_cost(std::size_t n, PrivacyLevel level) {
  const double y = EmParams::of(n, level).y;
  const double nd = static_cast<double>(n);
  return (nd + 1.0) / nd * (1.0 - y);
}

}  // namespace dpmech
