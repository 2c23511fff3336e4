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

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <string>

#include "dpmech/core.hpp"
#include "dpmech/error.hpp"
#include "dpmech/explicit.hpp"
#include "nlohmann/json.hpp"

namespace dpmech {

// GM has weak honesty iff n >= 2a/(1-a) (for n >= 2).
inline double gm_weak_honesty_threshold(PrivacyLevel level) {
  const double a = internal::require_strict_alpha(level);
  return 2.0 * a / (1.0 - a);
}

inline bool gm_satisfies_weak_honesty(std::size_t n, PrivacyLevel level,
                                      double tol = kTolerance) {
  return static_cast<double>(n) >= gm_weak_honesty_threshold(level) - tol;
}

// GM is column monotone iff a <= 1/2 (for n >= 2).
inline bool gm_is_column_monotone(PrivacyLevel level) {
  return level.alpha() <= 0.5;
}

inline double fair_diagonal_bound(std::size_t n, PrivacyLevel level) {
  return EmParams::of(n, level).y;
}

// Post-processing test: m arises from GM followed by some randomized map iff
// (m(i,j) - a m(i,j-1)) >= a (m(i,j+1) - a m(i,j)) for every row i and
// interior column j.
inline bool gm_derivable(const Mechanism& m, PrivacyLevel level,
                         double tol = kTolerance) {
  const double a = level.alpha();
  for (std::size_t i = 0; i <= m.n(); ++i) {
    for (std::size_t j = 1; j + 1 <= m.n(); ++j) {
      const double lhs = m(i, j) - a * m(i, j - 1);
      const double rhs = a * (m(i, j + 1) - a * m(i, j));
      if (lhs < rhs - tol) return false;
    }
  }
  return true;
}

// True when every adjacent pair in every row meets one of its two privacy
// inequalities with equality.
inline bool dp_all_tight(const Mechanism& m, PrivacyLevel level,
                         double tol = kTolerance) {
  const double a = level.alpha();
  for (std::size_t i = 0; i <= m.n(); ++i) {
    for (std::size_t j = 0; j < m.n(); ++j) {
      const double left = m(i, j);
      const double right = m(i, j + 1);
      if (std::abs(a * right - left) > tol && std::abs(a * left - right) > tol) {
        return false;
      }
    }
  }
  return true;
}

enum class Strategy { kUseEM, kUseGM, kSolveLpWH, kSolveLpWHCM };

inline const char* strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kUseEM: return "UseEM";
    case Strategy::kUseGM: return "UseGM";
    case Strategy::kSolveLpWH: return "SolveLP_WH";
    case Strategy::kSolveLpWHCM: return "SolveLP_WH_CM";
  }
  return "?";
}

struct SelectionResult {
  Strategy strategy;
  std::string rationale;
};

// Mechanism choice for the L0 objective given the wanted properties.
inline SelectionResult select_strategy(std::size_t n, PrivacyLevel level,
                                       const ConstraintSet& props) {
  const double a = level.alpha();
  if (a >= 1.0) {
    // The closed forms need alpha < 1; at alpha = 1 every private mechanism
    // ignores its input and the LP returns one of them.
    return {Strategy::kSolveLpWHCM, "alpha = 1: closed forms undefined, solve the LP"};
  }
  if (props.contains(Property::kFairness)) {
    return {Strategy::kUseEM,
            "fairness requested: EM is the optimal fair mechanism and has every "
            "other property"};
  }
  const bool column = props.contains(Property::kColumnHonesty) ||
                      props.contains(Property::kColumnMonotone);
  if (column) {
    if (gm_is_column_monotone(level)) {
      return {Strategy::kUseGM,
              "alpha <= 1/2: GM is column monotone, hence column and weakly honest"};
    }
    return {Strategy::kSolveLpWHCM,
            "column property requested and alpha > 1/2: solve the LP with WH and CM"};
  }
  if (props.contains(Property::kWeakHonesty) &&
      !gm_satisfies_weak_honesty(n, level)) {
    return {Strategy::kSolveLpWH,
            "weak honesty requested and n < 2a/(1-a) = " +
                std::to_string(gm_weak_honesty_threshold(level)) +
                ": solve the LP with WH"};
  }
  return {Strategy::kUseGM,
          "only row properties, symmetry or a weak honesty GM already meets: GM "
          "is optimal"};
}

// Largest alpha on the grid {k / kDpAlphaGridSize} for which the mechanism is
// alpha-DP, or 0 when none is.
inline constexpr int kDpAlphaGridSize = 1000;

inline double dp_alpha_max(const Mechanism& m, double tol = kTolerance) {
  for (int k = kDpAlphaGridSize; k >= 1; --k) {
    const double a = static_cast<double>(k) / kDpAlphaGridSize;
    if (is_dp(m, PrivacyLevel(a), tol)) return a;
  }
  return 0.0;
}

struct PropertyReport {
  std::array<bool, 7> flags{};
  double dp_alpha_max = 0.0;
  double l0 = 0.0;
  std::map<std::size_t, double> l0d;

  bool has(Property p) const { return flags[static_cast<std::size_t>(p)]; }
};

inline PropertyReport property_report(const Mechanism& m,
                                      double tol = kTolerance) {
  PropertyReport report;
  for (Property p : kAllProperties) {
    report.flags[static_cast<std::size_t>(p)] = check_property(m, p, tol);
  }
  report.dp_alpha_max = dp_alpha_max(m, tol);
  report.l0 = l0_score(m);
  for (std::size_t d = 1; d <= m.n(); ++d) report.l0d[d] = l0d_score(m, d);
  return report;
}

// Flat document: the seven flags, dp_alpha_max, l0 and one l0d.<d> per d.
inline nlohmann::ordered_json to_json(const PropertyReport& report) {
  nlohmann::ordered_json j;
  for (Property p : kAllProperties) j[std::string(property_name(p))] = report.has(p);
  j["dp_alpha_max"] = report.dp_alpha_max;
  j["l0"] = report.l0;
  for (const auto& [d, value] : report.l0d) j["l0d." + std::to_string(d)] = value;
  return j;
}

inline nlohmann::ordered_json to_json(const SelectionResult& result) {
  nlohmann::ordered_json j;
  j["strategy"] = strategy_name(result.strategy);
  j["rationale"] = result.rationale;
  return j;
}

}  // namespace dpmech
