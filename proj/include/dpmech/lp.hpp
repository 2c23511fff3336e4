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

// Optimal constrained mechanisms as linear programs.
//
// Variable rho(i, j) = Pr[i | j] lives at index i * (n + 1) + j. The base
// feasible region holds probability bounds, column sums and the two-sided
// privacy ratio rows; each requested structural property adds its rows.

#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "dpmech/core.hpp"
#include "dpmech/error.hpp"
#include "dpmech/simplex.hpp"

namespace dpmech {

inline std::size_t mechanism_var(std::size_t n, std::size_t output,
                                 std::size_t input) {
  return output * (n + 1) + input;
}

namespace internal {

inline void add_property_rows(LinearProgram& lp, std::size_t n, Property prop) {
  auto v = [n](std::size_t i, std::size_t j) { return mechanism_var(n, i, j); };
  using R = Relation;
  switch (prop) {
    case Property::kRowHonesty:
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
          if (j != i) lp.add_constraint({{v(i, i), 1.0}, {v(i, j), -1.0}}, R::kGreaterEqual, 0.0);
        }
      }
      break;
    case Property::kRowMonotone:
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 1; j <= i; ++j) {
          lp.add_constraint({{v(i, j), 1.0}, {v(i, j - 1), -1.0}}, R::kGreaterEqual, 0.0);
        }
        for (std::size_t j = i; j < n; ++j) {
          lp.add_constraint({{v(i, j), 1.0}, {v(i, j + 1), -1.0}}, R::kGreaterEqual, 0.0);
        }
      }
      break;
    case Property::kColumnHonesty:
      for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i != j) lp.add_constraint({{v(j, j), 1.0}, {v(i, j), -1.0}}, R::kGreaterEqual, 0.0);
        }
      }
      break;
    case Property::kColumnMonotone:
      for (std::size_t j = 0; j <= n; ++j) {
        for (std::size_t i = 1; i <= j; ++i) {
          lp.add_constraint({{v(i, j), 1.0}, {v(i - 1, j), -1.0}}, R::kGreaterEqual, 0.0);
        }
        for (std::size_t i = j; i < n; ++i) {
          lp.add_constraint({{v(i, j), 1.0}, {v(i + 1, j), -1.0}}, R::kGreaterEqual, 0.0);
        }
      }
      break;
    case Property::kFairness:
      for (std::size_t i = 1; i <= n; ++i) {
        lp.add_constraint({{v(i, i), 1.0}, {v(0, 0), -1.0}}, R::kEqual, 0.0);
      }
      break;
    case Property::kWeakHonesty:
      for (std::size_t i = 0; i <= n; ++i) {
        lp.add_constraint({{v(i, i), 1.0}}, R::kGreaterEqual,
                          1.0 / static_cast<double>(n + 1));
      }
      break;
    case Property::kSymmetry:
      // One row per centrosymmetric orbit {(i, j), (n-i, n-j)} of size two.
      for (std::size_t i = 0; i <= n; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
          const std::size_t self = v(i, j);
          const std::size_t mirror = v(n - i, n - j);
          if (self < mirror) {
            lp.add_constraint({{self, 1.0}, {mirror, -1.0}}, R::kEqual, 0.0);
          }
        }
      }
      break;
  }
}

}  // namespace internal

inline LinearProgram build_lp(std::size_t n, PrivacyLevel level,
                              const ConstraintSet& props, const Objective& obj) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "group size must be >= 1");
  if (obj.aggregator != Aggregator::kSum) {
    throw Error(ErrorCode::kUnsupportedObjective,
                "only the Sum aggregator is linear");
  }
  obj.validate(n);
  const std::size_t dim = n + 1;
  const double a = level.alpha();
  LinearProgram lp(dim * dim);

  std::vector<double> cost(dim * dim, 0.0);
  const std::size_t min_dist = obj.min_distance();
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      const std::size_t dist = i > j ? i - j : j - i;
      lp.set_bounds(mechanism_var(n, i, j), 0.0, 1.0);
      if (dist >= min_dist) {
        cost[mechanism_var(n, i, j)] = obj.weights[j] * distance_penalty(i, j, obj.p);
      }
    }
  }
  lp.set_objective(std::move(cost));

  for (std::size_t j = 0; j <= n; ++j) {
    std::vector<double> row(dim * dim, 0.0);
    for (std::size_t i = 0; i <= n; ++i) row[mechanism_var(n, i, j)] = 1.0;
    lp.add_constraint(std::move(row), Relation::kEqual, 1.0);
  }
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t left = mechanism_var(n, i, j);
      const std::size_t right = mechanism_var(n, i, j + 1);
      lp.add_constraint({{left, 1.0}, {right, -a}}, Relation::kGreaterEqual, 0.0);
      lp.add_constraint({{right, 1.0}, {left, -a}}, Relation::kGreaterEqual, 0.0);
    }
  }
  for (Property p : props.members()) internal::add_property_rows(lp, n, p);
  return lp;
}

// LP values rounded into a mechanism: entries clamped to [0, 1].
inline Mechanism mechanism_from_solution(std::size_t n,
                                         const std::vector<double>& values) {
  std::vector<double> entries(values);
  for (double& e : entries) e = std::clamp(e, 0.0, 1.0);
  return Mechanism(n, std::move(entries));
}

inline Mechanism design_mechanism(std::size_t n, PrivacyLevel level,
                                  const ConstraintSet& props,
                                  const Objective& obj,
                                  const SimplexOptions& options = {}) {
  const LinearProgram lp = build_lp(n, level, props, obj);
  const LpSolution solution = solve_lp(lp, options);
  if (solution.status != LpStatus::kOptimal) {
    // The uniform mechanism satisfies every supported property, so the
    // region is never empty and the objective is bounded below by zero.
    throw Error(ErrorCode::kInternal,
                std::string("mechanism LP reported ") +
                    lp_status_name(solution.status));
  }
  const double violation = max_violation(lp, solution.values);
  if (violation > kTolerance) {
    throw Error(ErrorCode::kNumericalInstability,
                "solution violates a row by " + std::to_string(violation));
  }
  return mechanism_from_solution(n, solution.values);
}

}  // namespace dpmech
