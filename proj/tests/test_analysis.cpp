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


#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dpmech/analysis.hpp"
#include "dpmech/lp.hpp"
#include "oracles.hpp"

namespace dpmech {
namespace {

const std::vector<double> kAlphas = {1.0 / 3, 0.5, 0.62, 2.0 / 3, 0.76, 0.9, 10.0 / 11};

TEST(ThresholdTest, WeakHonestyThresholdMatchesPredicate) {
  for (double a : kAlphas) {
    const double t = gm_weak_honesty_threshold(PrivacyLevel(a));
    EXPECT_NEAR(t, 2 * a / (1 - a), 1e-12);
    for (std::size_t n = 2; n <= 40; ++n) {
      EXPECT_EQ(gm_satisfies_weak_honesty(n, PrivacyLevel(a)),
                oracle::weak_honest(oracle::gm(n, a)))
          << "n=" << n << " a=" << a;
    }
  }
  EXPECT_THROW(gm_weak_honesty_threshold(PrivacyLevel(1.0)), Error);
}

TEST(ThresholdTest, ColumnMonotoneFlipsAtHalf) {
  for (std::size_t n = 2; n <= 15; ++n) {
    for (double a : {0.1, 0.3, 0.5, 0.5 + 1e-6, 0.6, 0.9}) {
      EXPECT_EQ(gm_is_column_monotone(PrivacyLevel(a)), oracle::column_monotone(oracle::gm(n, a)))
          << n << " " << a;
    }
  }
}

TEST(FairBoundTest, NoFairMechanismExceedsTheBound) {
  for (double a : {0.4, 0.7}) {
    for (std::size_t n = 1; n <= 6; ++n) {
      // Maximising the common diagonal over fair private mechanisms lands
      // exactly on the bound.
      LinearProgram lp = build_lp(n, PrivacyLevel(a), {Property::kFairness}, Objective::l0(n));
      std::vector<double> c(lp.num_vars(), 0.0);
      c[mechanism_var(n, 0, 0)] = -1.0;
      lp.set_objective(c);
      const auto s = solve_lp(lp);
      ASSERT_EQ(s.status, LpStatus::kOptimal);
      EXPECT_NEAR(-s.objective_value, fair_diagonal_bound(n, PrivacyLevel(a)), 1e-9);
    }
  }
}

TEST(DerivableTest, GeometricYesFairNo) {
  for (double a : kAlphas) {
    const PrivacyLevel level(a);
    for (std::size_t n = 2; n <= 20; ++n) {
      EXPECT_TRUE(gm_derivable(geometric(n, level), level));
      EXPECT_FALSE(gm_derivable(explicit_fair(n, level), level));
    }
    EXPECT_TRUE(gm_derivable(uniform(6), level));
  }
}

TEST(DerivableTest, PostProcessedGeometricIsDerivable) {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 6;
    const double a = 0.2 + 0.0035 * t;
    const auto m = oracle::multiply(oracle::random_stochastic(n + 1, rng), oracle::gm(n, a));
    EXPECT_TRUE(gm_derivable(oracle::to_mechanism(m), PrivacyLevel(a)));
  }
}

TEST(TightnessTest, GeometricTightUniformNot) {
  for (double a : kAlphas) {
    EXPECT_TRUE(dp_all_tight(geometric(6, PrivacyLevel(a)), PrivacyLevel(a)));
    EXPECT_FALSE(dp_all_tight(uniform(6), PrivacyLevel(a)));
  }
}

TEST(SelectTest, Flowchart) {
  auto pick = [](std::size_t n, double a, const char* props) {
    return select_strategy(n, PrivacyLevel(a), ConstraintSet::parse(props)).strategy;
  };
  EXPECT_EQ(pick(5, 0.9, "F"), Strategy::kUseEM);
  EXPECT_EQ(pick(5, 0.3, "F,RH"), Strategy::kUseEM);
  EXPECT_EQ(pick(20, 0.62, "RM"), Strategy::kUseGM);
  EXPECT_EQ(pick(5, 0.9, "CH"), Strategy::kSolveLpWHCM);
  EXPECT_EQ(pick(5, 0.9, "CM"), Strategy::kSolveLpWHCM);
  EXPECT_EQ(pick(5, 0.4, "CH"), Strategy::kUseGM);
  EXPECT_EQ(pick(5, 0.5, "CM,RH"), Strategy::kUseGM);
  EXPECT_EQ(pick(3, 0.9, "WH"), Strategy::kSolveLpWH);
  EXPECT_EQ(pick(18, 0.9, "WH"), Strategy::kUseGM);
  EXPECT_EQ(pick(17, 0.9, "wm-weak"), Strategy::kSolveLpWH);
  EXPECT_EQ(pick(3, 0.9, "none"), Strategy::kUseGM);
  EXPECT_EQ(pick(3, 0.9, "S,RH"), Strategy::kUseGM);
  EXPECT_EQ(pick(3, 1.0, "F"), Strategy::kSolveLpWHCM);
  EXPECT_EQ(std::string(strategy_name(Strategy::kSolveLpWH)), "SolveLP_WH");
}

TEST(SelectTest, UseGmChoicesReallySatisfyTheRequest) {
  for (double a : kAlphas) {
    for (std::size_t n = 2; n <= 12; ++n) {
      for (std::uint8_t bits = 0; bits < 128; ++bits) {
        const auto props = ConstraintSet::from_bits(bits);
        const auto r = select_strategy(n, PrivacyLevel(a), props);
        if (r.strategy == Strategy::kUseGM) {
          EXPECT_TRUE(satisfies_all(geometric(n, PrivacyLevel(a)), props))
              << props.to_string() << " n=" << n << " a=" << a;
        }
        if (r.strategy == Strategy::kUseEM) {
          EXPECT_TRUE(props.contains(Property::kFairness));
        }
        EXPECT_FALSE(r.rationale.empty());
      }
    }
  }
}

TEST(DpAlphaMaxTest, GridSearch) {
  EXPECT_DOUBLE_EQ(dp_alpha_max(geometric(4, PrivacyLevel(0.62))), 0.62);
  EXPECT_DOUBLE_EQ(dp_alpha_max(uniform(4)), 1.0);
  EXPECT_DOUBLE_EQ(dp_alpha_max(Mechanism::identity(3)), 0.0);
  // Ratio 1/3 between neighbours: largest grid alpha is 0.333.
  const Mechanism rr = Mechanism::from_rows(1, {{0.75, 0.25}, {0.25, 0.75}});
  EXPECT_DOUBLE_EQ(dp_alpha_max(rr), 0.333);
}

TEST(ReportTest, NamedMechanisms) {
  const auto gm = property_report(geometric(4, PrivacyLevel(0.62)));
  EXPECT_FALSE(gm.has(Property::kFairness));
  EXPECT_TRUE(gm.has(Property::kRowMonotone));
  EXPECT_NEAR(gm.l0, 2 * 0.62 / 1.62, 1e-12);
  EXPECT_EQ(gm.l0d.size(), 4u);

  const auto em = property_report(explicit_fair(4, PrivacyLevel(0.62)));
  for (Property p : kAllProperties) EXPECT_TRUE(em.has(p));

  const auto um = property_report(uniform(4));
  for (Property p : kAllProperties) EXPECT_TRUE(um.has(p));
  EXPECT_NEAR(um.l0, 1.0, 1e-12);
  EXPECT_DOUBLE_EQ(um.dp_alpha_max, 1.0);
}

TEST(ReportTest, JsonLayout) {
  const auto j = to_json(property_report(uniform(2)));
  const std::vector<std::string> expected = {"RH", "RM", "CH", "CM", "F", "WH", "S",
                                             "dp_alpha_max", "l0", "l0d.1", "l0d.2"};
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, expected);
  EXPECT_EQ(j["RH"], true);
  EXPECT_NEAR(j["l0d.2"].get<double>(), oracle::l0d(oracle::um(2), 2), 1e-15);

  const auto s = to_json(select_strategy(5, PrivacyLevel(0.9), ConstraintSet::parse("F")));
  EXPECT_EQ(s["strategy"], "UseEM");
}

}  // namespace
}  // namespace dpmech
