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
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dpmech/eval.hpp"
#include "dpmech/explicit.hpp"
#include "oracles.hpp"

namespace dpmech {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no dpmech::Error thrown";
  return ErrorCode::kInternal;
}

TEST(SplitMix64Test, ReferenceSequence) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xE220A8397B1DCDAFULL);
  EXPECT_EQ(rng.next(), 0x6E789E6AA1B965F4ULL);
  EXPECT_EQ(rng.next(), 0x06C45D188009454FULL);
}

TEST(SplitMix64Test, UniformRangeAndStreams) {
  SplitMix64 rng(123);
  double lo = 1, hi = 0, sum = 0;
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.uniform01();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_GE(lo, 0.0);
  EXPECT_LT(hi, 1.0);
  EXPECT_NEAR(sum / 100000, 0.5, 3 * std::sqrt(1.0 / 12 / 100000));
  EXPECT_NE(mix64(1, 0), mix64(1, 1));
  EXPECT_NE(mix64(1, 0), mix64(2, 0));
  EXPECT_EQ(mix64(9, 4), mix64(9, 4));
}

// |freq - p| within `sigmas` binomial standard deviations.
void expect_frequency(std::size_t hits, std::size_t draws, double p, double sigmas = 3) {
  const double sd = std::sqrt(p * (1 - p) / double(draws));
  EXPECT_NEAR(double(hits) / double(draws), p, sigmas * sd + 1e-12);
}

TEST(SampleTest, IdentityAlwaysReturnsInput) {
  SplitMix64 rng(1);
  const Mechanism id = Mechanism::identity(5);
  for (int k = 0; k < 1000; ++k) EXPECT_EQ(sample_output(id, 3, rng), 3u);
}

TEST(SampleTest, UniformFrequencies) {
  SplitMix64 rng(2);
  const MechanismSampler sampler(uniform(2));
  std::vector<std::size_t> hits(3, 0);
  const std::size_t draws = 100000;
  for (std::size_t k = 0; k < draws; ++k) ++hits[sampler.sample(1, rng)];
  for (std::size_t h : hits) expect_frequency(h, draws, 1.0 / 3);
}

TEST(SampleTest, TwoPersonGeometric) {
  SplitMix64 rng(3);
  const MechanismSampler sampler(geometric(2, PrivacyLevel(0.9)));
  std::size_t truthful = 0;
  const std::size_t draws = 100000;
  for (std::size_t k = 0; k < draws; ++k) truthful += sampler.sample(1, rng) == 1;
  expect_frequency(truthful, draws, 1.0 / 19);
}

TEST(SampleTest, RandomMechanismColumns) {
  std::mt19937_64 gen(4);
  SplitMix64 rng(4);
  const auto m = oracle::random_stochastic(5, gen);
  const MechanismSampler sampler(oracle::to_mechanism(m));
  const std::size_t draws = 50000;
  for (std::size_t j = 0; j < 5; ++j) {
    std::vector<std::size_t> hits(5, 0);
    for (std::size_t k = 0; k < draws; ++k) ++hits[sampler.sample(j, rng)];
    for (std::size_t i = 0; i < 5; ++i) {
      if (m[i][j] == 0.0) {
        EXPECT_EQ(hits[i], 0u);
      }
      // 25 cells at once: 4 sigma keeps the family-wise rate near 3 sigma's.
      expect_frequency(hits[i], draws, m[i][j], 4);
    }
  }
}

TEST(SampleTest, RejectsOutOfRangeInput) {
  SplitMix64 rng(5);
  EXPECT_EQ(code_of([&] { sample_output(uniform(3), 4, rng); }), ErrorCode::kInputOutOfRange);
}

TEST(BinomialPopulationTest, GroupCountAndExtremes) {
  SplitMix64 rng(6);
  EXPECT_EQ(binomial_population(10000, 8, 0.3, rng).counts.size(), 1250u);
  EXPECT_EQ(binomial_population(10003, 8, 0.3, rng).counts.size(), 1250u);
  for (std::size_t c : binomial_population(1000, 4, 0.0, rng).counts) EXPECT_EQ(c, 0u);
  for (std::size_t c : binomial_population(1000, 4, 1.0, rng).counts) EXPECT_EQ(c, 4u);
  const auto g = binomial_population(800000, 8, 0.5, rng);
  double sum = 0;
  for (std::size_t c : g.counts) sum += double(c);
  const double k = double(g.counts.size());
  EXPECT_NEAR(sum / k, 4.0, 3 * std::sqrt(8 * 0.25 / k));
  EXPECT_EQ(g.n, 8u);
}

TEST(BinomialPopulationTest, Errors) {
  SplitMix64 rng(7);
  EXPECT_EQ(code_of([&] { binomial_population(100, 4, 1.5, rng); }), ErrorCode::kBadProbability);
  EXPECT_EQ(code_of([&] { binomial_population(100, 4, -0.1, rng); }), ErrorCode::kBadProbability);
  EXPECT_EQ(code_of([&] { binomial_population(3, 4, 0.5, rng); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { binomial_population(3, 0, 0.5, rng); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { GroupCounts(2, {0, 3}); }), ErrorCode::kInvalidArgument);
}

TEST(PredicateTest, Parsing) {
  EXPECT_EQ(BitPredicate::parse("age<30").op(), BitPredicate::Op::kLess);
  EXPECT_EQ(BitPredicate::parse("age <= 30").op(), BitPredicate::Op::kLessEqual);
  EXPECT_EQ(BitPredicate::parse("age>=30").op(), BitPredicate::Op::kGreaterEqual);
  EXPECT_EQ(BitPredicate::parse("age>30").op(), BitPredicate::Op::kGreater);
  EXPECT_EQ(BitPredicate::parse("sex==Female").op(), BitPredicate::Op::kEqual);
  EXPECT_EQ(BitPredicate::parse("bit").op(), BitPredicate::Op::kBare);
  EXPECT_EQ(BitPredicate::parse("age <= 30").column(), "age");
  EXPECT_EQ(code_of([] { BitPredicate::parse("<3"); }), ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([] { BitPredicate::parse("sex<Female"); }), ErrorCode::kInvalidArgument);
}

TEST(PredicateTest, Evaluation) {
  EXPECT_TRUE(BitPredicate::parse("age<30").evaluate("29.5", 2));
  EXPECT_FALSE(BitPredicate::parse("age<30").evaluate("30", 2));
  EXPECT_TRUE(BitPredicate::parse("age<=30").evaluate("30", 2));
  EXPECT_TRUE(BitPredicate::parse("age==30").evaluate("30.0", 2));
  EXPECT_TRUE(BitPredicate::parse("sex==Female").evaluate("Female", 2));
  EXPECT_FALSE(BitPredicate::parse("sex==Female").evaluate("Male", 2));
  EXPECT_TRUE(BitPredicate::parse("bit").evaluate("1", 2));
  EXPECT_EQ(code_of([] { BitPredicate::parse("bit").evaluate("2", 7); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { BitPredicate::parse("age<3").evaluate("old", 7); }), ErrorCode::kParseError);
}

GroupCounts ingest(const std::string& text, const char* pred, std::size_t size) {
  std::istringstream in(text);
  return ingest_groups(in, BitPredicate::parse(pred), size);
}

TEST(IngestTest, GroupsInFileOrder) {
  std::string ones = "bit\n";
  for (int k = 0; k < 10; ++k) ones += "1\n";
  EXPECT_EQ(ingest(ones, "bit", 4).counts, (std::vector<std::size_t>{4, 4}));

  std::string alt = "id,bit\n";
  for (int k = 0; k < 8; ++k) alt += std::to_string(k) + "," + std::to_string(k % 2) + "\n";
  EXPECT_EQ(ingest(alt, "bit", 4).counts, (std::vector<std::size_t>{2, 2}));
}

TEST(IngestTest, PredicatesQuotesAndLineEndings) {
  const std::string csv =
      "\xEF\xBB\xBF" "age,name,sex\r\n"
      "25,\"Smith, J\",Female\r\n"
      "40,\"O\"\"Hara\",Male\r\n"
      "\r\n"
      "31,Lee,Female\r\n"
      "19,Kim,Male\r\n";
  EXPECT_EQ(ingest(csv, "age<30", 2).counts, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(ingest(csv, "sex==Female", 4).counts, (std::vector<std::size_t>{2}));
  EXPECT_EQ(ingest(csv, "age>=31", 3).counts, (std::vector<std::size_t>{2}));
}

TEST(IngestTest, AdultStyleCountsInRange) {
  std::mt19937_64 gen(8);
  std::uniform_int_distribution<int> age(17, 90);
  std::string csv = "age,workclass,income\n";
  for (int k = 0; k < 203; ++k) csv += std::to_string(age(gen)) + ",Private,<=50K\n";
  const auto g = ingest(csv, "age<30", 8);
  EXPECT_EQ(g.counts.size(), 25u);
  for (std::size_t c : g.counts) EXPECT_LE(c, 8u);
  EXPECT_EQ(ingest(csv, "income==<=50K", 8).counts, std::vector<std::size_t>(25, 8));
}

TEST(IngestTest, Errors) {
  EXPECT_EQ(code_of([] { ingest("a,b\n1,2\n", "c", 1); }), ErrorCode::kUnknownColumn);
  EXPECT_EQ(code_of([] { ingest("", "c", 1); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { ingest("a,b\n1,2\n1\n", "a", 1); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { ingest("a\n\"1\n", "a", 1); }), ErrorCode::kParseError);
  EXPECT_EQ(code_of([] { ingest("a\n1\n", "a", 0); }), ErrorCode::kInvalidArgument);
  try {
    ingest("a,b\n1,0\n0,1\nx,1\n", "a", 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("row 4"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ingest_groups("/nonexistent/file.csv", BitPredicate::parse("a"), 2), Error);
}

TEST(EvalResultTest, MeanAndStandardError) {
  const auto r = EvalResult::from_reps({1.0, 2.0, 4.0, 5.0});
  EXPECT_DOUBLE_EQ(r.mean, 3.0);
  // sample variance 10/3
  EXPECT_NEAR(r.std_error, std::sqrt(10.0 / 3) / 2, 1e-15);
  EXPECT_EQ(EvalResult::from_reps({7.0}).std_error, 0.0);
  const auto j = to_json(r);
  EXPECT_EQ(j["per_rep"].size(), 4u);
  EXPECT_DOUBLE_EQ(j["mean"].get<double>(), 3.0);
}

EvalConfig config(std::size_t reps, std::uint64_t seed, std::size_t d) {
  EvalConfig c;
  c.reps = reps;
  c.seed = seed;
  c.d = d;
  return c;
}

TEST(EmpiricalTest, IdentityIsExact) {
  SplitMix64 rng(9);
  const auto g = binomial_population(1000, 6, 0.4, rng);
  EXPECT_EQ(empirical_l0d(Mechanism::identity(6), g, config(10, 1, 0)).mean, 0.0);
  EXPECT_EQ(empirical_rmse(Mechanism::identity(6), g, config(10, 1, 0)).mean, 0.0);
}

TEST(EmpiricalTest, UniformErrorRate) {
  SplitMix64 rng(10);
  for (std::size_t n : {2u, 4u, 8u}) {
    const auto g = binomial_population(10000, n, 0.5, rng);
    const auto r = empirical_l0d(uniform(n), g, config(30, 42, 0));
    EXPECT_NEAR(r.mean, double(n) / double(n + 1), 3 * r.std_error);
  }
}

TEST(EmpiricalTest, TwoPersonAllOnes) {
  const GroupCounts g(2, std::vector<std::size_t>(2000, 1));
  const auto r = empirical_l0d(geometric(2, PrivacyLevel(0.9)), g, config(30, 5, 0));
  EXPECT_NEAR(r.mean, 18.0 / 19, 3 * r.std_error);
}

TEST(EmpiricalTest, UniformRmse) {
  const GroupCounts g(2, std::vector<std::size_t>(3000, 1));
  const auto r = empirical_rmse(uniform(2), g, config(30, 6, 0));
  EXPECT_NEAR(r.mean, std::sqrt(2.0 / 3), 3 * r.std_error);
}

TEST(EmpiricalTest, FairBeatsGeometricOnRmse) {
  SplitMix64 rng(11);
  const auto g = binomial_population(10000, 8, 0.5, rng);
  const PrivacyLevel level(10.0 / 11);
  const auto em = empirical_rmse(explicit_fair(8, level), g, config(30, 12, 0));
  const auto gm = empirical_rmse(geometric(8, level), g, config(30, 12, 0));
  EXPECT_GT(gm.mean - em.mean, 3 * std::hypot(em.std_error, gm.std_error));
}

TEST(EmpiricalTest, ConvergesToAnalyticErrorRate) {
  std::mt19937_64 gen(12);
  std::uniform_int_distribution<std::size_t> count(0, 5);
  std::vector<std::size_t> counts(5000);
  for (auto& c : counts) c = count(gen);
  const GroupCounts g(5, counts);
  const auto m = oracle::random_dp(5, 0.6, gen);
  double expected = 0.0;
  for (std::size_t c : counts) expected += (1.0 - m[c][c]) / double(counts.size());
  const auto r = empirical_l0d(oracle::to_mechanism(m), g, config(40, 13, 0));
  EXPECT_NEAR(r.mean, expected, 3 * r.std_error);
}

TEST(EmpiricalTest, NonIncreasingInDistance) {
  SplitMix64 rng(13);
  const auto g = binomial_population(2000, 6, 0.3, rng);
  const Mechanism m = geometric(6, PrivacyLevel(0.8));
  auto prev = empirical_l0d(m, g, config(10, 3, 0));
  for (std::size_t d = 1; d <= 6; ++d) {
    const auto cur = empirical_l0d(m, g, config(10, 3, d));
    for (std::size_t r = 0; r < 10; ++r) EXPECT_LE(cur.per_rep[r], prev.per_rep[r]);
    prev = cur;
  }
  EXPECT_EQ(prev.mean, 0.0);
}

TEST(EmpiricalTest, DeterministicPerSeed) {
  SplitMix64 rng(14);
  const auto g = binomial_population(1000, 4, 0.5, rng);
  const Mechanism m = explicit_fair(4, PrivacyLevel(0.7));
  const auto a = empirical_l0d(m, g, config(8, 77, 1));
  const auto b = empirical_l0d(m, g, config(8, 77, 1));
  const auto c = empirical_l0d(m, g, config(8, 78, 1));
  EXPECT_EQ(a.per_rep, b.per_rep);
  EXPECT_NE(a.per_rep, c.per_rep);
  // Repetition r depends only on (seed, r).
  const auto longer = empirical_l0d(m, g, config(12, 77, 1));
  for (std::size_t r = 0; r < 8; ++r) EXPECT_EQ(longer.per_rep[r], a.per_rep[r]);
}

TEST(EmpiricalTest, Errors) {
  const GroupCounts g(3, {1, 2});
  EXPECT_EQ(code_of([&] { empirical_l0d(uniform(4), g, config(2, 0, 0)); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { empirical_rmse(uniform(4), g, config(2, 0, 0)); }),
            ErrorCode::kDimensionMismatch);
  EXPECT_EQ(code_of([&] { empirical_l0d(uniform(3), g, config(0, 0, 0)); }),
            ErrorCode::kInvalidArgument);
  EXPECT_EQ(code_of([&] { empirical_l0d(uniform(3), GroupCounts(3, {}), config(2, 0, 0)); }),
            ErrorCode::kInvalidArgument);
  EvalConfig rmse = config(2, 0, 0);
  rmse.metric = Metric::kRmse;
  EXPECT_EQ(evaluate(Mechanism::identity(3), g, rmse).mean, 0.0);
}

}  // namespace
}  // namespace dpmech
