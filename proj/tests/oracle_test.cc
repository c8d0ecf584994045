// Copyright 2026 The Authors.
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

#include "fairsel/oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fairsel/selectors.h"
#include "test_support.h"

namespace fairsel {
namespace {

using ::fairsel::testing::RandomFeasibleBounds;
using ::fairsel::testing::RandomInstance;
using ::fairsel::testing::RandomInstanceOptions;
using ::fairsel::testing::Straddle;
using ::fairsel::testing::StraddleConstraints;
using ::fairsel::testing::Tiny;
using ::fairsel::testing::TinyConstraints;

TEST(BinomialCoefficientTest, Values) {
  EXPECT_EQ(BinomialCoefficient(4, 2), 6.0);
  EXPECT_EQ(BinomialCoefficient(12, 6), 924.0);
  EXPECT_EQ(BinomialCoefficient(5, 0), 1.0);
  EXPECT_EQ(BinomialCoefficient(3, 4), 0.0);
}

TEST(BruteForceTargetTest, Tiny) {
  const OracleResult r = *BruteForceTarget(Tiny(), TinyConstraints(0.0));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.best_subset, (std::vector<int>{0, 3}));
  EXPECT_DOUBLE_EQ(r.best_utility, 3.5);
  // One item from group 0 (three choices) plus item 3.
  EXPECT_EQ(r.feasible_count, 3);
}

TEST(BruteForceTargetTest, UnconstrainedIsBlind) {
  const Instance inst = Tiny();
  const OracleResult r =
      *BruteForceTarget(inst, UnconstrainedSet(inst.n, inst.p));
  EXPECT_EQ(r.best_subset, Blind(inst).Indices());
  EXPECT_EQ(r.feasible_count, 6);
}

TEST(BruteForceTargetTest, ZeroUpperIsInfeasible) {
  const ConstraintSet cs = *MakeConstraintSet(2, {{0, 0}}, {{0, 0}}, 0.0);
  const OracleResult r = *BruteForceTarget(Tiny(), cs);
  EXPECT_FALSE(r.feasible);
  EXPECT_EQ(r.feasible_count, 0);
}

TEST(BruteForceTargetTest, NeedsTrueAttributes) {
  Instance inst = Tiny();
  inst.items[2].true_attrs.reset();
  EXPECT_FALSE(BruteForceTarget(inst, TinyConstraints()).ok());
}

TEST(BruteForceTargetTest, RefusesLargeSearch) {
  Engine engine = MakeEngine(41);
  RandomInstanceOptions opts;
  opts.min_m = opts.max_m = 40;
  opts.max_s = 1;
  Instance inst = RandomInstance(engine, opts);
  inst.n = 20;
  const absl::StatusOr<OracleResult> r =
      BruteForceTarget(inst, UnconstrainedSet(inst.n, inst.p));
  ASSERT_FALSE(r.ok());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
}

TEST(BruteForceDenoisedTest, Tiny) {
  const OracleResult r = *BruteForceDenoised(Tiny(), TinyConstraints(0.1));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.best_subset, (std::vector<int>{0, 3}));
  EXPECT_DOUBLE_EQ(r.best_utility, 3.5);
  EXPECT_EQ(r.feasible_count, 3);
}

TEST(BruteForceDenoisedTest, LargeSlackAdmitsEverything) {
  const OracleResult r = *BruteForceDenoised(Tiny(), TinyConstraints(1.0));
  EXPECT_EQ(r.feasible_count, 6);
}

TEST(BruteForceDenoisedTest, StraddleIntegralOptimumIsBelowRelaxation) {
  const OracleResult r =
      *BruteForceDenoised(Straddle(2), StraddleConstraints(2));
  ASSERT_TRUE(r.feasible);
  EXPECT_EQ(r.best_subset, (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(r.best_utility, 2.0);
  EXPECT_EQ(r.feasible_count, 1);
  EXPECT_NEAR(SolveDenoisedRelaxation(Straddle(2), StraddleConstraints(2))
                  ->objective_value,
              3.0, 1e-9);
}

TEST(BruteForceDenoisedTest, FeasibilityPredicateAgrees) {
  const Instance inst = Tiny();
  const ConstraintSet cs = TinyConstraints(0.1);
  EXPECT_TRUE(IsDenoisedFeasible(inst, cs, std::vector<int>{0, 3}));
  EXPECT_FALSE(IsDenoisedFeasible(inst, cs, std::vector<int>{0, 1}));
  EXPECT_TRUE(IsTargetFeasible(inst, cs, std::vector<int>{2, 3}));
  EXPECT_FALSE(IsTargetFeasible(inst, cs, std::vector<int>{1, 2}));
}

// LP value >= best denoised-feasible subset >= best target-feasible subset
// whenever the latter is itself denoised-feasible.
TEST(OraclePropertyTest, UtilityChain) {
  Engine engine = MakeEngine(42);
  RandomInstanceOptions opts;
  opts.min_m = 3;
  opts.max_m = 12;
  opts.max_s = 2;
  opts.max_p = 3;
  opts.max_n = 6;
  int chained = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Instance inst = RandomInstance(engine, opts);
    const ConstraintSet cs = RandomFeasibleBounds(engine, inst, 0.05);
    const OracleResult den = *BruteForceDenoised(inst, cs);
    const OracleResult tgt = *BruteForceTarget(inst, cs);
    const absl::StatusOr<BfsSolution> lp = SolveDenoisedRelaxation(inst, cs);
    if (den.feasible) {
      ASSERT_TRUE(lp.ok()) << lp.status();
      EXPECT_GE(lp->objective_value, den.best_utility - 1e-9);
    }
    if (tgt.feasible && IsDenoisedFeasible(inst, cs, tgt.best_subset)) {
      ++chained;
      EXPECT_GE(den.best_utility, tgt.best_utility - 1e-9);
    }
  }
  EXPECT_GT(chained, 20);
}

TEST(ConcentrationTest, Examples) {
  const int n = 100;
  const std::vector<double> ones(n, 1.0);
  const ProbabilityMatrix uniform(n, {0.5, 0.5});
  EXPECT_EQ(ConcentrationTrial(ones, uniform, 1.0, 1000, 1), 0.0);
  const double freq = ConcentrationTrial(ones, uniform, 0.3, 10000, 2);
  EXPECT_LE(freq, ConcentrationBound(2, 0.3, n));
  EXPECT_NEAR(ConcentrationBound(2, 0.3, n), 4.0 * std::exp(-3.0), 1e-12);

  const std::vector<double> ten(10, 1.0);
  const ProbabilityMatrix sure(10, {1.0, 0.0});
  EXPECT_EQ(ConcentrationTrial(ten, sure, 0.05, 1000, 3), 0.0);
}

TEST(ConcentrationTest, SmallSlackViolatesOften) {
  // Binomial(100, 1/2) sits outside 50 +- 1 most of the time.
  const std::vector<double> ones(100, 1.0);
  const ProbabilityMatrix uniform(100, {0.5, 0.5});
  EXPECT_GT(ConcentrationTrial(ones, uniform, 0.01, 2000, 4), 0.5);
}

TEST(ConcentrationTest, Deterministic) {
  const std::vector<double> x(50, 1.0);
  const ProbabilityMatrix q(50, {0.3, 0.7});
  EXPECT_EQ(ConcentrationTrial(x, q, 0.05, 500, 9),
            ConcentrationTrial(x, q, 0.05, 500, 9));
}

}  // namespace
}  // namespace fairsel
