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

#include "fairsel/metrics.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "fairsel/random.h"
#include "fairsel/selectors.h"
#include "test_support.h"

namespace fairsel {
namespace {

using ::fairsel::testing::Tiny;

// Plain restatement of the risk difference, looping over ordered pairs.
double RiskDifferenceByPairs(const std::vector<int>& c,
                             const std::vector<double>& t, int n) {
  double worst = 0.0;
  for (std::size_t l = 0; l < c.size(); ++l) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      worst = std::max(worst, c[l] / (n * t[l]) - c[k] / (n * t[k]));
    }
  }
  return 1.0 - *std::min_element(t.begin(), t.end()) * worst;
}

TEST(RiskDifferenceTest, Examples) {
  const std::vector<double> half = {0.5, 0.5};
  EXPECT_DOUBLE_EQ(*RiskDifference(std::vector<int>{5, 5}, half, 10), 1.0);
  EXPECT_DOUBLE_EQ(*RiskDifference(std::vector<int>{10, 0}, half, 10), 0.0);
  EXPECT_NEAR(*RiskDifference(std::vector<int>{7, 3}, half, 10), 0.6, 1e-12);
}

TEST(RiskDifferenceTest, Errors) {
  EXPECT_FALSE(
      RiskDifference(std::vector<int>{5, 5}, std::vector<double>{1.0, 0.0}, 10)
          .ok());
  EXPECT_FALSE(
      RiskDifference(std::vector<int>{5, 4}, std::vector<double>{0.5, 0.5}, 10)
          .ok());
}

TEST(SelectionLiftTest, Examples) {
  const std::vector<double> half = {0.5, 0.5};
  EXPECT_DOUBLE_EQ(*SelectionLift(std::vector<int>{5, 5}, half, 10), 1.0);
  EXPECT_NEAR(*SelectionLift(std::vector<int>{7, 3}, half, 10), 0.6 / 1.4,
              1e-12);
  EXPECT_NEAR(*SelectionLift(std::vector<int>{7, 3}, half, 10), 0.428571, 1e-6);
  EXPECT_DOUBLE_EQ(*SelectionLift(std::vector<int>{10, 0}, half, 10), 0.0);
}

TEST(SelectionRateTest, Examples) {
  EXPECT_DOUBLE_EQ(*SelectionRate(4, 10, 100, 40), 1.0);
  EXPECT_DOUBLE_EQ(*SelectionRate(0, 10, 100, 40), 0.0);
  EXPECT_FALSE(SelectionRate(0, 10, 100, 0).ok());
}

TEST(UtilityRatioTest, Examples) {
  EXPECT_DOUBLE_EQ(*UtilityRatio(5.5, 5.5), 1.0);
  EXPECT_NEAR(*UtilityRatio(3.5, 5.5), 0.636364, 1e-6);
  EXPECT_DOUBLE_EQ(*UtilityRatio(0.0, 5.5), 0.0);
  EXPECT_FALSE(UtilityRatio(1.0, 0.0).ok());
}

TEST(UtilityRatioTest, TinyTargetOptimumAgainstBlind) {
  const Instance inst = Tiny();
  const double blind = Blind(inst).total_utility;
  EXPECT_DOUBLE_EQ(blind, 5.5);
  EXPECT_NEAR(
      *UtilityRatio(SelectionFromIndices(inst, {0, 3}).total_utility, blind),
      3.5 / 5.5, 1e-12);
}

TEST(NdcgTest, Examples) {
  const std::vector<double> ideal = {3, 2.5};
  EXPECT_DOUBLE_EQ(Ndcg(ideal, ideal), 1.0);
  EXPECT_DOUBLE_EQ(Ndcg(std::vector<double>{0, 0}, ideal), 0.0);
  // Independent evaluation with the natural log.
  const double d2 = std::log(2.0) / std::log(3.0);
  const double want = (3.0 + 1.0 * d2) / (3.0 + 2.5 * d2);
  EXPECT_NEAR(Ndcg(std::vector<double>{3, 1}, ideal), want, 1e-12);
  EXPECT_NEAR(want, 0.7932, 1e-4);
  // Order of the selected gains does not matter.
  EXPECT_DOUBLE_EQ(Ndcg(std::vector<double>{1, 3}, ideal),
                   Ndcg(std::vector<double>{3, 1}, ideal));
}

TEST(ComputeMetricsTest, TinyTargetOptimum) {
  const Instance inst = Tiny();
  const MetricsReport r =
      *ComputeMetrics(SelectionFromIndices(inst, {0, 3}), inst,
                      std::vector<double>{0.5, 0.5}, 5.5);
  EXPECT_DOUBLE_EQ(r.risk_difference, 1.0);
  EXPECT_DOUBLE_EQ(r.selection_lift, 1.0);
  ASSERT_EQ(r.selection_rates.size(), 2u);
  EXPECT_DOUBLE_EQ(r.selection_rates[0], 0.5 * 4 / 3);
  EXPECT_DOUBLE_EQ(r.selection_rates[1], 0.5 * 4 / 1);
  EXPECT_NEAR(r.utility_ratio, 0.636364, 1e-6);
}

TEST(ComputeMetricsTest, NeedsTrueAttributes) {
  Instance inst = Tiny();
  inst.items[0].true_attrs.reset();
  EXPECT_FALSE(ComputeMetrics(SelectionFromIndices(inst, {0, 3}), inst,
                              std::vector<double>{0.5, 0.5}, 5.5)
                   .ok());
}

class MetricsPropertyTest : public ::testing::Test {
 protected:
  Engine engine_ = MakeEngine(21);

  // Random counts summing to n and a random full-support target.
  void Draw(int p, int n, std::vector<int>& c, std::vector<double>& t) {
    c.assign(p, 0);
    std::uniform_int_distribution<int> pick(0, p - 1);
    for (int i = 0; i < n; ++i) ++c[pick(engine_)];
    t.resize(p);
    for (double& v : t) v = 0.05 + Uniform01(engine_);
    const double sum = std::accumulate(t.begin(), t.end(), 0.0);
    for (double& v : t) v /= sum;
  }
};

TEST_F(MetricsPropertyTest, RiskDifferenceMatchesPairwiseFormula) {
  std::vector<int> c;
  std::vector<double> t;
  for (int trial = 0; trial < 500; ++trial) {
    const int p = 2 + trial % 4;
    const int n = 1 + trial % 37;
    Draw(p, n, c, t);
    const double f = *RiskDifference(c, t, n);
    EXPECT_NEAR(f, RiskDifferenceByPairs(c, t, n), 1e-12);
  }
}

TEST_F(MetricsPropertyTest, InvariantUnderRelabeling) {
  std::vector<int> c;
  std::vector<double> t;
  for (int trial = 0; trial < 300; ++trial) {
    const int p = 2 + trial % 4;
    const int n = 5 + trial % 20;
    Draw(p, n, c, t);
    std::vector<int> perm(p);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), engine_);
    std::vector<int> c2(p);
    std::vector<double> t2(p);
    for (int l = 0; l < p; ++l) {
      c2[l] = c[perm[l]];
      t2[l] = t[perm[l]];
    }
    EXPECT_NEAR(*RiskDifference(c, t, n), *RiskDifference(c2, t2, n), 1e-12);
    EXPECT_NEAR(*SelectionLift(c, t, n), *SelectionLift(c2, t2, n), 1e-12);
  }
}

TEST_F(MetricsPropertyTest, LiftInUnitInterval) {
  std::vector<int> c;
  std::vector<double> t;
  for (int trial = 0; trial < 300; ++trial) {
    Draw(2 + trial % 3, 1 + trial % 30, c, t);
    const double lift = *SelectionLift(c, t, 1 + trial % 30);
    EXPECT_GE(lift, 0.0);
    EXPECT_LE(lift, 1.0 + 1e-12);
  }
}

TEST(MetricsEqualityTest, PerfectRatiosGiveOne) {
  // counts proportional to t: both metrics hit 1.
  const std::vector<double> t = {0.2, 0.3, 0.5};
  const std::vector<int> c = {4, 6, 10};
  EXPECT_NEAR(*RiskDifference(c, t, 20), 1.0, 1e-12);
  EXPECT_NEAR(*SelectionLift(c, t, 20), 1.0, 1e-12);
  const std::vector<int> off = {5, 5, 10};
  EXPECT_LT(*RiskDifference(off, t, 20), 1.0);
  EXPECT_LT(*SelectionLift(off, t, 20), 1.0);
}

TEST(MetricsEqualityTest, EqualRatesUnderProportionalTarget) {
  // Population 20/30/50 over m = 100; selecting 2/3/5 of n = 10.
  const int m = 100, n = 10;
  const std::vector<int> sizes = {20, 30, 50};
  const std::vector<int> c = {2, 3, 5};
  std::vector<double> t;
  for (int g : sizes) t.push_back(static_cast<double>(g) / m);
  for (int l = 0; l < 3; ++l) {
    EXPECT_NEAR(*SelectionRate(c[l], n, m, sizes[l]), 1.0, 1e-12);
  }
  EXPECT_NEAR(*SelectionLift(c, t, n), 1.0, 1e-12);
}

}  // namespace
}  // namespace fairsel
