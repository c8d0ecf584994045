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

#include "fairsel/rounding.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "fairsel/random.h"

namespace fairsel {
namespace {

using Bits = std::vector<std::uint8_t>;

TEST(CeilRoundTest, Examples) {
  EXPECT_EQ(CeilRound(std::vector<double>{0.5, 0.5, 1}), (Bits{1, 1, 1}));
  EXPECT_EQ(CeilRound(std::vector<double>{0, 1, 1, 0}), (Bits{0, 1, 1, 0}));
  EXPECT_EQ(CeilRound(std::vector<double>{1e-9, 0.3}), (Bits{0, 1}));
}

TEST(CeilRoundTest, NeverDropsSupport) {
  Engine engine = MakeEngine(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> x(20);
    for (double& v : x) v = Uniform01(engine) < 0.5 ? 0.0 : Uniform01(engine);
    const Bits r = CeilRound(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      EXPECT_GE(static_cast<double>(r[i]), x[i]);
    }
  }
}

TEST(DependentRoundTest, BinaryInputIsReturned) {
  const std::vector<double> x = {1, 0, 1, 1, 0};
  EXPECT_EQ(*DependentRound(x, 3, 7), (Bits{1, 0, 1, 1, 0}));
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    EXPECT_EQ(*DependentRound(std::vector<double>{1, 1, 0, 0}, 2, seed),
              (Bits{1, 1, 0, 0}));
  }
}

TEST(DependentRoundTest, RejectsBadSums) {
  EXPECT_FALSE(DependentRound(std::vector<double>{0.5, 0.5}, 2, 1).ok());
  EXPECT_FALSE(DependentRound(std::vector<double>{1.5, 0.5}, 2, 1).ok());
}

TEST(DependentRoundTest, HalvesHitHalfTheTime) {
  const std::vector<double> x(4, 0.5);
  std::vector<int> hits(4, 0);
  const int draws = 10000;
  for (int d = 0; d < draws; ++d) {
    const Bits r = *DependentRound(x, 2, DeriveSeed(99, {std::uint64_t(d)}));
    ASSERT_EQ(std::accumulate(r.begin(), r.end(), 0), 2);
    for (int i = 0; i < 4; ++i) hits[i] += r[i];
  }
  for (int h : hits) EXPECT_NEAR(h / static_cast<double>(draws), 0.5, 0.02);
}

TEST(DependentRoundTest, MarginalsWithinThreeSigma) {
  Engine engine = MakeEngine(32);
  const int m = 12, n = 5, draws = 20000;
  // Random point of the capped simplex: scale then push excess around.
  std::vector<double> x(m);
  for (double& v : x) v = 0.05 + Uniform01(engine);
  double sum = std::accumulate(x.begin(), x.end(), 0.0);
  for (double& v : x) v *= n / sum;
  for (double& v : x) ASSERT_LE(v, 1.0);
  std::vector<int> hits(m, 0);
  for (int d = 0; d < draws; ++d) {
    const Bits r = *DependentRound(x, n, DeriveSeed(5, {std::uint64_t(d)}));
    ASSERT_EQ(std::accumulate(r.begin(), r.end(), 0), n);
    for (int i = 0; i < m; ++i) hits[i] += r[i];
  }
  for (int i = 0; i < m; ++i) {
    const double sigma = std::sqrt(x[i] * (1 - x[i]) / draws);
    EXPECT_NEAR(hits[i] / static_cast<double>(draws), x[i], 3 * sigma + 1e-12)
        << i;
  }
}

TEST(DependentRoundTest, DeterministicGivenSeed) {
  const std::vector<double> x = {0.3, 0.7, 0.4, 0.6, 0.5, 0.5};
  EXPECT_EQ(*DependentRound(x, 3, 17), *DependentRound(x, 3, 17));
}

}  // namespace
}  // namespace fairsel
