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

#include "fairsel/selectors.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fairsel/datagen.h"
#include "fairsel/denoised_lp.h"
#include "fairsel/metrics.h"
#include "fairsel/oracle.h"
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

int FractionalBound(const Instance& inst) {
  int bound = 1;
  for (int p : inst.p) bound += p - 1;
  return std::min(bound, inst.m());
}

TEST(BlindTest, TopTwoOfTiny) {
  const Selection sel = Blind(Tiny());
  EXPECT_EQ(sel.Indices(), (std::vector<int>{0, 1}));
  EXPECT_DOUBLE_EQ(sel.total_utility, 5.5);
}

TEST(BlindTest, TiesGoToLowerIndex) {
  Instance inst = Tiny();
  for (Item& item : inst.items) item.utility = 1.0;
  inst.n = 3;
  EXPECT_EQ(Blind(inst).Indices(), (std::vector<int>{0, 1, 2}));
  inst.n = 4;
  EXPECT_EQ(Blind(inst).cardinality, 4);
}

// The relaxation of TINY has fractional entries on items 2 and 4 (see the
// vertex-enumeration test), so ceiling rounding keeps items 1, 2 and 4.
TEST(FairExpecTest, TinyCeilsFractionalVertex) {
  absl::StatusOr<Selection> sel = FairExpec(Tiny(), TinyConstraints(0.1));
  ASSERT_TRUE(sel.ok()) << sel.status();
  EXPECT_EQ(sel->Indices(), (std::vector<int>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(sel->total_utility, 6.0);
  EXPECT_EQ(sel->cardinality, 3);
  EXPECT_LE(sel->cardinality, 2 + 2);
}

TEST(FairExpecTest, StraddleRoundsEverythingUp) {
  absl::StatusOr<Selection> sel =
      FairExpec(Straddle(2), StraddleConstraints(2));
  ASSERT_TRUE(sel.ok());
  EXPECT_EQ(sel->Indices(), (std::vector<int>{0, 1, 2}));
  EXPECT_DOUBLE_EQ(sel->total_utility, 4.0);
  EXPECT_EQ(sel->cardinality, 3);
}

TEST(FairExpecTest, InfeasibleIsPropagated) {
  const ConstraintSet cs = *MakeConstraintSet(2, {{0, 0}}, {{0, 0}}, 0.0);
  const absl::StatusOr<Selection> sel = FairExpec(Tiny(), cs);
  ASSERT_FALSE(sel.ok());
  EXPECT_TRUE(IsInfeasible(sel.status()));
}

TEST(FairExpecTest, AlphaZeroMatchesBlindUtility) {
  Engine engine = MakeEngine(21);
  RandomInstanceOptions opts;
  opts.max_s = 1;
  for (int t = 0; t < 100; ++t) {
    const Instance inst = RandomInstance(engine, opts);
    const std::vector<double> target(inst.p[0], 1.0 / inst.p[0]);
    const ConstraintSet cs = *ConstraintsFromAlpha(inst.n, target, 0.0);
    absl::StatusOr<Selection> sel = FairExpec(inst, cs);
    ASSERT_TRUE(sel.ok());
    EXPECT_EQ(sel->total_utility, Blind(inst).total_utility);
  }
}

TEST(FairExpecPropertyTest, CardinalityAndLowerBounds) {
  Engine engine = MakeEngine(22);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = RandomInstance(engine, {});
    const ConstraintSet cs = RandomFeasibleBounds(engine, inst, 0.02);
    absl::StatusOr<BfsSolution> bfs = SolveDenoisedRelaxation(inst, cs);
    ASSERT_TRUE(bfs.ok());
    absl::StatusOr<Selection> sel = FairExpec(inst, cs);
    ASSERT_TRUE(sel.ok());
    EXPECT_GE(sel->cardinality, inst.n);
    EXPECT_LE(sel->cardinality, inst.n + FractionalBound(inst));
    EXPECT_GE(sel->total_utility, bfs->objective_value - 1e-9);
    for (int i = 0; i < inst.m(); ++i) {
      EXPECT_GE(sel->chosen[i], bfs->x[i] - kFractionalTol);
    }
    // Rounding up never breaks a denoised lower-bound row.
    const LinearProgram lp = BuildDenoisedLp(inst, cs);
    for (std::size_t r = 0; r + 1 < lp.rows.size(); ++r) {
      double activity = 0.0;
      for (int i = 0; i < inst.m(); ++i) {
        activity += lp.rows[r].coefficients[i] * sel->chosen[i];
      }
      EXPECT_GE(activity, lp.rows[r].lower - kFeasibilityTol);
    }
  }
}

TEST(FairExpecPropertyTest, DominatesTargetOptimumWhenDenoisedFeasible) {
  Engine engine = MakeEngine(23);
  RandomInstanceOptions opts;
  opts.min_m = 4;
  opts.max_m = 12;
  opts.max_n = 6;
  opts.max_s = 2;
  opts.max_p = 3;
  int checked = 0;
  for (int t = 0; t < 200; ++t) {
    const Instance inst = RandomInstance(engine, opts);
    const ConstraintSet cs = RandomFeasibleBounds(engine, inst, 0.1);
    absl::StatusOr<OracleResult> target = BruteForceTarget(inst, cs);
    ASSERT_TRUE(target.ok());
    if (!target->feasible ||
        !IsDenoisedFeasible(inst, cs, target->best_subset)) {
      continue;
    }
    ++checked;
    absl::StatusOr<Selection> sel = FairExpec(inst, cs);
    ASSERT_TRUE(sel.ok());
    EXPECT_GE(sel->total_utility, target->best_utility - 1e-9);
  }
  EXPECT_GT(checked, 20);
}

TEST(EstimateGroupLevelQTest, ClassMeans) {
  Instance inst;
  inst.n = 1;
  inst.p = {2};
  const double q0[] = {0.9, 0.7, 0.2};
  const int zhat[] = {0, 0, 1};
  for (int i = 0; i < 3; ++i) {
    Item item;
    item.utility = 1.0;
    item.noise = {{q0[i], 1 - q0[i]}};
    item.noisy_attrs = std::vector<int>{zhat[i]};
    inst.items.push_back(item);
  }
  const ProbabilityMatrix qbar = *EstimateGroupLevelQ(inst);
  EXPECT_NEAR(qbar[0][0], 0.8, 1e-12);
  EXPECT_NEAR(qbar[1][1], 0.2, 1e-12);
  EXPECT_NEAR(qbar[2][0], 0.2, 1e-12);
  for (const auto& row : qbar) EXPECT_NEAR(row[0] + row[1], 1.0, 1e-12);
}

TEST(EstimateGroupLevelQTest, SharedLabelGivesGlobalMean) {
  Instance inst = Tiny();
  for (Item& item : inst.items) item.noisy_attrs = std::vector<int>{1};
  const ProbabilityMatrix qbar = *EstimateGroupLevelQ(inst);
  const double mean = (0.9 + 0.95 + 0.8 + 0.1) / 4;
  for (const auto& row : qbar) EXPECT_NEAR(row[0], mean, 1e-12);
}

TEST(EstimateGroupLevelQTest, SingletonClassesKeepQ) {
  Instance inst = Straddle(3);
  inst.items.pop_back();
  inst.n = 2;
  for (int i = 0; i < 3; ++i) inst.items[i].noisy_attrs = std::vector<int>{i};
  const ProbabilityMatrix qbar = *EstimateGroupLevelQ(inst);
  EXPECT_EQ(qbar, inst.NoiseMatrix(0));
  const ConstraintSet cs = StraddleConstraints(3);
  ConstraintSet two = *MakeConstraintSet(2, cs.lower, cs.upper, 0.0);
  EXPECT_EQ(FairExpecGrp(inst, two)->Indices(),
            FairExpec(inst, two)->Indices());
}

TEST(EstimateGroupLevelQTest, ArgmaxLabelsWhenNoneObserved) {
  const Instance inst = Tiny();
  const ProbabilityMatrix qbar = *EstimateGroupLevelQ(inst);
  const double mean = (0.9 + 0.95 + 0.8) / 3;
  EXPECT_NEAR(qbar[0][0], mean, 1e-12);
  EXPECT_NEAR(qbar[3][0], 0.1, 1e-12);
}

TEST(ImputeBayesTest, Argmax) {
  const ProbabilityMatrix q = {{0.7, 0.3}, {1, 0}, {0.1, 0.2, 0.7}};
  const ProbabilityMatrix out = ImputeBayes(q, 1);
  EXPECT_EQ(out[0], (std::vector<double>{1, 0}));
  EXPECT_EQ(out[1], (std::vector<double>{1, 0}));
  EXPECT_EQ(out[2], (std::vector<double>{0, 0, 1}));
}

TEST(ImputeBayesTest, TiesSplitEvenly) {
  const ProbabilityMatrix q(10000, {0.5, 0.5});
  const ProbabilityMatrix out = ImputeBayes(q, 7);
  double first = 0.0;
  for (const auto& row : out) first += row[0];
  EXPECT_NEAR(first / q.size(), 0.5, 0.02);
  EXPECT_EQ(out, ImputeBayes(q, 7));
}

TEST(ThrshTest, TinyTakesBestOfEachGroup) {
  absl::StatusOr<Selection> sel = Thrsh(Tiny(), TinyConstraints(0.0), 1);
  ASSERT_TRUE(sel.ok());
  EXPECT_EQ(sel->Indices(), (std::vector<int>{0, 3}));
  EXPECT_DOUBLE_EQ(sel->total_utility, 3.5);
}

TEST(ThrshTest, AlphaZeroIsBlind) {
  Engine engine = MakeEngine(24);
  RandomInstanceOptions opts;
  opts.max_s = 1;
  for (int t = 0; t < 30; ++t) {
    const Instance inst = RandomInstance(engine, opts);
    const std::vector<double> target(inst.p[0], 1.0 / inst.p[0]);
    const ConstraintSet cs = *ConstraintsFromAlpha(inst.n, target, 0.0);
    EXPECT_EQ(Thrsh(inst, cs, 3)->Indices(), Blind(inst).Indices());
  }
}

TEST(ThrshTest, UnmeetableLowerBound) {
  const Instance inst = Tiny();
  const std::vector<int> groups = {0, 1, 1, 1};
  const ConstraintSet cs = *MakeConstraintSet(2, {{2, 0}}, {{2, 2}}, 0.0);
  const absl::StatusOr<Selection> sel = ThrshOnGroups(inst, groups, 2, cs);
  ASSERT_FALSE(sel.ok());
  EXPECT_TRUE(IsInfeasible(sel.status()));
}

TEST(ThrshTest, SeveralAttributesUnsupported) {
  Engine engine = MakeEngine(25);
  RandomInstanceOptions opts;
  opts.max_s = 3;
  Instance inst = RandomInstance(engine, opts);
  while (inst.s() == 1) inst = RandomInstance(engine, opts);
  EXPECT_EQ(Thrsh(inst, UnconstrainedSet(inst.n, inst.p), 1).status().code(),
            absl::StatusCode::kUnimplemented);
}

// Thrsh is exact for Program Target on the groups it is given.
TEST(ThrshPropertyTest, MatchesBruteForce) {
  Engine engine = MakeEngine(26);
  RandomInstanceOptions opts;
  opts.min_m = 3;
  opts.max_m = 11;
  opts.max_s = 1;
  opts.max_p = 4;
  for (int t = 0; t < 200; ++t) {
    Instance inst = RandomInstance(engine, opts);
    std::vector<std::vector<double>> lower(1), upper(1);
    for (int l = 0; l < inst.p[0]; ++l) {
      lower[0].push_back(std::floor(3 * Uniform01(engine)) *
                         (Uniform01(engine) < 0.5));
      upper[0].push_back(lower[0].back() + 3 * Uniform01(engine));
    }
    const ConstraintSet cs = *MakeConstraintSet(inst.n, lower, upper, 0.0);
    const std::vector<int> groups = inst.TrueGroups(0);
    const absl::StatusOr<OracleResult> oracle = BruteForceTarget(inst, cs);
    ASSERT_TRUE(oracle.ok());
    const absl::StatusOr<Selection> sel =
        ThrshOnGroups(inst, groups, inst.p[0], cs);
    if (!oracle->feasible) {
      EXPECT_TRUE(IsInfeasible(sel.status()));
      continue;
    }
    ASSERT_TRUE(sel.ok()) << sel.status();
    EXPECT_NEAR(sel->total_utility, oracle->best_utility, 1e-9);
    EXPECT_EQ(sel->cardinality, inst.n);
  }
}

AlgorithmConfig MultObjConfig(double lambda, std::vector<double> target) {
  AlgorithmConfig cfg;
  cfg.lambda = lambda;
  cfg.target = std::move(target);
  return cfg;
}

TEST(MultObjTest, LambdaZeroIsBlind) {
  const Instance inst = Tiny();
  const ProbabilityMatrix imputed = ImputeBayes(inst.NoiseMatrix(0), 1);
  const MultObjResult res =
      *MultObj(inst, imputed, MultObjConfig(0.0, {0.5, 0.5}));
  EXPECT_EQ(res.x, (std::vector<double>{1, 1, 0, 0}));
  EXPECT_DOUBLE_EQ(res.objective, 5.5);
}

TEST(MultObjTest, HugeLambdaMatchesTarget) {
  GeneratorSpec spec;
  spec.m = 300;
  spec.n = 60;
  spec.seed = 9;
  const Instance inst = GenDisparateError(spec);
  const ProbabilityMatrix imputed = ImputeBayes(inst.NoiseMatrix(0), 2);
  AlgorithmConfig cfg = MultObjConfig(1e6, {0.5, 0.5});
  cfg.fw_iters = 2000;
  const MultObjResult res = *MultObj(inst, imputed, cfg);
  std::vector<double> dist(2, 0.0);
  for (int i = 0; i < inst.m(); ++i) {
    for (int l = 0; l < 2; ++l) dist[l] += imputed[i][l] * res.x[i] / inst.n;
  }
  EXPECT_LE(0.5 * (std::abs(dist[0] - 0.5) + std::abs(dist[1] - 0.5)), 0.01);
}

TEST(MultObjTest, TinyNearBestVertex) {
  const Instance inst = Tiny();
  const ProbabilityMatrix imputed = ImputeBayes(inst.NoiseMatrix(0), 1);
  const std::vector<double> t = {0.5, 0.5};
  const MultObjResult res = *MultObj(inst, imputed, MultObjConfig(1.0, t));
  const std::vector<double> w = inst.Utilities();
  for (int a = 0; a < 4; ++a) {
    for (int b = a + 1; b < 4; ++b) {
      std::vector<double> v(4, 0.0);
      v[a] = v[b] = 1.0;
      EXPECT_GE(res.objective,
                MultObjObjective(w, imputed, t, 1.0, 1e-6, 2, v) - 0.05);
    }
  }
  EXPECT_NEAR(std::accumulate(res.x.begin(), res.x.end(), 0.0), 2.0, 1e-9);
}

TEST(MultObjTest, BestSoFarIsMonotone) {
  GeneratorSpec spec;
  spec.m = 200;
  spec.n = 40;
  const Instance inst = GenDisparateError(spec);
  const ProbabilityMatrix imputed = ImputeBayes(inst.NoiseMatrix(0), 3);
  const MultObjResult res =
      *MultObj(inst, imputed, MultObjConfig(50.0, {0.5, 0.5}));
  ASSERT_EQ(res.best_so_far.size(), 500u);
  for (std::size_t k = 1; k < res.best_so_far.size(); ++k) {
    EXPECT_GE(res.best_so_far[k], res.best_so_far[k - 1] - 1e-9);
  }
}

TEST(ValidateConfigTest, RejectsBadTargetsAndEpsilon) {
  AlgorithmConfig cfg = MultObjConfig(1.0, {0.6, 0.6});
  EXPECT_FALSE(ValidateConfig(cfg).ok());
  cfg.target = {0.5, 0.5};
  EXPECT_TRUE(ValidateConfig(cfg).ok());
  cfg.kl_epsilon = 0.01;
  EXPECT_FALSE(ValidateConfig(cfg).ok());
}

// Utility-independent noise: the group-level estimate loses little.
TEST(FairExpecGrpTest, CloseToFairExpecWhenNoiseIgnoresUtility) {
  GeneratorSpec spec;
  double gap = 0.0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    spec.seed = 1000 + t;
    const Instance inst = GenDisparateError(spec);
    const std::vector<double> half = {0.5, 0.5};
    const ConstraintSet cs = *ConstraintsFromAlpha(inst.n, half, 1.0);
    const Selection a = *FairExpec(inst, cs);
    const Selection b = *FairExpecGrp(inst, cs);
    const std::vector<int> groups = inst.TrueGroups(0);
    gap += *RiskDifference(GroupCounts(a, groups, 2), half, a.cardinality) -
           *RiskDifference(GroupCounts(b, groups, 2), half, b.cardinality);
  }
  EXPECT_LE(std::abs(gap / trials), 0.03);
}

// Group-level probabilities are distorted by utility: among items sharing a
// noisy label the high-utility ones are more likely advantaged.
TEST(FairExpecGrpTest, UnderselectsDisadvantagedWhenUtilityIsBiased) {
  GeneratorSpec spec;
  spec.kind = GeneratorKind::kDisparateUtility;
  spec.disparate_utility.tau = 0.3;
  double diff = 0.0;
  const int trials = 200;
  for (int t = 0; t < trials; ++t) {
    spec.seed = 2000 + t;
    const Instance inst = *PrepareDisparateUtilityInstance(spec);
    const std::vector<int> groups = inst.TrueGroups(0);
    // Proportional target from the estimated shares, which both programs
    // can meet exactly.
    std::vector<double> share(2, 0.0);
    for (const Item& item : inst.items) {
      for (int l = 0; l < 2; ++l) share[l] += item.noise[0][l] / inst.m();
    }
    const ConstraintSet cs = *ConstraintsFromAlpha(inst.n, share, 1.0);
    const absl::StatusOr<Selection> a = FairExpec(inst, cs);
    const absl::StatusOr<Selection> b = FairExpecGrp(inst, cs);
    ASSERT_TRUE(a.ok()) << a.status();
    ASSERT_TRUE(b.ok()) << b.status();
    diff += GroupCounts(*a, groups, 2)[0] - GroupCounts(*b, groups, 2)[0];
  }
  EXPECT_GT(diff / trials, 0.0);
}

}  // namespace
}  // namespace fairsel
