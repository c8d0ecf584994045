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

#ifndef FAIRSEL_SELECTORS_H_
#define FAIRSEL_SELECTORS_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairsel/constraints.h"
#include "fairsel/instance.h"
#include "fairsel/lp.h"
#include "fairsel/selection.h"

namespace fairsel {

struct AlgorithmConfig {
  double alpha = 1.0;
  double lambda = 0.0;
  std::vector<double> target;
  double delta = 0.0;
  std::uint64_t seed = 0;
  int fw_iters = 500;
  double kl_epsilon = 1e-6;
};

// Rejects targets that are not distributions and kl_epsilon outside
// (0, 1e-3].
absl::Status ValidateConfig(const AlgorithmConfig& cfg);

// Top-n utilities; ties go to the lower index.
Selection Blind(const Instance& inst);

// Optimal vertex of the denoised relaxation. Infeasible programs come back
// as an InfeasibleError status.
absl::StatusOr<BfsSolution> SolveDenoisedRelaxation(const Instance& inst,
                                                    const ConstraintSet& cs);

// Noise-aware selection: optimal vertex of the denoised relaxation with
// every fractional coordinate rounded up. The result may hold up to
// 1 + sum_k (p_k - 1) items more than n.
absl::StatusOr<Selection> FairExpec(const Instance& inst,
                                    const ConstraintSet& cs);

// Group-level probabilities qbar_i = mean of q_j over items j sharing i's
// observed label. Labels come from noisy_attrs when every item has them,
// otherwise from argmax_l q_il (lowest index on ties). Needs s = 1.
absl::StatusOr<ProbabilityMatrix> EstimateGroupLevelQ(const Instance& inst);

// FairExpec run on EstimateGroupLevelQ's matrix instead of q.
absl::StatusOr<Selection> FairExpecGrp(const Instance& inst,
                                       const ConstraintSet& cs);
absl::StatusOr<BfsSolution> SolveGroupLevelRelaxation(const Instance& inst,
                                                      const ConstraintSet& cs);

// One-hot rows at argmax_l q_il; ties are broken uniformly at random from
// the seeded stream.
ProbabilityMatrix ImputeBayes(const ProbabilityMatrix& q, std::uint64_t seed);

// Converts one-hot rows (or any rows) to their argmax group index.
std::vector<int> ArgmaxGroups(const ProbabilityMatrix& rows);

// Exact optimum of the target program when group membership is taken as
// known: `groups[i]` in [0, p). Greedy over the partition structure: the
// ceil(L_l) best of each group first, then the best remaining items whose
// group is still below floor(U_l).
absl::StatusOr<Selection> ThrshOnGroups(const Instance& inst,
                                        std::span<const int> groups, int p,
                                        const ConstraintSet& cs);

// Noise-oblivious baseline: impute groups with ImputeBayes(q, seed) and run
// ThrshOnGroups. Only s = 1 is supported (Unimplemented otherwise); for
// several attributes, run FairExpec on the imputed one-hot rows instead.
absl::StatusOr<Selection> Thrsh(const Instance& inst, const ConstraintSet& cs,
                                std::uint64_t seed);

struct MultObjResult {
  std::vector<double> x;             // fractional, sum x = n
  double objective = 0.0;            // of the returned point
  std::vector<double> best_so_far;   // per iteration, non-decreasing
};

// Objective of the KL-penalized program at x:
//   w.x - lambda * KL(P(x) || t) * mean(w),  P(x) = imputed^T x / n,
// with both distributions mixed with kl_epsilon * uniform.
double MultObjObjective(std::span<const double> w,
                        const ProbabilityMatrix& imputed,
                        std::span<const double> target, double lambda,
                        double kl_epsilon, int n, std::span<const double> x);

// Frank-Wolfe over {x in [0,1]^m : sum x = n}; the linear oracle is "top n
// by gradient", step 2/(k+2), started at the top-n utility indicator.
// Returns the best iterate seen.
absl::StatusOr<MultObjResult> MultObj(const Instance& inst,
                                      const ProbabilityMatrix& imputed,
                                      const AlgorithmConfig& cfg);

}  // namespace fairsel

#endif  // FAIRSEL_SELECTORS_H_
