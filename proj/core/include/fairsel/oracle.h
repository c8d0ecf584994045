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

#ifndef FAIRSEL_ORACLE_H_
#define FAIRSEL_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "fairsel/constraints.h"
#include "fairsel/instance.h"

namespace fairsel {

// Exhaustive search is refused above this many subsets.
inline constexpr double kMaxOracleSubsets = 1e6;

struct OracleResult {
  std::vector<int> best_subset;  // sorted, 0-based
  double best_utility = 0.0;
  long feasible_count = 0;
  bool feasible = false;
};

// C(m, n) as a double (exact below 2^53).
double BinomialCoefficient(int m, int n);

// Count bounds on the true attributes, L <= count <= U for every (k, l).
bool IsTargetFeasible(const Instance& inst, const ConstraintSet& cs,
                      std::span<const int> subset);
// Expected counts within [L - delta n, U + delta n] for every (k, l).
bool IsDenoisedFeasible(const Instance& inst, const ConstraintSet& cs,
                        std::span<const int> subset);

// Best size-n subset under IsTargetFeasible. Utility ties go to the
// lexicographically smallest subset. No feasible subset gives
// feasible = false and feasible_count = 0.
absl::StatusOr<OracleResult> BruteForceTarget(const Instance& inst,
                                              const ConstraintSet& cs);
// Same search under IsDenoisedFeasible.
absl::StatusOr<OracleResult> BruteForceDenoised(const Instance& inst,
                                                const ConstraintSet& cs);

// Fraction of `trials` draws z_i ~ q_i in which some group l has
// |sum_{i in G_l} x_i - sum_i q_il x_i| > delta * n, with n = sum x.
double ConcentrationTrial(std::span<const double> x, const ProbabilityMatrix& q,
                          double delta, int trials, std::uint64_t seed);

// 2 p exp(-delta^2 n / 3).
double ConcentrationBound(int p, double delta, int n);

}  // namespace fairsel

#endif  // FAIRSEL_ORACLE_H_
