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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fairsel/lp.h"
#include "fairsel/random.h"

namespace fairsel {
namespace {

using FeasibilityCheck = bool (*)(const Instance&, const ConstraintSet&,
                                  std::span<const int>);

// Next n-subset of [0, m) in colexicographic order; false after the last.
bool NextColex(std::vector<int>& c, int m) {
  const int n = static_cast<int>(c.size());
  for (int j = 0; j < n; ++j) {
    const int limit = j + 1 < n ? c[j + 1] : m;
    if (c[j] + 1 < limit) {
      ++c[j];
      for (int i = 0; i < j; ++i) c[i] = i;
      return true;
    }
  }
  return false;
}

absl::StatusOr<OracleResult> Search(const Instance& inst,
                                    const ConstraintSet& cs,
                                    FeasibilityCheck check) {
  const int m = inst.m();
  const int n = inst.n;
  if (n < 1 || n > m) {
    return absl::InvalidArgumentError("oracle needs 1 <= n <= m");
  }
  if (cs.s() != inst.s()) {
    return absl::InvalidArgumentError(
        "constraint set and instance disagree on s");
  }
  const double subsets = BinomialCoefficient(m, n);
  if (subsets > kMaxOracleSubsets) {
    return absl::ResourceExhaustedError(
        absl::StrCat("instance too large for the oracle: C(", m, ",", n,
                     ") = ", subsets));
  }
  OracleResult result;
  std::vector<int> c(n);
  std::iota(c.begin(), c.end(), 0);
  do {
    if (!check(inst, cs, c)) continue;
    ++result.feasible_count;
    double u = 0.0;
    for (int i : c) u += inst.items[i].utility;
    const double tol = 1e-12 * std::max(1.0, std::abs(u));
    const bool better = !result.feasible || u > result.best_utility + tol;
    const bool tie = result.feasible && std::abs(u - result.best_utility) <= tol;
    if (better || (tie && c < result.best_subset)) {
      result.feasible = true;
      result.best_utility = u;
      result.best_subset = c;
    }
  } while (NextColex(c, m));
  return result;
}

}  // namespace

double BinomialCoefficient(int m, int n) {
  if (n < 0 || n > m) return 0.0;
  n = std::min(n, m - n);
  double c = 1.0;
  for (int i = 1; i <= n; ++i) c = c * (m - n + i) / i;
  return std::round(c);
}

bool IsTargetFeasible(const Instance& inst, const ConstraintSet& cs,
                      std::span<const int> subset) {
  for (int k = 0; k < inst.s(); ++k) {
    std::vector<int> counts(inst.p[k], 0);
    for (int i : subset) ++counts[(*inst.items[i].true_attrs)[k]];
    for (int l = 0; l < inst.p[k]; ++l) {
      if (counts[l] < cs.lower[k][l] - kFeasibilityTol ||
          counts[l] > cs.upper[k][l] + kFeasibilityTol) {
        return false;
      }
    }
  }
  return true;
}

bool IsDenoisedFeasible(const Instance& inst, const ConstraintSet& cs,
                        std::span<const int> subset) {
  const double slack = cs.delta * inst.n;
  for (int k = 0; k < inst.s(); ++k) {
    std::vector<double> expected(inst.p[k], 0.0);
    for (int i : subset) {
      for (int l = 0; l < inst.p[k]; ++l) {
        expected[l] += inst.items[i].noise[k][l];
      }
    }
    for (int l = 0; l < inst.p[k]; ++l) {
      if (expected[l] < cs.lower[k][l] - slack - kFeasibilityTol ||
          expected[l] > cs.upper[k][l] + slack + kFeasibilityTol) {
        return false;
      }
    }
  }
  return true;
}

absl::StatusOr<OracleResult> BruteForceTarget(const Instance& inst,
                                              const ConstraintSet& cs) {
  if (!inst.HasTrueAttrs()) {
    return absl::InvalidArgumentError("target oracle needs true attributes");
  }
  return Search(inst, cs, &IsTargetFeasible);
}

absl::StatusOr<OracleResult> BruteForceDenoised(const Instance& inst,
                                                const ConstraintSet& cs) {
  return Search(inst, cs, &IsDenoisedFeasible);
}

double ConcentrationTrial(std::span<const double> x, const ProbabilityMatrix& q,
                          double delta, int trials, std::uint64_t seed) {
  if (trials <= 0 || q.empty()) return 0.0;
  const int p = static_cast<int>(q[0].size());
  const double n = std::accumulate(x.begin(), x.end(), 0.0);
  std::vector<double> expected(p, 0.0);
  std::vector<std::size_t> support;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    support.push_back(i);
    for (int l = 0; l < p; ++l) expected[l] += q[i][l] * x[i];
  }
  Engine engine = MakeEngine(seed);
  std::vector<double> counts(p);
  int violations = 0;
  for (int t = 0; t < trials; ++t) {
    std::fill(counts.begin(), counts.end(), 0.0);
    for (std::size_t i : support) {
      const double u = Uniform01(engine);
      double acc = 0.0;
      int z = p - 1;
      for (int l = 0; l < p; ++l) {
        acc += q[i][l];
        if (u < acc) {
          z = l;
          break;
        }
      }
      counts[z] += x[i];
    }
    for (int l = 0; l < p; ++l) {
      if (std::abs(counts[l] - expected[l]) > delta * n) {
        ++violations;
        break;
      }
    }
  }
  return static_cast<double>(violations) / trials;
}

double ConcentrationBound(int p, double delta, int n) {
  return 2.0 * p * std::exp(-delta * delta * n / 3.0);
}

}  // namespace fairsel
