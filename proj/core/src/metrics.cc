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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fairsel/selectors.h"

namespace fairsel {
namespace {

absl::Status CheckCountsAndTarget(std::span<const int> counts,
                                  std::span<const double> target, int n) {
  if (counts.size() != target.size() || counts.empty()) {
    return absl::InvalidArgumentError("counts and target differ in length");
  }
  for (double t : target) {
    if (!(t > 0.0)) {
      return absl::InvalidArgumentError(
          "every target share must be positive");
    }
  }
  if (std::accumulate(counts.begin(), counts.end(), 0) != n) {
    return absl::InvalidArgumentError(
        absl::StrCat("group counts do not add up to n=", n));
  }
  return absl::OkStatus();
}

}  // namespace

std::vector<int> GroupCounts(const Selection& x, std::span<const int> groups,
                             int p) {
  std::vector<int> counts(p, 0);
  for (std::size_t i = 0; i < x.chosen.size(); ++i) {
    if (x.chosen[i]) ++counts[groups[i]];
  }
  return counts;
}

absl::StatusOr<double> RiskDifference(std::span<const int> counts,
                                      std::span<const double> target, int n) {
  if (absl::Status s = CheckCountsAndTarget(counts, target, n); !s.ok()) {
    return s;
  }
  if (n == 0) return 1.0;
  double hi = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < counts.size(); ++l) {
    const double ratio = counts[l] / (n * target[l]);
    hi = std::max(hi, ratio);
    lo = std::min(lo, ratio);
  }
  const double t_min = *std::min_element(target.begin(), target.end());
  return 1.0 - t_min * (hi - lo);
}

absl::StatusOr<double> SelectionLift(std::span<const int> counts,
                                     std::span<const double> target, int n) {
  if (absl::Status s = CheckCountsAndTarget(counts, target, n); !s.ok()) {
    return s;
  }
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < counts.size(); ++l) {
    const double ratio = n > 0 ? counts[l] / (n * target[l]) : 0.0;
    hi = std::max(hi, ratio);
    lo = std::min(lo, ratio);
  }
  if (hi == 0.0) return 1.0;
  return lo / hi;
}

absl::StatusOr<double> SelectionRate(int selected_in_group, int n, int m,
                                     int group_size) {
  if (group_size <= 0) {
    return absl::InvalidArgumentError("selection rate of an empty group");
  }
  if (n <= 0) return absl::InvalidArgumentError("selection size must be > 0");
  return (static_cast<double>(selected_in_group) / n) *
         (static_cast<double>(m) / group_size);
}

absl::StatusOr<double> UtilityRatio(double u_alg, double u_blind) {
  if (!(u_blind > 0.0)) {
    return absl::InvalidArgumentError(
        "utility ratio needs a positive blind utility");
  }
  return u_alg / u_blind;
}

double Ndcg(std::span<const double> selected_gains,
            std::span<const double> ideal_gains) {
  auto dcg = [](std::span<const double> gains) {
    std::vector<double> sorted(gains.begin(), gains.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double total = 0.0;
    for (std::size_t r = 0; r < sorted.size(); ++r) {
      total += sorted[r] / std::log2(static_cast<double>(r) + 2.0);
    }
    return total;
  };
  const double ideal = dcg(ideal_gains);
  if (ideal <= 0.0) return 0.0;
  return dcg(selected_gains) / ideal;
}

absl::StatusOr<MetricsReport> ComputeMetrics(const Selection& x,
                                             const Instance& inst,
                                             std::span<const double> target,
                                             double blind_utility) {
  if (!inst.HasTrueAttrs()) {
    return absl::InvalidArgumentError(
        "metrics are computed on true attributes only");
  }
  const int p = inst.p[0];
  const std::vector<int> groups = inst.TrueGroups(0);
  const std::vector<int> counts = GroupCounts(x, groups, p);
  const int n = x.cardinality;
  MetricsReport report;
  absl::StatusOr<double> rd = RiskDifference(counts, target, n);
  if (!rd.ok()) return rd.status();
  report.risk_difference = *rd;
  absl::StatusOr<double> lift = SelectionLift(counts, target, n);
  if (!lift.ok()) return lift.status();
  report.selection_lift = *lift;
  std::vector<int> sizes(p, 0);
  for (int g : groups) ++sizes[g];
  for (int l = 0; l < p; ++l) {
    absl::StatusOr<double> rate = SelectionRate(counts[l], n, inst.m(), sizes[l]);
    report.selection_rates.push_back(rate.ok() ? *rate
                                               : std::nan(""));
  }
  absl::StatusOr<double> ratio = UtilityRatio(x.total_utility, blind_utility);
  if (!ratio.ok()) return ratio.status();
  report.utility_ratio = *ratio;

  std::vector<double> selected_gains;
  for (int i : x.Indices()) selected_gains.push_back(inst.items[i].utility);
  Selection ideal = Blind(inst);
  std::vector<double> ideal_gains;
  for (int i : ideal.Indices()) ideal_gains.push_back(inst.items[i].utility);
  report.ndcg = Ndcg(selected_gains, ideal_gains);
  return report;
}

}  // namespace fairsel
